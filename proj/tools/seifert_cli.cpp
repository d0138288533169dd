// Command-line front end: components, prefactors, volumes, the U(1) case and
// the torsion self-checks, written as NDJSON or CSV.

#include "seifert/error.hpp"
#include "seifert/lie.hpp"
#include "seifert/rational.hpp"
#include "seifert/seifert.hpp"
#include "seifert/torsion_suite.hpp"
#include "seifert/volumes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::ordered_json;
using namespace seifert;

namespace {

enum class Format { Json, Csv };

struct JobSpec {
  std::string command;
  std::string group = "A1";
  std::string seifert;
  long truncation = 100000;
  Format format = Format::Json;
  std::string out;
  double scale = 1.0;
  std::uint64_t seed = 1;
  int count = 0;
};

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitConvergence = 3;

/// Rounds to 15 significant digits; json.hpp then prints the shortest round trip.
double round15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

ordered_json coords_json(const RationalVector& v) {
  auto out = ordered_json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::string coords_text(const RationalVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

std::string classes_text(const std::vector<lie::AlcoveClass>& u) {
  std::string s;
  for (std::size_t i = 0; i < u.size(); ++i) s += (i ? ";" : "") + coords_text(u[i].coords);
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

/// Emits records as NDJSON lines or as CSV rows under a fixed header.
class Sink {
 public:
  Sink(std::ostream& out, Format format) : out_(out), format_(format) {}

  void header(const std::vector<std::string>& columns) {
    if (format_ == Format::Csv) row(columns);
  }

  void record(const ordered_json& json, const std::vector<std::string>& cells) {
    if (format_ == Format::Json)
      out_ << json.dump() << '\n';
    else
      row(cells);
  }

  void error(const Error& e) {
    ordered_json j;
    j["error"] = {{"code", e.code()}, {"field", e.field()}, {"message", std::string(e.what())}};
    if (format_ == Format::Json) {
      out_ << j.dump() << '\n';
    } else {
      row({"error_code", "error_field", "error_message"});
      row({e.code(), e.field(), e.what()});
    }
  }

 private:
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_field(cells[i]);
    out_ << '\n';
  }

  std::ostream& out_;
  Format format_;
};

const char* occupancy_name(Occupancy o) { return o == Occupancy::Empty ? "empty" : "unknown"; }

ordered_json label_json(const ComponentLabel& label) {
  ordered_json j;
  j["v"] = coords_json(label.v.cls.coords);
  auto u = ordered_json::array();
  for (const auto& c : label.u) u.push_back(coords_json(c.coords));
  j["u"] = u;
  j["dim"] = label.dim;
  j["occupancy"] = occupancy_name(label.occupancy);
  return j;
}

std::vector<std::string> label_cells(const ComponentLabel& label) {
  return {coords_text(label.v.cls.coords), classes_text(label.u), std::to_string(label.dim),
          occupancy_name(label.occupancy)};
}

SeifertData require_seifert(const JobSpec& job) {
  if (job.seifert.empty()) throw InputError("missing", "seifert", "--seifert is required for " + job.command);
  return parse_seifert(job.seifert);
}

void add_prefactor(const SeifertData& s, const lie::RootSystem& rs, const ComponentLabel& label, ordered_json& j,
                   std::vector<std::string>& cells) {
  const auto pre = torsion_prefactor(s, rs, label);
  j["prefactor"] = round15(pre.value);
  j["exact_square"] = pre.exact_square ? ordered_json(to_string(*pre.exact_square)) : ordered_json(nullptr);
  cells.push_back(fmt15(pre.value));
  cells.push_back(pre.exact_square ? to_string(*pre.exact_square) : "");
}

int run_components(const JobSpec& job, Sink& sink, bool with_prefactor) {
  const auto s = require_seifert(job);
  const auto rs = lie::parse_group(job.group);
  std::vector<std::string> columns{"v", "u", "dim", "occupancy"};
  if (with_prefactor) columns.insert(columns.end(), {"prefactor", "exact_square"});
  sink.header(columns);
  for_each_component(s, rs, [&](const ComponentLabel& label) {
    auto j = label_json(label);
    auto cells = label_cells(label);
    if (with_prefactor) add_prefactor(s, rs, label, j, cells);
    sink.record(j, cells);
  });
  return kExitOk;
}

int run_volume(const JobSpec& job, Sink& sink) {
  const auto s = require_seifert(job);
  const auto rs = lie::parse_group(job.group);
  sink.header({"v", "u", "dim", "occupancy", "prefactor", "exact_square", "value", "truncation", "terms",
               "tail_estimate", "scale", "constant", "inner_product", "error_code", "error_message"});
  int status = kExitOk;
  for_each_component(s, rs, [&](const ComponentLabel& label) {
    auto j = label_json(label);
    auto cells = label_cells(label);
    add_prefactor(s, rs, label, j, cells);
    try {
      const auto r = volumes::reidemeister_volume(s, rs, label, job.truncation, job.scale);
      j["value"] = round15(r.value);
      j["truncation"] = r.truncation;
      j["terms"] = r.terms;
      j["tail_estimate"] = round15(r.tail_estimate);
      j["normalization"] = {{"scale", round15(r.normalization.scale)},
                            {"constant", round15(r.normalization.constant)},
                            {"inner_product", r.normalization.inner_product}};
      cells.insert(cells.end(), {fmt15(r.value), std::to_string(r.truncation),
                                 std::to_string(r.terms), fmt15(r.tail_estimate), fmt15(r.normalization.scale),
                                 fmt15(r.normalization.constant), r.normalization.inner_product, "", ""});
    } catch (const ConvergenceError& e) {
      // the label is still reported; the run exits with the convergence status
      j["error"] = {{"code", e.code()}, {"field", e.field()}, {"message", std::string(e.what())}};
      cells.insert(cells.end(), {"", "", "", "", "", "", "", e.code(), e.what()});
      status = kExitConvergence;
    }
    sink.record(j, cells);
  });
  return status;
}

int run_abelian(const JobSpec& job, Sink& sink) {
  const auto s = require_seifert(job);
  const auto set = volumes::abelian_components(s);
  const auto scalar = volumes::abelian_torsion_scalar(s);
  const double density = volumes::abelian_density_factor(s);
  ordered_json j;
  j["chi"] = to_string(set.euler);
  j["torsion_scalar"] = to_string(scalar);
  j["density_factor"] = round15(density);
  auto labels = ordered_json::array();
  for (const auto& l : set.labels) labels.push_back({{"v", to_string(l.v)}, {"u", coords_json(l.u)}});
  j["labels"] = labels;
  // CSV has one row per label; JSON nests the labels in a single record
  if (job.format == Format::Csv) {
    sink.header({"chi", "torsion_scalar", "density_factor", "v", "u"});
    for (const auto& l : set.labels)
      sink.record(j, {to_string(set.euler), to_string(scalar), fmt15(density), to_string(l.v), coords_text(l.u)});
  } else {
    sink.record(j, {});
  }
  return kExitOk;
}

int run_check_torsion(const JobSpec& job, Sink& sink) {
  sink.header({"property", "passed", "total"});
  bool ok = true;
  for (const auto& c : torsion::suite::run_property_suite(job.seed, job.count > 0 ? job.count : 100)) {
    ordered_json j{{"property", c.name}, {"passed", c.passed}, {"total", c.total}};
    sink.record(j, {c.name, std::to_string(c.passed), std::to_string(c.total)});
    ok = ok && c.passed == c.total;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_mv_verify(const JobSpec& job, Sink& sink) {
  const auto s = require_seifert(job);
  sink.header({"check", "computed", "expected", "passed", "total"});
  const Rational computed = volumes::abelian_mv_verify(s, s.genus);
  const Rational expected = volumes::abelian_torsion_scalar(s);
  const bool abelian_ok = computed == expected;
  sink.record({{"check", "abelian_mv_verify"},
               {"computed", to_string(computed)},
               {"expected", to_string(expected)},
               {"passed", abelian_ok ? 1 : 0},
               {"total", 1}},
              {"abelian_mv_verify", to_string(computed), to_string(expected), abelian_ok ? "1" : "0", "1"});
  const auto mv = torsion::suite::run_seifert_mv_suite(s, job.seed, job.count > 0 ? job.count : 50);
  sink.record({{"check", mv.name}, {"passed", mv.passed}, {"total", mv.total}},
              {mv.name, "", "", std::to_string(mv.passed), std::to_string(mv.total)});
  return abelian_ok && mv.passed == mv.total ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const JobSpec& job, std::ostream& out) {
  Sink sink(out, job.format);
  try {
    if (job.truncation <= 0) throw InputError("range", "truncation", "--truncation must be positive");
    if (!(job.scale > 0.0)) throw InputError("range", "scale", "--scale must be positive");
    if (job.command == "components") return run_components(job, sink, false);
    if (job.command == "prefactor") return run_components(job, sink, true);
    if (job.command == "volume") return run_volume(job, sink);
    if (job.command == "abelian") return run_abelian(job, sink);
    if (job.command == "check-torsion") return run_check_torsion(job, sink);
    if (job.command == "mv-verify") return run_mv_verify(job, sink);
    throw InputError("command", "command", "unknown command '" + job.command + "'");
  } catch (const ConvergenceError& e) {
    sink.error(e);
    return kExitConvergence;
  } catch (const Error& e) {
    sink.error(e);
    return kExitInput;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Character varieties, torsion and volumes for Seifert fibered 3-manifolds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");

  JobSpec job;
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"components", "stream the component labels of P"},
      {"prefactor", "component labels with their torsion prefactor"},
      {"volume", "Reidemeister volumes of the components"},
      {"abelian", "the U(1) component set and torsion scalar"},
      {"check-torsion", "run the torsion property suite on random complexes"},
      {"mv-verify", "Mayer-Vietoris determinant checks for the given Seifert data"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--group", job.group, "group descriptor such as A1, C2, G2")->capture_default_str();
    sub->add_option("--seifert", job.seifert, "Seifert data, e.g. \"g=0; (2,1),(3,1),(5,1)\"");
    sub->add_option("--truncation", job.truncation, "largest <lambda+rho, lambda+rho> summed")->capture_default_str();
    sub->add_option("--format", job.format, "json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", job.out, "output path (default stdout)");
    sub->add_option("--scale", job.scale, "multiplier of the basic inner product")->capture_default_str();
    sub->add_option("--seed", job.seed, "seed for the randomized checks")->capture_default_str();
    sub->add_option("--count", job.count, "instances per randomized check");
    sub->callback([&job, name = std::string(c.name)] { job.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Sink sink(std::cout, Format::Json);
    sink.error(InputError("usage", "", e.what()));
    return kExitInput;
  }

  if (job.out.empty()) return run(job, std::cout);
  std::ofstream file(job.out, std::ios::binary);
  if (!file) {
    Sink sink(std::cout, job.format);
    sink.error(InputError("io", "out", "cannot open " + job.out + " for writing"));
    return kExitInput;
  }
  return run(job, file);
}
