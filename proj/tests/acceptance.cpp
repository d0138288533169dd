// Acceptance checks: one PASS/FAIL line per criterion, tolerances pinned below.

#include "oracles/adjoint.hpp"
#include "oracles/su2_convolution.hpp"
#include "oracles/su2_grid.hpp"
#include "support.hpp"

#include "seifert/lie.hpp"
#include "seifert/seifert.hpp"
#include "seifert/torsion.hpp"
#include "seifert/torsion_suite.hpp"
#include "seifert/volumes.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace seifert;

namespace {

constexpr double kDeltaTol = 1e-8;
constexpr double kMvRelTol = 1e-9;
constexpr double kBridgeTol = 1e-9;
constexpr double kPrefactorRelTol = 1e-12;
constexpr double kDensityTol = 1e-12;
constexpr double kOracleRelTol = 1e-3;
constexpr double kTailTol = 1e-4;

struct Outcome {
  bool pass = true;
  std::string detail;
};

Rational q(long a, long b = 1) { return make_rational(a, b); }

SeifertData random_seifert(std::mt19937_64& rng, long max_p, int max_n, int max_genus) {
  std::uniform_int_distribution<long> pick_p(1, max_p), pick_q(-max_p, max_p);
  std::uniform_int_distribution<int> pick_n(1, max_n), pick_g(0, max_genus);
  std::vector<SeifertPair> pairs;
  const int n = pick_n(rng);
  while (static_cast<int>(pairs.size()) < n) {
    const long p = pick_p(rng), qq = pick_q(rng);
    if (std::gcd(p, std::abs(qq)) == 1) pairs.push_back({p, qq});
  }
  return validate_seifert(pick_g(rng), pairs);
}

Matrix<double> from_eigen(const Eigen::MatrixXd& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome delta_oracle() {
  std::mt19937_64 rng(101);
  struct Case {
    lie::Family family;
    int rank;
    oracle::Group group;
    int n;
  };
  double worst = 0.0;
  int points = 0;
  for (const auto& c : {Case{lie::Family::A, 1, oracle::Group::SU, 2}, Case{lie::Family::A, 2, oracle::Group::SU, 3},
                        Case{lie::Family::C, 2, oracle::Group::Sp2, 4}}) {
    const auto rs = lie::build_root_system(c.family, c.rank);
    const auto group = oracle::make_group(c.group, c.n);
    for (int k = 0; k < 70; ++k, ++points) {
      const auto u = testing_support::random_alcove_point(rs, rng, 60);
      const double d = lie::delta(rs, u);
      const double det = oracle::delta_squared_oracle(group, testing_support::as_doubles(u.coords), rng);
      worst = std::max(worst, std::abs(d * d - det));
    }
  }
  return {points >= 200 && worst <= kDeltaTol,
          std::to_string(points) + " points, max |delta^2 - det| = " + fmt(worst) + " (tol " + fmt(kDeltaTol) + ")"};
}

Outcome component_sets() {
  const auto a1 = lie::build_root_system(lie::Family::A, 1);
  std::mt19937_64 rng(102);
  int equal = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_seifert(rng, 7, 3, 2);
    std::vector<std::pair<long, long>> pairs;
    for (const auto& [p, qq] : s.pairs) pairs.emplace_back(p, qq);
    const auto expected = oracle::su2_components(pairs);
    std::vector<oracle::Su2Label> got;
    for (const auto& l : enumerate_components(s, a1)) {
      oracle::Su2Label g{l.v.cls.coords[0] == 0 ? 0 : 1, {}};
      for (const auto& u : l.u)
        g.u.emplace_back(boost::multiprecision::numerator(u.coords[0]).convert_to<long>(),
                         boost::multiprecision::denominator(u.coords[0]).convert_to<long>());
      got.push_back(g);
    }
    if (got == expected) ++equal;
  }
  return {equal == 20, std::to_string(equal) + "/20 exact set equalities with the grid scan"};
}

Outcome mv_scalar() {
  std::mt19937_64 rng(103);
  int passed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_seifert(rng, 5, 3, 0);
    passed += torsion::suite::run_seifert_mv_suite(s, rng(), 1).passed;
  }
  return {passed == 50, std::to_string(passed) + "/50 exact, each with two independent completions"};
}

Outcome property_suite() {
  const auto counts = torsion::suite::run_property_suite(104, 100);
  bool ok = true;
  std::string detail;
  for (const auto& c : counts) {
    ok = ok && c.total == 100 && c.passed == c.total;
    detail += (detail.empty() ? "" : ", ") + c.name + " " + std::to_string(c.passed) + "/" + std::to_string(c.total);
  }
  return {ok, detail + " (exact; gluing also <= " + fmt(kMvRelTol) + " relative)"};
}

Outcome delta_bridge() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  int done_total = 0;
  for (int rank : {1, 2}) {
    const auto rs = lie::build_root_system(lie::Family::A, rank);
    const auto group = oracle::make_group(oracle::Group::SU, rank + 1);
    int done = 0;
    while (done < 100) {
      const auto u = testing_support::random_alcove_point(rs, rng, 97);
      if (lie::centralizer_dim(rs, u) != rs.rank) continue;
      const oracle::CMat k = oracle::random_group_element(group, rng);
      const oracle::CMat g =
          k * oracle::torus_element(group.kind, group.n, testing_support::as_doubles(u.coords)) * k.adjoint();
      const auto ct = torsion::circle_torsion(from_eigen(oracle::adjoint_matrix(group, g)), 1e-7);
      const double d = lie::delta(rs, u);
      worst = std::max(worst, std::abs(ct.torsion.magnitude * d * d - 1.0));
      ++done;
    }
    done_total += done;
  }
  return {worst <= kBridgeTol, std::to_string(done_total) + " regular elements, max |tau Delta^2 - 1| = " + fmt(worst) +
                                   " (tol " + fmt(kBridgeTol) + ")"};
}

Outcome prefactor_independence() {
  std::mt19937_64 rng(106);
  double worst = 0.0;
  int labels = 0;
  for (const char* name : {"A1", "A2", "C2", "G2", "A3"}) {
    const auto rs = lie::parse_group(name);
    for (int trial = 0; trial < 6; ++trial) {
      const auto s = random_seifert(rng, 6, 3, 2);
      std::vector<long> r0, r1;
      for (const auto& [p, qq] : s.pairs) {
        r0.push_back(inverse_mod(qq, p));
        r1.push_back(inverse_mod(qq, p) + p);
      }
      for (const auto& l : enumerate_components(s, rs)) {
        const double a = torsion_prefactor(s, rs, l, r0).value;
        const double b = torsion_prefactor(s, rs, l, r1).value;
        worst = std::max(worst, std::abs(a - b) / a);
        ++labels;
      }
    }
  }
  return {worst <= kPrefactorRelTol, std::to_string(labels) + " labels, max relative change " + fmt(worst) +
                                         " (tol " + fmt(kPrefactorRelTol) + ")"};
}

Outcome abelian_reproduction() {
  std::mt19937_64 rng(107);
  int done = 0, exact = 0;
  double worst = 0.0;
  while (done < 120) {
    const auto s = random_seifert(rng, 7, 4, 3);
    if (euler_number(s) == 0) continue;
    const Rational scalar = euler_number(s) * std::accumulate(s.pairs.begin(), s.pairs.end(), Rational(1),
                                                              [](Rational acc, const SeifertPair& p) { return acc * p.p; });
    if (volumes::abelian_mv_verify(s, s.genus) == scalar) ++exact;
    const double density = volumes::abelian_density_factor(s);
    worst = std::max(worst, std::abs(density - 1.0 / std::sqrt(std::abs(to_double(scalar)))));
    ++done;
  }
  return {exact == done && worst <= kDensityTol, std::to_string(exact) + "/" + std::to_string(done) +
                                                     " exact, max density error " + fmt(worst) + " (tol " +
                                                     fmt(kDensityTol) + ")"};
}

Outcome volume_oracle() {
  const auto rs = lie::build_root_system(lie::Family::A, 1);
  const std::vector<std::pair<int, std::vector<Rational>>> samples = {
      {0, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)}},
      {1, {q(1, 4)}},
      {1, {q(1, 2)}},
      {1, {q(3, 4)}},
      {1, {q(1, 3)}},
      {0, {q(1, 3), q(1, 4), q(1, 2), q(2, 5)}},
      {0, {q(3, 10), q(3, 10), q(3, 10), q(3, 10)}},
      {0, {q(1, 5), q(2, 7), q(1, 3), q(3, 5), q(1, 2)}},
      {1, {q(1, 3), q(1, 2)}},
      {2, {q(1, 2)}},
      {0, {q(1, 6), q(5, 6), q(1, 2), q(1, 2)}},
  };
  double worst = 0.0, worst_tail = 0.0;
  for (const auto& [genus, u] : samples) {
    std::vector<lie::AlcoveClass> classes;
    std::vector<double> x;
    for (const auto& t : u) {
      classes.push_back({{t}});
      x.push_back(to_double(t));
    }
    const double o = oracle::su2_volume(genus, x, 1 << 12);
    const auto v = volumes::witten_volume(genus, rs, classes, 2'000'000'000);
    worst = std::max(worst, std::abs(v.value - o) / std::abs(o));
    worst_tail = std::max(worst_tail, v.tail_estimate);
  }
  return {worst <= kOracleRelTol && worst_tail < kTailTol,
          std::to_string(samples.size()) + " points, max relative gap " + fmt(worst) + " (tol " + fmt(kOracleRelTol) +
              "), max tail " + fmt(worst_tail) + " (tol " + fmt(kTailTol) + ")"};
}

std::string capture(const std::string& command) {
  std::string out;
  if (FILE* pipe = popen(command.c_str(), "r")) {
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
  }
  return out;
}

Outcome cli_determinism() {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"components_a1_g0_2_1.ndjson", "components --group A1 --seifert 'g=0; (2,1)'"},
      {"abelian_g0_2_1_3_1_5_1.ndjson", "abelian --seifert 'g=0; (2,1),(3,1),(5,1)'"},
      {"components_not_coprime.ndjson", "components --seifert 'g=0; (4,2)'"},
  };
  int identical = 0;
  for (const auto& [file, args] : cases) {
    std::ifstream in(std::string(SEIFERT_TEST_DATA_DIR) + "/golden/cli/" + file, std::ios::binary);
    const std::string golden((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string cmd = std::string("'") + SEIFERT_CLI_PATH + "' " + args;
    const std::string first = capture(cmd), second = capture(cmd);
    if (!golden.empty() && first == golden && second == golden) ++identical;
  }
  return {identical == 3, std::to_string(identical) + "/3 golden files byte-identical across two runs"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"delta-oracle equivalence", delta_oracle, 60},
      {"component-set exactness", component_sets, 60},
      {"Seifert MV scalar", mv_scalar, 0},
      {"torsion property suite", property_suite, 0},
      {"delta bridge", delta_bridge, 0},
      {"prefactor r-independence", prefactor_independence, 0},
      {"abelian reproduction", abelian_reproduction, 0},
      {"volume oracle", volume_oracle, 300},
      {"CLI determinism", cli_determinism, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.pass;
    std::string timing = fmt(secs) + " s";
    if (c.limit_seconds > 0) {
      pass = pass && secs < c.limit_seconds;
      timing += " (limit " + fmt(c.limit_seconds) + " s)";
    }
    std::cout << (pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.name << ": " << out.detail << "; " << timing
              << '\n';
    failed += !pass;
  }
  return failed ? 1 : 0;
}
