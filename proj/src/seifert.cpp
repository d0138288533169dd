#include "seifert/seifert.hpp"

#include "seifert/error.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

namespace seifert {

SeifertData validate_seifert(int genus, const std::vector<SeifertPair>& pairs) {
  if (genus < 0) throw InputError("genus", "seifert.genus", "genus must be >= 0");
  if (pairs.empty()) throw InputError("pairs_empty", "seifert.pairs", "at least one pair (p, q) is required (n >= 1)");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    const std::string field = "seifert.pairs[" + std::to_string(i) + "]";
    if (p < 1) throw InputError("p_positive", field, "p must be >= 1, got " + std::to_string(p));
    const long g = std::gcd(p, std::abs(q));
    if (g != 1)
      throw InputError("coprime", field,
                       "p and q must be coprime: gcd(" + std::to_string(p) + "," + std::to_string(q) + ")=" +
                           std::to_string(g));
  }
  return SeifertData{genus, pairs};
}

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("seifert_syntax", "seifert",
                     what + " at offset " + std::to_string(pos) + " in '" + text + "'; expected \"g=0; (2,1),(3,1)\"");
  }
  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool accept(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long integer() {
    skip();
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || !std::isdigit(static_cast<unsigned char>(text[pos - 1]))) fail("expected an integer");
    if (pos - start > 15) fail("integer too large");
    return std::stol(text.substr(start, pos - start));
  }
  bool done() {
    skip();
    return pos == text.size();
  }
};

}  // namespace

SeifertData parse_seifert(const std::string& text) {
  Cursor c{text};
  c.expect('g');
  c.expect('=');
  const long genus = c.integer();
  if (genus > 1'000'000) c.fail("genus too large");
  c.expect(';');
  std::vector<SeifertPair> pairs;
  if (!c.done()) {
    do {
      c.expect('(');
      const long p = c.integer();
      c.expect(',');
      const long q = c.integer();
      c.expect(')');
      pairs.push_back({p, q});
    } while (c.accept(','));
  }
  if (!c.done()) c.fail("trailing characters");
  return validate_seifert(static_cast<int>(genus), pairs);
}

std::string to_string(const SeifertData& s) {
  std::string out = "g=" + std::to_string(s.genus) + ";";
  for (std::size_t i = 0; i < s.pairs.size(); ++i)
    out += (i ? ",(" : " (") + std::to_string(s.pairs[i].p) + "," + std::to_string(s.pairs[i].q) + ")";
  return out;
}

Rational euler_number(const SeifertData& s) {
  Rational chi = 0;
  for (const auto& [p, q] : s.pairs) chi -= make_rational(q, p);
  return chi;
}

long inverse_mod(long q, long p) {
  if (p < 1) throw InputError("p_positive", "p", "modulus must be >= 1");
  if (p == 1) return 0;
  // extended Euclid on (q mod p, p)
  long a = ((q % p) + p) % p, b = p;
  long x0 = 1, x1 = 0;
  while (b != 0) {
    const long t = a / b;
    a -= t * b;
    std::swap(a, b);
    x0 -= t * x1;
    std::swap(x0, x1);
  }
  if (a != 1)
    throw InputError("coprime", "q", std::to_string(q) + " is not invertible modulo " + std::to_string(p));
  return ((x0 % p) + p) % p;
}

int component_dimension(int genus, const lie::RootSystem& rs, const std::vector<lie::AlcoveClass>& u) {
  int dim = 2 * (genus - 1) * rs.dim_g;
  for (const auto& ui : u) dim += lie::class_dim(rs, ui);
  return dim;
}

std::vector<lie::AlcoveClass> power_roots(const lie::RootSystem& rs, long p, const lie::AlcoveClass& target) {
  // x in (1/p) Z^r inside the alcove with p x - target in the coroot lattice,
  // i.e. cartan^{-1} (p x - target) integral.
  const int r = rs.rank;
  const Matrix<Rational> inv = inverse(rs.cartan);
  std::vector<long> marks;
  for (const auto& m : rs.highest_root) marks.push_back(m.convert_to<long>());
  std::vector<lie::AlcoveClass> out;
  std::vector<long> k(r, 0);
  std::function<void(int, long)> scan = [&](int i, long budget) {
    if (i == r) {
      for (int a = 0; a < r; ++a) {
        Rational coeff = 0;
        for (int b = 0; b < r; ++b) coeff += inv(a, b) * (Rational(k[b]) - target.coords[b]);
        if (!is_integer(coeff)) return;
      }
      RationalVector x;
      for (long ki : k) x.push_back(make_rational(ki, p));
      out.push_back(lie::AlcoveClass{std::move(x)});
      return;
    }
    for (long ki = 0; ki * marks[i] <= budget; ++ki) {
      k[i] = ki;
      scan(i + 1, budget - ki * marks[i]);
    }
    k[i] = 0;
  };
  scan(0, p);
  std::sort(out.begin(), out.end());
  return out;
}

void for_each_component(const SeifertData& s, const lie::RootSystem& rs,
                        const std::function<void(const ComponentLabel&)>& emit) {
  const std::size_t n = s.pairs.size();
  for (const auto& v : lie::center_elements(rs)) {
    std::vector<std::vector<lie::AlcoveClass>> roots(n);
    bool empty = false;
    for (std::size_t i = 0; i < n && !empty; ++i) {
      roots[i] = power_roots(rs, s.pairs[i].p, lie::class_power(rs, v.cls, s.pairs[i].q));
      empty = roots[i].empty();
    }
    if (empty) continue;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      ComponentLabel label;
      label.v = v;
      for (std::size_t i = 0; i < n; ++i) label.u.push_back(roots[i][idx[i]]);
      label.dim = component_dimension(s.genus, rs, label.u);
      label.occupancy = label.dim < 0 ? Occupancy::Empty : Occupancy::Unknown;
      emit(label);
      std::size_t pos = n;
      while (pos > 0 && ++idx[pos - 1] == roots[pos - 1].size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
  }
}

std::vector<ComponentLabel> enumerate_components(const SeifertData& s, const lie::RootSystem& rs) {
  std::vector<ComponentLabel> out;
  for_each_component(s, rs, [&](const ComponentLabel& l) { out.push_back(l); });
  return out;
}

bool satisfies_relations(const SeifertData& s, const lie::RootSystem& rs, const ComponentLabel& label) {
  if (label.u.size() != s.pairs.size()) return false;
  for (std::size_t i = 0; i < s.pairs.size(); ++i)
    if (!(lie::class_power(rs, label.u[i], s.pairs[i].p) == lie::class_power(rs, label.v.cls, s.pairs[i].q)))
      return false;
  return true;
}

PrefactorValue torsion_prefactor(const SeifertData& s, const lie::RootSystem& rs, const ComponentLabel& label,
                                 const std::vector<long>& r) {
  if (label.u.size() != s.pairs.size())
    throw InputError("label", "label.u", "label has " + std::to_string(label.u.size()) + " classes for " +
                                             std::to_string(s.pairs.size()) + " pairs");
  if (!r.empty() && r.size() != s.pairs.size()) throw InputError("label", "r", "one inverse per pair is required");
  PrefactorValue out;
  Rational square = 1;
  bool exact = true;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const auto [p, q] = s.pairs[i];
    const long ri = r.empty() ? inverse_mod(q, p) : r[i];
    if (p > 1 && (((q % p) * (ri % p)) % p + p) % p != 1)
      throw InputError("inverse", "r", std::to_string(ri) + " is not an inverse of " + std::to_string(q) + " mod " +
                                           std::to_string(p));
    const auto w = lie::class_power(rs, label.u[i], ri);
    const int dim_v = lie::centralizer_dim(rs, label.u[i]);
    out.value *= lie::delta(rs, w) / std::pow(static_cast<double>(p), dim_v / 2.0);
    if (exact) {
      if (const auto d2 = lie::delta_squared_exact(rs, w)) {
        square *= *d2 / Rational(boost::multiprecision::pow(Integer(p), static_cast<unsigned>(dim_v)));
      } else {
        exact = false;
      }
    }
  }
  if (exact) out.exact_square = square;
  return out;
}

}  // namespace seifert
