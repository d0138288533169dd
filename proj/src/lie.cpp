#include "seifert/lie.hpp"

#include "seifert/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <set>

namespace seifert::lie {

namespace {

using IntRoot = std::vector<long>;

Matrix<Rational> gram_matrix(Family family, int r) {
  Matrix<Rational> b(r, r);
  auto link = [&](int i, int j, const Rational& v) {
    b(i, j) = v;
    b(j, i) = v;
  };
  const Rational half = make_rational(1, 2);
  switch (family) {
    case Family::A:
      for (int i = 0; i < r; ++i) b(i, i) = 2;
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1);
      break;
    case Family::B:
      for (int i = 0; i < r; ++i) b(i, i) = 2;
      b(r - 1, r - 1) = 1;
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1);
      break;
    case Family::C:
      for (int i = 0; i < r; ++i) b(i, i) = 1;
      b(r - 1, r - 1) = 2;
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1, -half);
      link(r - 2, r - 1, -1);
      break;
    case Family::D:
      for (int i = 0; i < r; ++i) b(i, i) = 2;
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1, -1);
      link(r - 3, r - 1, -1);
      break;
    case Family::E: {
      // Bourbaki labels 1..r: chain 1-3-4-5-6-7-8, node 2 attached to 4.
      for (int i = 0; i < r; ++i) b(i, i) = 2;
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < r; ++i) link(i, i + 1, -1);
      break;
    }
    case Family::F:
      b(0, 0) = 2;
      b(1, 1) = 2;
      b(2, 2) = 1;
      b(3, 3) = 1;
      link(0, 1, -1);
      link(1, 2, -1);
      link(2, 3, -half);
      break;
    case Family::G:
      b(0, 0) = make_rational(2, 3);
      b(1, 1) = 2;
      link(0, 1, -1);
      break;
  }
  return b;
}

void check_type(Family family, int rank) {
  auto fail = [](const std::string& msg) { throw InputError("group", "group", msg); };
  if (rank < 1) fail("rank must be positive");
  switch (family) {
    case Family::A:
      break;
    case Family::B:
      if (rank < 2) fail("type B requires rank >= 2");
      break;
    case Family::C:
      if (rank < 2) fail("type C requires rank >= 2");
      break;
    case Family::D:
      if (rank < 3) fail("type D requires rank >= 3");
      break;
    case Family::E:
      if (rank < 6 || rank > 8) fail("type E requires rank 6, 7 or 8");
      break;
    case Family::F:
      if (rank != 4) fail("type F requires rank 4");
      break;
    case Family::G:
      if (rank != 2) fail("type G requires rank 2");
      break;
  }
}

long height(const IntRoot& r) {
  long h = 0;
  for (long c : r) h += c;
  return h;
}

std::vector<IntRoot> positive_roots_by_closure(const Matrix<Rational>& cartan, int r) {
  std::set<IntRoot> seen;
  std::deque<IntRoot> queue;
  for (int i = 0; i < r; ++i) {
    IntRoot e(r, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    const IntRoot beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < r; ++i) {
      Rational pairing = 0;
      for (int l = 0; l < r; ++l) pairing += beta[l] * cartan(l, i);
      IntRoot image = beta;
      image[i] -= pairing.convert_to<long>();
      if (std::any_of(image.begin(), image.end(), [](long c) { return c < 0; })) continue;
      if (seen.insert(image).second) queue.push_back(image);
    }
  }
  std::vector<IntRoot> roots(seen.begin(), seen.end());
  std::sort(roots.begin(), roots.end(), [](const IntRoot& a, const IntRoot& b) {
    const long ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a < b;
  });
  return roots;
}

RationalVector to_rational(const IntRoot& r) {
  RationalVector out;
  out.reserve(r.size());
  for (long c : r) out.emplace_back(c);
  return out;
}

Rational inner(const RootSystem& rs, const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (int i = 0; i < rs.rank; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rs.rank; ++j) s += a[i] * rs.inner_product(i, j) * b[j];
  }
  return s;
}

/// a_i(theta^vee) for each simple root.
RationalVector theta_coroot_values(const RootSystem& rs) {
  const Rational norm = inner(rs, rs.highest_root, rs.highest_root);
  RationalVector out(rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    Rational s = 0;
    for (int l = 0; l < rs.rank; ++l) s += rs.inner_product(i, l) * rs.highest_root[l];
    out[i] = 2 * s / norm;
  }
  return out;
}

Integer ceil(const Rational& q) { return -floor(-q); }

double sin_pi(const Rational& f) { return std::sin(std::numbers::pi * to_double(f)); }

}  // namespace

std::string RootSystem::name() const {
  static const char* letters = "ABCDEFG";
  return std::string(1, letters[static_cast<int>(family)]) + std::to_string(rank);
}

RootSystem build_root_system(Family family, int rank) {
  check_type(family, rank);
  RootSystem rs;
  rs.family = family;
  rs.rank = rank;
  rs.inner_product = gram_matrix(family, rank);
  rs.cartan = Matrix<Rational>(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) rs.cartan(i, j) = 2 * rs.inner_product(i, j) / rs.inner_product(j, j);
  for (int i = 0; i < rank; ++i) {
    IntRoot e(rank, 0);
    e[i] = 1;
    rs.simple_roots.push_back(to_rational(e));
  }
  const auto roots = positive_roots_by_closure(rs.cartan, rank);
  for (const auto& r : roots) rs.positive_roots.push_back(to_rational(r));
  rs.highest_root = rs.positive_roots.back();
  rs.dim_g = rank + 2 * static_cast<int>(rs.positive_roots.size());
  return rs;
}

RootSystem parse_group(const std::string& descriptor) {
  std::string s;
  for (char c : descriptor)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (s.size() < 2 || s[0] < 'A' || s[0] > 'G')
    throw InputError("group", "group", "group must look like A1, C2, G2, E6; got '" + descriptor + "'");
  int rank = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])) || rank > 1000)
      throw InputError("group", "group", "group must look like A1, C2, G2, E6; got '" + descriptor + "'");
    rank = rank * 10 + (s[i] - '0');
  }
  return build_root_system(static_cast<Family>(s[0] - 'A'), rank);
}

int center_order(const RootSystem& rs) {
  switch (rs.family) {
    case Family::A:
      return rs.rank + 1;
    case Family::B:
    case Family::C:
      return 2;
    case Family::D:
      return 4;
    case Family::E:
      return rs.rank == 6 ? 3 : rs.rank == 7 ? 2 : 1;
    case Family::F:
    case Family::G:
      return 1;
  }
  return 1;
}

Rational root_value(const RationalVector& root, const RationalVector& x) {
  Rational s = 0;
  for (std::size_t l = 0; l < root.size(); ++l)
    if (root[l] != 0) s += root[l] * x[l];
  return s;
}

Rational root_value(const RationalVector& root, const AlcoveClass& u) { return root_value(root, u.coords); }

bool in_alcove(const RootSystem& rs, const RationalVector& x) {
  if (x.size() != static_cast<std::size_t>(rs.rank)) return false;
  for (const auto& c : x)
    if (c < 0) return false;
  return root_value(rs.highest_root, x) <= 1;
}

void require_alcove(const RootSystem& rs, const AlcoveClass& u) {
  if (u.coords.size() != static_cast<std::size_t>(rs.rank))
    throw InputError("alcove", "u", "class has " + std::to_string(u.coords.size()) + " coordinates, group rank is " +
                                        std::to_string(rs.rank));
  if (!in_alcove(rs, u.coords)) throw InputError("alcove", "u", "class is outside the fundamental alcove");
}

double delta(const RootSystem& rs, const AlcoveClass& u) {
  double prod = 1.0;
  for (const auto& root : rs.positive_roots) {
    const Rational f = frac(root_value(root, u));
    if (f != 0) prod *= 2.0 * sin_pi(f);
  }
  return prod;
}

std::optional<Rational> delta_squared_exact(const RootSystem& rs, const AlcoveClass& u) {
  Rational prod = 1;
  for (const auto& root : rs.positive_roots) {
    const Rational f = frac(root_value(root, u));
    if (f == 0) continue;
    const Integer den = boost::multiprecision::denominator(f);
    if (den == 2)
      prod *= 4;
    else if (den == 3)
      prod *= 3;
    else if (den == 4)
      prod *= 2;
    else if (den == 6)
      prod *= 1;
    else
      return std::nullopt;
  }
  return prod;
}

int integral_positive_roots(const RootSystem& rs, const AlcoveClass& u) {
  int count = 0;
  for (const auto& root : rs.positive_roots)
    if (is_integer(root_value(root, u))) ++count;
  return count;
}

int centralizer_dim(const RootSystem& rs, const AlcoveClass& u) { return rs.rank + 2 * integral_positive_roots(rs, u); }

int class_dim(const RootSystem& rs, const AlcoveClass& u) { return rs.dim_g - centralizer_dim(rs, u); }

AlcoveClass reduce_to_alcove(const RootSystem& rs, RationalVector x, WallOrder order) {
  if (x.size() != static_cast<std::size_t>(rs.rank)) throw InputError("alcove", "x", "coordinate count differs from rank");
  const RationalVector theta_vals = theta_coroot_values(rs);
  const int r = rs.rank;
  constexpr long kMaxSteps = 10'000'000;
  for (long step = 0; step < kMaxSteps; ++step) {
    int wall = -1;  // r means the affine wall
    Rational worst = 0;
    const Rational excess = root_value(rs.highest_root, x) - 1;
    for (int j = 0; j < r; ++j) {
      if (x[j] >= 0) continue;
      if (order == WallOrder::FirstViolated) {
        wall = j;
        break;
      }
      if (-x[j] > worst) {
        worst = -x[j];
        wall = j;
      }
    }
    if (excess > 0 && (wall < 0 || (order == WallOrder::MostViolated && excess > worst))) wall = r;
    if (wall < 0) return AlcoveClass{std::move(x)};
    if (wall < r) {
      const Rational xj = x[wall];
      for (int i = 0; i < r; ++i) x[i] -= xj * rs.cartan(i, wall);
    } else {
      for (int i = 0; i < r; ++i) x[i] -= excess * theta_vals[i];
    }
  }
  throw AlgebraError("reduction", "affine Weyl reduction did not terminate");
}

long separating_walls(const RootSystem& rs, const RationalVector& x) {
  Rational h = 1;
  for (const auto& m : rs.highest_root) h += m;
  const RationalVector c(rs.rank, 1 / h);
  long count = 0;
  for (const auto& root : rs.positive_roots) {
    const Rational a = root_value(root, x);
    const Rational ca = root_value(root, c);
    Integer k = 0;
    if (a > ca)
      k = std::max(Integer(0), ceil(a) - 1);
    else
      k = -floor(a);
    count += k.convert_to<long>();
  }
  return count;
}

AlcoveClass class_power(const RootSystem& rs, const AlcoveClass& u, long k) {
  RationalVector x = u.coords;
  for (auto& c : x) c *= k;
  return reduce_to_alcove(rs, std::move(x));
}

AlcoveClass identity_class(const RootSystem& rs) { return AlcoveClass{RationalVector(rs.rank, Rational(0))}; }

bool is_central(const RootSystem&, const AlcoveClass& u) {
  return std::all_of(u.coords.begin(), u.coords.end(), [](const Rational& c) { return is_integer(c); });
}

std::vector<CentralElement> center_elements(const RootSystem& rs) {
  std::vector<AlcoveClass> points{identity_class(rs)};
  for (int i = 0; i < rs.rank; ++i) {
    RationalVector x(rs.rank, Rational(0));
    x[i] = 1;
    if (in_alcove(rs, x)) points.push_back(AlcoveClass{x});
  }
  std::sort(points.begin(), points.end());
  const AlcoveClass e = identity_class(rs);
  std::vector<CentralElement> out;
  for (auto& p : points) {
    int order = 1;
    while (!(class_power(rs, p, order) == e)) ++order;
    out.push_back(CentralElement{std::move(p), order});
  }
  return out;
}

WeylGroup weyl_group(const RootSystem& rs, std::size_t max_order) {
  const int r = rs.rank;
  std::vector<std::vector<long>> gens;
  for (int i = 0; i < r; ++i) {
    // (s_i c)_j = c_j - c_i * cartan(i, j)
    std::vector<long> m(r * r, 0);
    for (int j = 0; j < r; ++j) {
      m[j * r + j] += 1;
      m[j * r + i] -= rs.cartan(i, j).convert_to<long>();
    }
    gens.push_back(std::move(m));
  }
  WeylGroup w;
  w.rank = r;
  std::vector<long> id(r * r, 0);
  for (int i = 0; i < r; ++i) id[i * r + i] = 1;
  std::map<std::vector<long>, int> seen{{id, 1}};
  std::deque<std::vector<long>> queue{id};
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    const int sign = seen[cur];
    w.matrices.push_back(cur);
    w.signs.push_back(sign);
    for (const auto& g : gens) {
      std::vector<long> next(r * r, 0);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          const long gab = g[a * r + b];
          if (gab == 0) continue;
          for (int c = 0; c < r; ++c) next[a * r + c] += gab * cur[b * r + c];
        }
      if (seen.emplace(next, -sign).second) {
        if (seen.size() > max_order)
          throw InputError("group", "group", "Weyl group of " + rs.name() + " exceeds the enumeration limit of " +
                                                 std::to_string(max_order) + " elements");
        queue.push_back(std::move(next));
      }
    }
  }
  return w;
}

Matrix<Rational> weight_gram(const RootSystem& rs) {
  const Matrix<Rational> m = inverse(rs.cartan);
  return m * rs.inner_product * m.transpose();
}

RationalVector fundamental_weight_values(const RootSystem& rs, const RationalVector& x) {
  const Matrix<Rational> m = inverse(rs.cartan);
  RationalVector out(rs.rank, Rational(0));
  for (int i = 0; i < rs.rank; ++i)
    for (int l = 0; l < rs.rank; ++l) out[i] += m(i, l) * x[l];
  return out;
}

Rational coroot_pairing(const RootSystem& rs, const std::vector<long>& mu, const RationalVector& root) {
  // <mu, alpha^vee> = sum_l n_l c_l |a_l|^2 / |alpha|^2
  const Rational norm = inner(rs, root, root);
  Rational s = 0;
  for (int l = 0; l < rs.rank; ++l)
    if (root[l] != 0) s += root[l] * mu[l] * rs.inner_product(l, l);
  return s / norm;
}

double weyl_dimension(const RootSystem& rs, const std::vector<long>& lambda) {
  std::vector<long> shifted(lambda);
  std::vector<long> rho(rs.rank, 1);
  for (auto& c : shifted) c += 1;
  double d = 1.0;
  for (const auto& root : rs.positive_roots)
    d *= to_double(coroot_pairing(rs, shifted, root) / coroot_pairing(rs, rho, root));
  return d;
}

namespace {

double torus_volume(const RootSystem& rs) {
  Matrix<Rational> coroots(rs.rank, rs.rank);
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j)
      coroots(i, j) = 4 * rs.inner_product(i, j) / (rs.inner_product(i, i) * rs.inner_product(j, j));
  return std::pow(2.0 * std::numbers::pi, rs.rank) * std::sqrt(to_double(determinant(coroots)));
}

double volume_from_roots(const RootSystem& rs, const std::vector<const RationalVector*>& roots) {
  RationalVector rho(rs.rank, Rational(0));
  for (const auto* r : roots)
    for (int l = 0; l < rs.rank; ++l) rho[l] += (*r)[l] / 2;
  double v = torus_volume(rs);
  for (const auto* r : roots) v *= 2.0 * std::numbers::pi / to_double(inner(rs, rho, *r));
  return v;
}

}  // namespace

double group_volume(const RootSystem& rs) {
  std::vector<const RationalVector*> roots;
  for (const auto& r : rs.positive_roots) roots.push_back(&r);
  return volume_from_roots(rs, roots);
}

double centralizer_volume(const RootSystem& rs, const AlcoveClass& u) {
  std::vector<const RationalVector*> roots;
  for (const auto& r : rs.positive_roots)
    if (is_integer(root_value(r, u))) roots.push_back(&r);
  return volume_from_roots(rs, roots);
}

}  // namespace seifert::lie
