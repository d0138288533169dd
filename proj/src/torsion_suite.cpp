#include "seifert/torsion_suite.hpp"

#include <cmath>
#include <numeric>

namespace seifert::torsion::suite {

namespace {

bool same(const TorsionValue& a, const TorsionValue& b) {
  return a.exact.has_value() && b.exact.has_value() && *a.exact == *b.exact;
}

}  // namespace

QMatrix random_rational_orthogonal(std::size_t n, std::size_t h, std::mt19937_64& rng) {
  auto cayley = [&](std::size_t m) {
    QMatrix s = random_integer_matrix(m, m, rng, 2);
    for (std::size_t i = 0; i < m; ++i) {
      s(i, i) = 0;
      for (std::size_t j = 0; j < i; ++j) s(i, j) = -s(j, i);
    }
    const QMatrix id = QMatrix::identity(m);
    return (id - s) * inverse(id + s);
  };
  const QMatrix phi = direct_sum(cayley(n - h), QMatrix::identity(h));
  const QMatrix rot = cayley(n);
  return rot * phi * rot.transpose();
}

std::vector<PropertyCount> run_property_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<PropertyCount> out{{"direct_sum", 0, 0}, {"kunneth", 0, 0}, {"mayer_vietoris", 0, 0}, {"circle", 0, 0}};
  auto record = [&](std::size_t i, bool ok) {
    ++out[i].total;
    if (ok) ++out[i].passed;
  };
  for (int trial = 0; trial < count; ++trial) {
    {
      const QComplex a = random_complex(rng), b = random_complex(rng);
      const auto ha = random_homology_basis(a, rng), hb = random_homology_basis(b, rng);
      const auto lhs = chain_torsion(direct_sum(a, b), direct_sum(a, ha, b, hb));
      record(0, lhs.exact && *lhs.exact == *chain_torsion(a, ha).exact * *chain_torsion(b, hb).exact);
    }
    {
      const QComplex a = random_complex(rng, 3, 2), b = random_complex(rng, 3, 1);
      const auto ha = random_homology_basis(a, rng), hb = random_homology_basis(b, rng);
      const auto [prod, hprod] = tensor_product(a, ha, b, hb);
      const auto expected =
          kunneth_torsion(chain_torsion(a, ha), euler_characteristic(a), chain_torsion(b, hb), euler_characteristic(b));
      record(1, same(chain_torsion(prod, hprod), expected));
    }
    {
      const auto gm = random_gluing(rng);
      const auto ses = gluing_sequence(gm);
      const auto h_n = random_homology_basis(gm.n, rng);
      const auto h1 = random_homology_basis(gm.m1, rng);
      const auto h2 = random_homology_basis(gm.m2, rng);
      const auto h_m = random_homology_basis(gm.m, rng);
      const auto mv = chain_torsion(long_exact_sequence(ses, h_n, direct_sum(gm.m1, h1, gm.m2, h2), h_m));
      const auto composed =
          mv_torsion_compose(chain_torsion(gm.m1, h1), chain_torsion(gm.m2, h2), chain_torsion(gm.n, h_n), mv);
      const auto direct = chain_torsion(gm.m, h_m);
      const double rel = std::abs(composed.magnitude - direct.magnitude) / direct.magnitude;
      record(2, rel <= 1e-9 && same(composed, direct));
    }
    {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
      const std::size_t h = std::uniform_int_distribution<std::size_t>(0, n)(rng);
      const QMatrix phi = random_rational_orthogonal(n, h, rng);
      const auto [cx, hb] = circle_complex(phi);
      record(3, same(chain_torsion(cx, hb), circle_torsion(phi).torsion));
    }
  }
  return out;
}

PropertyCount run_seifert_mv_suite(const SeifertData& s, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_pick(0, 4), extra_pick(0, 3);
  PropertyCount out{"seifert_mv_scalar", 0, 0};
  for (int trial = 0; trial < count; ++trial) {
    std::vector<int> dims;
    Rational expected = 1;
    for (const auto& pair : s.pairs) {
      dims.push_back(dim_pick(rng));
      for (int j = 0; j < dims.back(); ++j) expected *= pair.p;
    }
    const std::size_t d = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
    const std::size_t k = extra_pick(rng);
    QMatrix f;
    do f = random_integer_matrix(d + k, d, rng);
    while (rank(f) != d);
    const QMatrix psi = random_invertible(k, rng);
    expected *= abs(determinant(psi));
    const Rational first = seifert_mv_scalar(s, dims, f, psi, rng);
    const Rational second = seifert_mv_scalar(s, dims, f, psi, rng);
    ++out.total;
    if (first == expected && second == expected) ++out.passed;
  }
  return out;
}

}  // namespace seifert::torsion::suite
