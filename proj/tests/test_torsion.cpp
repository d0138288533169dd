#include "complex_support.hpp"
#include "oracles/adjoint.hpp"
#include "support.hpp"

#include "seifert/lie.hpp"
#include "seifert/torsion.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace seifert;
using namespace seifert::torsion;
using testing_support::QComplex;
using testing_support::QMatrix;
using testing_support::random_rational_orthogonal;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

Rational exact_of(const TorsionValue& t) {
  REQUIRE(t.exact.has_value());
  return *t.exact;
}

/// |det((phi - 1)|_{H perp})|^{-1} from eigenvalues.
double eigen_circle_oracle(const QMatrix& phi) {
  const auto d = to_double(phi);
  Eigen::MatrixXd m(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) m(i, j) = d(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  double prod = 1.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double gap = std::abs(es.eigenvalues()(k) - 1.0);
    if (gap > 1e-7) prod *= gap;
  }
  return 1.0 / prod;
}

Matrix<double> from_eigen(const Eigen::MatrixXd& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

Matrix<double> to_float(const QMatrix& m) { return to_double(m); }

BasedChainComplex<double> to_float(const QComplex& cx) {
  BasedChainComplex<double> out;
  out.dims = cx.dims;
  for (const auto& d : cx.d) out.d.push_back(to_double(d));
  return out;
}

}  // namespace

TEST_CASE("chain torsion examples") {
  for (long c : {2L, -3L, 7L}) {
    const QComplex cx{{1, 1}, {QMatrix{{q(c)}}}};
    CHECK(exact_of(chain_torsion(cx)) == q(1, std::abs(c)));
  }
  const QComplex zero{{2, 1, 3}, {QMatrix(2, 1), QMatrix(1, 3)}};
  HomologyBasis<Rational> standard{{QMatrix::identity(2), QMatrix::identity(1), QMatrix::identity(3)}};
  CHECK(exact_of(chain_torsion(zero, standard)) == 1);
  CHECK_FALSE(chain_torsion(zero, standard).sign_defined);

  HomologyBasis<Rational> scaled = standard;
  scaled.cycles[1] = QMatrix{{q(5)}};
  CHECK(exact_of(chain_torsion(zero, scaled)) == 5);
  scaled.cycles[1] = QMatrix{{q(1)}};
  scaled.cycles[2] = QMatrix::identity(3).scaled(q(2));
  CHECK(exact_of(chain_torsion(zero, scaled)) == q(1, 8));
}

TEST_CASE("chain torsion rejects bad homology bases") {
  const QComplex cx{{2, 2}, {QMatrix{{1, 0}, {0, 0}}}};
  HomologyBasis<Rational> hb{{QMatrix{{0}, {1}}, QMatrix{{0}, {1}}}};
  CHECK(exact_of(chain_torsion(cx, hb)) == 1);

  auto expect_bad = [&](const HomologyBasis<Rational>& bad, const std::string& message) {
    try {
      chain_torsion(cx, bad);
      FAIL("accepted an invalid homology basis");
    } catch (const AlgebraError& e) {
      CHECK(e.code() == "homology_basis");
      CHECK(std::string(e.what()) == message);
    }
  };
  expect_bad({{QMatrix{{1}, {0}}, QMatrix{{0}, {1}}}}, "invalid homology basis, degree 0");  // a boundary
  expect_bad({{QMatrix{{0}, {1}}, QMatrix{{1}, {0}}}}, "invalid homology basis, degree 1");  // not a cycle
  expect_bad({{QMatrix(2, 0), QMatrix{{0}, {1}}}}, "invalid homology basis, degree 0");     // too small

  const QComplex not_complex{{1, 1, 1}, {QMatrix{{1}}, QMatrix{{1}}}};
  CHECK_THROWS_AS(chain_torsion(not_complex), AlgebraError);
}

TEST_CASE("circle torsion examples") {
  const auto minus = circle_torsion(QMatrix{{-1}});
  CHECK(exact_of(minus.torsion) == q(1, 2));
  CHECK(minus.fixed.cols() == 0);

  const auto id = circle_torsion(QMatrix::identity(3));
  CHECK(exact_of(id.torsion) == 1);
  CHECK(id.fixed.cols() == 3);

  for (double theta : {0.3, 1.0, 2.5, std::numbers::pi}) {
    const Matrix<double> rot{{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}};
    CHECK(circle_torsion(rot).torsion.magnitude == doctest::Approx(1.0 / (2.0 - 2.0 * std::cos(theta))).epsilon(1e-12));
  }
  // 3-4-5 rotation: det(phi - 1) = 4/5
  const auto r = circle_torsion(direct_sum(QMatrix{{q(3, 5), q(-4, 5)}, {q(4, 5), q(3, 5)}}, QMatrix::identity(1)));
  CHECK(exact_of(r.torsion) == q(5, 4));
  CHECK(r.fixed.cols() == 1);
}

TEST_CASE("circle CW model reproduces the closed form") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    const std::size_t h = std::uniform_int_distribution<std::size_t>(0, n)(rng);
    const QMatrix phi = random_rational_orthogonal(n, h, rng);
    REQUIRE(phi.transpose() * phi == QMatrix::identity(n));
    const auto closed = circle_torsion(phi);
    const auto [cx, hb] = circle_complex(phi);
    CHECK(exact_of(chain_torsion(cx, hb)) == exact_of(closed.torsion));
    CHECK(closed.torsion.magnitude == doctest::Approx(eigen_circle_oracle(phi)).epsilon(1e-9));
    CHECK(circle_torsion(to_float(phi)).torsion.magnitude == doctest::Approx(closed.torsion.magnitude).epsilon(1e-10));
  }
}

TEST_CASE("direct sums multiply torsion") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const QComplex a = testing_support::random_complex(rng);
    const QComplex b = testing_support::random_complex(rng);
    const auto ha = testing_support::random_homology_basis(a, rng);
    const auto hb = testing_support::random_homology_basis(b, rng);
    const auto sum = direct_sum(a, b);
    const auto hsum = direct_sum(a, ha, b, hb);
    CHECK(exact_of(chain_torsion(sum, hsum)) == exact_of(chain_torsion(a, ha)) * exact_of(chain_torsion(b, hb)));
  }
}

TEST_CASE("tensor products follow the Kunneth rule") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const QComplex a = testing_support::random_complex(rng, 3, 2);
    const QComplex b = testing_support::random_complex(rng, 3, 1);
    const auto ha = testing_support::random_homology_basis(a, rng);
    const auto hb = testing_support::random_homology_basis(b, rng);
    const auto [prod, hprod] = tensor_product(a, ha, b, hb);
    const auto expected =
        kunneth_torsion(chain_torsion(a, ha), euler_characteristic(a), chain_torsion(b, hb), euler_characteristic(b));
    CHECK(exact_of(chain_torsion(prod, hprod)) == exact_of(expected));
  }
}

TEST_CASE("gluing model satisfies the Mayer-Vietoris relation") {
  std::mt19937_64 rng(14);
  int nontrivial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto gm = testing_support::random_gluing(rng);
    const auto ses = testing_support::gluing_sequence(gm);
    REQUIRE_NOTHROW(ses.quotient.validate());
    for (std::size_t k = 0; k < gm.n.length(); ++k) {
      REQUIRE(ses.proj[k] * ses.incl[k] == QMatrix(ses.proj[k].rows(), ses.incl[k].cols()));
      if (k > 0) {
        REQUIRE(ses.whole.d[k - 1] * ses.incl[k] == ses.incl[k - 1] * ses.sub.d[k - 1]);
        REQUIRE(ses.quotient.d[k - 1] * ses.proj[k] == ses.proj[k - 1] * ses.whole.d[k - 1]);
      }
    }
    const auto h_n = testing_support::random_homology_basis(gm.n, rng);
    const auto h1 = testing_support::random_homology_basis(gm.m1, rng);
    const auto h2 = testing_support::random_homology_basis(gm.m2, rng);
    const auto h_m = testing_support::random_homology_basis(gm.m, rng);
    const auto les = long_exact_sequence(ses, h_n, direct_sum(gm.m1, h1, gm.m2, h2), h_m);
    const auto mv = chain_torsion(les);
    if (exact_of(mv) != 1) ++nontrivial;
    const auto composed =
        mv_torsion_compose(chain_torsion(gm.m1, h1), chain_torsion(gm.m2, h2), chain_torsion(gm.n, h_n), mv);
    const auto direct = chain_torsion(gm.m, h_m);
    CHECK(composed.magnitude == doctest::Approx(direct.magnitude).epsilon(1e-9));
    CHECK(exact_of(composed) == exact_of(direct));
  }
  CHECK(nontrivial > 50);
}

TEST_CASE("float and rational torsion agree") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const QComplex cx = testing_support::random_complex(rng, 4, 2);
    const auto exact = chain_torsion(cx, homology_basis(cx));
    const auto fcx = to_float(cx);
    // float homology basis is orthonormal; compare through a common rational basis instead
    HomologyBasis<double> fh;
    for (const auto& h : homology_basis(cx).cycles) fh.cycles.push_back(to_double(h));
    CHECK(chain_torsion(fcx, fh).magnitude == doctest::Approx(exact.magnitude).epsilon(1e-9));
    CHECK_NOTHROW(chain_torsion(fcx, homology_basis(fcx)));
  }
}

TEST_CASE("Delta bridge for SU(2) and SU(3)") {
  std::mt19937_64 rng(16);
  struct Case {
    int rank;
    int n;
  };
  for (const auto& c : {Case{1, 2}, Case{2, 3}}) {
    const auto rs = lie::build_root_system(lie::Family::A, c.rank);
    const auto group = oracle::make_group(oracle::Group::SU, c.n);
    int done = 0;
    while (done < 100) {
      const auto u = testing_support::random_alcove_point(rs, rng, 97);
      if (lie::centralizer_dim(rs, u) != rs.rank) continue;
      const oracle::CMat k = oracle::random_group_element(group, rng);
      const oracle::CMat g = k * oracle::torus_element(group.kind, group.n, testing_support::as_doubles(u.coords)) *
                             k.adjoint();
      const auto ad = from_eigen(oracle::adjoint_matrix(group, g));
      const auto ct = circle_torsion(ad, 1e-7);
      CHECK(static_cast<int>(ct.fixed.cols()) == rs.rank);
      const double d = lie::delta(rs, u);
      CHECK(ct.torsion.magnitude * d * d == doctest::Approx(1.0).epsilon(1e-9));
      ++done;
    }
  }
}

TEST_CASE("kunneth torsion examples") {
  const auto t3 = torsion_value(q(3)), t5 = torsion_value(q(5)), one = torsion_value(q(1));
  CHECK(exact_of(kunneth_torsion(t3, -1, t5, 2)) == q(9, 5));
  CHECK(exact_of(kunneth_torsion(t3, 4, one, 0)) == 1);
  CHECK(exact_of(kunneth_torsion(t5, 7, one, 3)) == 125);
}

TEST_CASE("exact sequence determinants") {
  // A = 0
  const QMatrix change{{2, 1}, {1, 3}};
  CHECK(exact_sequence_det(QMatrix(2, 0), change) == q(1, 5));
  // B = A + C
  const QMatrix i{{1}, {0}, {0}};
  const QMatrix pi{{0, 1, 0}, {0, 0, 1}};
  CHECK(exact_sequence_det(i, pi) == 1);
  // (1,1) with C based by the image of (1,0)
  CHECK(exact_sequence_det(QMatrix{{1}, {1}}, QMatrix{{1, -1}}) == 1);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t a = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    const std::size_t c = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const QMatrix g = testing_support::random_invertible(a + c, rng);
    const QMatrix gi = inverse(g);
    const QMatrix inc = g.columns(0, a);
    const QMatrix proj = gi.block(a, 0, c, a + c);
    const Rational expected = abs(determinant(g));
    CHECK(exact_sequence_det(inc, proj) == expected);
    // any other section gives the same value
    const QMatrix section = g.columns(a, c) + inc * testing_support::random_integer_matrix(a, c, rng);
    CHECK(abs(determinant(hcat(inc, section))) == expected);
  }
  try {
    exact_sequence_det(QMatrix{{1}, {0}}, QMatrix{{1, 0}});
    FAIL("accepted a non-exact sequence");
  } catch (const AlgebraError& e) {
    CHECK(e.code() == "not_exact");
  }
  CHECK_THROWS_AS(exact_sequence_det(QMatrix{{1}, {0}, {0}}, QMatrix{{0, 1, 0}}), AlgebraError);
}

TEST_CASE("mv torsion composition") {
  const auto one = torsion_value(q(1));
  CHECK(exact_of(mv_torsion_compose(one, one, one, one)) == 1);
  CHECK(exact_of(mv_torsion_compose(torsion_value(q(6)), torsion_value(q(1, 2)), torsion_value(q(3)),
                                    torsion_value(q(1, 4)))) == 4);
}

TEST_CASE("Seifert MV scalar examples") {
  std::mt19937_64 rng(18);
  const auto trivial = validate_seifert(0, {{1, 0}, {1, 0}});
  const QMatrix f2{{1, 0}, {0, 1}, {1, 1}};
  CHECK(seifert_mv_scalar(trivial, {1, 1}, f2, QMatrix::identity(1), rng) == 1);

  const auto one = validate_seifert(0, {{2, 1}});
  for (int trial = 0; trial < 5; ++trial) {
    QMatrix f = testing_support::random_integer_matrix(3, 1, rng);
    if (rank(f) != 1) continue;
    CHECK(seifert_mv_scalar(one, {1}, f, QMatrix::identity(2), rng) == 2);
  }

  const auto two = validate_seifert(1, {{2, 1}, {3, 1}});
  const QMatrix f = testing_support::random_integer_matrix(6, 4, rng);
  REQUIRE(rank(f) == 4);
  const QMatrix psi{{1, 2}, {-2, 1}};
  CHECK(seifert_mv_scalar(two, {1, 3}, f, psi, rng) == 270);

  CHECK_THROWS_AS(seifert_mv_scalar(two, {1, 2}, f, psi, rng), AlgebraError);
  CHECK_THROWS_AS(seifert_mv_scalar(two, {1}, f, psi, rng), InputError);
  CHECK_THROWS_AS(seifert_mv_scalar(two, {1, 3}, f, QMatrix::identity(3), rng), AlgebraError);
}

TEST_CASE("Seifert MV scalar on random instances") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> n_pick(1, 3), p_pick(1, 5), dim_pick(0, 4), extra_pick(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SeifertPair> pairs;
    std::vector<int> dims;
    Rational expected = 1;
    const int n = n_pick(rng);
    for (int i = 0; i < n; ++i) {
      const long p = p_pick(rng);
      long qq = std::uniform_int_distribution<long>(-6, 6)(rng);
      while (std::gcd(p, std::abs(qq)) != 1) ++qq;
      pairs.push_back({p, qq});
      dims.push_back(dim_pick(rng));
      for (int j = 0; j < dims.back(); ++j) expected *= p;
    }
    const auto s = validate_seifert(0, pairs);
    const std::size_t d = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
    const std::size_t k = extra_pick(rng);
    QMatrix f;
    do f = testing_support::random_integer_matrix(d + k, d, rng);
    while (rank(f) != d);
    const QMatrix psi = testing_support::random_invertible(k, rng);
    expected *= abs(determinant(psi));
    const Rational first = seifert_mv_scalar(s, dims, f, psi, rng);
    const Rational second = seifert_mv_scalar(s, dims, f, psi, rng);
    CHECK(first == expected);
    CHECK(second == first);
  }
}

TEST_CASE("SU(2) gluing assembly cancels the prefactor") {
  // tau_M1 = 1, tau_M2 = prod circle torsions of Ad at u_i^{r_i}, tau_N = 1,
  // and the Mayer-Vietoris scalar enters inverted; the result is prefactor^{-2}.
  const auto rs = lie::build_root_system(lie::Family::A, 1);
  const auto group = oracle::make_group(oracle::Group::SU, 2);
  std::mt19937_64 rng(20);
  for (const char* text : {"g=0; (2,1),(3,1),(5,1)", "g=1; (3,1),(4,-1)", "g=2; (5,2)"}) {
    const auto s = parse_seifert(text);
    for (const auto& label : enumerate_components(s, rs)) {
      TorsionValue tau_m2 = torsion_value(q(1));
      std::vector<int> dims;
      for (std::size_t i = 0; i < s.n(); ++i) {
        const auto w = lie::class_power(rs, label.u[i], inverse_mod(s.pairs[i].q, s.pairs[i].p));
        const auto ad = from_eigen(
            oracle::adjoint_matrix(group, oracle::torus_element(group.kind, 2, testing_support::as_doubles(w.coords))));
        const auto ct = circle_torsion(ad, 1e-7);
        tau_m2 = mv_torsion_compose(tau_m2, ct.torsion, torsion_value(q(1)), torsion_value(q(1)));
        dims.push_back(static_cast<int>(ct.fixed.cols()));
        CHECK(dims.back() == lie::centralizer_dim(rs, label.u[i]));
      }
      const std::size_t d = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
      QMatrix f;
      do f = testing_support::random_integer_matrix(d + 2, d, rng);
      while (rank(f) != d);
      const Rational mv = seifert_mv_scalar(s, dims, f, QMatrix::identity(2), rng);
      const auto tau_x = mv_torsion_compose(torsion_value(q(1)), tau_m2, torsion_value(q(1)), torsion_value(1 / mv));
      const double pre = torsion_prefactor(s, rs, label).value;
      CHECK(tau_x.magnitude * pre * pre == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("complex text round trip") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const QComplex cx = testing_support::random_complex(rng);
    std::stringstream buf;
    write_complex(buf, cx);
    const QComplex back = read_complex(buf);
    CHECK(back.dims == cx.dims);
    for (std::size_t k = 0; k < cx.d.size(); ++k) CHECK(back.d[k] == cx.d[k]);
  }
  std::istringstream bad("complex 2\ndims 1 1\nboundary 1 1 1\nx\n");
  CHECK_THROWS_AS(read_complex(bad), InputError);
  std::istringstream bad_shape("complex 2\ndims 1 2\nboundary 1 1 1\n1\n");
  CHECK_THROWS_AS(read_complex(bad_shape), InputError);
}

TEST_CASE("property suite runner") {
  const auto counts = suite::run_property_suite(7, 20);
  REQUIRE(counts.size() == 4);
  for (const auto& c : counts) {
    CHECK(c.total == 20);
    CHECK(c.passed == c.total);
  }
  const auto mv = suite::run_seifert_mv_suite(parse_seifert("g=0; (2,1),(3,1),(5,1)"), 8, 10);
  CHECK(mv.passed == 10);
  CHECK(mv.total == 10);
}
