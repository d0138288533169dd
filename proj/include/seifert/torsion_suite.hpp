#pragma once

// Random based chain complexes over Q and the self-check suite built on them.

#include "seifert/seifert.hpp"
#include "seifert/torsion.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace seifert::torsion::suite {

using QMatrix = Matrix<Rational>;
using QComplex = BasedChainComplex<Rational>;

inline QMatrix random_integer_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, int spread = 3) {
  std::uniform_int_distribution<int> pick(-spread, spread);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(pick(rng));
  return m;
}

inline QMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    QMatrix m = random_integer_matrix(n, n, rng);
    if (rank(m) == n) return m;
  }
}

/// Block upper triangular invertible matrix with a fixed leading block.
inline QMatrix extend_invertible(const QMatrix& lead, std::size_t extra, std::mt19937_64& rng) {
  const std::size_t n = lead.rows();
  QMatrix g(n + extra, n + extra);
  g.set_block(0, 0, lead);
  g.set_block(0, n, random_integer_matrix(n, extra, rng));
  g.set_block(n, n, random_invertible(extra, rng));
  return g;
}

/// Conjugates a complex by per-degree changes of basis: d_k -> G_{k-1} d_k G_k^{-1}.
inline QComplex conjugate(const QComplex& s, const std::vector<QMatrix>& g) {
  QComplex out = s;
  for (std::size_t k = 1; k < s.length(); ++k)
    out.d[k - 1] = g[k - 1] * s.d[k - 1] * inverse(g[k]);
  return out;
}

/// Standard form: each C_k = [boundaries | homology | lifts], with d_k the
/// identity from lifts of C_k onto boundaries of C_{k-1}.
inline QComplex standard_complex(const std::vector<std::size_t>& betti, const std::vector<std::size_t>& ranks) {
  // ranks[k] = rank d_k, ranks[0] = 0
  const std::size_t n = betti.size();
  QComplex cx;
  auto r = [&](std::size_t k) { return k < n ? ranks[k] : 0; };
  for (std::size_t k = 0; k < n; ++k) cx.dims.push_back(r(k + 1) + betti[k] + r(k));
  for (std::size_t k = 1; k < n; ++k) {
    QMatrix m(cx.dims[k - 1], cx.dims[k]);
    for (std::size_t j = 0; j < r(k); ++j) m(j, r(k + 1) + betti[k] + j) = Rational(1);
    cx.d.push_back(m);
  }
  return cx;
}

inline QComplex random_complex(std::mt19937_64& rng, std::size_t max_length = 4, std::size_t max_part = 2) {
  std::uniform_int_distribution<std::size_t> len(1, max_length), part(0, max_part);
  const std::size_t n = len(rng);
  std::vector<std::size_t> betti(n), ranks(n, 0);
  for (auto& b : betti) b = part(rng);
  for (std::size_t k = 1; k < n; ++k) ranks[k] = part(rng);
  const QComplex s = standard_complex(betti, ranks);
  std::vector<QMatrix> g;
  for (auto dim : s.dims) g.push_back(random_invertible(dim, rng));
  return conjugate(s, g);
}

/// Random homology basis: the helper's basis, recombined and shifted by boundaries.
inline HomologyBasis<Rational> random_homology_basis(const QComplex& cx, std::mt19937_64& rng) {
  auto hb = homology_basis(cx);
  for (std::size_t k = 0; k < cx.length(); ++k) {
    auto& h = hb.cycles[k];
    if (h.cols() == 0) continue;
    h = h * random_invertible(h.cols(), rng);
    const QMatrix up = cx.boundary(k + 1);
    if (up.cols() > 0) h = h + up * random_integer_matrix(up.cols(), h.cols(), rng);
  }
  return hb;
}

/// Algebraic gluing model: cells N, A, B with N, N + A and N + B subcomplexes.
struct GluingModel {
  QComplex n, m1, m2, m;
  std::vector<std::size_t> a_dims, b_dims;
};

namespace detail {

struct Piece {
  // standard-form cells added on top of N in one degree
  std::size_t n_dim = 0;
  std::size_t extra = 0;
};

/// Extends the standard complex s_n (N) by new cells: some N homology classes
/// are killed by new cells, new boundary pairs and new homology classes are added.
inline QComplex extend_standard(const QComplex& s_n, const std::vector<std::size_t>& betti_n,
                                const std::vector<std::size_t>& ranks_n, std::vector<std::size_t>& extra,
                                std::mt19937_64& rng) {
  const std::size_t len = s_n.length();
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<std::size_t> part(0, 2);
  // new cells per degree: kill cells (hitting N homology), new pairs, new homology
  std::vector<std::vector<std::size_t>> kills(len);  // kills[k] lists N homology indices in degree k - 1
  std::vector<std::size_t> pairs(len + 1, 0), homs(len, 0);
  for (std::size_t k = 1; k < len; ++k)
    for (std::size_t j = 0; j < betti_n[k - 1]; ++j)
      if (coin(rng) == 0) kills[k].push_back(j);
  for (std::size_t k = 1; k < len; ++k) pairs[k] = part(rng) / 2;
  for (std::size_t k = 0; k < len; ++k) homs[k] = part(rng) / 2;
  extra.assign(len, 0);
  for (std::size_t k = 0; k < len; ++k) extra[k] = kills[k].size() + pairs[k] + pairs[k + 1] + homs[k];
  // extra cell layout in degree k: [kill lifts | pair lifts | pair boundaries (for d_{k+1}) | homology]
  QComplex out;
  for (std::size_t k = 0; k < len; ++k) out.dims.push_back(s_n.dims[k] + extra[k]);
  for (std::size_t k = 1; k < len; ++k) {
    QMatrix m(out.dims[k - 1], out.dims[k]);
    m.set_block(0, 0, s_n.d[k - 1]);
    const std::size_t hom_off = ranks_n.size() > k ? ranks_n[k] : 0;  // N homology of degree k-1 sits after its boundaries
    for (std::size_t j = 0; j < kills[k].size(); ++j) m(hom_off + kills[k][j], s_n.dims[k] + j) = Rational(1);
    const std::size_t lift0 = s_n.dims[k] + kills[k].size();
    const std::size_t bdry0 = s_n.dims[k - 1] + kills[k - 1].size() + pairs[k - 1];
    for (std::size_t j = 0; j < pairs[k]; ++j) m(bdry0 + j, lift0 + j) = Rational(1);
    out.d.push_back(m);
  }
  return out;
}

}  // namespace detail

inline GluingModel random_gluing(std::mt19937_64& rng, std::size_t max_length = 3) {
  std::uniform_int_distribution<std::size_t> len_pick(1, max_length), part(0, 2);
  const std::size_t len = len_pick(rng);
  std::vector<std::size_t> betti(len), ranks(len, 0);
  for (auto& b : betti) b = part(rng);
  for (std::size_t k = 1; k < len; ++k) ranks[k] = part(rng) / 2;
  const QComplex s_n = standard_complex(betti, ranks);

  std::vector<std::size_t> a_extra, b_extra;
  const QComplex s1 = detail::extend_standard(s_n, betti, ranks, a_extra, rng);
  const QComplex s2 = detail::extend_standard(s_n, betti, ranks, b_extra, rng);

  std::vector<QMatrix> g_n, g1, g2;
  for (std::size_t k = 0; k < len; ++k) {
    g_n.push_back(random_invertible(s_n.dims[k], rng));
    g1.push_back(extend_invertible(g_n.back(), a_extra[k], rng));
    g2.push_back(extend_invertible(g_n.back(), b_extra[k], rng));
  }
  GluingModel gm;
  gm.n = conjugate(s_n, g_n);
  gm.m1 = conjugate(s1, g1);
  gm.m2 = conjugate(s2, g2);
  gm.a_dims = a_extra;
  gm.b_dims = b_extra;
  for (std::size_t k = 0; k < len; ++k) gm.m.dims.push_back(gm.n.dims[k] + a_extra[k] + b_extra[k]);
  for (std::size_t k = 1; k < len; ++k) {
    const std::size_t nr = gm.n.dims[k - 1], nc = gm.n.dims[k];
    const QMatrix& d1 = gm.m1.d[k - 1];
    const QMatrix& d2 = gm.m2.d[k - 1];
    QMatrix m(gm.m.dims[k - 1], gm.m.dims[k]);
    m.set_block(0, 0, d1);
    m.set_block(0, nc + a_extra[k], d2.block(0, nc, nr, b_extra[k]));
    m.set_block(nr + a_extra[k - 1], nc + a_extra[k], d2.block(nr, nc, b_extra[k - 1], b_extra[k]));
    gm.m.d.push_back(m);
  }
  return gm;
}

/// 0 -> N -> M1 + M2 -> M -> 0 with n -> (n, n) and (x1, x2) -> x1 - x2.
inline ShortExactSequence<Rational> gluing_sequence(const GluingModel& gm) {
  ShortExactSequence<Rational> ses;
  ses.sub = gm.n;
  ses.whole = direct_sum(gm.m1, gm.m2);
  ses.quotient = gm.m;
  for (std::size_t k = 0; k < gm.n.length(); ++k) {
    const std::size_t n = gm.n.dims[k], a = gm.a_dims[k], b = gm.b_dims[k];
    QMatrix incl(2 * n + a + b, n);
    QMatrix proj(n + a + b, 2 * n + a + b);
    for (std::size_t i = 0; i < n; ++i) {
      incl(i, i) = Rational(1);
      incl(n + a + i, i) = Rational(1);
      proj(i, i) = Rational(1);
      proj(i, n + a + i) = Rational(-1);
    }
    for (std::size_t i = 0; i < a; ++i) proj(n + i, n + i) = Rational(1);
    for (std::size_t i = 0; i < b; ++i) proj(n + a + i, 2 * n + a + i) = Rational(-1);
    ses.incl.push_back(incl);
    ses.proj.push_back(proj);
  }
  return ses;
}

/// Rational orthogonal matrix: a Cayley rotation conjugating identity(h) + Cayley(n - h).
QMatrix random_rational_orthogonal(std::size_t n, std::size_t h, std::mt19937_64& rng);

struct PropertyCount {
  std::string name;
  int passed = 0;
  int total = 0;
};

/// Direct sum, Kunneth, gluing Mayer-Vietoris and circle model checks on
/// `count` random instances each, in exact arithmetic.
std::vector<PropertyCount> run_property_suite(std::uint64_t seed, int count);

/// seifert_mv_scalar against prod p_i^{dim V_i} |det psi| on `count` random
/// (dims, f, psi) for the pairs of s; two independent completions each.
PropertyCount run_seifert_mv_suite(const SeifertData& s, std::uint64_t seed, int count);

}  // namespace seifert::torsion::suite
