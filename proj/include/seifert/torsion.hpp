#pragma once

#include "seifert/error.hpp"
#include "seifert/matrix.hpp"
#include "seifert/rational.hpp"
#include "seifert/seifert.hpp"

#include <cmath>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace seifert::torsion {

/// Finite chain complex C_0 <- C_1 <- ... <- C_N of based spaces. The
/// declared bases are the standard ones; d[k - 1] is the boundary C_k -> C_{k-1}.
template <class T>
struct BasedChainComplex {
  std::vector<std::size_t> dims;
  std::vector<Matrix<T>> d;
  double tolerance = kDefaultRankTolerance;

  std::size_t length() const { return dims.size(); }

  /// d_k : C_k -> C_{k-1}, with zero maps at both ends.
  Matrix<T> boundary(std::size_t k) const {
    if (k == 0) return Matrix<T>(0, dims.empty() ? 0 : dims[0]);
    if (k >= dims.size()) return Matrix<T>(dims.empty() ? 0 : dims.back(), 0);
    return d[k - 1];
  }

  void validate() const {
    if (d.size() + 1 != dims.size() && !(dims.empty() && d.empty()))
      throw AlgebraError("shape", "complex needs one boundary map per positive degree");
    for (std::size_t k = 1; k < dims.size(); ++k)
      if (d[k - 1].rows() != dims[k - 1] || d[k - 1].cols() != dims[k])
        throw AlgebraError("shape", "boundary d_" + std::to_string(k) + " has the wrong shape");
    for (std::size_t k = 2; k < dims.size(); ++k) {
      const Matrix<T> dd = d[k - 2] * d[k - 1];
      if (!dd.is_zero(FieldTraits<T>::exact ? 0.0 : 1e-12))
        throw AlgebraError("not_complex", "d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " is not zero");
    }
  }
};

/// Cycle representatives of a basis of H_k, one matrix per degree.
template <class T>
struct HomologyBasis {
  std::vector<Matrix<T>> cycles;
};

struct TorsionValue {
  double magnitude = 1.0;
  bool sign_defined = false;
  std::optional<Rational> exact;
};

inline TorsionValue torsion_value(const Rational& q) {
  const Rational a = q < 0 ? Rational(-q) : q;
  return TorsionValue{to_double(a), false, a};
}

inline TorsionValue torsion_value(double x) { return TorsionValue{std::abs(x), false, std::nullopt}; }

template <class T>
TorsionValue torsion_value_of(const T& x) {
  return torsion_value(x);
}

using RationalComplex = BasedChainComplex<Rational>;
using FloatComplex = BasedChainComplex<double>;

namespace detail {

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

/// Pivot columns of m: the standard vectors they index map to a basis of im m.
template <class T>
std::vector<std::size_t> pivot_columns(const Matrix<T>& m, double tol) {
  if (m.empty()) return {};
  return row_reduce(m, tol).pivots;
}

template <class T>
Matrix<T> select_columns(const Matrix<T>& m, const std::vector<std::size_t>& cols) {
  Matrix<T> out(m.rows(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = m(r, cols[c]);
  return out;
}

template <class T>
Matrix<T> unit_columns(std::size_t n, const std::vector<std::size_t>& cols) {
  Matrix<T> out(n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) out(cols[c], c) = T(1);
  return out;
}

template <class T>
T integer_power(T base, long e) {
  if (e < 0) return T(1) / integer_power(base, -e);
  T out(1);
  while (e-- > 0) out *= base;
  return out;
}

}  // namespace detail

template <class T>
std::vector<std::size_t> betti_numbers(const BasedChainComplex<T>& cx) {
  std::vector<std::size_t> out(cx.length());
  for (std::size_t k = 0; k < cx.length(); ++k)
    out[k] = cx.dims[k] - rank(cx.boundary(k), cx.tolerance) - rank(cx.boundary(k + 1), cx.tolerance);
  return out;
}

template <class T>
long euler_characteristic(const BasedChainComplex<T>& cx) {
  long chi = 0;
  for (std::size_t k = 0; k < cx.length(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(cx.dims[k]);
  return chi;
}

/// A homology basis: kernel vectors completing a basis of the image. In
/// float mode the chosen cycles are orthonormal and orthogonal to the image.
/// The choice is not canonical.
template <class T>
HomologyBasis<T> homology_basis(const BasedChainComplex<T>& cx) {
  HomologyBasis<T> hb;
  for (std::size_t k = 0; k < cx.length(); ++k) {
    const Matrix<T> image = column_basis(cx.boundary(k + 1), cx.tolerance);
    const Matrix<T> kernel = nullspace(cx.boundary(k), cx.tolerance);
    if constexpr (FieldTraits<T>::exact) {
      const Matrix<T> both = hcat(image, kernel);
      const auto piv = detail::pivot_columns(both, cx.tolerance);
      std::vector<std::size_t> extra;
      for (auto p : piv)
        if (p >= image.cols()) extra.push_back(p);
      hb.cycles.push_back(detail::select_columns(both, extra));
    } else {
      const Matrix<double> q = orthonormal_columns(hcat(image, kernel), cx.tolerance);
      const std::size_t r = orthonormal_columns(image, cx.tolerance).cols();
      hb.cycles.push_back(q.columns(r, q.cols() - r));
    }
  }
  return hb;
}

/// Coordinates of the classes of the cycles z (columns) in the basis hb_k.
template <class T>
Matrix<T> homology_coordinates(const BasedChainComplex<T>& cx, const HomologyBasis<T>& hb, std::size_t k,
                               const Matrix<T>& z) {
  const Matrix<T>& h = hb.cycles[k];
  const Matrix<T> image = column_basis(cx.boundary(k + 1), cx.tolerance);
  const auto sol = solve(hcat(h, image), z, cx.tolerance);
  if (!sol) throw AlgebraError("not_cycle", "vector is not a cycle modulo boundaries in degree " + std::to_string(k));
  return sol->block(0, 0, h.cols(), z.cols());
}

template <class T>
void check_homology_basis(const BasedChainComplex<T>& cx, const HomologyBasis<T>& hb) {
  auto fail = [](std::size_t k) {
    throw AlgebraError("homology_basis", "invalid homology basis, degree " + std::to_string(k));
  };
  if (hb.cycles.size() != cx.length()) fail(hb.cycles.size());
  const auto b = betti_numbers(cx);
  for (std::size_t k = 0; k < cx.length(); ++k) {
    const Matrix<T>& h = hb.cycles[k];
    if (h.cols() != b[k] || (h.cols() > 0 && h.rows() != cx.dims[k])) fail(k);
    if (h.cols() == 0) continue;
    const double tol = FieldTraits<T>::exact ? 0.0 : 1e-9 * std::max(1.0, h.max_abs());
    if (!(cx.boundary(k) * h).is_zero(tol)) fail(k);
    const Matrix<T> image = column_basis(cx.boundary(k + 1), cx.tolerance);
    if (rank(hcat(image, h), cx.tolerance) != image.cols() + h.cols()) fail(k);
  }
}

/// Milnor torsion relative to hb: prod_k |det[d b_{k+1}, h_k, b_k]|^{(-1)^{k+1}}
/// with b_k the standard vectors at the pivot columns of d_k. For the circle
/// complex R^d -(phi - 1)-> R^d this is det^{-1}((phi - 1)|H^perp).
template <class T>
TorsionValue chain_torsion(const BasedChainComplex<T>& cx, const HomologyBasis<T>& hb) {
  cx.validate();
  check_homology_basis(cx, hb);
  T tau(1);
  for (std::size_t k = 0; k < cx.length(); ++k) {
    const Matrix<T> up = cx.boundary(k + 1);
    const Matrix<T> down = cx.boundary(k);
    const Matrix<T> boundaries = detail::select_columns(up, detail::pivot_columns(up, cx.tolerance));
    const Matrix<T> lifts = detail::unit_columns<T>(cx.dims[k], detail::pivot_columns(down, cx.tolerance));
    Matrix<T> basis = hcat(hcat(boundaries, hb.cycles[k].cols() ? hb.cycles[k] : Matrix<T>(cx.dims[k], 0)), lifts);
    if (basis.rows() == 0 && basis.cols() == 0) continue;
    if (basis.rows() != basis.cols())
      throw AlgebraError("homology_basis", "invalid homology basis, degree " + std::to_string(k));
    const T det = detail::abs_value(determinant(basis));
    if (FieldTraits<T>::is_zero(det, 0.0))
      throw AlgebraError("homology_basis", "invalid homology basis, degree " + std::to_string(k));
    tau = (k % 2 == 0) ? T(tau / det) : T(tau * det);
  }
  return torsion_value_of(tau);
}

template <class T>
TorsionValue chain_torsion(const BasedChainComplex<T>& acyclic) {
  HomologyBasis<T> hb;
  for (auto n : acyclic.dims) hb.cycles.push_back(Matrix<T>(n, 0));
  return chain_torsion(acyclic, hb);
}

template <class T>
BasedChainComplex<T> direct_sum(const BasedChainComplex<T>& a, const BasedChainComplex<T>& b) {
  BasedChainComplex<T> out;
  const std::size_t n = std::max(a.length(), b.length());
  auto dim = [](const BasedChainComplex<T>& c, std::size_t k) { return k < c.length() ? c.dims[k] : 0; };
  auto bd = [&](const BasedChainComplex<T>& c, std::size_t k) {
    return k < c.length() ? c.boundary(k) : Matrix<T>(dim(c, k - 1), 0);
  };
  for (std::size_t k = 0; k < n; ++k) out.dims.push_back(dim(a, k) + dim(b, k));
  for (std::size_t k = 1; k < n; ++k) {
    Matrix<T> da = bd(a, k), db = bd(b, k);
    if (da.rows() != dim(a, k - 1)) da = Matrix<T>(dim(a, k - 1), dim(a, k));
    if (db.rows() != dim(b, k - 1)) db = Matrix<T>(dim(b, k - 1), dim(b, k));
    out.d.push_back(seifert::direct_sum(da, db));
  }
  out.tolerance = std::min(a.tolerance, b.tolerance);
  return out;
}

template <class T>
HomologyBasis<T> direct_sum(const BasedChainComplex<T>& a, const HomologyBasis<T>& ha, const BasedChainComplex<T>& b,
                            const HomologyBasis<T>& hb) {
  HomologyBasis<T> out;
  const std::size_t n = std::max(a.length(), b.length());
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix<T> x = k < a.length() ? ha.cycles[k] : Matrix<T>(0, 0);
    const Matrix<T> y = k < b.length() ? hb.cycles[k] : Matrix<T>(0, 0);
    Matrix<T> xs = x.rows() == 0 && k < a.length() ? Matrix<T>(a.dims[k], x.cols()) : x;
    Matrix<T> ys = y.rows() == 0 && k < b.length() ? Matrix<T>(b.dims[k], y.cols()) : y;
    out.cycles.push_back(seifert::direct_sum(xs, ys));
  }
  return out;
}

/// Algebraic Kunneth model: (C (x) D)_n = sum_{i+j=n} C_i (x) D_j, blocks ordered by i,
/// d(a (x) b) = da (x) b + (-1)^i a (x) db. Homology basis from Kronecker products.
template <class T>
std::pair<BasedChainComplex<T>, HomologyBasis<T>> tensor_product(const BasedChainComplex<T>& c,
                                                                 const HomologyBasis<T>& hc,
                                                                 const BasedChainComplex<T>& e,
                                                                 const HomologyBasis<T>& he) {
  const std::size_t nc = c.length(), ne = e.length();
  const std::size_t n = nc + ne - 1;
  // offsets[n][i] = offset of block C_i (x) D_{n-i} in degree n
  std::vector<std::vector<std::size_t>> offset(n, std::vector<std::size_t>(nc, 0));
  BasedChainComplex<T> out;
  for (std::size_t deg = 0; deg < n; ++deg) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < nc; ++i) {
      offset[deg][i] = total;
      if (deg >= i && deg - i < ne) total += c.dims[i] * e.dims[deg - i];
    }
    out.dims.push_back(total);
  }
  for (std::size_t deg = 1; deg < n; ++deg) {
    Matrix<T> m(out.dims[deg - 1], out.dims[deg]);
    for (std::size_t i = 0; i < nc; ++i) {
      if (deg < i || deg - i >= ne) continue;
      const std::size_t j = deg - i;
      if (i >= 1)
        m.set_block(offset[deg - 1][i - 1], offset[deg][i],
                    kronecker(c.boundary(i), Matrix<T>::identity(e.dims[j])));
      if (j >= 1) {
        Matrix<T> blk = kronecker(Matrix<T>::identity(c.dims[i]), e.boundary(j));
        if (i % 2 == 1) blk = blk.scaled(T(-1));
        m.set_block(offset[deg - 1][i], offset[deg][i], blk);
      }
    }
    out.d.push_back(std::move(m));
  }
  HomologyBasis<T> hb;
  for (std::size_t deg = 0; deg < n; ++deg) {
    Matrix<T> cols(out.dims[deg], 0);
    for (std::size_t i = 0; i < nc; ++i) {
      if (deg < i || deg - i >= ne) continue;
      const Matrix<T> prod = kronecker(hc.cycles[i], he.cycles[deg - i]);
      if (prod.cols() == 0) continue;
      Matrix<T> placed(out.dims[deg], prod.cols());
      placed.set_block(offset[deg][i], 0, prod);
      cols = hcat(cols, placed);
    }
    hb.cycles.push_back(cols);
  }
  out.tolerance = std::min(c.tolerance, e.tolerance);
  return {std::move(out), std::move(hb)};
}

/// tau_1^{chi_2} tau_2^{chi_1}.
TorsionValue kunneth_torsion(const TorsionValue& t1, long chi1, const TorsionValue& t2, long chi2);

template <class T>
struct CircleTorsion {
  TorsionValue torsion;
  /// Columns spanning H = ker(phi - id).
  Matrix<T> fixed;
};

/// |det((phi - id) restricted to H^perp)|^{-1}, phi orthogonal.
template <class T>
CircleTorsion<T> circle_torsion(const Matrix<T>& phi, double tol = kDefaultRankTolerance) {
  if (phi.rows() != phi.cols()) throw AlgebraError("shape", "holonomy must be square");
  const std::size_t n = phi.rows();
  const Matrix<T> a = phi - Matrix<T>::identity(n);
  Matrix<T> h = nullspace(a, tol);
  T det(1);
  if constexpr (FieldTraits<T>::exact) {
    const Matrix<T> b = h.cols() ? nullspace(h.transpose(), tol) : Matrix<T>::identity(n);
    if (b.cols() > 0) {
      const Matrix<T> bt = b.transpose();
      det = determinant(inverse(bt * b) * (bt * a * b));
    }
  } else {
    h = orthonormal_columns(h, tol);
    const Matrix<T> b = h.cols() ? orthonormal_columns(nullspace(h.transpose(), tol), tol) : Matrix<T>::identity(n);
    if (b.cols() > 0) det = determinant(b.transpose() * a * b);
  }
  return CircleTorsion<T>{torsion_value_of(T(T(1) / detail::abs_value(det))), h};
}

/// Cellular model of a circle with holonomy phi: R^d -(phi - id)-> R^d, with
/// H_0 and H_1 both based by ker(phi - id).
template <class T>
std::pair<BasedChainComplex<T>, HomologyBasis<T>> circle_complex(const Matrix<T>& phi,
                                                                 double tol = kDefaultRankTolerance) {
  const std::size_t n = phi.rows();
  BasedChainComplex<T> cx{{n, n}, {phi - Matrix<T>::identity(n)}, tol};
  Matrix<T> h = nullspace(cx.d[0], tol);
  if constexpr (!FieldTraits<T>::exact) h = orthonormal_columns(h, tol);
  return {cx, HomologyBasis<T>{{h, h}}};
}

/// For 0 -> A -i-> B -pi-> C -> 0 exact, |det[i | s]| for a section s of pi
/// (pi s = id); independent of s.
template <class T>
T exact_sequence_det(const Matrix<T>& i, const Matrix<T>& pi, double tol = kDefaultRankTolerance) {
  const std::size_t a = i.cols(), b = i.rows(), c = pi.rows();
  if (pi.cols() != b && !(b == 0)) throw AlgebraError("shape", "exact sequence maps do not compose");
  const std::size_t ri = rank(i, tol), rp = rank(pi, tol);
  const double ztol = FieldTraits<T>::exact ? 0.0 : 1e-9;
  if (ri != a || rp != c || a + c != b || (a > 0 && c > 0 && !(pi * i).is_zero(ztol)))
    throw AlgebraError("not_exact", "sequence 0 -> A -> B -> C -> 0 is not exact");
  Matrix<T> s(b, 0);
  if (c > 0) {
    const auto sol = solve(pi, Matrix<T>::identity(c), tol);
    if (!sol) throw AlgebraError("not_exact", "projection has no section");
    s = *sol;
  }
  if (b == 0) return T(1);
  return detail::abs_value(determinant(hcat(a ? i : Matrix<T>(b, 0), s)));
}

/// tau_M = tau_M1 tau_M2 / (tau_N mv_scalar).
TorsionValue mv_torsion_compose(const TorsionValue& m1, const TorsionValue& m2, const TorsionValue& n,
                                const TorsionValue& mv_scalar);

/// Short exact sequence of chain complexes 0 -> sub -incl-> whole -proj-> quotient -> 0.
/// incl[k], proj[k] are the degree-k components.
template <class T>
struct ShortExactSequence {
  BasedChainComplex<T> sub, whole, quotient;
  std::vector<Matrix<T>> incl, proj;
};

/// The long exact homology sequence as an acyclic based complex, with
/// H_k(quotient) in degree 3k, H_k(whole) in 3k + 1 and H_k(sub) in 3k + 2,
/// each based by the given homology bases.
template <class T>
BasedChainComplex<T> long_exact_sequence(const ShortExactSequence<T>& ses, const HomologyBasis<T>& h_sub,
                                         const HomologyBasis<T>& h_whole, const HomologyBasis<T>& h_quot) {
  const std::size_t n = ses.whole.length();
  const double tol = ses.whole.tolerance;
  BasedChainComplex<T> les;
  les.tolerance = tol;
  for (std::size_t k = 0; k < n; ++k) {
    les.dims.push_back(h_quot.cycles[k].cols());
    les.dims.push_back(h_whole.cycles[k].cols());
    les.dims.push_back(h_sub.cycles[k].cols());
  }
  for (std::size_t deg = 1; deg < les.dims.size(); ++deg) {
    const std::size_t k = deg / 3;
    Matrix<T> m(les.dims[deg - 1], les.dims[deg]);
    if (deg % 3 == 2) {
      // i_* : H_k(sub) -> H_k(whole)
      if (m.cols() && m.rows()) m = homology_coordinates(ses.whole, h_whole, k, ses.incl[k] * h_sub.cycles[k]);
    } else if (deg % 3 == 1) {
      // j_* : H_k(whole) -> H_k(quotient)
      if (m.cols() && m.rows()) m = homology_coordinates(ses.quotient, h_quot, k, ses.proj[k] * h_whole.cycles[k]);
    } else if (m.cols() && m.rows()) {
      // connecting map H_k(quotient) -> H_{k-1}(sub)
      const auto lift = solve(ses.proj[k], h_quot.cycles[k], tol);
      if (!lift) throw AlgebraError("not_exact", "projection is not onto in degree " + std::to_string(k));
      const Matrix<T> y = ses.whole.boundary(k) * *lift;
      const auto pulled = solve(ses.incl[k - 1], y, tol);
      if (!pulled) throw AlgebraError("not_exact", "boundary of a lift is not in the subcomplex");
      m = homology_coordinates(ses.sub, h_sub, k - 1, *pulled);
    }
    les.d.push_back(std::move(m));
  }
  return les;
}

/// Scalar of the Seifert Mayer-Vietoris sequence built from the three short
/// exact sequences 0 -> V -f-> H1(S) -h-> H2(X) -> 0,
/// 0 -> V + V -[[f,0],[q,p]]-> H1(S) + V -[g,0]-> H1(X) -> 0 and 0 -> V -id-> V -> 0,
/// where g is the projection along im f and h = psi g. Returns
/// D(seq 3) D(seq 7) / D(seq 2), which equals prod p_i^{dim V_i} |det psi|.
/// Completions (complement of im f, sections) are drawn from rng.
Rational seifert_mv_scalar(const SeifertData& s, const std::vector<int>& dims, const Matrix<Rational>& f,
                           const Matrix<Rational>& psi, std::mt19937_64& rng);

/// Plain-text round trip: "complex <length>", "dims d_0 .. d_N", then for
/// each k >= 1 "boundary k <rows> <cols>" followed by row-major rationals.
void write_complex(std::ostream& out, const RationalComplex& cx);
RationalComplex read_complex(std::istream& in);

}  // namespace seifert::torsion
