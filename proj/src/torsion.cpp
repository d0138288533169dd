#include "seifert/torsion.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace seifert::torsion {

namespace {

TorsionValue power(const TorsionValue& t, long e) {
  TorsionValue out;
  out.magnitude = std::pow(t.magnitude, static_cast<double>(e));
  if (t.exact && (e >= 0 || *t.exact != 0)) out.exact = detail::integer_power(*t.exact, e);
  return out;
}

TorsionValue times(const TorsionValue& a, const TorsionValue& b) {
  TorsionValue out;
  out.magnitude = a.magnitude * b.magnitude;
  if (a.exact && b.exact) out.exact = *a.exact * *b.exact;
  return out;
}

TorsionValue reciprocal(const TorsionValue& t) {
  if (t.magnitude == 0.0 || (t.exact && *t.exact == 0)) throw AlgebraError("zero_torsion", "torsion is zero");
  return power(t, -1);
}

}  // namespace

TorsionValue kunneth_torsion(const TorsionValue& t1, long chi1, const TorsionValue& t2, long chi2) {
  return times(power(t1, chi2), power(t2, chi1));
}

TorsionValue mv_torsion_compose(const TorsionValue& m1, const TorsionValue& m2, const TorsionValue& n,
                                const TorsionValue& mv_scalar) {
  return times(times(m1, m2), reciprocal(times(n, mv_scalar)));
}

Rational seifert_mv_scalar(const SeifertData& s, const std::vector<int>& dims, const Matrix<Rational>& f,
                           const Matrix<Rational>& psi, std::mt19937_64& rng) {
  using M = Matrix<Rational>;
  if (dims.size() != s.pairs.size()) throw InputError("dims", "dims", "one dim V_i per exceptional fibre is required");
  std::size_t d = 0;
  for (int x : dims) {
    if (x < 0) throw InputError("dims", "dims", "dim V_i must be >= 0");
    d += static_cast<std::size_t>(x);
  }
  const std::size_t m = f.rows();
  if (f.cols() != d || m < d) throw AlgebraError("shape", "f must be m x sum(dim V_i) with m >= sum(dim V_i)");
  const std::size_t k = m - d;
  if (psi.rows() != k || psi.cols() != k) throw AlgebraError("shape", "psi must be square of size m - sum(dim V_i)");
  if (rank(f) != d) throw AlgebraError("not_exact", "f is not injective");
  if (rank(psi) != k) throw AlgebraError("not_exact", "psi is not invertible");

  M p(d, d), q(d, d);
  for (std::size_t i = 0, off = 0; i < dims.size(); ++i)
    for (int j = 0; j < dims[i]; ++j, ++off) {
      p(off, off) = Rational(s.pairs[i].p);
      q(off, off) = Rational(s.pairs[i].q);
    }

  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_matrix = [&](std::size_t r, std::size_t c) {
    M out(r, c);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) out(a, b) = Rational(coeff(rng));
    return out;
  };
  M beta;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) throw AlgebraError("not_exact", "no complement of im f found");
    beta = random_matrix(m, k);
    if (rank(hcat(f, beta)) == m) break;
  }
  const M g = inverse(hcat(f, beta)).block(d, 0, k, m);

  // sections of g and h = psi g
  const M s_g = beta + f * random_matrix(d, k);
  const M s_h = beta * inverse(psi) + f * random_matrix(d, k);

  const Rational d2 = exact_sequence_det(f, M(psi * g), 0.0);
  if (d2 != detail::abs_value(determinant(hcat(f, s_h)))) throw AlgebraError("not_exact", "section mismatch");
  M f3(m + d, 2 * d);
  f3.set_block(0, 0, f);
  f3.set_block(m, 0, q);
  f3.set_block(m, d, p);
  M sec3(m + d, k);
  sec3.set_block(0, 0, s_g);
  const Rational d3 = detail::abs_value(determinant(hcat(f3, sec3)));
  const Rational d7 = 1;
  return d3 * d7 / d2;
}

void write_complex(std::ostream& out, const RationalComplex& cx) {
  out << "complex " << cx.length() << "\n";
  out << "dims";
  for (auto n : cx.dims) out << ' ' << n;
  out << "\n";
  for (std::size_t k = 1; k < cx.length(); ++k) {
    const auto& m = cx.d[k - 1];
    out << "boundary " << k << ' ' << m.rows() << ' ' << m.cols() << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << to_string(m(r, c));
      out << "\n";
    }
  }
}

RationalComplex read_complex(std::istream& in) {
  auto fail = [](const std::string& what) -> void { throw InputError("complex_syntax", "complex", what); };
  std::string word;
  std::size_t length = 0;
  if (!(in >> word >> length) || word != "complex") fail("expected 'complex <length>'");
  if (!(in >> word) || word != "dims") fail("expected 'dims'");
  RationalComplex cx;
  for (std::size_t k = 0; k < length; ++k) {
    std::size_t n = 0;
    if (!(in >> n)) fail("expected " + std::to_string(length) + " dimensions");
    cx.dims.push_back(n);
  }
  for (std::size_t k = 1; k < length; ++k) {
    std::size_t deg = 0, rows = 0, cols = 0;
    if (!(in >> word >> deg >> rows >> cols) || word != "boundary" || deg != k)
      fail("expected 'boundary " + std::to_string(k) + " <rows> <cols>'");
    if (rows != cx.dims[k - 1] || cols != cx.dims[k]) fail("boundary " + std::to_string(k) + " has the wrong shape");
    Matrix<Rational> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        if (!(in >> word)) fail("matrix entries truncated in boundary " + std::to_string(k));
        try {
          m(r, c) = parse_rational(word);
        } catch (const Error&) {
          fail("bad rational '" + word + "'");
        }
      }
    cx.d.push_back(std::move(m));
  }
  cx.validate();
  return cx;
}

}  // namespace seifert::torsion
