#pragma once

#include "seifert/error.hpp"
#include "seifert/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace seifert {

/// Pivoting and zero tests for the two scalar fields used by the torsion
/// calculus. Rationals are exact; doubles use an absolute tolerance.
template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double = 0.0) { return x == 0; }
  static double magnitude(const Rational& x) { return std::abs(to_double(x)); }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(double x) { return std::abs(x); }
};

inline constexpr double kDefaultRankTolerance = 1e-9;

/// Dense row-major matrix over Rational or double.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw AlgebraError("shape", "ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void set_column(std::size_t c, std::span<const T> values) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const {
    Matrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw AlgebraError("shape", "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw AlgebraError("shape", "matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw AlgebraError("shape", "matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  Matrix scaled(const T& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  bool operator==(const Matrix& o) const = default;

  bool is_zero(double tol = kDefaultRankTolerance) const {
    return std::all_of(data_.begin(), data_.end(), [&](const T& x) { return FieldTraits<T>::is_zero(x, tol); });
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, FieldTraits<T>::magnitude(x));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw AlgebraError("shape", "hcat row mismatch");
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

template <class T>
Matrix<T> vcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw AlgebraError("shape", "vcat column mismatch");
  Matrix<T> out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

/// Block-diagonal direct sum.
template <class T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

/// Kronecker product a (x) b.
template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Reduced row echelon form together with the pivot columns.
template <class T>
struct Echelon {
  Matrix<T> rref;
  std::vector<std::size_t> pivots;
};

template <class T>
Echelon<T> row_reduce(Matrix<T> m, double tol = kDefaultRankTolerance) {
  using F = FieldTraits<T>;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    double best_mag = 0.0;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (F::is_zero(m(r, col), tol)) continue;
      if constexpr (F::exact) {
        best = r;
        break;
      } else {
        if (F::magnitude(m(r, col)) > best_mag) {
          best_mag = F::magnitude(m(r, col));
          best = r;
        }
      }
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
    const T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == T(0)) continue;
      const T factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m, double tol = kDefaultRankTolerance) {
  if (m.empty()) return 0;
  return row_reduce(m, tol).pivots.size();
}

/// Determinant by Gaussian elimination (partial pivoting in float mode).
template <class T>
T determinant(Matrix<T> m, double tol = 0.0) {
  using F = FieldTraits<T>;
  if (m.rows() != m.cols()) throw AlgebraError("shape", "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    double best_mag = 0.0;
    for (std::size_t r = col; r < n; ++r) {
      if (F::is_zero(m(r, col), tol)) continue;
      if constexpr (F::exact) {
        best = r;
        break;
      } else {
        if (F::magnitude(m(r, col)) > best_mag) {
          best_mag = F::magnitude(m(r, col));
          best = r;
        }
      }
    }
    if (best == n) return T(0);
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(best, c));
      det = -det;
    }
    det *= m(col, col);
    const T inv = T(1) / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == T(0)) continue;
      const T factor = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

/// Columns spanning the kernel of m (RREF free-variable basis).
template <class T>
Matrix<T> nullspace(const Matrix<T>& m, double tol = kDefaultRankTolerance) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return Matrix<T>::identity(n);
  const auto ech = row_reduce(m, tol);
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  Matrix<T> basis(n, n - ech.pivots.size());
  std::size_t k = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = T(1);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) basis(ech.pivots[i], k) = -ech.rref(i, free);
    ++k;
  }
  return basis;
}

/// Some solution x of a x = b (b may have several columns), or nullopt when
/// the system is inconsistent.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b, double tol = kDefaultRankTolerance) {
  if (a.rows() != b.rows()) throw AlgebraError("shape", "solve: row mismatch");
  const std::size_t n = a.cols();
  Matrix<T> x(n, b.cols());
  if (a.rows() == 0) return x;
  const auto ech = row_reduce(hcat(a, b), tol);
  for (auto p : ech.pivots)
    if (p >= n) return std::nullopt;
  for (std::size_t i = 0; i < ech.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(ech.pivots[i], j) = ech.rref(i, n + j);
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a, double tol = kDefaultRankTolerance) {
  if (a.rows() != a.cols()) throw AlgebraError("shape", "inverse of a non-square matrix");
  auto x = solve(a, Matrix<T>::identity(a.rows()), tol);
  if (!x || rank(a, tol) != a.rows()) throw AlgebraError("singular", "inverse of a singular matrix");
  return *x;
}

/// Sub-selection of columns of m that is a basis of its column space.
template <class T>
Matrix<T> column_basis(const Matrix<T>& m, double tol = kDefaultRankTolerance) {
  if (m.empty()) return Matrix<T>(m.rows(), 0);
  const auto ech = row_reduce(m, tol);
  Matrix<T> out(m.rows(), ech.pivots.size());
  for (std::size_t k = 0; k < ech.pivots.size(); ++k)
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, k) = m(r, ech.pivots[k]);
  return out;
}

/// Modified Gram-Schmidt on the columns of m, dropping dependent columns.
inline Matrix<double> orthonormal_columns(const Matrix<double>& m, double tol = kDefaultRankTolerance) {
  std::vector<std::vector<double>> kept;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto v = m.column(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) {
        double dot = 0.0;
        for (std::size_t r = 0; r < v.size(); ++r) dot += q[r] * v[r];
        for (std::size_t r = 0; r < v.size(); ++r) v[r] -= dot * q[r];
      }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm <= tol) continue;
    for (double& x : v) x /= norm;
    kept.push_back(std::move(v));
  }
  Matrix<double> out(m.rows(), kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) out.set_column(c, kept[c]);
  return out;
}

inline Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = to_double(m(r, c));
  return out;
}

}  // namespace seifert
