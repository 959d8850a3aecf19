#pragma once

// Dense matrices over an arbitrary coefficient ring, with exact elimination
// routines for field entries.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "kippen/errors.hpp"
#include "kippen/scalar.hpp"
#include "kippen/unipoly.hpp"

namespace kippen {

namespace detail {
// Unqualified call so that ADL finds is_zero for rings declared later.
template <class T>
bool entry_is_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, T fill) : r_(rows), c_(cols), a_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
      if (row.size() != c_) throw Error("ragged matrix literal");
      for (const auto& v : row) a_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix adjoint() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = conj((*this)(i, j));
    return m;
  }
  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!detail::entry_is_zero(v)) return false;
    return true;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
    return m;
  }
  void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& v : m.a_) v = -v;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : a_) v *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& v : a.a_) v = s * v;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw Error("matrix product dimension mismatch");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (detail::entry_is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix pow(unsigned k) const {
    Matrix result = identity(r_);
    Matrix base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    Matrix<decltype(f(std::declval<T>()))> m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error("matrix dimension mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
Matrix<T> adjoint(const Matrix<T>& m) {
  return m.adjoint();
}

/// Block matrix from a grid of blocks; empty (0x0) blocks are zero fill.
template <class T>
Matrix<T> assemble(const std::vector<std::size_t>& row_sizes, const std::vector<std::size_t>& col_sizes,
                   const std::vector<std::vector<const Matrix<T>*>>& blocks) {
  std::size_t R = 0, Cn = 0;
  for (auto s : row_sizes) R += s;
  for (auto s : col_sizes) Cn += s;
  Matrix<T> m(R, Cn);
  std::size_t i0 = 0;
  for (std::size_t bi = 0; bi < row_sizes.size(); ++bi) {
    std::size_t j0 = 0;
    for (std::size_t bj = 0; bj < col_sizes.size(); ++bj) {
      const Matrix<T>* b = blocks[bi][bj];
      if (b) {
        if (b->rows() != row_sizes[bi] || b->cols() != col_sizes[bj]) throw Error("block size mismatch");
        m.set_block(i0, j0, *b);
      }
      j0 += col_sizes[bj];
    }
    i0 += row_sizes[bi];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Exact elimination over a field.

/// Reduced row echelon form; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    K inv = K(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      K f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) {
  return rref(m).size();
}

/// Basis of the right null space, as columns.
template <class K>
std::vector<std::vector<K>> nullspace(Matrix<K> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(m.cols(), K(0));
    v[free] = K(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Determinant by Gaussian elimination over a field.
template <class K>
K det_field(Matrix<K> m) {
  if (!m.square()) throw Error("determinant of non-square matrix");
  std::size_t n = m.rows();
  K d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(m(p, k))) ++p;
    if (p == n) return K(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      d = -d;
    }
    d *= m(k, k);
    K inv = K(1) / m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      K f = m(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
  std::size_t n = m.rows();
  Matrix<K> aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<K>::identity(n));
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw DivisionByZero("singular matrix");
  return aug.block(0, n, n, n);
}

/// Characteristic polynomial det(tI - M) by the Faddeev-LeVerrier recursion.
template <class K>
UniPoly<K> charpoly(const Matrix<K>& m) {
  if (!m.square()) throw Error("charpoly of non-square matrix");
  std::size_t n = m.rows();
  std::vector<K> c(n + 1, K(0));
  c[n] = K(1);
  Matrix<K> mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<K> next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    c[n - k] = -(m * mk).trace() / K(static_cast<int>(k));
  }
  return UniPoly<K>(std::move(c));
}

/// Hermitian LDL*: returns (L unit lower, d) with M = L diag(d) L*. Zero
/// pivots require the whole remaining column to vanish (PSD input).
template <class K>
std::pair<Matrix<K>, std::vector<K>> ldl(const Matrix<K>& m) {
  std::size_t n = m.rows();
  Matrix<K> a = m;
  Matrix<K> L = Matrix<K>::identity(n);
  std::vector<K> d(n, K(0));
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = a(k, k);
    if (is_zero(d[k])) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (!is_zero(a(i, k))) throw Error("LDL: zero pivot with nonzero column (not PSD)");
      continue;
    }
    K inv = K(1) / d[k];
    for (std::size_t i = k + 1; i < n; ++i) L(i, k) = a(i, k) * inv;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= L(i, k) * d[k] * conj(L(j, k));
  }
  return {L, d};
}

}  // namespace kippen
