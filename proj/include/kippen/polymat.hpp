#pragma once

// Determinants of polynomial matrices and the Hermitian phase pencil.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kippen/matrix.hpp"
#include "kippen/multipoly.hpp"

namespace kippen {

template <class K>
using PolyMatrix = Matrix<MultiPoly<K>>;

/// Embeds a scalar matrix as constant polynomials.
template <class K>
PolyMatrix<K> lift(const Matrix<K>& m) {
  return m.map([](const K& v) { return MultiPoly<K>(v); });
}

/// Division-free determinant by Laplace expansion with memoized minors
/// (n * 2^n ring products). Works over any commutative ring.
template <class R>
R det_cofactor(const Matrix<R>& m) {
  if (!m.square()) throw Error("determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return R(1);
  if (n > 20) throw Error("det_cofactor: matrix too large");
  std::vector<R> minor(std::size_t(1) << n, R(0));
  minor[0] = R(1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int row = __builtin_popcount(mask) - 1;
    R acc(0);
    int above = 0;  // columns in mask greater than j
    for (int j = static_cast<int>(n) - 1; j >= 0; --j) {
      if (!(mask & (1u << j))) continue;
      const R& a = m(row, j);
      const R& sub = minor[mask & ~(1u << j)];
      if (!is_zero(a) && !is_zero(sub)) {
        R t = a * sub;
        if (above % 2) acc -= t;
        else acc += t;
      }
      ++above;
    }
    minor[mask] = std::move(acc);
  }
  return minor.back();
}

/// Fraction-free (Bareiss) determinant over an exact coefficient field. Rows
/// are first shifted by powers of w so all entries are ordinary polynomials.
template <class K>
MultiPoly<K> det_bareiss(PolyMatrix<K> m) {
  if (!m.square()) throw Error("determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return MultiPoly<K>(1);
  int total_shift = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int lo = INT32_MAX;
    for (std::size_t j = 0; j < n; ++j)
      if (!m(i, j).is_zero()) lo = std::min(lo, m(i, j).min_degree_in(Var::w));
    if (lo == INT32_MAX) return {};
    if (lo != 0) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = m(i, j).shifted(w_power(-lo));
      total_shift += lo;
    }
  }
  bool negate = false;
  MultiPoly<K> prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = n;
    for (std::size_t p = k; p < n; ++p) {
      if (m(p, k).is_zero()) continue;
      if (best == n || m(p, k).size() < m(best, k).size()) best = p;
    }
    if (best == n) return {};
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(best, j), m(k, j));
      negate = !negate;
    }
    const MultiPoly<K>& piv = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly<K> v = piv * m(i, j);
        if (!m(i, k).is_zero() && !m(k, j).is_zero()) v -= m(i, k) * m(k, j);
        m(i, j) = poly_div_exact(v, prev);
      }
      m(i, k) = MultiPoly<K>();
    }
    prev = piv;
  }
  MultiPoly<K> d = m(n - 1, n - 1);
  if (negate) d = -d;
  return d.shifted(w_power(total_shift));
}

/// Exact determinant; Bareiss for exact fields, cofactor otherwise.
template <class K>
MultiPoly<K> det(const PolyMatrix<K>& m) {
  if constexpr (is_exact_v<K>) {
    return det_bareiss(m);
  } else {
    return det_cofactor(m);
  }
}

/// H(w) = (w C + w^{-1} C*)/2 with w standing for e^{-i theta}.
template <class K>
PolyMatrix<K> phase_hermitian(const Matrix<K>& C) {
  std::size_t n = C.rows();
  PolyMatrix<K> H(n, n);
  K half = K(1) / K(2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiPoly<K> e(w_power(1), C(i, j) * half);
      e += MultiPoly<K>(w_power(-1), conj(C(j, i)) * half);
      H(i, j) = std::move(e);
    }
  return H;
}

/// x -> w*s, y -> s/w: turns (x, y)-radiality into w-freeness.
template <class K>
MultiPoly<K> phase_substitute(const MultiPoly<K>& P, Var x = Var::x, Var y = Var::y) {
  MultiPoly<K> ws(Monomial::of(Var::w) * Monomial::of(Var::s), K(1));
  MultiPoly<K> s_over_w(Monomial::of(Var::w, -1) * Monomial::of(Var::s), K(1));
  return P.substitute(x, ws).substitute(y, s_over_w);
}

}  // namespace kippen
