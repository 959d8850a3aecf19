#pragma once

// Associated partial isometry A(C) = [[0, B], [0, C]] with B*B = I - C*C,
// the tower T_0 = C, T_{j+1} = A(T_j), and the determinant identity that
// expresses det(zI - 2r H_{T_j}) through C and D alone.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "kippen/circularity.hpp"
#include "kippen/polymat.hpp"
#include "kippen/spectral.hpp"

namespace kippen {

/// phi_{-1} = 0, phi_0 = 1, phi_{j+1} = z phi_j - r^2 phi_{j-1}, in (z, r).
template <class K>
MultiPoly<K> phi(int j) {
  using P = MultiPoly<K>;
  if (j < -1) throw Error("phi index must be >= -1");
  P prev, cur(1);
  if (j == -1) return prev;
  P z = P::var(Var::z), r2 = P::var(Var::r).pow(2);
  for (int k = 0; k < j; ++k) {
    P next = z * cur - r2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

template <class K>
struct PhiPair {
  int j;
  MultiPoly<K> phi_j, phi_j_minus_1;
};

template <class K>
PhiPair<K> phi_pair(int j) {
  return {j, phi<K>(j), phi<K>(j - 1)};
}

/// tau_j(u) = U_{j-1}(u) / (2 U_j(u)).
inline Rational tau(int j, const Rational& u) {
  auto U = [&](int k) { return chebyshev_U<Rational>(k).template evaluate<Rational>({{Var::u, u}}); };
  return U(j - 1) / (Rational(2) * U(j));
}

/// det(zI - 2r H_{T_j}(theta)) from C and D: for j >= 1,
/// det(phi_j (zI - 2r H_C) - r^2 phi_{j-1} D) / phi_j^(n-d); for j = 0,
/// det(zI - 2r H_C). The phase is carried by w.
template <class K>
MultiPoly<K> tower_charpoly_exact(const Contraction<K>& c, int j) {
  using P = MultiPoly<K>;
  if (j < 0) throw Error("tower level must be >= 0");
  std::size_t n = c.n;
  PolyMatrix<K> H = phase_hermitian(c.C);
  P z = P::var(Var::z), r = P::var(Var::r);
  P two_r = P(K(2)) * r;
  P pj = j == 0 ? P(1) : phi<K>(j), pjm = j == 0 ? P() : phi<K>(j - 1);
  P r2pjm = r * r * pjm;
  PolyMatrix<K> M(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      P e = P() - two_r * H(a, b);
      if (a == b) e += z;
      e = pj * e;
      if (j > 0 && !is_zero(c.D(a, b))) e -= r2pjm * P(c.D(a, b));
      M(a, b) = std::move(e);
    }
  P det_m = det(M);
  if (j == 0 || c.n == c.defect_rank) return det_m;
  return poly_div_exact(det_m, pj.pow(static_cast<unsigned>(n - c.defect_rank)));
}

struct TowerScan {
  bool t0_circular = false;           ///< T_0 = C, reported separately
  std::vector<bool> level_circular;   ///< T_1 .. T_{d+1}
  bool all_levels_circular = false;
  bool defect_pencil_radial = false;
  bool consistent = false;            ///< all levels circular iff defect pencil radial
};

template <class K>
TowerScan tower_circularity_scan(const Contraction<K>& c) {
  require_contraction(c);
  TowerScan s;
  s.t0_circular = is_free_of(tower_charpoly_exact(c, 0), Var::w).radial;
  s.all_levels_circular = true;
  for (int j = 1; j <= static_cast<int>(c.defect_rank) + 1; ++j) {
    bool ok = is_free_of(tower_charpoly_exact(c, j), Var::w).radial;
    s.level_circular.push_back(ok);
    s.all_levels_circular = s.all_levels_circular && ok;
  }
  s.defect_pencil_radial = is_radial(defect_pencil_poly(c)).radial;
  s.consistent = s.all_levels_circular == s.defect_pencil_radial;
  return s;
}

// ---------------------------------------------------------------------------
// Exact assembly.

/// d x n exact B with B*B = D, available when D is diagonal with entries
/// that are squares of rationals.
template <class K>
std::optional<Matrix<K>> build_B_exact(const Contraction<K>& c) {
  std::size_t n = c.n;
  std::vector<std::pair<std::size_t, Rational>> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!is_zero(c.D(i, j))) return std::nullopt;
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(c.D(i, i))) continue;
    std::optional<Rational> re;
    if constexpr (std::is_same_v<K, Rational>) {
      re = c.D(i, i);
    } else if constexpr (std::is_same_v<K, Gaussian>) {
      if (c.D(i, i).is_real()) re = c.D(i, i).re();
    }
    if (!re) return std::nullopt;
    auto root = exact_sqrt(*re);
    if (!root) return std::nullopt;
    rows.emplace_back(i, *root);
  }
  Matrix<K> B(rows.size(), n);
  for (std::size_t k = 0; k < rows.size(); ++k) B(k, rows[k].first) = K(rows[k].second);
  return B;
}

/// Level j of the tower for a given factor B (k x n, B*B = D): the blocks
/// are j - 1 superdiagonal identities of size k, then B, then C.
template <class R>
Matrix<R> tower_level_from(const Matrix<R>& C, const Matrix<R>& B, int j) {
  if (j < 1) throw Error("tower level must be >= 1");
  std::size_t n = C.rows(), k = B.rows();
  std::size_t N = n + static_cast<std::size_t>(j) * k;
  Matrix<R> T(N, N);
  for (int b = 0; b + 1 < j; ++b)
    for (std::size_t i = 0; i < k; ++i) T(b * k + i, (b + 1) * k + i) = R(1);
  std::size_t off = static_cast<std::size_t>(j - 1) * k;
  T.set_block(off, off + k, B);
  T.set_block(off + k, off + k, C);
  return T;
}

struct BlockStructure {
  int level;
  std::size_t identity_blocks;  ///< j - 1
  std::size_t block_size;       ///< rows of B
  std::size_t n;
};

template <class T>
struct TowerLevel {
  int level;
  Matrix<T> matrix;
  BlockStructure blocks;
};

template <class K>
TowerLevel<K> tower_level(const Contraction<K>& c, const Matrix<K>& B, int j) {
  return {j, tower_level_from(c.C, B, j), {j, static_cast<std::size_t>(j - 1), B.rows(), c.n}};
}

/// Determinant of zI - r(wT + w^-1 T*), built directly.
template <class K>
MultiPoly<K> direct_tower_charpoly(const Matrix<K>& T) {
  using P = MultiPoly<K>;
  std::size_t N = T.rows();
  PolyMatrix<K> H = phase_hermitian(T);
  P z = P::var(Var::z), two_r = P(K(2)) * P::var(Var::r);
  PolyMatrix<K> M(N, N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) M(a, b) = (a == b ? z : P()) - two_r * H(a, b);
  return det(M);
}

namespace detail {

/// p = a^2 + b^2 for a prime p = 1 mod 4, via a square root of -1 and the
/// Euclidean remainder sequence.
inline std::pair<mpz_class, mpz_class> prime_two_squares(const mpz_class& p) {
  mpz_class e = (p - 1) / 4, t;
  for (mpz_class a = 2;; ++a) {
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if ((t * t + 1) % p == 0) break;
  }
  mpz_class r0 = p, r1 = t, root;
  mpz_sqrt(root.get_mpz_t(), p.get_mpz_t());
  while (r1 > root) {
    mpz_class r2 = r0 % r1;
    r0 = r1;
    r1 = r2;
  }
  mpz_class b2 = p - r1 * r1, b;
  mpz_sqrt(b.get_mpz_t(), b2.get_mpz_t());
  return {r1, b};
}

inline std::optional<std::pair<mpz_class, mpz_class>> small_two_squares(const mpz_class& m) {
  if (m == 0) return std::make_pair(mpz_class(0), mpz_class(0));
  if (mpz_perfect_square_p(m.get_mpz_t())) {
    mpz_class a;
    mpz_sqrt(a.get_mpz_t(), m.get_mpz_t());
    return std::make_pair(a, mpz_class(0));
  }
  if (m < 1000000) {
    for (mpz_class a = 1; 2 * a * a <= m; ++a) {
      mpz_class rest = m - a * a;
      if (mpz_perfect_square_p(rest.get_mpz_t())) {
        mpz_class b;
        mpz_sqrt(b.get_mpz_t(), rest.get_mpz_t());
        return std::make_pair(a, b);
      }
    }
    return std::nullopt;
  }
  if (m % 4 == 1 && mpz_probab_prime_p(m.get_mpz_t(), 40)) return prime_two_squares(m);
  return std::nullopt;
}

/// Gaussian integers g with sum |g|^2 = N, at most two of them: one when N
/// is a square or a prime 1 mod 4, else N = x^2 + y^2 + p with p as above.
inline std::vector<Gaussian> gaussian_norm_split(const mpz_class& N) {
  auto gauss = [](const mpz_class& a, const mpz_class& b) { return Gaussian(Rational(a), Rational(b)); };
  if (N > 0 && N % 4 == 0) {
    // no remainder N - x^2 - y^2 is 1 mod 4 here; split N/4 and double
    std::vector<Gaussian> half = gaussian_norm_split(N / 4);
    for (auto& g : half) g = g * Gaussian(2);
    return half;
  }
  if (auto ab = small_two_squares(N)) return {gauss(ab->first, ab->second)};
  mpz_class x;
  mpz_sqrt(x.get_mpz_t(), N.get_mpz_t());
  for (; x >= 0; --x)
    for (mpz_class y = 0; y <= 64; ++y) {
      mpz_class rest = N - x * x - y * y;
      if (rest < 0) break;
      if (auto cd = small_two_squares(rest)) return {gauss(x, y), gauss(cd->first, cd->second)};
    }
  throw Error("four-square decomposition failed");
}

}  // namespace detail

/// Exact Gaussian-rational G (k x n, d <= k <= 2d) with G*G = D, from an
/// LDL* factorization and writing each pivot as a sum of two or four
/// rational squares. Extra rows beyond d make the assembled tower level a
/// direct sum with shift blocks, which tests account for.
inline Matrix<Gaussian> gram_factor_exact(const Matrix<Gaussian>& D) {
  auto [L, d] = ldl(D);
  std::size_t n = D.rows();
  std::vector<std::vector<Gaussian>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(d[i])) continue;
    if (!d[i].is_real() || d[i].re().sign() < 0) throw NotAContraction("defect operator is not PSD");
    Rational delta = d[i].re();
    mpz_class den = delta.den();
    mpz_class N = delta.num() * den;  // delta = N / den^2
    for (const Gaussian& g : detail::gaussian_norm_split(N)) {
      Gaussian coef = g * Gaussian(Rational(mpz_class(1), den));
      std::vector<Gaussian> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = coef * conj(L(j, i));
      rows.push_back(std::move(row));
    }
  }
  Matrix<Gaussian> G(rows.size(), n);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) G(k, j) = rows[k][j];
  return G;
}

// ---------------------------------------------------------------------------
// Numeric assembly.

struct NumericIsometry {
  std::size_t defect_rank;  ///< rank of I - C*C
  CMat B, C, A;
};

inline CMat tower_level_from(const CMat& C, const CMat& B, int j) {
  if (j < 1) throw Error("tower level must be >= 1");
  Eigen::Index n = C.rows(), k = B.rows();
  Eigen::Index N = n + j * k;
  CMat T = CMat::Zero(N, N);
  for (int b = 0; b + 1 < j; ++b) T.block(b * k, (b + 1) * k, k, k) = CMat::Identity(k, k);
  Eigen::Index off = (j - 1) * k;
  T.block(off, off + k, k, n) = B;
  T.block(off + k, off + k, n, n) = C;
  return T;
}

inline NumericIsometry assoc_isometry_numeric(const CMat& C, double rank_tol = 1e-10) {
  CMat D = CMat::Identity(C.rows(), C.cols()) - C.adjoint() * C;
  PsdSqrt s = psd_sqrt(D, rank_tol);
  return {s.rank, s.B, C, tower_level_from(C, s.B, 1)};
}

/// Residual of A*A against its own square: zero for a partial isometry.
inline double projection_defect(const CMat& A) {
  CMat P = A.adjoint() * A;
  return (P * P - P).norm() + (P - P.adjoint()).norm();
}

/// Evaluates an exact (z, r, w) polynomial at a complex point.
template <class K>
cplx eval_zrw(const MultiPoly<K>& p, cplx z, cplx r, cplx w) {
  return p.template evaluate<cplx>({{Var::z, z}, {Var::r, r}, {Var::w, w}});
}

/// det(zI - r(e^{-i theta} T + e^{i theta} T*)) numerically.
inline cplx numeric_tower_charpoly(const CMat& T, cplx z, double r, double theta) {
  CMat M = z * CMat::Identity(T.rows(), T.cols()) - 2 * r * phase_hermitian(T, theta);
  return M.determinant();
}

}  // namespace kippen
