#pragma once

// The centred family C_n(1,1) = J_n + E_{r,r+2} - E_{s,s+2}: construction,
// the Chebyshev factorization of det(uI - H), closed-form top eigenvectors
// at three angles and the overlap comparison that rules out rotational
// invariance.

#include <string>
#include <vector>

#include "kippen/bigfloat.hpp"
#include "kippen/circularity.hpp"
#include "kippen/polymat.hpp"
#include "kippen/spectral.hpp"
#include "kippen/unipoly.hpp"

namespace kippen {

struct FamilyMatrix {
  int n;
  int r;  ///< 1-indexed row of the +1 entry
  int s;  ///< 1-indexed row of the -1 entry
  Matrix<Gaussian> matrix;
};

inline FamilyMatrix family_matrix(int n) {
  if (n < 4) throw Error("family size must be >= 4");
  int r = (n - 2) / 2, s = n - 1 - r;
  Matrix<Gaussian> C(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) C(i, i + 1) = Gaussian(1);
  C(r - 1, r + 1) = C(r - 1, r + 1) + Gaussian(1);
  C(s - 1, s + 1) = C(s - 1, s + 1) - Gaussian(1);
  return {n, r, s, std::move(C)};
}

/// U_m - U_{m-1} - U_{m-2} in u.
inline MultiPoly<Gaussian> family_P(int m) {
  using P = MultiPoly<Gaussian>;
  return chebyshev_U<Gaussian>(m) - chebyshev_U<Gaussian>(m - 1) - (m >= 2 ? chebyshev_U<Gaussian>(m - 2) : P());
}

/// U_m + U_{m-1} - U_{m-2} in u.
inline MultiPoly<Gaussian> family_Q(int m) {
  using P = MultiPoly<Gaussian>;
  return chebyshev_U<Gaussian>(m) + chebyshev_U<Gaussian>(m - 1) - (m >= 2 ? chebyshev_U<Gaussian>(m - 2) : P());
}

struct FactorizationCheck {
  int m;
  MultiPoly<Gaussian> det;       ///< det(uI - H) with H in the phase variable
  MultiPoly<Gaussian> expected;  ///< 2^{-2m} P_m Q_m
  bool holds;
};

inline FactorizationCheck family_factorization_check(int m) {
  if (m < 2) throw Error("family factorization needs m >= 2");
  auto fm = family_matrix(2 * m);
  PolyMatrix<Gaussian> H = phase_hermitian(fm.matrix);
  std::size_t n = H.rows();
  PolyMatrix<Gaussian> pencil = PolyMatrix<Gaussian>::identity(n) * MultiPoly<Gaussian>::var(Var::u) - H;
  FactorizationCheck out{m, det(pencil), {}, false};
  Rational scale(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(2 * m));
  out.expected = (family_P(m) * family_Q(m)).scaled(Gaussian(scale));
  out.holds = out.det == out.expected;
  return out;
}

/// P_m = (2u - 1) U_{m-1} - 2 U_{m-2}.
inline bool family_identity_check(int m) {
  if (m < 2) throw Error("identity check needs m >= 2");
  using P = MultiPoly<Gaussian>;
  P lhs = (P::var(Var::u).scaled(Gaussian(2)) - P(1)) * chebyshev_U<Gaussian>(m - 1) -
          chebyshev_U<Gaussian>(m - 2).scaled(Gaussian(2));
  return lhs == family_P(m);
}

inline Rational family_P_at_one(int m) { return family_P(m).evaluate<Gaussian>({{Var::u, Gaussian(1)}}).re(); }

/// U_0(x) .. U_k(x).
inline std::vector<BigReal> chebyshev_values(int k, const BigReal& x) {
  std::vector<BigReal> u{BigReal(1)};
  if (k >= 1) u.push_back(2 * x);
  for (int i = 2; i <= k; ++i) u.push_back(2 * x * u[i - 1] - u[i - 2]);
  return u;
}

/// Largest real root of P_m: isolated exactly by a Sturm sequence, then
/// bisected at the requested precision.
inline BigReal family_lambda(int m, unsigned bits = 128) {
  if (m < 2) throw Error("family root needs m >= 2");
  UniPoly<Gaussian> pg = family_P(m).to_unipoly(Var::u);
  std::vector<Rational> c;
  for (int i = 0; i <= pg.degree(); ++i) c.push_back(pg.coeff(i).re());
  UniPoly<Rational> p(c);
  auto iv = isolate_real_roots(p, Rational(mpz_class(1), mpz_class(1) << 20));
  if (iv.empty()) throw BracketFailure("P_m has no real root");
  auto [lo_q, hi_q] = iv.back();
  if (lo_q < Rational(1) - Rational(mpz_class(1), mpz_class(1) << 19) || Rational(2) < hi_q)
    throw BracketFailure("largest root of P_m is outside [1, 2]");
  PrecisionScope scope(bits);
  auto eval = [&](const BigReal& x) {
    BigReal acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + to_float(p.coeff(i), bits).re;
    return acc;
  };
  BigReal lo = to_float(lo_q, bits).re, hi = to_float(hi_q, bits).re;
  BigReal eps = boost::multiprecision::ldexp(BigReal(1), -static_cast<int>(bits));
  while (hi - lo > eps) {
    BigReal mid = (lo + hi) / 2;
    if (eval(mid) < 0) lo = mid;
    else hi = mid;
  }
  return hi;
}

enum class FamilyCase { theta_0, theta_minus_pi_4, theta_minus_pi_2 };

inline const char* to_string(FamilyCase c) {
  switch (c) {
    case FamilyCase::theta_0: return "theta=0";
    case FamilyCase::theta_minus_pi_4: return "theta=-pi/4";
    default: return "theta=-pi/2";
  }
}

/// The angle theta with H_C(theta) = Re(e^{-i theta} C) for a case.
inline double case_theta(FamilyCase c) {
  switch (c) {
    case FamilyCase::theta_0: return 0;
    case FamilyCase::theta_minus_pi_4: return -kPi / 4;
    default: return -kPi / 2;
  }
}

struct FamilyEigvec {
  int m;
  FamilyCase which;
  BigReal lambda;
  std::vector<BigComplex> v;
  BigReal residual;  ///< ||H v - lambda v|| / ||v||
};

namespace detail {

struct FamilyConstants {
  BigComplex eta, alpha, q, beta, minus_i;
};

inline FamilyConstants family_constants() {
  BigReal h = boost::multiprecision::sqrt(BigReal(2)) / 2;
  BigComplex eta(h, -h);
  BigComplex one(1);
  return {eta, one / (one + eta), (one - conj(eta)) / (one + eta), BigComplex(BigReal(1) / 2, BigReal(1) / 2),
          BigComplex(0, -1)};
}

inline BigComplex cpow(const BigComplex& z, int k) {
  BigComplex r(1);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

/// H_C(theta) v for the real family matrix, at the current precision.
inline std::vector<BigComplex> family_apply(const Matrix<Gaussian>& C, const BigComplex& phase,
                                            const std::vector<BigComplex>& v) {
  std::size_t n = C.rows();
  std::vector<BigComplex> out(n, BigComplex(0));
  BigComplex half(BigReal(1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigReal cij = to_big(C(i, j).re()), cji = to_big(C(j, i).re());
      if (cij == 0 && cji == 0) continue;
      BigComplex hij = (phase * BigComplex(cij) + conj(phase) * BigComplex(cji)) * half;
      out[i] += hij * v[j];
    }
  return out;
}

inline BigReal vec_norm(const std::vector<BigComplex>& v) {
  BigReal s = 0;
  for (const auto& x : v) s += norm2(x);
  return boost::multiprecision::sqrt(s);
}

/// <a, b> = sum conj(a_k) b_k.
inline BigComplex inner(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b) {
  BigComplex s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s += conj(a[k]) * b[k];
  return s;
}

}  // namespace detail

/// Closed-form top eigenvector of H_C(theta) for C = C_{2m}(1,1); throws
/// ResidualTooLarge when the residual exceeds 1e-20 relative.
inline FamilyEigvec family_eigvec(int m, FamilyCase which, unsigned bits = 128) {
  if (m < 2) throw Error("family eigenvector needs m >= 2");
  BigReal lam = family_lambda(m, bits);
  PrecisionScope scope(bits);
  auto k_ = detail::family_constants();
  auto U = chebyshev_values(2 * m, lam);
  int n = 2 * m;
  std::vector<BigComplex> v(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    BigComplex x;
    switch (which) {
      case FamilyCase::theta_0:
        x = k <= m - 1 ? BigComplex(U[k - 1]) : k <= m + 1 ? BigComplex(U[m - 1] / 2) : BigComplex(0);
        break;
      case FamilyCase::theta_minus_pi_4: {
        BigComplex ph = detail::cpow(k_.eta, k - 1);
        x = k <= m - 1   ? ph * BigComplex(U[k - 1])
            : k <= m + 1 ? ph * k_.alpha * BigComplex(U[m - 1])
                         : ph * k_.q * BigComplex(U[2 * m - k]);
        break;
      }
      default: {
        BigComplex ph = detail::cpow(k_.minus_i, k - 1);
        x = k <= m - 1   ? ph * BigComplex(U[k - 1])
            : k <= m + 1 ? ph * k_.beta * BigComplex(U[m - 1])
                         : ph * BigComplex(U[2 * m - k]);
      }
    }
    v[static_cast<std::size_t>(k - 1)] = x;
  }
  // e^{-i theta} for theta = 0, -pi/4, -pi/2
  BigReal h = boost::multiprecision::sqrt(BigReal(2)) / 2;
  BigComplex phase = which == FamilyCase::theta_0            ? BigComplex(1)
                     : which == FamilyCase::theta_minus_pi_4 ? BigComplex(h, h)
                                                             : BigComplex(0, 1);
  auto Hv = detail::family_apply(family_matrix(n).matrix, phase, v);
  for (std::size_t k = 0; k < v.size(); ++k) Hv[k] -= BigComplex(lam) * v[k];
  BigReal res = detail::vec_norm(Hv) / detail::vec_norm(v);
  if (res > BigReal("1e-20"))
    throw ResidualTooLarge("family eigenvector residual " + res.str(6) + " for m=" + std::to_string(m) + " " +
                           to_string(which));
  return {m, which, lam, std::move(v), res};
}

struct OverlapComparison {
  int m;
  BigReal lambda;
  std::vector<BigReal> weights;  ///< U_{m-1-k}^2 / U_{m-1}^2 for k = 1..m-1
  BigReal M;
  BigComplex S;
  BigReal first;           ///< |<v_0, v_{pi/4}>| from the closed form
  BigReal second;          ///< |<v_{pi/4}, v_{pi/2}>| from the closed form
  BigReal formula_first;   ///< same from the normalized formula vectors
  BigReal formula_second;
  double numeric_first;    ///< same from double-precision eigenvectors of H_C
  double numeric_second;
  bool strict;             ///< first > second
  bool weights_decreasing;
};

inline OverlapComparison family_overlap_compare(int m, unsigned bits = 128) {
  auto v0 = family_eigvec(m, FamilyCase::theta_0, bits);
  auto v4 = family_eigvec(m, FamilyCase::theta_minus_pi_4, bits);
  auto v2 = family_eigvec(m, FamilyCase::theta_minus_pi_2, bits);
  PrecisionScope scope(bits);
  OverlapComparison out{};
  out.m = m;
  out.lambda = v0.lambda;
  auto U = chebyshev_values(m, out.lambda);
  BigReal u2 = U[m - 1] * U[m - 1];
  out.M = BigReal(1) / 2;
  out.S = BigComplex(0);
  BigReal pi = big_pi();
  for (int k = 1; k <= m - 1; ++k) {
    BigReal a = U[m - 1 - k] * U[m - 1 - k] / u2;
    out.weights.push_back(a);
    out.M += a;
    out.S += unit_phase(k * pi / 4) * BigComplex(a);
  }
  out.weights_decreasing = true;
  for (std::size_t k = 1; k < out.weights.size(); ++k)
    out.weights_decreasing = out.weights_decreasing && out.weights[k] < out.weights[k - 1];
  BigReal r2 = boost::multiprecision::sqrt(BigReal(2));
  BigReal root = boost::multiprecision::sqrt(2 - r2);
  out.first = abs(BigComplex(BigReal(1) / 2) + out.S) / (boost::multiprecision::sqrt(BigReal(2)) * root * out.M);
  out.second = abs(BigComplex(1 / r2) + out.S + BigComplex(r2 - 1) * conj(out.S)) / (2 * root * out.M);
  auto nrm = [](const FamilyEigvec& e) {
    return detail::vec_norm(e.v);
  };
  out.formula_first = abs(detail::inner(v0.v, v4.v)) / (nrm(v0) * nrm(v4));
  out.formula_second = abs(detail::inner(v4.v, v2.v)) / (nrm(v4) * nrm(v2));
  CMat C = to_eigen(family_matrix(2 * m).matrix);
  auto top = [&](FamilyCase c) { return herm_eig(phase_hermitian(C, case_theta(c))).front().vector; };
  CVec y0 = top(FamilyCase::theta_0), y4 = top(FamilyCase::theta_minus_pi_4), y2 = top(FamilyCase::theta_minus_pi_2);
  out.numeric_first = std::abs(y0.dot(y4));
  out.numeric_second = std::abs(y4.dot(y2));
  out.strict = out.first > out.second;
  return out;
}

/// The polynomial 2|1/2 + S|^2 - |1/sqrt2 + S + (sqrt2 - 1) conj S|^2 - 4(sqrt2 - 1) y^2
/// with S = x + iy over Q(sqrt2, i); zero iff the overlap identity holds.
inline MultiPoly<Quad> family_overlap_identity_residual() {
  using P = MultiPoly<Quad>;
  Quad r2 = Quad::sqrt_of(2);
  P x = P::var(Var::x), y = P::var(Var::y);
  P S = x + y.scaled(Quad(Gaussian::i()));
  P Sb = S.conj();
  auto abs2 = [](const P& z) { return z * z.conj(); };
  P a = P(Quad(Rational(mpz_class(1), mpz_class(2)))) + S;
  P b = P(Quad(1) / r2) + S + Sb.scaled(r2 - Quad(1));
  return abs2(a).scaled(Quad(2)) - abs2(b) - (y * y).scaled(Quad(4) * (r2 - Quad(1)));
}

struct FamilyCircularity {
  int n;
  bool circular;
  bool claimed;       ///< true for even n, where circularity is an established result
  std::string label;  ///< "established" or "beyond known results"
};

inline FamilyCircularity family_circularity(int n) {
  auto fm = family_matrix(n);
  bool rad = is_radial(p_poly(lift(fm.matrix))).radial;
  bool even = n % 2 == 0;
  return {n, rad, even, even ? "established" : "beyond known results"};
}

}  // namespace kippen
