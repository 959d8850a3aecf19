#pragma once

// Exact constructors for the explicit matrices of the example set.

#include "kippen/matrix.hpp"
#include "kippen/multipoly.hpp"
#include "kippen/polymat.hpp"
#include "kippen/scalar.hpp"
#include "kippen/unipoly.hpp"

namespace kippen::gallery {

inline Rational q(long a, long b) { return Rational(mpz_class(a), mpz_class(b)); }

template <class K = Gaussian>
Matrix<K> jordan(std::size_t n) {
  Matrix<K> J(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) J(i, i + 1) = K(1);
  return J;
}

/// Nilpotent 4x4 whose tower has Circularity at every level while a word
/// with unequal letter counts has nonzero trace.
template <class K = Gaussian>
Matrix<K> tower_c() {
  Matrix<K> C(4, 4);
  C(0, 1) = K(q(1, 2));
  C(0, 2) = K(q(-1, 5));
  C(1, 2) = K(q(1, 2));
  C(1, 3) = K(q(1, 5));
  C(2, 3) = K(q(1, 2));
  return C;
}

/// Nilpotent 4x4 with Circularity whose associated isometry lacks it.
inline Matrix<Gaussian> p_not_q() {
  Matrix<Gaussian> C(4, 4);
  C(0, 1) = Gaussian(q(-1, 4), q(-1, 4));
  C(0, 2) = Gaussian(q(-1, 4));
  C(1, 2) = Gaussian(q(1, 4));
  C(1, 3) = Gaussian(q(-1, 4), q(1, 4));
  C(2, 3) = Gaussian(q(1, 4));
  return C;
}

/// The clean 5x5 example with its real parameter p kept formal.
inline PolyMatrix<Rational> clean_formal() {
  using P = MultiPoly<Rational>;
  P p = P::var(Var::p);
  PolyMatrix<Rational> C(5, 5);
  C(0, 1) = P(q(1, 2));
  C(1, 2) = P(q(1, 4));
  C(1, 3) = p;
  C(2, 3) = P(q(1, 4));
  C(2, 4) = -p;
  C(3, 4) = P(q(1, 2));
  return C;
}

/// g(s) over Q(sqrt 145), as displayed: s = p^2 is its smaller root.
inline UniPoly<Quad> clean_g() {
  Quad r = Quad::sqrt_of(145);
  return UniPoly<Quad>(std::vector<Quad>{Quad(9091) + Quad(757) * r, Quad(-32) * (Quad(1403) + Quad(125) * r),
                                         Quad(4096) * (Quad(7) + r)});
}

/// Monic g(s) over Q(sqrt 145); s = p^2 is its smaller root.
inline UniPoly<Quad> clean_g_monic() {
  Quad r = Quad::sqrt_of(145);
  Quad c2 = Quad(4096) * (Quad(7) + r);
  Quad c1 = Quad(-32) * (Quad(1403) + Quad(125) * r);
  Quad c0 = Quad(9091) + Quad(757) * r;
  return UniPoly<Quad>(std::vector<Quad>{c0 / c2, c1 / c2, Quad(1)});
}

/// omega^2 = (19 + sqrt 145)/64, the squared disc radius.
inline Quad clean_omega_squared() { return (Quad(19) + Quad::sqrt_of(145)) / Quad(64); }

/// The quintic whose root alpha in (-0.55, -0.54) fixes the 5x5 family C_alpha.
inline UniPoly<Rational> c_alpha_phi() {
  return UniPoly<Rational>(std::vector<Rational>{Rational(-47232000), Rational(-318470912), Rational(10740240),
                                                 Rational(274015368), Rational(-927166375), Rational(24182784)});
}

/// The companion quintic governing the non-radial coefficient of P for C_alpha.
inline UniPoly<Rational> c_alpha_psi() {
  return UniPoly<Rational>(std::vector<Rational>{Rational(-11808000), Rational(-97261504), Rational(12334000),
                                                 Rational(127086692), Rational(-285636125), Rational(6045696)});
}

/// C_alpha from its parameters alpha, s, c, f.
template <class K>
Matrix<K> c_alpha(const K& alpha, const K& s, const K& c, const K& f) {
  Matrix<K> C(5, 5);
  K half = K(1) / K(2);
  C(0, 1) = half;
  C(0, 2) = s;
  C(0, 3) = c;
  C(1, 2) = half;
  C(1, 3) = f;
  C(1, 4) = -(K(5) / K(4)) * c;
  C(2, 3) = half;
  C(2, 4) = alpha * s;
  C(3, 4) = K(2) / K(5);
  return C;
}

}  // namespace kippen::gallery
