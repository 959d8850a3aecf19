#pragma once

// Trace functions of the phase pencil: moments tr(H^n K), Laurent
// coefficients A_N of the resolvent trace, closed forms for N <= 5 and the
// first nonvanishing coefficient.

#include <functional>
#include <optional>
#include <vector>

#include "kippen/circularity.hpp"
#include "kippen/polymat.hpp"

namespace kippen {

/// H = (wC + w^-1 C*)/2 and K = (i/2)(w^-1 C* - wC) over Laurent polynomials in w.
template <class K>
struct PhasePair {
  PolyMatrix<K> H;
  PolyMatrix<K> K_;
  PolyMatrix<K> D;  ///< defect operator, constant in w

  const PolyMatrix<K>& Kmat() const { return K_; }
};

template <class K>
PhasePair<K> phase_pair(const Contraction<K>& c) {
  static_assert(has_imag_unit<K>::value, "phase pair needs an imaginary unit");
  using P = MultiPoly<K>;
  std::size_t n = c.n;
  Matrix<K> Cs = c.C.adjoint();
  K half = K(1) / K(2);
  K ihalf = imag_unit<K>() * half;
  P w = P::var(Var::w), wi(w_power(-1), K(1));
  PhasePair<K> pp{PolyMatrix<K>(n, n), PolyMatrix<K>(n, n), lift(c.D)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      P a = w * P(c.C(i, j)), b = wi * P(Cs(i, j));
      pp.H(i, j) = (a + b) * P(half);
      pp.K_(i, j) = (b - a) * P(ihalf);
    }
  return pp;
}

/// Involution of a Laurent matrix: transpose, conjugate coefficients, w -> 1/w.
template <class K>
PolyMatrix<K> involution(const PolyMatrix<K>& m) {
  PolyMatrix<K> r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).conj();
  return r;
}

template <class K>
MultiPoly<K> t1_moment(const PhasePair<K>& pp, int n) {
  if (n < 0) throw Error("moment index must be >= 0");
  PolyMatrix<K> m = pp.Kmat();
  for (int k = 0; k < n; ++k) m = pp.H * m;
  return m.trace();
}

template <class K>
MultiPoly<K> t1_moment(const Contraction<K>& c, int n) {
  return t1_moment(phase_pair(c), n);
}

template <class K>
struct LaurentCoeff {
  MultiPoly<K> value;
  std::size_t summands = 0;  ///< number of {1,2}-compositions enumerated
};

/// A_N as the sum over {1,2}-compositions (p_1..p_k) of N of
/// tr(F_p1 ... F_pk K), F_1 = H, F_2 = D/4.
template <class K>
LaurentCoeff<K> t2_coeff(const PhasePair<K>& pp, int N) {
  if (N < 0) throw Error("coefficient index must be >= 0");
  std::size_t n = pp.H.rows();
  PolyMatrix<K> quarterD = pp.D * MultiPoly<K>(K(1) / K(4));
  LaurentCoeff<K> out;
  std::function<void(int, const PolyMatrix<K>&)> rec = [&](int left, const PolyMatrix<K>& prefix) {
    if (left == 0) {
      out.value += (prefix * pp.Kmat()).trace();
      ++out.summands;
      return;
    }
    rec(left - 1, prefix * pp.H);
    if (left >= 2) rec(left - 2, prefix * quarterD);
  };
  rec(N, PolyMatrix<K>::identity(n));
  return out;
}

template <class K>
LaurentCoeff<K> t2_coeff(const Contraction<K>& c, int N) {
  return t2_coeff(phase_pair(c), N);
}

/// The H, K trace expressions for A_0 .. A_5.
template <class K>
MultiPoly<K> closed_form(const PhasePair<K>& pp, int N) {
  using P = MultiPoly<K>;
  const PolyMatrix<K>& H = pp.H;
  const PolyMatrix<K>& Km = pp.Kmat();
  auto tr = [&](std::initializer_list<const PolyMatrix<K>*> f) {
    PolyMatrix<K> m = PolyMatrix<K>::identity(H.rows());
    for (const auto* x : f) m = m * *x;
    return m.trace();
  };
  auto c = [](long a, long b) { return P(K(Rational(mpz_class(a), mpz_class(b)))); };
  const auto* h = &H;
  const auto* k = &Km;
  switch (N) {
    case 0:
      return tr({k});
    case 1:
      return tr({h, k});
    case 2:
      return c(1, 4) * tr({k}) + c(3, 4) * tr({h, h, k}) - c(1, 4) * tr({k, k, k});
    case 3:
      return c(1, 2) * tr({h, k}) + c(1, 2) * tr({h, h, h, k}) - c(1, 2) * tr({h, k, k, k});
    case 4:
      return c(1, 16) * tr({k}) + c(5, 8) * tr({h, h, k}) - c(1, 8) * tr({k, k, k}) +
             c(5, 16) * tr({h, h, h, h, k}) - c(5, 16) * tr({h, h, k, k, k}) - c(5, 16) * tr({h, k, h, k, k}) +
             c(1, 16) * tr({k, k, k, k, k});
    case 5:
      return c(3, 16) * tr({h, k}) + c(5, 8) * tr({h, h, h, k}) - c(3, 8) * tr({h, k, k, k}) +
             c(3, 16) * tr({h, h, h, h, h, k}) -
             c(3, 16) * (tr({h, h, h, k, k, k}) + tr({h, h, k, h, k, k}) + tr({h, h, k, k, h, k})) -
             c(1, 16) * tr({h, k, h, k, h, k}) + c(3, 16) * tr({h, k, k, k, k, k});
    default:
      throw Error("closed forms exist for N <= 5 only");
  }
}

/// Per-N agreement of the composition expansion with the closed forms.
template <class K>
std::vector<bool> verify_closed_forms(const Contraction<K>& c) {
  PhasePair<K> pp = phase_pair(c);
  std::vector<bool> ok;
  for (int N = 0; N <= 5; ++N) ok.push_back(t2_coeff(pp, N).value == closed_form(pp, N));
  return ok;
}

template <class K>
struct Obstruction {
  int N;
  MultiPoly<K> value;
};

/// Smallest N <= N_max with A_N nonzero.
template <class K>
std::optional<Obstruction<K>> first_obstruction(const Contraction<K>& c, int N_max) {
  if (N_max < 0) throw Error("N_max must be >= 0");
  PhasePair<K> pp = phase_pair(c);
  for (int N = 0; N <= N_max; ++N) {
    auto a = t2_coeff(pp, N);
    if (!a.value.is_zero()) return Obstruction<K>{N, a.value};
  }
  return std::nullopt;
}

/// True when tr(H^n K) vanishes for n = 0..bound.
template <class K>
bool t1_vanishes(const Contraction<K>& c, int bound) {
  PhasePair<K> pp = phase_pair(c);
  PolyMatrix<K> m = pp.Kmat();
  for (int n = 0; n <= bound; ++n) {
    if (!m.trace().is_zero()) return false;
    m = pp.H * m;
  }
  return true;
}

}  // namespace kippen
