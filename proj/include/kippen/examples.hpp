#pragma once

// Golden checks for the four explicit examples: the tower example, the
// example whose associated isometry loses Circularity, the 5x5 family
// C_alpha (numeric at 128 bits) and the clean 5x5 example with a circular
// numerical range.

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "kippen/bigfloat.hpp"
#include "kippen/circularity.hpp"
#include "kippen/gallery.hpp"
#include "kippen/moments.hpp"
#include "kippen/spectral.hpp"
#include "kippen/tower.hpp"

namespace kippen {

struct GoldenCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass;
  std::string kind;  ///< "exact" or "numeric"
};

struct ExampleReport {
  std::string id;
  std::vector<GoldenCheck> checks;
  double seconds = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  void exact(std::string name, std::string expected, std::string actual, bool ok) {
    checks.push_back({std::move(name), std::move(expected), std::move(actual), ok, "exact"});
  }
  void numeric(std::string name, std::string expected, std::string actual, bool ok) {
    checks.push_back({std::move(name), std::move(expected), std::move(actual), ok, "numeric"});
  }
};

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::string big(const BigReal& v, int digits = 20) { return v.str(digits); }

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

/// Leading k x k block.
template <class M>
M leading(const M& m, std::size_t k) {
  M r(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r(i, j) = m(i, j);
  return r;
}

/// Smallest eigenvalue of a real symmetric matrix: the largest t with
/// D - tI positive definite, found by bisection on LDL^T pivots.
inline BigReal sym_min_eigenvalue(const std::vector<std::vector<BigReal>>& D, unsigned bits) {
  std::size_t n = D.size();
  BigReal bound = 0;
  for (const auto& row : D) {
    BigReal s = 0;
    for (const auto& x : row) s += boost::multiprecision::abs(x);
    bound = std::max(bound, s);
  }
  auto pd = [&](const BigReal& t) {
    std::vector<std::vector<BigReal>> a = D;
    for (std::size_t i = 0; i < n; ++i) a[i][i] -= t;
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k][k] <= 0) return false;
      for (std::size_t i = k + 1; i < n; ++i) {
        BigReal l = a[i][k] / a[k][k];
        for (std::size_t j = k; j < n; ++j) a[i][j] -= l * a[k][j];
      }
    }
    return true;
  };
  BigReal lo = -bound - 1, hi = bound + 1;
  BigReal eps = boost::multiprecision::ldexp(BigReal(1), -static_cast<int>(bits) + 8);
  while (hi - lo > eps) {
    BigReal mid = (lo + hi) / 2;
    if (pd(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

template <class K>
bool non_radial(const Monomial& m) {
  return m[Var::x] != m[Var::y];
}

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Tower example.

inline ExampleReport run_tower_c() {
  detail::Timer timer;
  using G = Gaussian;
  using P = MultiPoly<G>;
  ExampleReport rep{"tower-C", {}, 0};
  auto c = make_contraction(gallery::tower_c());
  G tr = word_trace(c.C, parse_word("C C C* C C C*"));
  rep.exact("tr(C^2 C* C^2 C*)", "1/200", to_string(tr), tr == G(gallery::q(1, 200)));
  P dp = defect_pencil_poly(c);
  rep.exact("defect pencil radial", "yes", detail::yes_no(is_radial(dp).radial), is_radial(dp).radial);
  P sub = dp.substitute(Var::x, P::var(Var::s)).substitute(Var::y, P::var(Var::s));
  struct Coef {
    const char* name;
    int a, s, t;
    long num;
  };
  const Coef golden[] = {{"alpha^4", 4, 0, 0, 40000},        {"alpha^3 t", 3, 0, 1, 126800},
                         {"alpha^2 s^2", 2, 2, 0, -33200},   {"alpha^2 t^2", 2, 0, 2, 148764},
                         {"alpha s^2 t", 1, 2, 1, -54672},   {"alpha t^3", 1, 0, 3, 76503},
                         {"s^4", 0, 4, 0, 3364},             {"s^2 t^2", 0, 2, 2, -22097},
                         {"t^4", 0, 0, 4, 14539}};
  P expect;
  for (const auto& g : golden) {
    Monomial m = Monomial::of(Var::alpha, g.a) * Monomial::of(Var::s, g.s) * Monomial::of(Var::t, g.t);
    G want(gallery::q(g.num, 40000));
    G got = sub.coeff(m);
    expect += P(m, want);
    rep.exact(std::string("Delta coefficient of ") + g.name, to_string(want), to_string(got), got == want);
  }
  rep.exact("Delta has no other terms", "yes", detail::yes_no(sub == expect), sub == expect);
  auto scan = tower_circularity_scan(c);
  rep.exact("tower levels 1..d+1 circular", "yes", detail::yes_no(scan.all_levels_circular), scan.all_levels_circular);
  bool qrad = is_radial(q_poly(c)).radial;
  rep.exact("Q radial", "yes", detail::yes_no(qrad), qrad);
  auto ts = unbalanced_trace_scan(c, 8);
  rep.exact("shortest unbalanced word with nonzero trace", "6", ts.violation ? std::to_string(ts.length) : "none",
            ts.violation && ts.length == 6);
  rep.seconds = timer.seconds();
  return rep;
}

// ---------------------------------------------------------------------------
// The example with Circularity whose associated isometry lacks it.

inline ExampleReport run_p_not_q() {
  detail::Timer timer;
  using G = Gaussian;
  using P = MultiPoly<G>;
  ExampleReport rep{"P-not-Q", {}, 0};
  auto c = make_contraction(gallery::p_not_q());
  P xy = P::var(Var::x) * P::var(Var::y);
  P want = P(1) - xy.scaled(G(gallery::q(7, 16))) + (xy * xy).scaled(G(gallery::q(1, 32)));
  P got = p_poly(c);
  rep.exact("P_C", to_string(want), to_string(got), got == want);
  auto pp = phase_pair(c);
  bool low_zero = true;
  for (int N = 0; N <= 5; ++N) low_zero = low_zero && t2_coeff(pp, N).value.is_zero();
  rep.exact("A_0 .. A_5 vanish", "yes", detail::yes_no(low_zero), low_zero);
  auto ob = first_obstruction(c, 12);
  rep.exact("first nonzero A_N", "6", ob ? std::to_string(ob->N) : "none", ob && ob->N == 6);
  G a6 = ob ? ob->value.evaluate<G>({{Var::w, G(1)}}) : G(0);
  rep.exact("A_6 at theta = 0", "-1/65536", to_string(a6), a6 == G(gallery::q(-1, 65536)));
  bool qrad = is_radial(q_poly(c)).radial;
  rep.exact("Q radial", "no", detail::yes_no(qrad), !qrad);
  bool pd = true;
  for (std::size_t k = 1; k <= c.n; ++k) {
    auto s = real_sign(det_field(detail::leading(c.D, k)));
    pd = pd && s && *s > 0;
  }
  rep.exact("D positive definite (leading minors)", "yes", detail::yes_no(pd), pd);
  rep.seconds = timer.seconds();
  return rep;
}

// ---------------------------------------------------------------------------
// C_alpha at extended precision.

struct CAlpha {
  BigReal alpha, s2, s, c, f;
  Matrix<BigComplex> C;
  BigReal q45;            ///< |x^4 y^5 coefficient of Q|
  BigReal q_nonradial;    ///< largest |coefficient| of Q off the diagonal x^k y^k
  BigReal p23;            ///< x^2 y^3 coefficient of P
  BigReal p23_formula;    ///< -s Psi(alpha) / (282576100 alpha (25 alpha^2 - 40 alpha + 16))
  BigReal q45_formula;    ///< -s Phi(alpha) / (1130304400 alpha (25 alpha^2 - 40 alpha + 16))
  BigReal min_defect_eig;
  bool p_other_nonradial_zero;
};

inline CAlpha c_alpha_build(unsigned bits = 128) {
  UniPoly<Rational> phi = gallery::c_alpha_phi();
  Rational a0 = gallery::q(-55, 100), a1 = gallery::q(-54, 100);
  int s0 = phi.eval(a0).sign(), s1 = phi.eval(a1).sign();
  if (s0 == 0 || s1 == 0 || s0 == s1) throw BracketFailure("no sign change of the quintic on (-0.55, -0.54)");
  PrecisionScope scope(bits);
  auto eval = [](const UniPoly<Rational>& p, const BigReal& x) {
    BigReal acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + to_big(p.coeff(i));
    return acc;
  };
  BigReal lo = to_big(a0), hi = to_big(a1);
  BigReal eps = boost::multiprecision::ldexp(BigReal(1), -static_cast<int>(bits));
  while (hi - lo > eps) {
    BigReal mid = (lo + hi) / 2;
    if ((eval(phi, mid) < 0) == (s0 < 0)) lo = mid;
    else hi = mid;
  }
  CAlpha out;
  BigReal a = (lo + hi) / 2;
  out.alpha = a;
  out.s2 = 36 * (4 * a + 5) / (1025 * a * (5 * a - 4));
  if (out.s2 <= 0) throw Error("s^2 is not positive at the chosen root");
  out.s = boost::multiprecision::sqrt(out.s2);
  out.c = 32 * (4 * a + 5) / (205 * (5 * a - 4));
  out.f = -5 * (4 * a + 5) / 41 * out.s;
  out.C = gallery::c_alpha<BigComplex>(BigComplex(a), BigComplex(out.s), BigComplex(out.c), BigComplex(out.f));
  BigReal den = a * (25 * a * a - 40 * a + 16);
  out.q45_formula = -out.s * eval(phi, a) / (1130304400 * den);
  out.p23_formula = -out.s * eval(gallery::c_alpha_psi(), a) / (282576100 * den);
  PolyMatrix<BigComplex> L = lift(out.C);
  MultiPoly<BigComplex> Q = q_poly(L), P = p_poly(L);
  Monomial x4y5 = Monomial::of(Var::x, 4) * Monomial::of(Var::y, 5);
  Monomial x2y3 = Monomial::of(Var::x, 2) * Monomial::of(Var::y, 3);
  Monomial x3y2 = Monomial::of(Var::x, 3) * Monomial::of(Var::y, 2);
  out.q45 = abs(Q.coeff(x4y5));
  out.q_nonradial = 0;
  for (const auto& [m, v] : Q.terms())
    if (detail::non_radial<BigComplex>(m)) out.q_nonradial = std::max(out.q_nonradial, abs(v));
  out.p23 = P.coeff(x2y3).re;
  // P is symmetric in x, y for real C; every other off-diagonal term must vanish
  BigReal other = 0;
  for (const auto& [m, v] : P.terms())
    if (detail::non_radial<BigComplex>(m) && !(m == x2y3) && !(m == x3y2)) other = std::max(other, abs(v));
  out.p_other_nonradial_zero = other <= BigReal("1e-25");
  std::vector<std::vector<BigReal>> D(5, std::vector<BigReal>(5));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      BigReal s = i == j ? BigReal(1) : BigReal(0);
      for (std::size_t k = 0; k < 5; ++k) s -= out.C(k, i).re * out.C(k, j).re;
      D[i][j] = s;
    }
  out.min_defect_eig = detail::sym_min_eigenvalue(D, bits);
  return out;
}

inline ExampleReport run_c_alpha(unsigned bits = 128) {
  detail::Timer timer;
  ExampleReport rep{"C-alpha", {}, 0};
  UniPoly<Rational> g = gcd_poly(gallery::c_alpha_phi(), gallery::c_alpha_psi());
  rep.exact("gcd(Phi, Psi)", "1", to_string(g), g.degree() == 0);
  CAlpha ca = c_alpha_build(bits);
  PrecisionScope scope(bits);
  bool in = ca.alpha > BigReal("-0.55") && ca.alpha < BigReal("-0.54");
  rep.numeric("root alpha in (-0.55, -0.54)", "yes", detail::big(ca.alpha), in);
  rep.numeric("s^2 > 0", "yes", detail::big(ca.s2), ca.s2 > 0);
  rep.numeric("|x^4 y^5 coefficient of Q| <= 1e-25", "<= 1e-25", detail::big(ca.q45, 6), ca.q45 <= BigReal("1e-25"));
  rep.numeric("all non-radial Q coefficients <= 1e-25", "<= 1e-25", detail::big(ca.q_nonradial, 6),
              ca.q_nonradial <= BigReal("1e-25"));
  BigReal ap = boost::multiprecision::abs(ca.p23);
  rep.numeric("|x^2 y^3 coefficient of P| >= 1e-6", ">= 1e-6", detail::big(ca.p23, 12), ap >= BigReal("1e-6"));
  BigReal rel = boost::multiprecision::abs(ca.p23 - ca.p23_formula) / ap;
  rep.numeric("x^2 y^3 coefficient matches the Psi formula", "rel <= 1e-25", detail::big(rel, 6),
              rel <= BigReal("1e-25"));
  rep.numeric("P has no other non-radial terms", "yes", detail::yes_no(ca.p_other_nonradial_zero),
              ca.p_other_nonradial_zero);
  rep.numeric("contraction: min eigenvalue of D >= -1e-20", ">= -1e-20", detail::big(ca.min_defect_eig, 12),
              ca.min_defect_eig >= BigReal("-1e-20"));
  rep.seconds = timer.seconds();
  return rep;
}

// ---------------------------------------------------------------------------
// Clean example.

struct CleanExact {
  Quad delta1, delta2, delta3;
  MultiPoly<Quad> delta4;  ///< in s, omega, w after p^2 -> s, omega^2 -> its value
  MultiPoly<Quad> delta5;  ///< same reduction, before reducing mod g
  MultiPoly<Quad> delta5_mod_g;
};

/// Leading minors of M = (4 omega^2 - 1) I + C*C - 2 omega (wC + w^-1 C*),
/// with p and omega formal.
inline CleanExact clean_minors_exact() {
  using P = MultiPoly<Quad>;
  PolyMatrix<Rational> Cr = gallery::clean_formal();
  PolyMatrix<Quad> C(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) C(i, j) = Cr(i, j).map_coeffs([](const Rational& r) { return Quad(r); });
  PolyMatrix<Quad> Cs = C.adjoint();
  P om = P::var(Var::omega), w = P::var(Var::w), wi(w_power(-1), Quad(1));
  P diag = (om * om).scaled(Quad(4)) - P(1);
  PolyMatrix<Quad> M = Cs * C - (C * w + Cs * wi) * om.scaled(Quad(2));
  for (std::size_t i = 0; i < 5; ++i) M(i, i) += diag;
  P om2(gallery::clean_omega_squared());
  auto reduce = [&](const P& x) {
    return x.reduce_square(Var::omega, om2).reduce_square(Var::p, P::var(Var::s));
  };
  CleanExact out;
  auto minor = [&](std::size_t k) { return reduce(det(detail::leading(M, k))); };
  auto constant = [](const P& x) {
    if (!x.is_constant()) throw Error("minor is not constant: " + to_string(x));
    return x.constant_term();
  };
  out.delta1 = constant(minor(1));
  out.delta2 = constant(minor(2));
  out.delta3 = constant(minor(3));
  out.delta4 = minor(4);
  out.delta5 = minor(5);
  out.delta5_mod_g = out.delta5.reduce_mod(Var::s, gallery::clean_g_monic());
  return out;
}

struct CleanNumeric {
  double s, p, omega;
  CMat C, A;
  DiscResult disc;
  double min_delta4;
  double delta4_formula_error;  ///< max |numeric Delta_4 - closed form| over the grid
  std::size_t defect_rank;
};

inline CleanNumeric clean_numeric(std::size_t grid = 720) {
  CleanNumeric out{};
  {
    PrecisionScope scope(128);
    UniPoly<Quad> g = gallery::clean_g();
    BigReal a = to_float(g.coeff(2), 128).re, b = to_float(g.coeff(1), 128).re, c = to_float(g.coeff(0), 128).re;
    BigReal disc = b * b - 4 * a * c;
    if (disc <= 0) throw Error("g has no real roots");
    // smaller root, written to avoid cancellation
    BigReal s = 2 * c / (-b + boost::multiprecision::sqrt(disc));
    out.s = s.convert_to<double>();
    out.p = boost::multiprecision::sqrt(s).convert_to<double>();
    out.omega = (boost::multiprecision::sqrt(19 + boost::multiprecision::sqrt(BigReal(145))) / 8).convert_to<double>();
  }
  CMat C = CMat::Zero(5, 5);
  C(0, 1) = 0.5;
  C(1, 2) = 0.25;
  C(1, 3) = out.p;
  C(2, 3) = 0.25;
  C(2, 4) = -out.p;
  C(3, 4) = 0.5;
  out.C = C;
  auto iso = assoc_isometry_numeric(C);
  out.A = iso.A;
  out.defect_rank = iso.defect_rank;
  out.disc = is_disc(out.A, grid);
  double r145 = std::sqrt(145.0), om = out.omega;
  out.min_delta4 = std::numeric_limits<double>::infinity();
  out.delta4_formula_error = 0;
  for (std::size_t g = 0; g < grid; ++g) {
    double th = 2 * kPi * static_cast<double>(g) / static_cast<double>(grid);
    cplx w = std::polar(1.0, -th);
    CMat M = (4 * om * om - 1) * CMat::Identity(5, 5) + C.adjoint() * C - 2 * om * (w * C + std::conj(w) * C.adjoint());
    double d4 = M.topLeftCorner(4, 4).determinant().real();
    double closed = (1859 + 149 * r145) / 8192 - (83 + 5 * r145) / 128 * out.s -
                    (7 + r145) * std::sqrt(19 + r145) / 512 * out.p * std::cos(th);
    out.min_delta4 = std::min(out.min_delta4, d4);
    out.delta4_formula_error = std::max(out.delta4_formula_error, std::abs(d4 - closed));
  }
  return out;
}

inline ExampleReport run_clean() {
  detail::Timer timer;
  using P = MultiPoly<Quad>;
  ExampleReport rep{"clean", {}, 0};
  Quad r = Quad::sqrt_of(145);
  UniPoly<Quad> g = gallery::clean_g();
  auto g0 = real_sign(g.eval(Quad(0)));
  auto gq = real_sign(g.eval(Quad(gallery::q(1, 4))));
  rep.exact("g(0) > 0 and g(1/4) < 0", "yes", detail::yes_no(g0 && gq && *g0 > 0 && *gq < 0),
            g0 && gq && *g0 > 0 && *gq < 0);
  rep.exact("g(1/4)", "-341 + 13 sqrt(145)", to_string(g.eval(Quad(gallery::q(1, 4)))),
            g.eval(Quad(gallery::q(1, 4))) == Quad(-341) + Quad(13) * r);
  auto ex = clean_minors_exact();
  Quad d1 = (Quad(3) + r) / Quad(16), d2 = (Quad(45) + Quad(3) * r) / Quad(128),
       d3 = (Quad(257) + Quad(23) * r) / Quad(1024);
  rep.exact("Delta_1", to_string(d1), to_string(ex.delta1), ex.delta1 == d1);
  rep.exact("Delta_2", to_string(d2), to_string(ex.delta2), ex.delta2 == d2);
  rep.exact("Delta_3", to_string(d3), to_string(ex.delta3), ex.delta3 == d3);
  // (7 + r) sqrt(19 + r)/512 sqrt(s) cos(theta) with sqrt(19 + r) = 8 omega, cos = (w + 1/w)/2
  P s = P::var(Var::s), om = P::var(Var::omega), p = P::var(Var::p);
  P cosw = (P::var(Var::w) + P(w_power(-1), Quad(1))).scaled(Quad(gallery::q(1, 2)));
  P d4 = P((Quad(1859) + Quad(149) * r) / Quad(8192)) - s.scaled((Quad(83) + Quad(5) * r) / Quad(128)) -
         (om * p * cosw).scaled((Quad(7) + r) * Quad(8) / Quad(512));
  rep.exact("Delta_4 closed form", to_string(d4), to_string(ex.delta4), ex.delta4 == d4);
  P d5 = P::from_unipoly(g, Var::s).scaled(Quad(gallery::q(1, 65536)));
  rep.exact("Delta_5 = g(s)/65536", to_string(d5), to_string(ex.delta5), ex.delta5 == d5);
  rep.exact("Delta_5 vanishes mod g", "0", to_string(ex.delta5_mod_g), ex.delta5_mod_g.is_zero());
  // D's leading minors with s = p^2
  PolyMatrix<Rational> Cf = gallery::clean_formal();
  PolyMatrix<Rational> D = defect_operator(Cf);
  using R = MultiPoly<Rational>;
  R sr = R::var(Var::s);
  std::vector<R> want{R(1), R(gallery::q(3, 4)), R(gallery::q(45, 64)),
                      (R(225) - sr.scaled(Rational(256))).scaled(gallery::q(3, 1024)),
                      ((sr * sr).scaled(Rational(1024)) - sr.scaled(Rational(1728)) + R(675)).scaled(gallery::q(3, 4096))};
  bool minors_ok = true;
  for (std::size_t k = 1; k <= 5; ++k)
    minors_ok = minors_ok && det(detail::leading(D, k)).reduce_square(Var::p, sr) == want[k - 1];
  rep.exact("leading minors of D", "1, 3/4, 45/64, 3(225-256s)/1024, 3(1024s^2-1728s+675)/4096",
            minors_ok ? "match" : "differ", minors_ok);
  R q = q_poly(Cf);
  R x3y2 = q.coefficient_of(Var::x, 3).coefficient_of(Var::y, 2);
  R pp = R::var(Var::p);
  rep.exact("x^3 y^2 coefficient of Q", "p/16", to_string(x3y2), x3y2 == pp.scaled(gallery::q(1, 16)));
  R x4y4 = q.coefficient_of(Var::x, 4).coefficient_of(Var::y, 4);
  R want44 = pp.pow(4) - pp.pow(2).scaled(gallery::q(313, 64)) + R(gallery::q(1683, 512));
  rep.exact("x^4 y^4 coefficient of Q", to_string(want44), to_string(x4y4), x4y4 == want44);
  bool qrad = is_radial(q).radial;
  rep.exact("Q radial", "no", detail::yes_no(qrad), !qrad);
  PolyMatrix<Rational> C4 = Cf * Cf * Cf * Cf;
  bool nil = !C4.is_zero() && (C4 * Cf).is_zero();
  rep.exact("C^4 != 0 and C^5 = 0", "yes", detail::yes_no(nil), nil);
  auto num = clean_numeric();
  rep.numeric("s in (0, 1/4)", "yes", detail::sci(num.s), num.s > 0 && num.s < 0.25);
  double err = std::abs(num.disc.radius - num.omega);
  rep.numeric("W(A) is a disc", "yes", detail::yes_no(num.disc.is_disc), num.disc.is_disc);
  rep.numeric("disc radius = sqrt(19 + sqrt 145)/8", detail::sci(num.omega) + " within 1e-9",
              detail::sci(num.disc.radius) + " (error " + detail::sci(err) + ")", err <= 1e-9);
  rep.numeric("Delta_4 > 0 on the grid", "> 0", "min " + detail::sci(num.min_delta4), num.min_delta4 > 0);
  rep.numeric("Delta_4 grid values match the closed form", "<= 1e-12", detail::sci(num.delta4_formula_error),
              num.delta4_formula_error <= 1e-12);
  rep.numeric("D has full rank", "5", std::to_string(num.defect_rank), num.defect_rank == 5);
  rep.seconds = timer.seconds();
  return rep;
}

inline std::vector<std::string> example_ids() { return {"tower-C", "P-not-Q", "C-alpha", "clean"}; }

inline ExampleReport run_example(const std::string& id) {
  if (id == "tower-C") return run_tower_c();
  if (id == "P-not-Q") return run_p_not_q();
  if (id == "C-alpha") return run_c_alpha();
  if (id == "clean") return run_clean();
  throw Error("unknown example: " + id);
}

inline std::vector<ExampleReport> run_all_examples() {
  std::vector<ExampleReport> out;
  for (const auto& id : example_ids()) out.push_back(run_example(id));
  return out;
}

}  // namespace kippen
