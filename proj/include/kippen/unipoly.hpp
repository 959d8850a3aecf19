#pragma once

// Univariate polynomials over a field, gcd, quotient-ring elements K[s]/(g),
// and exact real-root isolation for polynomials with real exact coefficients.

#include <algorithm>
#include <cmath>
#include <tuple>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kippen/bigfloat.hpp"
#include "kippen/errors.hpp"
#include "kippen/scalar.hpp"

namespace kippen {

template <class K>
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(K c) {
    if (!kippen::is_zero(c)) c_.push_back(std::move(c));
  }
  UniPoly(int c) : UniPoly(K(c)) {}
  /// Coefficients from low to high degree.
  explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly x() { return UniPoly(std::vector<K>{K(0), K(1)}); }
  static UniPoly monomial(K c, int deg) {
    std::vector<K> v(static_cast<std::size_t>(deg) + 1, K(0));
    v.back() = std::move(c);
    return UniPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : K(0); }
  K lead() const { return c_.empty() ? K(0) : c_.back(); }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (kippen::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; requires a field.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    UniPoly r = *this;
    if (r.degree() < d.degree()) return {UniPoly(), r};
    std::vector<K> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), K(0));
    K inv = K(1) / d.lead();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int shift = r.degree() - d.degree();
      K f = r.lead() * inv;
      q[shift] = f;
      for (int i = 0; i <= d.degree(); ++i) r.c_[i + shift] -= f * d.c_[i];
      r.c_.pop_back();
      r.trim();
    }
    return {UniPoly(std::move(q)), r};
  }
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }
  UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }

  UniPoly monic() const {
    if (is_zero()) return *this;
    K inv = K(1) / lead();
    UniPoly r = *this;
    for (auto& c : r.c_) c *= inv;
    return r;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> r(c_.size() - 1, K(0));
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<int>(i));
    return UniPoly(std::move(r));
  }

  template <class V>
  V eval(const V& x) const {
    V acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + V(*it);
    return acc;
  }
  K operator()(const K& x) const { return eval<K>(x); }

  template <class F>
  auto map(F f) const -> UniPoly<decltype(f(std::declval<K>()))> {
    using K2 = decltype(f(std::declval<K>()));
    std::vector<K2> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(f(c));
    return UniPoly<K2>(std::move(r));
  }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && kippen::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
bool is_zero(const UniPoly<K>& p) {
  return p.is_zero();
}

namespace detail {

/// Appends `coeff*unit` to a " + "-joined polynomial rendering.
template <class K>
void append_term(std::string& out, const K& c, const std::string& unit) {
  std::string cs = to_string(c);
  bool compound = cs.find_first_of("+-", 1) != std::string::npos;
  std::string body;
  bool negative = false;
  if (unit.empty()) {
    body = cs;
    if (!compound && body.front() == '-') {
      negative = true;
      body.erase(0, 1);
    }
  } else if (cs == "1") {
    body = unit;
  } else if (cs == "-1") {
    body = unit;
    negative = true;
  } else if (compound) {
    body = "(" + cs + ")*" + unit;
  } else {
    body = cs + "*" + unit;
    if (body.front() == '-') {
      negative = true;
      body.erase(0, 1);
    }
  }
  if (out.empty()) {
    out = negative ? "-" + body : body;
  } else {
    out += negative ? " - " : " + ";
    out += body;
  }
}

}  // namespace detail

template <class K>
std::string UniPoly<K>::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (kippen::is_zero(c_[i])) continue;
    std::string unit = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    detail::append_term(out, c_[i], unit);
  }
  return out;
}

template <class K>
std::string to_string(const UniPoly<K>& p) {
  return p.to_string();
}

/// Monic gcd over a field.
template <class K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
  while (!b.is_zero()) {
    UniPoly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Bezout: returns (g, u, v) with u*a + v*b = g monic.
template <class K>
std::tuple<UniPoly<K>, UniPoly<K>, UniPoly<K>> ext_gcd(UniPoly<K> a, UniPoly<K> b) {
  UniPoly<K> u0(1), u1, v0, v1(1);
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = std::move(b);
    b = std::move(r);
    UniPoly<K> u2 = u0 - q * u1;
    UniPoly<K> v2 = v0 - q * v1;
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (a.is_zero()) return {a, u0, v0};
  K inv = K(1) / a.lead();
  UniPoly<K> s(inv);
  return {a * s, u0 * s, v0 * s};
}

/// Integer-coefficient polynomial scaled to primitive form with positive
/// leading coefficient.
inline UniPoly<Rational> primitive_part(const UniPoly<Rational>& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1, g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  }
  std::vector<Rational> v;
  for (const auto& c : p.coeffs()) v.push_back(c * Rational(l));
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
  Rational scale(mpz_class(1), g);
  if (v.back().sign() < 0) scale = -scale;
  for (auto& c : v) c *= scale;
  return UniPoly<Rational>(std::move(v));
}

/// gcd of integer polynomials computed over Q, content-normalized.
inline UniPoly<Rational> gcd_poly(const UniPoly<Rational>& f, const UniPoly<Rational>& g) {
  if (f.is_zero() && g.is_zero()) throw Error("gcd_poly of two zero polynomials");
  return primitive_part(gcd(f, g));
}

/// Yun's square-free decomposition: returns a_1, a_2, ... with f ~ prod a_i^i.
template <class K>
std::vector<UniPoly<K>> squarefree_decomposition(const UniPoly<K>& f) {
  std::vector<UniPoly<K>> out;
  if (f.degree() < 1) return out;
  UniPoly<K> fp = f.derivative();
  UniPoly<K> a = gcd(f, fp);
  UniPoly<K> b = f / a;
  UniPoly<K> c = fp / a;
  UniPoly<K> d = c - b.derivative();
  while (b.degree() >= 1) {
    UniPoly<K> ai = gcd(b, d);
    out.push_back(ai);
    b = b / ai;
    c = d / ai;
    d = c - b.derivative();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quotient ring element K[s]/(g), g monic.

template <class K>
class QuotientElem {
 public:
  using Modulus = std::shared_ptr<const UniPoly<K>>;

  QuotientElem() = default;
  QuotientElem(int c) : v_(K(c)) {}
  QuotientElem(K c) : v_(std::move(c)) {}
  QuotientElem(UniPoly<K> v, Modulus m) : v_(std::move(v)), m_(std::move(m)) { reduce(); }

  /// Normalizes g to monic and returns the shared modulus.
  static Modulus make_modulus(const UniPoly<K>& g) {
    if (g.degree() < 1) throw Error("quotient modulus must have positive degree");
    return std::make_shared<const UniPoly<K>>(g.monic());
  }
  /// The formal root s.
  static QuotientElem root(Modulus m) { return QuotientElem(UniPoly<K>::x(), std::move(m)); }

  const UniPoly<K>& value() const { return v_; }
  const Modulus& modulus() const { return m_; }
  bool is_zero() const { return v_.is_zero(); }

  QuotientElem operator-() const { return QuotientElem(-v_, m_, raw{}); }
  QuotientElem& operator+=(const QuotientElem& o) {
    adopt(o);
    v_ += o.v_;
    return *this;
  }
  QuotientElem& operator-=(const QuotientElem& o) {
    adopt(o);
    v_ -= o.v_;
    return *this;
  }
  QuotientElem& operator*=(const QuotientElem& o) {
    adopt(o);
    v_ *= o.v_;
    reduce();
    return *this;
  }
  QuotientElem& operator/=(const QuotientElem& o) { return *this *= o.inverse(); }
  QuotientElem inverse() const {
    if (v_.is_zero()) throw DivisionByZero();
    if (!m_ || v_.degree() == 0) return QuotientElem(UniPoly<K>(K(1) / v_.lead()), m_, raw{});
    auto [g, u, w] = ext_gcd(v_, *m_);
    if (g.degree() != 0) throw DivisionByZero("element is a zero divisor modulo g");
    return QuotientElem(u, m_);
  }
  friend QuotientElem operator+(QuotientElem a, const QuotientElem& b) { return a += b; }
  friend QuotientElem operator-(QuotientElem a, const QuotientElem& b) { return a -= b; }
  friend QuotientElem operator*(QuotientElem a, const QuotientElem& b) { return a *= b; }
  friend QuotientElem operator/(QuotientElem a, const QuotientElem& b) { return a /= b; }
  friend bool operator==(const QuotientElem& a, const QuotientElem& b) { return a.v_ == b.v_; }

 private:
  struct raw {};
  QuotientElem(UniPoly<K> v, Modulus m, raw) : v_(std::move(v)), m_(std::move(m)) {}
  void adopt(const QuotientElem& o) {
    if (!m_) {
      m_ = o.m_;
    } else if (o.m_ && o.m_ != m_ && !(*o.m_ == *m_)) {
      throw Error("quotient elements with different moduli");
    }
  }
  void reduce() {
    if (m_ && v_.degree() >= m_->degree()) v_ = v_ % *m_;
  }
  UniPoly<K> v_;
  Modulus m_;
};

template <class K>
bool is_zero(const QuotientElem<K>& x) {
  return x.is_zero();
}
template <class K>
QuotientElem<K> conj(const QuotientElem<K>& x) {
  return QuotientElem<K>(x.value().map([](const K& c) { return conj(c); }), x.modulus());
}
template <class K>
std::string to_string(const QuotientElem<K>& x) {
  return x.value().to_string("s");
}

// ---------------------------------------------------------------------------
// Real roots of polynomials with real exact coefficients.

namespace detail {

template <class K>
int sign_at(const UniPoly<K>& p, const Rational& x) {
  K v = p.eval(K(x));
  auto s = real_sign(v);
  if (!s) throw Error("polynomial is not real on the real line");
  return *s;
}

template <class K>
std::vector<UniPoly<K>> sturm_chain(const UniPoly<K>& p) {
  std::vector<UniPoly<K>> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    UniPoly<K> r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

template <class K>
int sign_changes(const std::vector<UniPoly<K>>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Cauchy bound on |roots| as a rational.
template <class K>
Rational root_bound(const UniPoly<K>& p) {
  BigComplex lead = to_float(p.lead(), 64);
  double l = std::abs(lead.to_complex());
  double m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(to_float(p.coeff(i), 64).to_complex()));
  double b = 1.0 + m / l;
  return Rational(static_cast<long>(std::ceil(b)) + 1);
}

}  // namespace detail

/// Isolating intervals [lo, hi] of width <= width for the distinct real roots
/// of a square-free real polynomial, ascending.
template <class K>
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UniPoly<K>& p, const Rational& width) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() < 1) return out;
  auto chain = detail::sturm_chain(p);
  Rational b = detail::root_bound(p);
  struct Item {
    Rational lo, hi;
    int vlo, vhi;
  };
  // count roots in (lo, hi]
  std::vector<Item> stack{{-b, b, detail::sign_changes(chain, -b), detail::sign_changes(chain, b)}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    int n = it.vlo - it.vhi;
    if (n == 0) continue;
    if (n == 1 && it.hi - it.lo <= width) {
      out.emplace_back(it.lo, it.hi);
      continue;
    }
    Rational mid = (it.lo + it.hi) / Rational(2);
    int vm = detail::sign_changes(chain, mid);
    stack.push_back({mid, it.hi, vm, it.vhi});
    stack.push_back({it.lo, mid, it.vlo, vm});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

/// All real roots with multiplicity, ascending, as midpoints of isolating
/// intervals of the given width.
template <class K>
std::vector<Rational> real_roots(const UniPoly<K>& p, const Rational& width) {
  std::vector<Rational> roots;
  auto parts = squarefree_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& [lo, hi] : isolate_real_roots(parts[i], width)) {
      Rational mid = (lo + hi) / Rational(2);
      for (std::size_t k = 0; k <= i; ++k) roots.push_back(mid);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace kippen
