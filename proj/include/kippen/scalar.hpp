#pragma once

// Exact coefficient fields: rationals, Gaussian rationals and quadratic
// extensions Q(i)(sqrt(n)), plus the scalar text grammar shared by matrix
// files and polynomial rendering.

#include <gmpxx.h>

#include <cctype>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include "kippen/bigfloat.hpp"
#include "kippen/errors.hpp"

namespace kippen {

// ---------------------------------------------------------------------------
// Rational

class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  explicit Rational(const mpz_class& v) : q_(v) {}
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  Rational inverse() const { return Rational(1) / *this; }

  double to_double() const { return q_.get_d(); }

 private:
  mpq_class q_{0};
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

/// Exact rational square root if q is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q.sign() < 0) return std::nullopt;
  mpz_class n = q.num(), d = q.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

// ---------------------------------------------------------------------------
// Gaussian rationals

class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(int v) : re_(v) {}
  Gaussian(long v) : re_(v) {}
  Gaussian(Rational re) : re_(std::move(re)) {}
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  Gaussian conj() const { return {re_, -im_}; }

  Gaussian operator-() const { return {-re_, -im_}; }
  Gaussian& operator+=(const Gaussian& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Gaussian& operator-=(const Gaussian& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Gaussian& operator*=(const Gaussian& o) {
    if (im_.is_zero() && o.im_.is_zero()) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) { return *this *= o.inverse(); }
  Gaussian inverse() const {
    if (is_zero()) throw DivisionByZero();
    Rational n = norm2();
    return {re_ / n, -im_ / n};
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Rational re_;
  Rational im_;
};

// ---------------------------------------------------------------------------
// Quadratic extension a + b*sqrt(n) with a, b Gaussian rationals.

/// Splits n = k^2 * m with m square-free. Requires n > 0.
inline std::pair<mpz_class, mpz_class> split_square_factor(mpz_class n) {
  mpz_class k = 1;
  mpz_class f = 2;
  while (f * f <= n) {
    while (n % (f * f) == 0) {
      n /= f * f;
      k *= f;
    }
    f += (f == 2) ? 1 : 2;
  }
  return {k, n};
}

class Quad {
 public:
  Quad() = default;
  Quad(int v) : a_(v) {}
  Quad(long v) : a_(v) {}
  Quad(Rational a) : a_(std::move(a)) {}
  Quad(Gaussian a) : a_(std::move(a)) {}
  /// a + b*sqrt(n); n must be square-free and > 1 whenever b != 0.
  Quad(Gaussian a, Gaussian b, long n) : a_(std::move(a)), b_(std::move(b)), n_(n) {
    if (b_.is_zero()) {
      n_ = 0;
    } else if (n_ < 2) {
      throw Error("radicand must be a square-free integer > 1");
    }
  }

  /// sqrt(n) for a positive integer n, reduced to k*sqrt(m) with m square-free.
  static Quad sqrt_of(long n) {
    if (n <= 0) throw Error("sqrt of non-positive integer");
    auto [k, m] = split_square_factor(mpz_class(n));
    if (m == 1) return Quad(Rational(k));
    return Quad(Gaussian(0), Gaussian(Rational(k)), m.get_si());
  }

  const Gaussian& a() const { return a_; }
  const Gaussian& b() const { return b_; }
  long radicand() const { return n_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_real() const { return a_.is_real() && b_.is_real(); }
  Quad conj() const { return Quad(a_.conj(), b_.conj(), n_); }

  Quad operator-() const { return Quad(-a_, -b_, n_); }
  Quad& operator+=(const Quad& o) {
    long n = merge(o);
    a_ += o.a_;
    b_ += o.b_;
    n_ = b_.is_zero() ? 0 : n;
    return *this;
  }
  Quad& operator-=(const Quad& o) {
    long n = merge(o);
    a_ -= o.a_;
    b_ -= o.b_;
    n_ = b_.is_zero() ? 0 : n;
    return *this;
  }
  Quad& operator*=(const Quad& o) {
    long n = merge(o);
    if (o.b_.is_zero()) {
      a_ *= o.a_;
      b_ *= o.a_;
    } else if (b_.is_zero()) {
      b_ = a_ * o.b_;
      a_ *= o.a_;
    } else {
      Gaussian na = a_ * o.a_ + b_ * o.b_ * Gaussian(Rational(n));
      b_ = a_ * o.b_ + b_ * o.a_;
      a_ = std::move(na);
    }
    n_ = b_.is_zero() ? 0 : n;
    return *this;
  }
  Quad& operator/=(const Quad& o) { return *this *= o.inverse(); }
  Quad inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (b_.is_zero()) return Quad(a_.inverse());
    Gaussian den = a_ * a_ - b_ * b_ * Gaussian(Rational(n_));
    Gaussian inv = den.inverse();
    return Quad(a_ * inv, -b_ * inv, n_);
  }
  friend Quad operator+(Quad a, const Quad& b) { return a += b; }
  friend Quad operator-(Quad a, const Quad& b) { return a -= b; }
  friend Quad operator*(Quad a, const Quad& b) { return a *= b; }
  friend Quad operator/(Quad a, const Quad& b) { return a /= b; }
  friend bool operator==(const Quad& x, const Quad& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.n_ == y.n_;
  }

 private:
  long merge(const Quad& o) const {
    if (n_ != 0 && o.n_ != 0 && n_ != o.n_) {
      throw RadicandMismatch("sqrt(" + std::to_string(n_) + ") combined with sqrt(" +
                             std::to_string(o.n_) + ")");
    }
    return n_ != 0 ? n_ : o.n_;
  }

  Gaussian a_;
  Gaussian b_;
  long n_ = 0;
};

// ---------------------------------------------------------------------------
// Uniform free-function interface used by the generic algorithms.

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Gaussian& x) { return x.is_zero(); }
inline bool is_zero(const Quad& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const BigComplex& x) { return x.re == 0 && x.im == 0; }
inline bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0); }
inline bool is_zero(const BigReal& x) { return x == 0; }

inline Rational conj(const Rational& x) { return x; }
inline Gaussian conj(const Gaussian& x) { return x.conj(); }
inline Quad conj(const Quad& x) { return x.conj(); }
inline double conj(double x) { return x; }
inline BigReal conj(const BigReal& x) { return x; }
using std::conj;

/// Exact sign of a real value; nullopt when the value is not real.
inline std::optional<int> real_sign(const Rational& x) { return x.sign(); }
inline std::optional<int> real_sign(const Gaussian& x) {
  if (!x.is_real()) return std::nullopt;
  return x.re().sign();
}
inline int quad_sign(const Rational& a, const Rational& b, long n) {
  int sa = a.sign();
  int sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = a * a;
  Rational rhs = b * b * Rational(n);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}
inline std::optional<int> real_sign(const Quad& x) {
  if (!x.is_real()) return std::nullopt;
  return quad_sign(x.a().re(), x.b().re(), x.radicand());
}

template <class T>
struct is_exact : std::false_type {};
template <>
struct is_exact<Rational> : std::true_type {};
template <>
struct is_exact<Gaussian> : std::true_type {};
template <>
struct is_exact<Quad> : std::true_type {};
template <class T>
inline constexpr bool is_exact_v = is_exact<T>::value;

/// Fields that contain the imaginary unit.
template <class T>
struct has_imag_unit : std::false_type {};
template <>
struct has_imag_unit<Gaussian> : std::true_type {};
template <>
struct has_imag_unit<Quad> : std::true_type {};
template <>
struct has_imag_unit<std::complex<double>> : std::true_type {};

template <class K>
K imag_unit();
template <>
inline Gaussian imag_unit<Gaussian>() { return Gaussian::i(); }
template <>
inline Quad imag_unit<Quad>() { return Quad(Gaussian::i()); }
template <>
inline std::complex<double> imag_unit<std::complex<double>>() { return {0.0, 1.0}; }

// ---------------------------------------------------------------------------
// Formatting

inline std::string to_string(const Rational& q) {
  if (q.is_integer()) return q.num().get_str();
  return q.num().get_str() + "/" + q.den().get_str();
}

namespace detail {

inline void append_part(std::string& out, const Rational& c, const std::string& unit) {
  if (c.is_zero()) return;
  std::string term;
  if (unit.empty()) {
    term = to_string(c);
  } else if (c == Rational(1)) {
    term = unit;
  } else if (c == Rational(-1)) {
    term = "-" + unit;
  } else {
    term = to_string(c) + "*" + unit;
  }
  if (!out.empty() && term.front() != '-') out += '+';
  out += term;
}

}  // namespace detail

inline std::string to_string(const Gaussian& z) {
  std::string out;
  detail::append_part(out, z.re(), "");
  detail::append_part(out, z.im(), "i");
  return out.empty() ? "0" : out;
}

inline std::string to_string(const Quad& x) {
  std::string out;
  std::string root = "sqrt(" + std::to_string(x.radicand()) + ")";
  detail::append_part(out, x.a().re(), "");
  detail::append_part(out, x.a().im(), "i");
  detail::append_part(out, x.b().re(), root);
  detail::append_part(out, x.b().im(), "i*" + root);
  return out.empty() ? "0" : out;
}

inline std::string to_string(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}
inline std::string to_string(const std::complex<double>& z) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "*i)";
  return os.str();
}
inline std::string to_string(const BigReal& x) { return x.str(0, std::ios_base::scientific); }

inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << to_string(x); }
inline std::ostream& operator<<(std::ostream& os, const Gaussian& x) { return os << to_string(x); }
inline std::ostream& operator<<(std::ostream& os, const Quad& x) { return os << to_string(x); }

// ---------------------------------------------------------------------------
// Parsing

/// The field a parsed scalar is required to live in.
struct FieldDescriptor {
  enum class Kind { rational, gaussian, quadratic };
  Kind kind = Kind::gaussian;
  long radicand = 0;

  static FieldDescriptor rational() { return {Kind::rational, 0}; }
  static FieldDescriptor gaussian() { return {Kind::gaussian, 0}; }
  static FieldDescriptor quadratic(long n) { return {Kind::quadratic, n}; }
};

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : s_(text) {}

  Quad parse() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("empty scalar", pos_);
    Quad v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Quad expr() {
    Quad acc;
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Quad t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }

  Quad term() {
    bool was_number = false;
    Quad acc = factor(was_number);
    implicit_i(acc, was_number);
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      char op = s_[pos_];
      if (op != '*' && op != '/') break;
      std::size_t op_pos = pos_;
      ++pos_;
      Quad f = factor(was_number);
      if (op == '*') {
        acc *= f;
      } else {
        if (f.is_zero()) throw ParseError("zero denominator", op_pos + 1);
        acc /= f;
      }
      implicit_i(acc, was_number);
    }
    return acc;
  }

  // "3i" and "1/2i" attach the unit to the whole rational so far.
  void implicit_i(Quad& acc, bool was_number) {
    if (was_number && pos_ < s_.size() && s_[pos_] == 'i' &&
        !(pos_ + 1 < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      acc *= Quad(Gaussian::i());
    }
  }

  Quad factor(bool& was_number) {
    skip_ws();
    was_number = false;
    if (pos_ >= s_.size()) throw ParseError("unexpected end of scalar", pos_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      was_number = true;
      return Quad(Rational(integer()));
    }
    if (c == '(') {
      ++pos_;
      Quad v = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return v;
    }
    if (s_.substr(pos_, 5) == "sqrt(") {
      std::size_t at = pos_ + 5;
      pos_ = at;
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        throw ParseError("expected positive integer radicand", pos_);
      }
      mpz_class n = integer();
      if (n <= 0) throw ParseError("radicand must be positive", at);
      if (!n.fits_slong_p()) throw ParseError("radicand too large", at);
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return Quad::sqrt_of(n.get_si());
    }
    if (c == 'i' && !(pos_ + 1 < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return Quad(Gaussian::i());
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)), 10);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a scalar under the shared grammar and checks it lives in `field`.
inline Quad parse_scalar(std::string_view text, FieldDescriptor field = FieldDescriptor::gaussian()) {
  Quad v = detail::ScalarParser(text).parse();
  switch (field.kind) {
    case FieldDescriptor::Kind::rational:
      if (!v.is_real() || v.radicand() != 0) throw RadicandMismatch("value is not rational: " + std::string(text));
      break;
    case FieldDescriptor::Kind::gaussian:
      if (v.radicand() != 0) throw RadicandMismatch("square root in Gaussian field: " + std::string(text));
      break;
    case FieldDescriptor::Kind::quadratic:
      if (v.radicand() != 0 && v.radicand() != field.radicand) {
        throw RadicandMismatch("sqrt(" + std::to_string(v.radicand()) + ") in field Q(i, sqrt(" +
                               std::to_string(field.radicand) + "))");
      }
      break;
  }
  return v;
}

inline Rational parse_rational(std::string_view text) {
  return parse_scalar(text, FieldDescriptor::rational()).a().re();
}
inline Gaussian parse_gaussian(std::string_view text) {
  return parse_scalar(text, FieldDescriptor::gaussian()).a();
}

/// Exact value of a decimal literal such as "-0.125" or "2.5e-3".
inline Rational parse_decimal_exact(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) { throw ParseError(what, pos); };
  bool neg = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) neg = text[pos++] == '-';
  std::string digits;
  long frac = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      ++frac;
      seen_digit = true;
    }
  }
  if (!seen_digit) fail("expected decimal digits");
  long exp10 = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) eneg = text[pos++] == '-';
    std::string e;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) e += text[pos++];
    if (e.empty() || e.size() > 6) fail("bad exponent");
    exp10 = std::stol(e) * (eneg ? -1 : 1);
  }
  if (pos != text.size()) fail("unexpected character");
  mpz_class mant(digits, 10);
  long shift = exp10 - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational v = shift >= 0 ? Rational(mpz_class(mant * p10)) : Rational(mant, p10);
  return neg ? -v : v;
}

// ---------------------------------------------------------------------------
// Floating-point rendering

/// Correctly rounded at the current working precision.
inline BigReal to_big(const Rational& q) {
  BigReal r;
  mpfr_set_q(r.backend().data(), q.value().get_mpq_t(), MPFR_RNDN);
  return r;
}

namespace detail {

// a + b*sqrt(n) for rationals a, b, without cancellation.
inline BigReal real_quad_to_big(const Rational& a, const Rational& b, long n) {
  BigReal A = to_big(a);
  if (b.is_zero()) return A;
  BigReal root = boost::multiprecision::sqrt(BigReal(n));
  BigReal B = to_big(b);
  if (a.sign() * b.sign() >= 0) return A + B * root;
  // opposite signs: (a^2 - b^2 n) / (a - b sqrt(n))
  Rational num = a * a - b * b * Rational(n);
  return to_big(num) / (A - B * root);
}

}  // namespace detail

/// Approximation with relative error <= 2^(1-bits) per real component.
inline BigComplex to_float(const Rational& x, unsigned bits = 53) {
  PrecisionScope scope(bits + 16);
  return BigComplex(to_big(x));
}
inline BigComplex to_float(const Gaussian& x, unsigned bits = 53) {
  PrecisionScope scope(bits + 16);
  return {to_big(x.re()), to_big(x.im())};
}
inline BigComplex to_float(const Quad& x, unsigned bits = 53) {
  PrecisionScope scope(bits + 16);
  return {detail::real_quad_to_big(x.a().re(), x.b().re(), x.radicand()),
          detail::real_quad_to_big(x.a().im(), x.b().im(), x.radicand())};
}

inline std::complex<double> to_complex(const Rational& x) { return {x.to_double(), 0.0}; }
inline std::complex<double> to_complex(const Gaussian& x) { return {x.re().to_double(), x.im().to_double()}; }
inline std::complex<double> to_complex(const Quad& x) { return to_float(x, 64).to_complex(); }
inline std::complex<double> to_complex(double x) { return {x, 0.0}; }
inline std::complex<double> to_complex(const BigComplex& x) { return x.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& x) { return x; }
inline std::complex<double> to_complex(const BigReal& x) { return {static_cast<double>(x), 0.0}; }

}  // namespace kippen
