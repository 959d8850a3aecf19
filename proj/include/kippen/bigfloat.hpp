#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <ostream>

namespace kippen {

using BigReal = boost::multiprecision::mpfr_float;

inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the working precision for newly created BigReal values and restores
/// the previous one on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(BigReal::default_precision()) {
    BigReal::default_precision(digits10_for_bits(bits));
  }
  ~PrecisionScope() { BigReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Minimal complex arithmetic over BigReal.
struct BigComplex {
  BigReal re{0};
  BigReal im{0};

  BigComplex() = default;
  BigComplex(BigReal r) : re(std::move(r)), im(0) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(int r) : re(r), im(0) {}

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o) {
    BigReal r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  BigComplex& operator/=(const BigComplex& o) {
    BigReal den = o.re * o.re + o.im * o.im;
    BigReal r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }
inline BigReal norm2(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
inline BigReal abs(const BigComplex& z) { return boost::multiprecision::sqrt(norm2(z)); }

/// exp(i*phi) at the current working precision.
inline BigComplex unit_phase(const BigReal& phi) {
  return {boost::multiprecision::cos(phi), boost::multiprecision::sin(phi)};
}

inline BigReal big_pi() { return 4 * boost::multiprecision::atan(BigReal(1)); }

inline std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
  return os << '(' << z.re << ", " << z.im << ')';
}

}  // namespace kippen
