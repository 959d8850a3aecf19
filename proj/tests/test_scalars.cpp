#include <gtest/gtest.h>

#include "kippen/scalar.hpp"
#include "kippen/unipoly.hpp"
#include "support/random_exact.hpp"

using namespace kippen;
using kippen::testing::RandomExact;

TEST(Rational, CanonicalForm) {
  Rational q(mpz_class(6), mpz_class(-4));
  EXPECT_EQ(q.num(), -3);
  EXPECT_EQ(q.den(), 2);
  EXPECT_EQ(to_string(q), "-3/2");
  EXPECT_THROW(Rational(mpz_class(1), mpz_class(0)), DivisionByZero);
}

TEST(Parse, Examples) {
  EXPECT_EQ(parse_rational("1/2"), Rational(mpz_class(1), mpz_class(2)));
  EXPECT_EQ(parse_rational("-1/65536"), Rational(mpz_class(-1), mpz_class(65536)));
  Quad d1 = parse_scalar("(3+sqrt(145))/16", FieldDescriptor::quadratic(145));
  EXPECT_EQ(d1.a(), Gaussian(parse_rational("3/16")));
  EXPECT_EQ(d1.b(), Gaussian(parse_rational("1/16")));
  EXPECT_EQ(d1.radicand(), 145);
  EXPECT_EQ(to_string(d1), "3/16+1/16*sqrt(145)");
}

TEST(Parse, ImaginaryForms) {
  EXPECT_EQ(parse_gaussian("-(1+i)/4"), Gaussian(parse_rational("-1/4"), parse_rational("-1/4")));
  EXPECT_EQ(parse_gaussian("1/2i"), Gaussian(Rational(0), parse_rational("1/2")));
  EXPECT_EQ(parse_gaussian("3*i"), Gaussian(Rational(0), Rational(3)));
  EXPECT_EQ(parse_gaussian("-i"), Gaussian(Rational(0), Rational(-1)));
  EXPECT_EQ(parse_gaussian(" 2 - 3i "), Gaussian(Rational(2), Rational(-3)));
  EXPECT_EQ(to_string(parse_gaussian("(-1+i)/4")), "-1/4+1/4*i");
}

TEST(Parse, SquareRootsReduce) {
  EXPECT_EQ(parse_scalar("sqrt(8)", FieldDescriptor::quadratic(2)), Quad(Gaussian(0), Gaussian(2), 2));
  EXPECT_EQ(parse_scalar("sqrt(9)"), Quad(3));
  EXPECT_EQ(to_string(parse_scalar("sqrt(145)", FieldDescriptor::quadratic(145))), "sqrt(145)");
  EXPECT_EQ(to_string(parse_scalar("-1/4*i*sqrt(2)", FieldDescriptor::quadratic(2))), "-1/4*i*sqrt(2)");
}

TEST(Parse, Errors) {
  try {
    parse_rational("1/2 +* 3");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/2)"), ParseError);
  EXPECT_THROW(parse_scalar("sqrt(2)", FieldDescriptor::quadratic(3)), RadicandMismatch);
  EXPECT_THROW(parse_scalar("sqrt(2)+sqrt(3)"), RadicandMismatch);
  EXPECT_THROW(parse_rational("i"), RadicandMismatch);
  EXPECT_THROW(parse_gaussian("sqrt(2)"), RadicandMismatch);
}

TEST(Quad, FieldAxiomsRandomized) {
  RandomExact rnd(7);
  for (int trial = 0; trial < 300; ++trial) {
    long n = rnd.squarefree_radicand();
    Quad x = rnd.quad(n), y = rnd.quad(n), z = rnd.quad(n);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(conj(x * y), conj(x) * conj(y));
    if (!x.is_zero()) {
      EXPECT_EQ(x * x.inverse(), Quad(1));
      EXPECT_EQ((y / x) * x, y);
    }
  }
}

TEST(Quad, RealSign) {
  // 531 + 69 sqrt(145) > 8 (7 + sqrt 145) sqrt(19 + sqrt 145), after squaring
  Quad r145 = Quad::sqrt_of(145);
  Quad lhs = (Quad(531) + Quad(69) * r145) * (Quad(531) + Quad(69) * r145);
  Quad rhs = Quad(64) * (Quad(7) + r145) * (Quad(7) + r145) * (Quad(19) + r145);
  EXPECT_EQ(lhs - rhs, parse_scalar("606482+43838*sqrt(145)", FieldDescriptor::quadratic(145)));
  EXPECT_EQ(real_sign(lhs - rhs), 1);
  EXPECT_EQ(real_sign(Quad(12) - r145), -1);
  EXPECT_EQ(real_sign(Quad(13) - r145), 1);
  EXPECT_EQ(real_sign(r145 - r145), 0);
  // g(1/4) = -341 + 13 sqrt(145) < 0
  EXPECT_EQ(real_sign(Quad(-341) + Quad(13) * r145), -1);
  EXPECT_FALSE(real_sign(Quad(Gaussian::i())).has_value());
}

TEST(Format, RoundTripThousandScalars) {
  RandomExact rnd(11);
  for (int trial = 0; trial < 1000; ++trial) {
    long n = rnd.squarefree_radicand();
    Quad x = rnd.quad(n);
    std::string text = to_string(x);
    EXPECT_EQ(parse_scalar(text, FieldDescriptor::quadratic(n)), x) << text;
  }
}

TEST(ToFloat, Examples) {
  EXPECT_EQ(static_cast<double>(to_float(parse_rational("1/2")).re), 0.5);
  PrecisionScope scope(128);
  Quad omega2 = parse_scalar("(19+sqrt(145))/64", FieldDescriptor::quadratic(145));
  BigReal omega = boost::multiprecision::sqrt(to_float(omega2, 128).re);
  EXPECT_NEAR(static_cast<double>(omega), 0.6964, 5e-5);
}

TEST(ToFloat, ErrorBoundAndMonotonicity) {
  RandomExact rnd(3);
  for (int trial = 0; trial < 100; ++trial) {
    long n = rnd.squarefree_radicand();
    Quad x = rnd.quad(n);
    PrecisionScope scope(320);
    BigComplex ref = to_float(x, 256);
    BigReal prev_err = -1;
    for (unsigned bits : {53u, 106u, 212u}) {
      BigComplex v = to_float(x, bits);
      BigReal err = abs(v - ref);
      BigReal bound = boost::multiprecision::ldexp(abs(ref), 1 - static_cast<int>(bits));
      EXPECT_LE(err, bound) << to_string(x) << " at " << bits;
      if (prev_err >= 0) { EXPECT_LE(err, prev_err + bound); }
      prev_err = err;
    }
  }
}

TEST(ToFloat, NoCancellation) {
  // 12 - sqrt(145) is about -0.0416; 1/(12+sqrt(145)) form keeps full accuracy
  Quad x = Quad(mpz_class("100000000000").get_si()) - Quad(mpz_class("100000000000").get_si()) + Quad(12) -
           Quad::sqrt_of(145);
  PrecisionScope scope(300);
  BigReal exact = BigReal(12) - boost::multiprecision::sqrt(BigReal(145));
  BigReal got = to_float(x, 53).re;
  EXPECT_LE(boost::multiprecision::abs(got - exact), boost::multiprecision::abs(exact) * 1e-15);
}

TEST(GcdPoly, Examples) {
  using P = UniPoly<Rational>;
  P x = P::x();
  EXPECT_EQ(gcd_poly(x * x - P(1), x - P(1)), x - P(1));
  P f = P(2) * x * x + P(4);
  EXPECT_EQ(gcd_poly(f, P()), x * x + P(2));
  auto quintic = [](std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return P(std::move(v));
  };
  P phi = quintic({-47232000, -318470912, 10740240, 274015368, -927166375, 24182784});
  P psi = quintic({-11808000, -97261504, 12334000, 127086692, -285636125, 6045696});
  EXPECT_EQ(gcd_poly(phi, psi), P(1));
  EXPECT_EQ(gcd_poly(phi * (x - P(3)), psi * (x - P(3)) * P(7)), x - P(3));
}

TEST(QuotientElem, ArithmeticModG) {
  using Q = QuotientElem<Rational>;
  // Q(sqrt 2) as Q[s]/(s^2 - 2)
  auto m = Q::make_modulus(UniPoly<Rational>(std::vector<Rational>{Rational(-4), Rational(0), Rational(2)}));
  Q s = Q::root(m);
  EXPECT_EQ(s * s, Q(Rational(2)));
  Q a = s + Q(1);
  EXPECT_EQ(a * a.inverse(), Q(1));
  EXPECT_EQ(to_string(a.inverse()), "-1 + s");
}

TEST(RealRoots, SturmIsolation) {
  using P = UniPoly<Rational>;
  P x = P::x();
  P f = (x - P(1)) * (x - P(1)) * (x + P(parse_rational("1/2"))) * (x * x - P(2));
  auto roots = real_roots(f, parse_rational("1/1000000000000"));
  ASSERT_EQ(roots.size(), 5u);
  std::vector<double> expect{-std::sqrt(2.0), -0.5, 1.0, 1.0, std::sqrt(2.0)};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(roots[i].to_double(), expect[i], 1e-11);
}
