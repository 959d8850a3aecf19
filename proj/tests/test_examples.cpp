#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "kippen/examples.hpp"

using namespace kippen;

namespace {

void expect_all_pass(const ExampleReport& r) {
  EXPECT_TRUE(r.pass()) << r.id;
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << r.id << ": " << c.name << " got " << c.actual << " want " << c.expected;
}

/// Coefficient of x^a y^b of a bivariate trigonometric polynomial sampled on
/// the torus, via a 2D DFT in double precision.
cplx torus_coeff(const std::function<cplx(cplx, cplx)>& f, int a, int b, int N = 32) {
  cplx acc = 0;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      cplx x = std::polar(1.0, 2 * kPi * j / N), y = std::polar(1.0, 2 * kPi * k / N);
      acc += f(x, y) * std::pow(x, -a) * std::pow(y, -b);
    }
  return acc / static_cast<double>(N * N);
}

CMat c_alpha_double(const CAlpha& ca) {
  CMat C(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) C(i, j) = ca.C(i, j).to_complex();
  return C;
}

}  // namespace

TEST(Examples, AllGoldensPass) {
  for (const auto& r : run_all_examples()) expect_all_pass(r);
}

TEST(Examples, UnknownIdThrows) { EXPECT_THROW(run_example("nope"), Error); }

TEST(TowerExample, DeltaMatchesNumericDeterminant) {
  // det(alpha I + s(C + C*) + t D) at random real points against the golden quartic
  CMat C = to_eigen(gallery::tower_c());
  CMat D = CMat::Identity(C.rows(), C.cols()) - C.adjoint() * C;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 20; ++k) {
    double a = U(rng), s = U(rng), t = U(rng);
    double want = (40000 * std::pow(a, 4) + 126800 * a * a * a * t - 33200 * a * a * s * s + 148764 * a * a * t * t -
                   54672 * a * s * s * t + 76503 * a * t * t * t + 3364 * std::pow(s, 4) - 22097 * s * s * t * t +
                   14539 * std::pow(t, 4)) /
                  40000;
    CMat M = a * CMat::Identity(C.rows(), C.cols()) + s * (C + C.adjoint()) + t * D;
    double d = M.determinant().real();
    EXPECT_NEAR(d, want, 1e-12) << a << ' ' << s << ' ' << t;
  }
}

TEST(PNotQExample, NormBelowOneNumerically) {
  CMat C = to_eigen(gallery::p_not_q());
  EXPECT_LT(Eigen::JacobiSVD<CMat>(C).singularValues()(0), 1.0);
}

TEST(CAlphaExample, CoefficientsAgreeWithDft) {
  CAlpha ca = c_alpha_build();
  CMat C = c_alpha_double(ca);
  CMat D = CMat::Identity(5, 5) - C.adjoint() * C;
  auto Q = [&](cplx x, cplx y) { return (CMat::Identity(5, 5) - x * C - y * C.adjoint() - x * y * D).determinant(); };
  auto P = [&](cplx x, cplx y) { return (CMat::Identity(5, 5) - x * C - y * C.adjoint()).determinant(); };
  EXPECT_NEAR(std::abs(torus_coeff(Q, 4, 5)), 0.0, 1e-13);
  cplx p23 = torus_coeff(P, 2, 3);
  EXPECT_NEAR(p23.real(), ca.p23.convert_to<double>(), 1e-13);
  EXPECT_NEAR(p23.imag(), 0.0, 1e-13);
  EXPECT_GT(std::abs(p23), 1e-6);
  // every non-radial Q coefficient vanishes to double precision
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      if (a == b) continue;
      EXPECT_NEAR(std::abs(torus_coeff(Q, a, b)), 0.0, 1e-13) << a << ' ' << b;
    }
}

TEST(CAlphaExample, DefectMarginMatchesEigen) {
  CAlpha ca = c_alpha_build();
  CMat C = c_alpha_double(ca);
  CMat D = CMat::Identity(5, 5) - C.adjoint() * C;
  double mn = eigenvalues_desc(D).back();
  EXPECT_NEAR(ca.min_defect_eig.convert_to<double>(), mn, 1e-12);
  EXPECT_GT(mn, 0.0);
}

TEST(CAlphaExample, RootIsSimpleAndEntriesConsistent) {
  CAlpha ca = c_alpha_build();
  PrecisionScope scope(128);
  BigReal a = ca.alpha;
  EXPECT_LT(abs(ca.s * ca.s - ca.s2), BigReal("1e-35"));
  // the quintic changes sign across the root
  auto phi = gallery::c_alpha_phi();
  auto ev = [&](const BigReal& x) {
    BigReal acc = 0;
    for (int i = phi.degree(); i >= 0; --i) acc = acc * x + to_big(phi.coeff(i));
    return acc;
  };
  BigReal h("1e-20");
  EXPECT_LT(ev(a - h) * ev(a + h), BigReal(0));
}

TEST(CleanExample, SmallerRootOfGAndDiscRadius) {
  auto num = clean_numeric(360);
  double r = std::sqrt(145.0);
  double a = 4096 * (7 + r), b = -32 * (1403 + 125 * r), c = 9091 + 757 * r;
  EXPECT_NEAR(a * num.s * num.s + b * num.s + c, 0.0, 1e-6);
  double other = c / (a * num.s);
  EXPECT_GT(other, num.s);
  EXPECT_NEAR(num.omega, 0.6964, 1e-4);
  // support function: largest eigenvalue of Re(e^{-i theta} A) equals the radius
  for (int k = 0; k < 12; ++k)
    EXPECT_NEAR(eigenvalues_desc(phase_hermitian(num.A, k * kPi / 6)).front(), num.omega, 1e-10);
}

TEST(CleanExample, ExactMinorsAreReducedAndRadialInSAlone) {
  auto ex = clean_minors_exact();
  for (Var v : {Var::omega, Var::w, Var::p}) EXPECT_TRUE(is_free_of(ex.delta5, v).radial);
  EXPECT_EQ(ex.delta5.degree_in(Var::s), 2);
  EXPECT_FALSE(is_free_of(ex.delta4, Var::w).radial);
  EXPECT_EQ(ex.delta4.degree_in(Var::omega), 1);
}
