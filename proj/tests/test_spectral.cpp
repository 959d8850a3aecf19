#include <gtest/gtest.h>

#include <sstream>

#include "kippen/family.hpp"
#include "kippen/gallery.hpp"
#include "kippen/spectral.hpp"
#include "kippen/tower.hpp"
#include "support/random_exact.hpp"

using namespace kippen;
using kippen::testing::RandomExact;

namespace {

using G = Gaussian;
using M = Matrix<Gaussian>;


CMat diag(std::initializer_list<double> v) {
  CMat m = CMat::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

CMat jordan(int n) { return to_eigen(gallery::jordan<Gaussian>(static_cast<std::size_t>(n))); }

CMat assoc(const M& C) { return assoc_isometry_numeric(to_eigen(C)).A; }

/// H(theta) = Re(e^{-i theta} C) with e^{-i theta} exact in Q(sqrt2, i).
Matrix<Quad> exact_hermitian(const M& C, int eighth_turns) {
  Quad h = Quad::sqrt_of(2) / Quad(2);
  Quad w;
  switch (eighth_turns) {
    case 0: w = Quad(1); break;
    case 1: w = h - h * Quad(G::i()); break;  // theta = pi/4
    default: w = -Quad(G::i());               // theta = pi/2
  }
  std::size_t n = C.rows();
  Matrix<Quad> H(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) H(i, j) = (w * Quad(C(i, j)) + w.conj() * Quad(conj(C(j, i)))) / Quad(2);
  return H;
}

std::vector<std::pair<std::string, M>> corpus() {
  RandomExact rnd(404);
  std::vector<std::pair<std::string, M>> v{{"tower_c", gallery::tower_c()},
                                           {"p_not_q", gallery::p_not_q()},
                                           {"jordan3", gallery::jordan<Gaussian>(3)},
                                           {"family4", family_matrix(4).matrix}};
  for (int i = 0; i < 8; ++i) v.emplace_back("rand" + std::to_string(i), rnd.contraction(static_cast<std::size_t>(2 + i % 3), i % 2 == 0));
  return v;
}

}  // namespace

TEST(HermEig, DiagonalAndOrdering) {
  auto e = herm_eig(diag({1, 2}));
  ASSERT_EQ(e.size(), 2u);
  EXPECT_DOUBLE_EQ(e[0].value, 2);
  EXPECT_DOUBLE_EQ(e[1].value, 1);
  EXPECT_NEAR(std::abs(e[0].vector(1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e[1].vector(0)), 1.0, 1e-15);
}

TEST(HermEig, FamilyFourTopValue) {
  // largest root of 4x^2 - 2x - 2 is 1; the other root is -1/2
  auto v = eigenvalues_desc(phase_hermitian(to_eigen(family_matrix(4).matrix), 0));
  EXPECT_NEAR(v.front(), 1.0, 1e-14);
  int near_half = 0;
  for (double x : v) near_half += std::abs(x + 0.5) < 1e-12;
  EXPECT_EQ(near_half, 1);
}

TEST(HermEig, ResidualAndOrthogonality) {
  std::srand(7);
  for (int n : {1, 3, 6, 10}) {
    CMat A = CMat::Random(n, n);
    CMat H = (A + A.adjoint()) * 0.5;
    auto e = herm_eig(H);
    for (std::size_t i = 0; i < e.size(); ++i) {
      EXPECT_LE(e[i].residual, 1e-12 * H.norm());
      if (i) { EXPECT_GE(e[i - 1].value, e[i].value); }
      for (std::size_t j = 0; j < i; ++j) EXPECT_LE(std::abs(e[i].vector.dot(e[j].vector)), 1e-10);
    }
  }
  CMat bad = CMat::Zero(2, 2);
  bad(0, 1) = 1;
  EXPECT_THROW(herm_eig(bad), Error);
}

TEST(HermEig, MatchesExactCharpolyRoots) {
  // roots isolated by Sturm sequences on the exact characteristic polynomial
  Rational width(mpz_class(1), mpz_class(1) << 44);
  for (const auto& [name, C] : corpus())
    for (int t = 0; t <= 2; ++t) {
      UniPoly<Quad> cp = charpoly(exact_hermitian(C, t));
      auto roots = real_roots(cp, width);
      ASSERT_EQ(roots.size(), C.rows()) << name;
      auto num = eigenvalues_desc(phase_hermitian(to_eigen(C), t * kPi / 4));
      for (std::size_t k = 0; k < num.size(); ++k)
        EXPECT_NEAR(num[k], roots[roots.size() - 1 - k].to_double(), 1e-10) << name << " t=" << t;
    }
}

TEST(Kippenhahn, JordanTwoOuterCircle) {
  auto br = kippenhahn_sample(jordan(2), 64);
  ASSERT_EQ(br.size(), 2u);
  for (const auto& s : br[0].samples) {
    EXPECT_NEAR(s.lambda, 0.5, 1e-14);
    EXPECT_NEAR(std::abs(s.z), 0.5, 1e-14);
  }
  EXPECT_LE(origin_circle_deviation(br[0]), 1e-14);
  EXPECT_THROW(kippenhahn_sample(jordan(2), 4), Error);
}

TEST(Kippenhahn, BoundaryPointsSupportLines) {
  // Re(e^{-i theta} z) = lambda for z = <A y, y>
  RandomExact rnd(12);
  CMat A = to_eigen(rnd.contraction(4, false));
  for (const auto& b : kippenhahn_sample(A, 48))
    for (const auto& s : b.samples) EXPECT_NEAR((std::polar(1.0, -s.theta) * s.z).real(), s.lambda, 1e-12);
}

TEST(Kippenhahn, StitchingStableUnderRefinement) {
  CMat A = assoc(gallery::tower_c());
  auto coarse = kippenhahn_sample(A, 180), fine = kippenhahn_sample(A, 360);
  ASSERT_EQ(coarse.size(), fine.size());
  for (std::size_t j = 0; j < coarse.size(); ++j)
    for (std::size_t g = 0; g < coarse[j].samples.size(); ++g)
      EXPECT_NEAR(coarse[j].samples[g].lambda, fine[j].samples[2 * g].lambda, 1e-12) << j;
}

TEST(Disc, Examples) {
  auto j2 = is_disc(jordan(2));
  EXPECT_TRUE(j2.is_disc);
  EXPECT_NEAR(j2.radius, 0.5, 1e-14);
  auto seg = is_disc(diag({1, -1}));
  EXPECT_FALSE(seg.is_disc);
  EXPECT_NEAR(seg.spread, 1.0, 1e-9);
  EXPECT_TRUE(is_disc(assoc(gallery::tower_c())).is_disc);
}

TEST(Disc, ConsistentWithRadialQ) {
  for (const auto& [name, C] : corpus()) {
    auto c = make_contraction(C);
    if (c.is_contraction != Tri::yes || !is_radial(q_poly(c)).radial) continue;
    EXPECT_TRUE(is_disc(assoc(C)).is_disc) << name;
  }
}

TEST(Circles, TowerExampleBranchesAreCircles) {
  for (const auto& b : kippenhahn_sample(assoc(gallery::tower_c()), 720))
    EXPECT_LE(origin_circle_deviation(b), 1e-9) << b.index;
}

TEST(Circles, PNotQBranchesAreNotCircles) {
  // every branch misses the origin-centred circles by more than 1e-3; the
  // certified distance to arbitrary circles is smaller but clearly nonzero
  double certified = 0;
  for (const auto& b : kippenhahn_sample(assoc(gallery::p_not_q()), 720)) {
    EXPECT_GT(origin_circle_deviation(b), 1e-3) << b.index;
    auto bounds = circle_deviation_bounds(branch_points(b));
    EXPECT_TRUE(bounds.certified);
    EXPECT_LE(bounds.lower, bounds.upper);
    certified = std::max(certified, bounds.lower);
  }
  EXPECT_GT(certified, 1e-5);
}

TEST(Circles, BestCircleDeviation) {
  std::vector<cplx> circle, ellipse;
  for (int k = 0; k < 200; ++k) {
    double t = 2 * kPi * k / 200;
    circle.push_back(cplx(0.3, -0.2) + 0.7 * std::polar(1.0, t));
    ellipse.push_back(cplx(std::cos(t), 0.5 * std::sin(t)));
  }
  EXPECT_LE(best_circle_deviation(circle), 1e-9);
  EXPECT_GT(best_circle_deviation(ellipse), 0.2);
  EXPECT_EQ(best_circle_deviation({cplx(1, 1)}), 0.0);
  auto c = circle_deviation_bounds(circle);
  EXPECT_TRUE(c.certified);
  EXPECT_LE(c.upper, 1e-9);
  // best circle for the ellipse is centred at 0 with annulus [1/2, 1]
  auto e = circle_deviation_bounds(ellipse);
  EXPECT_TRUE(e.certified);
  EXPECT_LE(e.lower, 0.25 + 1e-12);
  EXPECT_GE(e.upper, 0.25 - 1e-12);
  EXPECT_GE(e.lower, 0.95 * e.upper - 1e-12);
  // an arc lies on a circle; collinear points leave a gap of pi around their centroid
  std::vector<cplx> arc;
  for (int k = 0; k < 20; ++k) arc.push_back(std::polar(1.0, 0.05 * k));
  EXPECT_LE(circle_deviation_bounds(arc).upper, 1e-9);
  EXPECT_FALSE(circle_deviation_bounds({cplx(0, 0), cplx(1, 0), cplx(3, 0)}).certified);
}

TEST(Probe, Examples) {
  auto j5 = rotinv_probe(jordan(5), kPi / 7, 0, kPi / 3);
  EXPECT_EQ(j5.verdict, ProbeVerdict::ConsistentUpToTolerance) << j5.witness;
  ASSERT_EQ(j5.values.size(), 2u);
  auto c4 = rotinv_probe(to_eigen(family_matrix(4).matrix), kPi / 4, 0, kPi / 4);
  EXPECT_EQ(c4.verdict, ProbeVerdict::NotRotationallyInvariant);
  EXPECT_FALSE(c4.witness.empty());
  auto d = rotinv_probe(diag({1, 0}), 0.3, 0.1, 1.2);
  EXPECT_EQ(d.verdict, ProbeVerdict::NotCircular);
  EXPECT_FALSE(d.witness.empty());
  auto z = rotinv_probe(CMat::Zero(3, 3), 0.3, 0.1, 1.2);
  EXPECT_EQ(z.verdict, ProbeVerdict::Inconclusive);
  EXPECT_FALSE(z.witness.empty());
  EXPECT_THROW(rotinv_probe(jordan(3), 2 * kPi, 0, 1), Error);
  EXPECT_THROW(rotinv_probe(jordan(3), 0.5, 1, 1), Error);
}

TEST(Probe, JordanBlocks) {
  for (int n = 3; n <= 10; ++n) {
    auto r = rotinv_probe(jordan(n), kPi / 7, 0, kPi / 3);
    EXPECT_EQ(r.verdict, ProbeVerdict::ConsistentUpToTolerance) << n << ' ' << r.witness;
  }
}

TEST(Probe, RandomBlockShifts) {
  RandomExact rnd(99);
  int decided = 0;
  for (int trial = 0; trial < 20; ++trial) {
    CMat X = to_eigen(rnd.block_shift(static_cast<std::size_t>(2 + trial % 3), 3));
    auto r = rotinv_probe(X, kPi / 7, 0.2, 1.1);
    EXPECT_NE(r.verdict, ProbeVerdict::NotCircular) << trial;
    EXPECT_NE(r.verdict, ProbeVerdict::NotRotationallyInvariant) << trial << ' ' << r.witness;
    decided += r.verdict == ProbeVerdict::ConsistentUpToTolerance;
  }
  EXPECT_GE(decided, 15);
}

TEST(Probe, BlockShiftOverlapProfileConstant) {
  RandomExact rnd(5);
  for (int trial = 0; trial < 5; ++trial) {
    CMat X = to_eigen(rnd.block_shift(3, 2));
    for (double delta : {kPi / 7, kPi / 4}) {
      double lo = 2, hi = -1;
      for (int g = 0; g < 64; ++g) {
        double th = 2 * kPi * g / 64;
        auto a = herm_eig(phase_hermitian(X, th)), b = herm_eig(phase_hermitian(X, th + delta));
        double v = std::abs(a[0].vector.dot(b[0].vector));
        lo = std::min(lo, v), hi = std::max(hi, v);
      }
      EXPECT_LE(hi - lo, 1e-8) << trial;
    }
  }
}

TEST(OverlapFit, JordanThreeConsistent) {
  auto f = overlap_poly_fit(jordan(3));
  EXPECT_TRUE(f.consistent);
  EXPECT_EQ(f.coeffs.size(), 3u);
  EXPECT_LE(f.sum_error, 1e-8);
  EXPECT_GE(f.min_real, -1e-8);
  // c_m = |x_m|^2 for the top eigenvector of Re J_3 at theta = 0: (1/4, 1/2, 1/4)
  EXPECT_NEAR(f.coeffs[0].real(), 0.25, 1e-10);
  EXPECT_NEAR(f.coeffs[1].real(), 0.5, 1e-10);
  EXPECT_NEAR(f.coeffs[2].real(), 0.25, 1e-10);
  EXPECT_LE(f.base_spread, 1e-10);
  RandomExact rnd(3);
  for (int trial = 0; trial < 4; ++trial)
    EXPECT_TRUE(overlap_poly_fit(to_eigen(rnd.block_shift(3, 2))).consistent) << trial;
}

TEST(OverlapFit, FamilyRejectedZeroDegenerate) {
  auto f = overlap_poly_fit(to_eigen(family_matrix(4).matrix));
  EXPECT_FALSE(f.consistent);
  EXPECT_GT(std::max(f.base_spread, f.max_imag), 1e-3);
  // the real base angle alone does not see the asymmetry
  EXPECT_TRUE(overlap_poly_fit(to_eigen(family_matrix(4).matrix), 0, 64, 1e-8, 1e-6, {0.0}).consistent);
  EXPECT_THROW(overlap_poly_fit(CMat::Zero(3, 3)), DegenerateBranch);
}

TEST(Commutant, NumericDimension) {
  EXPECT_EQ(commutant_dimension_numeric(jordan(3)), 1u);
  CMat two = CMat::Zero(4, 4);
  two(0, 1) = two(2, 3) = 1;
  EXPECT_EQ(commutant_dimension_numeric(two), 4u);
}

TEST(PsdSqrt, NegativeEigenvalueRejected) {
  EXPECT_THROW(psd_sqrt(diag({1, -0.5})), NotAContraction);
}

TEST(Output, CsvAndSvg) {
  auto br = kippenhahn_sample(jordan(2), 16);
  std::ostringstream csv, svg;
  write_csv(csv, br);
  std::string s = csv.str();
  EXPECT_EQ(s.rfind("theta,branch,lambda,re_z,im_z\n", 0), 0u);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 2 * 16);
  write_svg(svg, br, {0.5});
  std::string v = svg.str();
  EXPECT_EQ(v.rfind("<svg", 0), 0u);
  EXPECT_NE(v.find("viewBox="), std::string::npos);
  EXPECT_EQ(std::count(v.begin(), v.end(), 'p') >= 2, true);
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = v.find("<polyline", pos)) != std::string::npos; ++pos) ++lines;
  EXPECT_EQ(lines, 2u);
  EXPECT_NE(v.find("<circle"), std::string::npos);
}
