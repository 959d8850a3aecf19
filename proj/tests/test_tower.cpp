#include <gtest/gtest.h>

#include <set>

#include "kippen/gallery.hpp"
#include "kippen/tower.hpp"
#include "support/random_exact.hpp"

using namespace kippen;
using kippen::testing::RandomExact;

namespace {

using G = Gaussian;
using P = MultiPoly<Gaussian>;
using M = Matrix<Gaussian>;

Rational q(long a, long b) { return gallery::q(a, b); }

/// Exact det(zI - r(wT + conj(w) T*)) at a point with |w| = 1.
G direct_at(const M& T, const G& z, const G& r, const G& w) {
  M pencil = M::identity(T.rows()) * z - (T * w + T.adjoint() * conj(w)) * r;
  return det_field(pencil);
}

G phi_at(int j, const G& z, const G& r) { return phi<G>(j).evaluate<G>({{Var::z, z}, {Var::r, r}}); }

std::vector<std::pair<std::string, M>> corpus() {
  RandomExact rnd(303);
  std::vector<std::pair<std::string, M>> v{{"tower_c", gallery::tower_c()}, {"p_not_q", gallery::p_not_q()}};
  for (int i = 0; i < 20; ++i)
    v.emplace_back("rand" + std::to_string(i), rnd.contraction(static_cast<std::size_t>(2 + i % 3), i % 2 == 0));
  return v;
}

}  // namespace

TEST(Phi, RecurrenceAndChebyshevForm) {
  P z = P::var(Var::z), r = P::var(Var::r), u = P::var(Var::u);
  EXPECT_EQ(phi<G>(-1), P());
  EXPECT_EQ(phi<G>(0), P(1));
  EXPECT_EQ(phi<G>(1), z);
  for (int j = 1; j <= 10; ++j) {
    EXPECT_EQ(phi<G>(j + 1), z * phi<G>(j) - r * r * phi<G>(j - 1));
    P sub = phi<G>(j).substitute(Var::z, P(G(2)) * r * u);
    EXPECT_EQ(sub, r.pow(static_cast<unsigned>(j)) * chebyshev_U<G>(j)) << j;
  }
  auto pp = phi_pair<G>(3);
  EXPECT_EQ(pp.phi_j_minus_1, phi<G>(2));
}

TEST(Phi, TauValuesDistinct) {
  std::set<std::string> seen;
  for (int j = 1; j <= 8; ++j) {
    Rational t = tau(j, q(3, 2));
    EXPECT_TRUE(seen.insert(to_string(t)).second) << j;
  }
  EXPECT_EQ(tau(1, q(3, 2)), q(1, 6));
}

TEST(TowerCharpoly, ZeroScalarGivesShift) {
  auto c = make_contraction(M(1, 1));
  for (int j = 1; j <= 5; ++j) EXPECT_EQ(tower_charpoly_exact(c, j), phi<G>(j + 1)) << j;
}

TEST(TowerCharpoly, MatchesDirectWhenBIsExact) {
  std::vector<M> cases{M(1, 1), gallery::jordan(2), gallery::jordan(3), M::diagonal({G(q(3, 5)), G(q(4, 5))}),
                       M{{G(0), G(q(3, 5))}, {G(0), G(0)}}, M{{G(0), G(Rational(0), q(4, 5))}, {G(0), G(q(1, 2))}}};
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    auto c = make_contraction(cases[ci]);
    auto B = build_B_exact(c);
    if (ci == 5) {
      EXPECT_FALSE(B.has_value());
      continue;
    }
    ASSERT_TRUE(B.has_value()) << ci;
    EXPECT_EQ(B->adjoint() * *B, c.D);
    EXPECT_EQ(B->rows(), c.defect_rank);
    for (int j = 1; j <= 3; ++j) {
      auto level = tower_level(c, *B, j);
      EXPECT_EQ(level.matrix.rows(), c.n + static_cast<std::size_t>(j) * c.defect_rank);
      EXPECT_EQ(direct_tower_charpoly(level.matrix), tower_charpoly_exact(c, j)) << "case " << ci << " j=" << j;
    }
  }
}

TEST(TowerLevel, BlockShapeAndIteration) {
  auto c = make_contraction(gallery::jordan(2));
  M B = *build_B_exact(c);
  EXPECT_EQ(B, (M{{G(1), G(0)}}));
  M T1 = tower_level(c, B, 1).matrix;
  EXPECT_EQ(T1, (M{{G(0), G(1), G(0)}, {G(0), G(0), G(1)}, {G(0), G(0), G(0)}}));
  // A(T_1) equals the level-2 matrix [[0, I, 0], [0, 0, B], [0, 0, C]]
  for (int j = 1; j <= 3; ++j) {
    M Tj = tower_level(c, B, j).matrix;
    auto cj = make_contraction(Tj);
    auto Bj = build_B_exact(cj);
    ASSERT_TRUE(Bj.has_value());
    EXPECT_EQ(tower_level(cj, *Bj, 1).matrix, tower_level(c, B, j + 1).matrix) << j;
    // a partial isometry: A*A is a projection
    M PA = Tj.adjoint() * Tj;
    EXPECT_EQ(PA * PA, PA);
  }
}

TEST(TowerCharpoly, IdentityOnCorpusAtExactPoints) {
  // G*G = D with k >= d rows; the assembled level then carries an extra
  // factor phi_j^(k - d) from the surplus rows
  RandomExact rnd(41);
  const G ws[] = {G(1), G::i(), G(-1), G(q(3, 5), q(4, 5)), G(q(5, 13), q(-12, 13))};
  for (const auto& [name, C] : corpus()) {
    auto c = make_contraction(C);
    ASSERT_EQ(c.is_contraction, Tri::yes) << name;
    M Gf = gram_factor_exact(c.D);
    ASSERT_EQ(Gf.adjoint() * Gf, c.D) << name;
    std::size_t extra = Gf.rows() - c.defect_rank;
    for (int j = 1; j <= 3; ++j) {
      P rhs = tower_charpoly_exact(c, j);
      M T = tower_level_from(c.C, Gf, j);
      for (int s = 0; s < 16; ++s) {
        G z(rnd.rational(7, 3), s % 2 ? rnd.rational(3, 2) : Rational(0));
        G r(rnd.rational(5, 3));
        G w = ws[s % 5];
        G expect = rhs.evaluate<G>({{Var::z, z}, {Var::r, r}, {Var::w, w}});
        G f = phi_at(j, z, r);
        for (std::size_t e = 0; e < extra; ++e) expect *= f;
        EXPECT_EQ(direct_at(T, z, r, w), expect) << name << " j=" << j;
      }
    }
  }
}

TEST(TowerCharpoly, NumericAssemblyAgrees) {
  RandomExact rnd(43);
  for (const auto& [name, C] : corpus()) {
    auto c = make_contraction(C);
    auto iso = assoc_isometry_numeric(to_eigen(c.C));
    EXPECT_EQ(iso.defect_rank, c.defect_rank) << name;
    for (int j = 1; j <= 3; ++j) {
      P rhs = tower_charpoly_exact(c, j);
      CMat T = tower_level_from(iso.C, iso.B, j);
      for (int s = 0; s < 16; ++s) {
        double th = 2 * kPi * s / 16.0;
        cplx z(rnd.rational(7, 3).to_double(), 0.3);
        double r = rnd.rational(5, 3).to_double();
        cplx a = numeric_tower_charpoly(T, z, r, th);
        cplx b = eval_zrw(rhs, z, cplx(r), std::polar(1.0, -th));
        EXPECT_LE(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(b))) << name << " j=" << j;
      }
    }
  }
}

TEST(TowerScan, Examples) {
  auto t = tower_circularity_scan(make_contraction(gallery::tower_c()));
  EXPECT_EQ(t.level_circular.size(), 5u);
  EXPECT_TRUE(t.all_levels_circular);
  EXPECT_TRUE(t.t0_circular);
  EXPECT_TRUE(t.consistent);
  auto pq = tower_circularity_scan(make_contraction(gallery::p_not_q()));
  EXPECT_TRUE(pq.t0_circular);
  EXPECT_FALSE(pq.level_circular.front());
  EXPECT_TRUE(pq.consistent);
  auto z = tower_circularity_scan(make_contraction(M(2, 2)));
  EXPECT_TRUE(z.all_levels_circular);
  EXPECT_TRUE(z.consistent);
  EXPECT_THROW(tower_circularity_scan(make_contraction(M(M::identity(2) * G(2)))), NotAContraction);
}

TEST(TowerScan, TowerExampleLevelsAreWFree) {
  auto c = make_contraction(gallery::tower_c());
  for (int j = 1; j <= 3; ++j) EXPECT_TRUE(is_free_of(tower_charpoly_exact(c, j), Var::w).radial) << j;
}

TEST(TowerScan, CoherenceOnCorpus) {
  for (const auto& [name, C] : corpus()) {
    auto s = tower_circularity_scan(make_contraction(C));
    EXPECT_TRUE(s.consistent) << name;
  }
}

TEST(Isometry, NumericShapes) {
  auto c = make_contraction(gallery::tower_c());
  auto iso = assoc_isometry_numeric(to_eigen(c.C));
  EXPECT_EQ(iso.A.rows(), 8);
  CMat expect = CMat::Zero(8, 8);
  expect.block(4, 4, 4, 4) = CMat::Identity(4, 4);
  EXPECT_LE((iso.A.adjoint() * iso.A - expect).norm(), 1e-12);
  EXPECT_LE(projection_defect(iso.A), 1e-12);
  auto zero = assoc_isometry_numeric(CMat::Zero(1, 1));
  EXPECT_LE((zero.A - to_eigen(gallery::jordan(2))).norm(), 1e-15);
}

TEST(PsdSqrt, Examples) {
  auto a = psd_sqrt(CMat::Identity(2, 2));
  EXPECT_EQ(a.rank, 2u);
  EXPECT_LE((a.B.adjoint() * a.B - CMat::Identity(2, 2)).norm(), 1e-14);
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 4;
  auto b = psd_sqrt(d);
  EXPECT_EQ(b.rank, 1u);
  EXPECT_NEAR(b.B(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(std::abs(b.B(0, 1)), 0.0, 1e-14);
  CMat amb = CMat::Identity(2, 2);
  amb(1, 1) = 1e-10;
  EXPECT_THROW(psd_sqrt(amb), RankDeficiencyAmbiguous);
}

TEST(GramFactor, NormSplitsAreExact) {
  auto check = [](const mpz_class& N) {
    auto parts = detail::gaussian_norm_split(N);
    EXPECT_LE(parts.size(), 2u);
    Rational s(0);
    for (const auto& g : parts) s += g.norm2();
    EXPECT_EQ(s, Rational(N)) << N.get_str();
  };
  for (long N = 0; N < 2000; ++N) check(mpz_class(N));
  check(mpz_class("13570770554762876"));
  check(mpz_class("123456789012345678901"));
  // 3/4 needs two Gaussian rows, 16/25 only one
  EXPECT_EQ(gram_factor_exact(M{{G(q(3, 4))}}).rows(), 2u);
  EXPECT_EQ(gram_factor_exact(M{{G(q(16, 25))}}).rows(), 1u);
}
