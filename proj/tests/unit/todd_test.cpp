#include <gtest/gtest.h>

#include "eml/corpus.hpp"
#include "eml/errors.hpp"
#include "eml/todd.hpp"

using namespace eml;

namespace {

// B_n (B_1 = -1/2) by the recurrence Σ_{j<=n} C(n+1, j) B_j = 0.
std::vector<Rat> bernoulli_table(int n) {
  std::vector<Rat> b(n + 1);
  b[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rat s = 0;
    Int c = 1;  // C(k+1, j)
    for (int j = 0; j < k; ++j) {
      s += Rat(c) * b[j];
      c = c * (k + 1 - j) / (j + 1);
    }
    b[k] = -s / (k + 1);
  }
  return b;
}

Rat fact(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rat(f);
}

std::size_t index_of(const Fan& f, const std::vector<IntVec>& rays) {
  auto i = f.find(rays.empty() ? Cone::zero(f.space) : Cone(f.space, rays));
  EXPECT_TRUE(i.has_value());
  return *i;
}

}  // namespace

TEST(ToddCoefficients, P1Coefficients) {
  const int m = 10;
  Fan f = corpus::p1();
  MuContext ctx;
  ToddExpansion t = todd_coefficients(f, m, ctx);
  ASSERT_EQ(t.coeffs.size(), 3u);
  auto b = bernoulli_table(m + 1);
  EXPECT_EQ(t.coeffs[index_of(f, {})], TruncSeries::constant(1, m, 1));
  const TruncSeries& plus = t.coeffs[index_of(f, {{1}})];
  const TruncSeries& minus = t.coeffs[index_of(f, {{-1}})];
  for (int k = 0; k <= m; ++k) {
    // -B(ξ) = -Σ_{n>=1} b_n ξ^{n-1} / n!.
    Rat c = -b[k + 1] / fact(k + 1);
    EXPECT_EQ(plus.coeff(std::vector<int>{k}), c);
    EXPECT_EQ(minus.coeff(std::vector<int>{k}), k % 2 ? Rat(-c) : c);
  }
}

TEST(ToddCoefficients, ConeCounts) {
  MuContext ctx;
  EXPECT_EQ(todd_coefficients(corpus::p2(), 2, ctx).coeffs.size(), 7u);
  EXPECT_EQ(todd_coefficients(corpus::cube_fan(), 2, ctx).coeffs.size(), 27u);
}

TEST(ToddCoefficients, RejectsIncompleteFan) {
  QSpace s = QSpace::standard(2);
  Fan f = fan_closure(s, {Cone(s, {{1, 0}, {0, 1}})}, true);
  MuContext ctx;
  EXPECT_THROW(todd_coefficients(f, 2, ctx), InputError);
}

TEST(ToddCoefficients, ParallelMatchesSerial) {
  Fan f = corpus::cube_fan();
  MuContext a, b;
  EXPECT_EQ(todd_coefficients(f, 3, a, 1).coeffs, todd_coefficients(f, 3, b, 4).coeffs);
}

TEST(SimplicialRestriction, P1) {
  // -ξ / (1 - e^ξ) = Σ b_n ξ^n / n!.
  const int m = 8;
  Fan f = corpus::p1();
  TruncSeries r = simplicial_restriction(f, index_of(f, {{1}}), m);
  auto b = bernoulli_table(m);
  for (int k = 0; k <= m; ++k) EXPECT_EQ(r.coeff(std::vector<int>{k}), b[k] / fact(k));
}

TEST(SimplicialRestriction, ConstantTermIsOne) {
  for (const auto& [name, f] : corpus::simplicial_fans())
    for (auto i : f.maximal()) EXPECT_EQ(simplicial_restriction(f, i, 3).coeff(std::vector<int>(f.dim(), 0)), 1) << name;
}

TEST(Phi, Examples) {
  Fan f = corpus::p1();
  const std::size_t plus = index_of(f, {{1}}), minus = index_of(f, {{-1}}), zero = index_of(f, {});
  EXPECT_EQ(phi_restriction(f, zero, plus), Polynomial::constant(1, 1));
  EXPECT_EQ(phi_restriction(f, plus, plus), Polynomial::variable(1, 0));
  EXPECT_TRUE(phi_restriction(f, minus, plus).is_zero());
}

TEST(Phi, MatchesDirectFormula) {
  std::vector<Fan> fans;
  for (auto& nf : corpus::simplicial_fans()) fans.push_back(nf.fan);
  corpus::Rng rng(11);
  for (int i = 0; i < 5; ++i) fans.push_back(corpus::random_plane_fan(rng));
  for (const auto& f : fans)
    for (auto i0 : f.maximal())
      for (std::size_t j = 0; j < f.cones.size(); ++j)
        EXPECT_EQ(phi_restriction(f, j, i0), phi_restriction_direct(f, j, i0)) << cone_label(f.cones[j]);
}

TEST(CheckTT, CorpusFans) {
  MuContext ctx;
  for (const auto& [name, f] : corpus::simplicial_fans())
    for (const auto& r : check_tt(f, 4, ctx)) EXPECT_TRUE(r.pass) << name << " " << r.instance << " " << r.detail;
}

TEST(CheckTT, RandomPlaneFans) {
  MuContext ctx;
  corpus::Rng rng(5);
  for (int i = 0; i < 4; ++i) {
    Fan f = corpus::random_plane_fan(rng);
    for (const auto& r : check_tt(f, 4, ctx)) EXPECT_TRUE(r.pass) << r.instance << " " << r.detail;
  }
}

TEST(CheckTT, NonDefaultScalarProduct) {
  MuContext ctx;
  Fan base = corpus::weighted_plane();
  Fan f = fan_with_dual_product(RatMat{{2, 1}, {1, 3}}, base.cones, true);
  for (const auto& r : check_tt(f, 4, ctx)) EXPECT_TRUE(r.pass) << r.instance << " " << r.detail;
}

TEST(Localization, CorpusFans) {
  MuContext ctx;
  for (const auto& [name, f] : corpus::named_fans())
    for (auto i : f.maximal()) {
      auto r = localization_check(f, i, 3, ctx);
      EXPECT_TRUE(r.pass) << name << " " << r.instance << " " << r.detail;
    }
}

TEST(Danilov, RayInTwoFans) {
  QSpace s = QSpace::standard(2);
  auto r = danilov_check(Cone(s, {{1, 0}}), {corpus::p2(), corpus::p1xp1()}, 5);
  EXPECT_TRUE(r.pass) << r.detail;
  EXPECT_TRUE(danilov_check(Cone::zero(s), {corpus::p2(), corpus::weighted_plane()}, 3).pass);
}

TEST(Refinement, CubeFan) {
  MuContext ctx;
  Fan cube = corpus::cube_fan();
  for (const auto& r : refinement_check(cube, pulling_refinement(cube), 3, ctx))
    EXPECT_TRUE(r.pass) << r.instance << " " << r.detail;
}
