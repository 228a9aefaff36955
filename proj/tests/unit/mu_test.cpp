#include <gtest/gtest.h>

#include <map>
#include <random>

#include "eml/errors.hpp"
#include "eml/mu.hpp"

using namespace eml;

namespace {

QSpace std_space(std::size_t d) { return QSpace::standard(d); }

Cone cone(std::size_t d, std::vector<IntVec> rays) { return Cone(std_space(d), rays); }

// B_n with B_1 = -1/2 from the explicit double sum
// B_n = Σ_k 1/(k+1) Σ_j (-1)^j C(k,j) j^n.
Rat bern(int n) {
  Rat total = 0;
  for (int k = 0; k <= n; ++k) {
    Rat inner = 0;
    Int c = 1;
    for (int j = 0; j <= k; ++j) {
      Int p;
      mpz_pow_ui(p.get_mpz_t(), Int(j).get_mpz_t(), n);
      inner += (j % 2 ? -1 : 1) * Rat(c * p);
      c = c * (k - j) / (j + 1);
    }
    total += inner / (k + 1);
  }
  return total;
}

Rat fact(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rat(f);
}

// μ(R_+)(t) = 1/(1 - e^t) + 1/t = -Σ_{n>=1} B_n t^{n-1} / n!.
Rat half_line_coeff(int k) { return -bern(k + 1) / fact(k + 1); }

// Σ_y c_y e^{⟨ξ,y⟩} with c_y = Σ_J (-1)^|J| [y - v_J ∈ c]; equals S(c) Π(1 - e^{⟨ξ,v⟩}).
TruncSeries brion_numerator(const Cone& c, int order) {
  const std::size_t d = c.ambient_dim();
  const auto& rays = c.rays();
  IntVec lo(d, 0), hi(d, 0);
  for (const auto& v : rays)
    for (std::size_t i = 0; i < d; ++i) (v[i] < 0 ? lo[i] : hi[i]) += v[i];
  TruncSeries out(d, order);
  IntVec y = lo;
  while (true) {
    int cy = 0;
    for (RayMask j = 0; j < (RayMask{1} << rays.size()); ++j) {
      IntVec z = y;
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (j >> i & 1)
          for (std::size_t k = 0; k < d; ++k) z[k] -= rays[i][k];
      if (c.contains(z)) cy += popcount(j) % 2 ? -1 : 1;
    }
    if (cy) out += scale(exp_linform(linform(y), order), cy);
    std::size_t k = 0;
    while (k < d && y[k] == hi[k]) y[k] = lo[k], ++k;
    if (k == d) break;
    ++y[k];
  }
  return out;
}

TruncSeries one_minus_exp(const IntVec& v, int order) {
  return sub(TruncSeries::constant(v.size(), order, 1), exp_linform(linform(v), order));
}

}  // namespace

TEST(Mu, ZeroCone) {
  MuContext ctx;
  EXPECT_EQ(ctx.mu(Cone::zero(std_space(2)), 4), TruncSeries::constant(2, 4, 1));
}

TEST(Mu, HalfLine) {
  MuContext ctx;
  const int m = 10;
  TruncSeries mu = ctx.mu(cone(1, {{1}}), m);
  for (int k = 0; k <= m; ++k) EXPECT_EQ(mu.coeff(std::vector<int>{k}), half_line_coeff(k)) << k;
  EXPECT_EQ(mu.coeff(std::vector<int>{0}), make_rat(1, 2));
  EXPECT_EQ(mu.coeff(std::vector<int>{1}), make_rat(-1, 12));
}

TEST(Mu, HalfLineSymmetry) {
  MuContext ctx;
  TruncSeries a = ctx.mu(cone(1, {{1}}), 9);
  TruncSeries b = ctx.mu(cone(1, {{-1}}), 9);
  EXPECT_EQ(add(a, b), TruncSeries::constant(1, 9, 1));
}

TEST(Mu, OrthantFactorizes) {
  MuContext ctx;
  const int m = 6;
  TruncSeries mu = ctx.mu(cone(2, {{1, 0}, {0, 1}}), m);
  EXPECT_EQ(mu.coeff({0, 0}), make_rat(1, 4));
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j) EXPECT_EQ(mu.coeff({i, j}), half_line_coeff(i) * half_line_coeff(j));
}

TEST(Mu, OrthogonalProductWithGram) {
  // Orthogonal for Q = diag(2, 5): factorization still holds.
  MuContext ctx;
  QSpace q(RatMat{{2, 0}, {0, 5}});
  TruncSeries mu = ctx.mu(Cone(q, {{1, 0}, {0, -1}}), 5);
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; i + j <= 5; ++j)
      EXPECT_EQ(mu.coeff({i, j}), half_line_coeff(i) * half_line_coeff(j) * (j % 2 ? -1 : 1));
}

TEST(Mu, RayInPlane) {
  MuContext ctx;
  TruncSeries mu = ctx.mu(cone(2, {{1, 1}}), 5);
  // μ of the ray is the half-line germ of ⟨ξ, (1,1)⟩.
  TruncSeries want(2, 5);
  for (int k = 0; k <= 5; ++k) {
    TruncSeries p = TruncSeries::constant(2, 5, half_line_coeff(k));
    for (int i = 0; i < k; ++i) p = mul_linform(p, linform(IntVec{1, 1}));
    want += p.truncated(5);
  }
  EXPECT_EQ(mu, want);
}

TEST(Mu, RejectsNonPointed) {
  MuContext ctx;
  EXPECT_THROW(ctx.mu(cone(2, {{1, 0}, {-1, 0}, {0, 1}}), 3), InputError);
}

TEST(Mu, DilationInvariant) {
  MuContext ctx;
  Cone c = cone(2, {{1, 0}, {1, 3}});
  QSpace q2(RatMat{{3, 0}, {0, 3}});
  EXPECT_EQ(ctx.mu(c, 5), ctx.mu(Cone(q2, c.rays()), 5));
}

TEST(Mu, CacheTruncatesHigherOrder) {
  MuContext ctx;
  Cone c = cone(2, {{2, -1}, {1, 2}});
  TruncSeries high = ctx.mu(c, 6);
  MuContext fresh;
  EXPECT_EQ(ctx.mu(c, 3), fresh.mu(c, 3));
  EXPECT_EQ(high.truncated(3), fresh.mu(c, 3));
  EXPECT_GT(ctx.cache_hits(), 0u);
}

TEST(SSeries, HalfLine) {
  PoleCleared s = s_series_general(cone(1, {{1}}), 6);
  // (1 - e^ξ) S = 1.
  PoleCleared p = times(s, one_minus_exp({1}, 7));
  EXPECT_EQ(extract_holomorphic(p, 6), TruncSeries::constant(1, 6, 1));
}

TEST(SSeries, MatchesBrionNumerator) {
  std::vector<Cone> cones = {
      cone(2, {{1, 0}, {1, 2}}),
      cone(2, {{2, -1}, {-1, 3}}),
      cone(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}),
      cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}),
      cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, -1, 1}, {1, 1, 1}, {2, 0, 1}}),
  };
  const int m = 4;
  for (const auto& c : cones) {
    const int r = static_cast<int>(c.num_rays());
    PoleCleared s = s_series_general(c, m);
    TruncSeries factor = TruncSeries::constant(c.ambient_dim(), m + r, 1);
    for (const auto& v : c.rays()) factor = mul(factor, one_minus_exp(v, m + r));
    TruncSeries got = extract_holomorphic(times(s, factor), m);
    EXPECT_EQ(got, brion_numerator(c, m));
  }
}

TEST(SSeries, TriangulationIndependent) {
  Cone c = cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {1, 1, 2}});
  const int m = 3;
  std::vector<PoleCleared> a, b;
  for (const auto& h : half_open_decompose(triangulate(c, lex_priority(c)), to_rat(c.interior_point())))
    a.push_back(s_series(h, m));
  for (const auto& h : half_open_decompose(triangulate(c, lex_priority(c, true)), to_rat(c.interior_point())))
    b.push_back(s_series(h, m));
  EXPECT_TRUE(pole_cleared_equal(join_denominators(a), join_denominators(b)));
}

TEST(SSeries, NonPointedIsZero) {
  PoleCleared s = s_series_general(cone(2, {{1, 0}, {-1, 0}, {0, 1}}), 3);
  EXPECT_TRUE(s.numerator.is_zero());
}

TEST(IntegralForm, Orthant) {
  // I(orthant) = 1 / (ξ1 ξ2).
  IntegralForm f = i_form(cone(2, {{1, 0}, {0, 1}}));
  PoleCleared want = PoleCleared::make(TruncSeries::constant(2, 3, 1), {linform(IntVec{1, 0}), linform(IntVec{0, 1})});
  EXPECT_TRUE(pole_cleared_equal(f.as_pole_cleared(3), want));
}

TEST(IntegralForm, SplitAdds) {
  Cone whole = cone(2, {{1, 0}, {1, 3}});
  IntegralForm a = i_form(whole);
  IntegralForm b = i_form(cone(2, {{1, 0}, {1, 1}}));
  IntegralForm c = i_form(cone(2, {{1, 1}, {1, 3}}));
  EXPECT_TRUE(pole_cleared_equal(a.as_pole_cleared(3), sum(b.as_pole_cleared(3), c.as_pole_cleared(3))));
}

TEST(IntegralForm, Stokes) {
  // -⟨v, ξ⟩ I(c) = Σ_facets ⟨v, n⟩ I(facet), n the primitive inward normal.
  std::vector<Cone> cones = {
      cone(2, {{1, 0}, {1, 3}}),
      cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}),
      cone(3, {{1, 2, 0}, {0, 1, 3}, {2, 0, 1}}),
  };
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (const auto& c : cones)
    for (int k = 0; k < 3; ++k) {
      IntVec v(c.ambient_dim());
      for (auto& x : v) x = dist(rng);
      std::string detail;
      EXPECT_TRUE(stokes_identity(c, v, 4, &detail)) << detail;
    }
  // A wrong normal scale must be caught.
  Cone c = cone(2, {{1, 0}, {0, 1}});
  IntegralForm f = i_form(c);
  PoleCleared lhs = times(f.as_pole_cleared(3), TruncSeries::from_linform(linform(IntVec{-1, 0}), 3));
  PoleCleared wrong = i_form(c.face_cone(1)).as_pole_cleared(3);
  EXPECT_FALSE(pole_cleared_equal(lhs, times(wrong, TruncSeries::constant(2, 3, 2))));
}

TEST(Mu, DefiningIdentityCloses) {
  MuContext ctx;
  std::vector<Cone> cones = {
      cone(2, {{1, 0}, {1, 3}}),
      cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}),
  };
  for (const auto& c : cones) {
    std::string detail;
    EXPECT_TRUE(pole_cleared_equal(ctx.face_expansion(c, 3), s_series_general(c, 3), &detail)) << detail;
  }
}

TEST(MuStar, Line) {
  MuContext ctx;
  QSpace v = std_space(1);
  TruncSeries a = ctx.mu_star(cone(1, {{1}}), v, 8);
  TruncSeries b = ctx.mu_star(cone(1, {{-1}}), v, 8);
  EXPECT_EQ(add(a, b), TruncSeries::constant(1, 8, 1));
  EXPECT_EQ(ctx.mu_star(cone(1, {{1}, {-1}}), v, 8), TruncSeries::constant(1, 8, 1));
  // On the line μ*(R_+) is the half-line germ of the dual ray.
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(a.coeff(std::vector<int>{k}), half_line_coeff(k));
}

TEST(MuStar, SubdivisionAdds) {
  MuContext ctx;
  QSpace v(RatMat{{2, 1}, {1, 3}});
  const int m = 4;
  TruncSeries whole = ctx.mu_star(cone(2, {{1, 0}, {0, 1}}), v, m);
  TruncSeries parts = add(ctx.mu_star(cone(2, {{1, 0}, {1, 1}}), v, m), ctx.mu_star(cone(2, {{1, 1}, {0, 1}}), v, m));
  EXPECT_EQ(whole, parts);

  TruncSeries w3 = ctx.mu_star(cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), std_space(3), 3);
  TruncSeries p3 = add(ctx.mu_star(cone(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}), std_space(3), 3),
                       add(ctx.mu_star(cone(3, {{0, 1, 0}, {0, 0, 1}, {1, 1, 1}}), std_space(3), 3),
                           ctx.mu_star(cone(3, {{1, 0, 0}, {0, 0, 1}, {1, 1, 1}}), std_space(3), 3)));
  EXPECT_EQ(w3, p3);
}
