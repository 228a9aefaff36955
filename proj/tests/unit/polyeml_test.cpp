#include <gtest/gtest.h>

#include "eml/corpus.hpp"
#include "eml/errors.hpp"
#include "eml/polyeml.hpp"

using namespace eml;

namespace {

using Points = std::vector<IntVec>;

LatticePolytope poly(std::size_t d, Points pts) { return LatticePolytope(QSpace::standard(d), pts); }

Polynomial one(std::size_t d) { return Polynomial::constant(d, 1); }

Polynomial x_pow(std::size_t d, std::size_t var, int e) {
  std::vector<int> ex(d, 0);
  ex[var] = e;
  Polynomial p(d);
  p.add_term(Monomial(ex), 1);
  return p;
}

Points square(int k) { return {{0, 0}, {k, 0}, {0, k}, {k, k}}; }

}  // namespace

TEST(ApplySymbol, Examples) {
  Polynomial h = x_pow(1, 0, 2);
  EXPECT_EQ(apply_symbol(TruncSeries::constant(1, 2, 1), h), h);
  TruncSeries xi(1, 2);
  xi.add_term(Monomial::variable(0), 1);
  EXPECT_EQ(apply_symbol(xi, h), Rat(2) * x_pow(1, 0, 1));

  // (1/2 - ξ/12 + ...) applied to x gives x/2 - 1/12.
  MuContext ctx;
  TruncSeries mu = ctx.mu(Cone(QSpace::standard(1), {{1}}), 1);
  EXPECT_EQ(apply_symbol(mu, x_pow(1, 0, 1)), make_rat(1, 2) * x_pow(1, 0, 1) + Polynomial::constant(1, make_rat(-1, 12)));
  EXPECT_THROW(apply_symbol(TruncSeries::constant(1, 1, 1), h), OrderBudgetError);
}

TEST(IntegrateOverFace, Examples) {
  LatticePolytope tri = poly(2, {{0, 0}, {1, 0}, {0, 1}});
  const auto& faces = tri.faces();
  Polynomial x = x_pow(2, 0, 1);
  // The triangle itself: ∫∫ x = ∫_0^1 x (1 - x) dx = 1/6.
  EXPECT_EQ(integrate_over_face(tri, faces.back(), x), make_rat(1, 6));
  for (const auto& f : faces) {
    if (f.dim == 0) {
      EXPECT_EQ(integrate_over_face(tri, f, x), Rat(f.x0[0]));
    } else if (f.dim == 1) {
      // Every edge of this triangle has lattice length 1.
      EXPECT_EQ(integrate_over_face(tri, f, one(2)), 1);
    }
  }
  LatticePolytope big = poly(2, {{0, 0}, {4, 2}, {0, 3}});
  // Lattice-normalized area = |det| / 2 = 6.
  EXPECT_EQ(integrate_over_face(big, big.faces().back(), one(2)), 6);
}

TEST(LatticeSum, SmallExamples) {
  MuContext ctx;
  EXPECT_EQ(lattice_sum(poly(1, {{0}, {1}}), one(1), ctx).total, 2);
  EXPECT_EQ(lattice_sum(poly(2, {{0, 0}, {1, 0}, {0, 1}}), one(2), ctx).total, 3);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(lattice_sum(poly(2, square(k)), one(2), ctx).total, (k + 1) * (k + 1));
  Points cube;
  for (int x : {0, 1})
    for (int y : {0, 1})
      for (int z : {0, 1}) cube.push_back({x, y, z});
  EXPECT_EQ(lattice_sum(poly(3, cube), one(3), ctx).total, 8);
  EXPECT_EQ(lattice_sum(poly(1, {{0}, {10}}), x_pow(1, 0, 2), ctx).total, 385);
}

TEST(LatticeSum, Degenerate) {
  MuContext ctx;
  LatticePolytope seg = poly(2, {{0, 0}, {2, 2}});
  EXPECT_EQ(lattice_sum(seg, one(2), ctx).total, 3);
  EXPECT_EQ(brute_force_sum(seg, one(2)), 3);
  LatticePolytope pt = poly(3, {{1, -2, 3}});
  Polynomial h = x_pow(3, 1, 3);
  EXPECT_EQ(lattice_sum(pt, h, ctx).total, -8);
  LatticePolytope flat = poly(3, {{0, 0, 0}, {2, 0, 1}, {0, 3, 1}});
  Polynomial w = x_pow(3, 0, 2) + x_pow(3, 2, 1);
  EXPECT_EQ(lattice_sum(flat, w, ctx).total, brute_force_sum(flat, w));
}

TEST(LatticeSum, MatchesBruteForceOnRandomPolytopes) {
  MuContext ctx;
  corpus::Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const std::size_t d = 1 + i % 3;
    LatticePolytope p = poly(d, corpus::random_polytope_points(rng, d));
    Polynomial h = corpus::random_polynomial(rng, d, 3);
    EXPECT_EQ(lattice_sum(p, h, ctx).total, brute_force_sum(p, h)) << "instance " << i;
  }
}

TEST(LatticeSum, EhrhartOfCrossPolytope) {
  MuContext ctx;
  for (int k = 1; k <= 3; ++k) {
    LatticePolytope p = poly(3, {{k, 0, 0}, {-k, 0, 0}, {0, k, 0}, {0, -k, 0}, {0, 0, k}, {0, 0, -k}});
    EXPECT_EQ(lattice_sum(p, one(3), ctx).total, brute_force_sum(p, one(3)));
  }
}

TEST(LatticeSum, TransverseConeIndependentOfBasePoint) {
  LatticePolytope p = poly(2, {{0, 0}, {3, 1}, {1, 2}});
  for (const auto& f : p.faces()) {
    if (f.dim != 1) continue;
    auto verts = p.face_vertices(f);
    ModelCone a = transverse_cone_at_face(p, f, verts[0]);
    ModelCone b = transverse_cone_at_face(p, f, verts[1]);
    EXPECT_TRUE(same_cone(a.cone, b.cone));
    MuContext ctx;
    EXPECT_EQ(pullback(ctx.mu(a.cone, 4), a.model), pullback(ctx.mu(b.cone, 4), b.model));
  }
}

TEST(LatticeSum, SquareEdgeTransverseCone) {
  LatticePolytope p = poly(2, square(1));
  for (const auto& f : p.faces()) {
    if (f.dim != 1) continue;
    ModelCone t = transverse_cone_at_face(p, f, f.x0);
    EXPECT_EQ(t.cone.dim(), 1);
    EXPECT_EQ(t.cone.num_rays(), 1u);
  }
}

TEST(EulerMaclaurin1d, ClosedForms) {
  for (int n = 0; n <= 7; ++n) {
    EXPECT_EQ(euler_maclaurin_1d(0, n, x_pow(1, 0, 1)).total, n * (n + 1) / 2);
    EXPECT_EQ(euler_maclaurin_1d(0, n, x_pow(1, 0, 2)).total, n * (n + 1) * (2 * n + 1) / 6);
  }
  Polynomial h = x_pow(1, 0, 3) + Rat(5) * x_pow(1, 0, 1);
  EXPECT_EQ(euler_maclaurin_1d(-2, -2, h).total, h.evaluate({Rat(-2)}));
}

TEST(EulerMaclaurin1d, AgreesWithFaceExpansion) {
  MuContext ctx;
  corpus::Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    IntVec ends = corpus::random_vector(rng, 2, 6);
    if (ends[0] > ends[1]) std::swap(ends[0], ends[1]);
    Polynomial h = corpus::random_polynomial(rng, 1, 4);
    LatticePolytope p = poly(1, {{ends[0]}, {ends[1]}});
    EXPECT_EQ(lattice_sum(p, h, ctx).total, euler_maclaurin_1d(ends[0], ends[1], h).total);
  }
}

TEST(BruteForce, Examples) {
  Polynomial xy = x_pow(2, 0, 1) + x_pow(2, 1, 1);
  EXPECT_EQ(brute_force_sum(poly(2, {{0, 0}, {1, 0}, {0, 1}}), xy), 2);
  EXPECT_THROW(brute_force_sum(poly(1, {{0}, {100}}), one(1), 10), InputError);
}
