#pragma once

// Weighted lattice-point sums over integral polytopes by the local
// Euler-Maclaurin formula: Σ_{x ∈ p} h(x) = Σ_f ∫_f D(p,f) h.

#include <string>
#include <vector>

#include "eml/cones.hpp"
#include "eml/mu.hpp"

namespace eml {

struct FaceContribution {
  std::size_t face = 0;            ///< index into LatticePolytope::faces()
  int dim = 0;
  IntVec x0;                       ///< base point of the face
  std::vector<IntVec> vertices;
  TruncSeries symbol{0, 0};        ///< μ of the transverse cone, in ambient ξ
  Polynomial applied{0};           ///< D(p,f) h
  Rat integral;
};

struct LatticeSum {
  Rat total;
  std::vector<FaceContribution> faces;  ///< in face order; empty for points
};

/// Cone of feasible directions {v - x0} at the face, in the quotient model
/// of lin(f - x0). p must be full-dimensional.
ModelCone transverse_cone_at_face(const LatticePolytope& p, const PolytopeFace& f, const IntVec& x0);

/// Σ c_α ∂^α h for the symbol Σ c_α ξ^α. Throws OrderBudgetError when the
/// symbol is truncated below deg h.
Polynomial apply_symbol(const TruncSeries& symbol, const Polynomial& h);

/// ∫_f g for the Lebesgue measure on aff(f) normalized by its lattice.
Rat integrate_over_face(const LatticePolytope& p, const PolytopeFace& f, const Polynomial& g);

/// Σ_{x ∈ p ∩ Z^d} h(x) via the face expansion. Lower-dimensional polytopes
/// are first restricted to their affine lattice span; face contributions
/// are then reported in those coordinates.
LatticeSum lattice_sum(const LatticePolytope& p, const Polynomial& h, MuContext& ctx, int jobs = 1);

/// Direct enumeration over the bounding box. Throws InputError when the box
/// holds more than `limit` points.
Rat brute_force_sum(const LatticePolytope& p, const Polynomial& h, std::size_t limit = 20'000'000);

struct EmlTerm {
  std::string label;
  Rat value;
};

struct EulerMaclaurin1d {
  Rat total;
  std::vector<EmlTerm> terms;
};

/// Classical formula on [a1, a2]: ∫h - Σ b_n/n! h^{(n-1)}(a1) + Σ (-1)^n b_n/n! h^{(n-1)}(a2).
EulerMaclaurin1d euler_maclaurin_1d(const Int& a1, const Int& a2, const Polynomial& h);

}  // namespace eml
