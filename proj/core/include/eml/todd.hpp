#pragma once

// Equivariant Todd coefficients of complete fans and the identities that
// tie them to lattice-point series of the dual cones.

#include <string>
#include <vector>

#include "eml/cones.hpp"
#include "eml/mu.hpp"

namespace eml {

/// The scalar product on V = g* for a fan whose space carries the induced
/// scalar product on g: the inverse Gram matrix.
QSpace dual_space(const Fan& fan);

/// Builds a fan in g from the scalar product q of g*.
Fan fan_with_dual_product(const RatMat& q, const std::vector<Cone>& cones, bool complete);

struct ToddExpansion {
  Fan fan;
  int order = 0;
  std::vector<TruncSeries> coeffs;  ///< coeffs[i] = μ*(fan.cones[i])
};

/// μ*(σ) for every cone of a validated complete fan. Throws InputError with
/// the validation diagnostics otherwise.
ToddExpansion todd_coefficients(const Fan& fan, int m, MuContext& ctx, int jobs = 1);

/// (1 / mult(σ₀*)) Π ⟨-ξ, v_i⟩ S(σ₀*) as a power series through order m.
TruncSeries simplicial_restriction(const Fan& fan, std::size_t sigma0, int m);

/// φ_σ restricted to the maximal cone σ₀ via the scaled product of dual
/// generators; zero when σ ⊄ σ₀.
Polynomial phi_restriction(const Fan& fan, std::size_t sigma, std::size_t sigma0);
/// The same restriction as mult(σ) Π_{j ∈ J} ⟨ξ, v_j⟩ / ⟨v_j, η_j⟩.
Polynomial phi_restriction_direct(const Fan& fan, std::size_t sigma, std::size_t sigma0);

struct CheckResult {
  std::string instance;
  bool pass = false;
  std::string detail;  ///< first discrepancy when failing
};

/// Compares the two sides of the simplicial Todd expansion on every maximal
/// cone of a simplicial complete fan.
std::vector<CheckResult> check_tt(const Fan& fan, int m, MuContext& ctx);
/// The same comparison on one maximal cone.
CheckResult check_tt_at(const Fan& fan, std::size_t sigma0, int m, MuContext& ctx);

/// Σ_{σ ⪯ σ₀} μ*(σ) I(σ₀* ∩ lin(σ)^⊥) == S(σ₀*) as pole-cleared forms.
CheckResult localization_check(const Fan& fan, std::size_t sigma0, int m, MuContext& ctx);

/// μ*(σ) recomputed inside each fan with a fresh context gives identical text.
CheckResult danilov_check(const Cone& sigma, const std::vector<Fan>& fans, int m);

/// For every σ of `fan`: μ*(σ) equals the sum of μ*(σ̃) over cones σ̃ of
/// `refined` contained in σ with the same dimension.
std::vector<CheckResult> refinement_check(const Fan& fan, const Fan& refined, int m, MuContext& ctx);

/// Readable name of a cone: its sorted rays.
std::string cone_label(const Cone& c);

}  // namespace eml
