#pragma once

// Lattice-point series S, face integrals I, the local Euler-Maclaurin germs
// μ and their dual versions μ*.

#include <atomic>
#include <cstddef>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "eml/cones.hpp"
#include "eml/series.hpp"

namespace eml {

/// I(f)(ξ) = Σ_pieces mult(piece) Π_j 1 / ⟨-ξ, v_j⟩ for a triangulated face.
struct IntegralForm {
  struct Piece {
    Int mult;
    std::vector<IntVec> edges;
  };
  std::size_t nvars = 0;
  std::vector<Piece> pieces;

  /// All pieces over their common denominator; the constant numerators are
  /// carried at order `order`.
  PoleCleared as_pole_cleared(int order) const;
  /// One pole-cleared term per piece with numerator mult·(-1)^k·factor.
  std::vector<PoleCleared> terms(const TruncSeries& factor) const;
};

/// S of a full-dimensional half-open simplicial cone: numerator correct
/// through order m + d.
PoleCleared s_series(const HalfOpenSimplicialCone& h, int m);

/// S of a full-dimensional cone via triangulation and half-open pieces,
/// numerator correct through m + (number of rays). Zero for non-pointed cones.
PoleCleared s_series_general(const Cone& c, int m);

/// Per-piece S terms, each correct through m + d (before joining).
std::vector<PoleCleared> s_series_terms(const Cone& c, int m);

/// I(f) for a pointed cone f; the zero cone gives the constant 1.
IntegralForm i_form(const Cone& f);

/// Thread-safe memo of μ values keyed by scalar product and rays.
class MuContext {
 public:
  MuContext() = default;
  MuContext(const MuContext&) = delete;
  MuContext& operator=(const MuContext&) = delete;

  /// μ(c) through order m. c must be pointed; lower-dimensional cones are
  /// computed inside lin(c) and restricted back. Throws InputError on a
  /// non-pointed cone.
  TruncSeries mu(const Cone& c, int m);

  /// μ*(σ) for σ in g = V*, through order m, as a series in the coordinates
  /// of g. `v_space` carries the scalar product of V = g*.
  TruncSeries mu_star(const Cone& sigma, const QSpace& v_space, int m);

  /// Σ_{f ∈ F(c)} μ(t(c,f)) I(f) as one pole-cleared form with numerator
  /// correct through m + (number of rays). For full-dimensional pointed c.
  PoleCleared face_expansion(const Cone& c, int m);

  std::size_t cache_size() const;
  std::size_t cache_hits() const;

 private:
  TruncSeries mu_full_dim(const Cone& c, int m);
  /// Terms of the face sum over faces with dim f >= min_face_dim.
  std::vector<PoleCleared> face_terms(const Cone& c, int m, int min_face_dim);

  mutable std::shared_mutex mutex_;
  std::map<std::string, TruncSeries> cache_;
  std::atomic<std::size_t> hits_{0};
};

/// True when p and q agree as meromorphic germs through the order their
/// joined numerator carries. On failure `detail` names the first nonzero
/// coefficient degree of the difference.
bool pole_cleared_equal(const PoleCleared& p, const PoleCleared& q, std::string* detail = nullptr);

/// Checks -⟨v, ξ⟩ I(c) = Σ_facets ⟨v, n⟩ I(facet) for a full-dimensional
/// pointed cone, n the primitive inward facet normal.
bool stokes_identity(const Cone& c, const IntVec& v, int order, std::string* detail = nullptr);

/// ξ ↦ a(Lξ) for the pullback matrix of a quotient model.
TruncSeries pullback(const TruncSeries& a, const QuotientModel& model);

}  // namespace eml
