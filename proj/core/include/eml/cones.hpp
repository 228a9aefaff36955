#pragma once

// Rational polyhedral cones, fans and lattice polytopes: facets, face
// lattices, duals, transverse cones, triangulations and Box points.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eml/ratlin.hpp"

namespace eml {

/// Bit i set means ray i of the owning cone belongs to the set.
using RayMask = std::uint64_t;

inline int popcount(RayMask m) { return __builtin_popcountll(m); }

struct Facet {
  IntVec normal;  ///< primitive inward normal, in lin(c) lattice coordinates
  RayMask rays;   ///< rays lying on the facet
};

struct Face {
  RayMask rays;
  int dim;
};

/// A rational polyhedral cone generated by primitive lattice vectors of a
/// QSpace. Generators are primitivized and deduplicated; for pointed cones
/// generators that are not extreme rays are dropped (see dropped()).
class Cone {
 public:
  Cone(QSpace space, const std::vector<IntVec>& generators);
  static Cone from_rational(QSpace space, const std::vector<RatVec>& generators);
  static Cone zero(QSpace space);

  const QSpace& space() const { return space_; }
  std::size_t ambient_dim() const { return space_.dim(); }
  const std::vector<IntVec>& rays() const { return rays_; }
  std::size_t num_rays() const { return rays_.size(); }
  RayMask all_rays() const { return rays_.size() == 64 ? ~RayMask{0} : (RayMask{1} << rays_.size()) - 1; }
  /// dim lin(c).
  int dim() const { return dim_; }
  bool is_pointed() const { return pointed_; }
  bool is_full_dim() const { return dim_ == static_cast<int>(ambient_dim()); }
  bool is_simplicial() const { return pointed_ && static_cast<int>(rays_.size()) == dim_; }
  bool is_zero() const { return rays_.empty(); }
  /// Number of non-extreme generators removed at construction.
  std::size_t dropped() const { return dropped_; }

  /// Lattice basis of Z^d ∩ lin(c) (d x dim) and ray coordinates in it.
  const IntMat& lin_basis() const { return lin_basis_; }
  const std::vector<IntVec>& lin_coords() const { return lin_coords_; }

  const std::vector<Facet>& facets() const { return facets_; }
  /// All faces, including the minimal face and c itself, ordered by
  /// dimension and then by ray mask.
  const std::vector<Face>& faces() const { return faces_; }
  /// Ambient inequalities a with c = {x : a·x >= 0 for all a}.
  const std::vector<IntVec>& inequalities() const { return inequalities_; }

  bool contains(const RatVec& x) const;
  bool contains(const IntVec& x) const;
  bool is_face(RayMask m) const;
  std::vector<IntVec> rays_of(RayMask m) const;
  Cone face_cone(RayMask m) const;
  /// Sum of all rays, an interior point of c.
  IntVec interior_point() const;
  /// Rays sorted lexicographically; identifies the cone as a set.
  std::vector<IntVec> sorted_rays() const;

 private:
  void build(std::vector<IntVec> generators);

  QSpace space_;
  std::vector<IntVec> rays_;
  int dim_ = 0;
  bool pointed_ = true;
  std::size_t dropped_ = 0;
  IntMat lin_basis_;
  std::vector<IntVec> lin_coords_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
  std::vector<IntVec> inequalities_;
};

bool same_cone(const Cone& a, const Cone& b);

/// A simplicial cone with some facets removed: for i in excluded the facet
/// opposite ray i (where the coefficient t_i vanishes) is not part of it.
struct HalfOpenSimplicialCone {
  Cone base;
  std::vector<bool> excluded;
};

/// Index of the ray lattice in Z^d ∩ lin(c). Throws InputError unless simplicial.
Int mult(const Cone& c);

/// Dual of a full-dimensional simplicial cone; dual ray i pairs positively
/// with ray i and vanishes on the others.
Cone dual_simplicial(const Cone& c);

/// Inward facet normals of a full-dimensional cone of R^m (any pointedness).
std::vector<IntVec> dual_rays_full_dim(const std::vector<RatVec>& generators, std::size_t m);

struct ModelCone {
  QuotientModel model;
  Cone cone;
};

/// The cone čσ: image of σ* ⊂ V in V / lin(σ)^⊥, realised in the quotient
/// model. σ lives in the dual of V; `v_space` carries the scalar product on V.
ModelCone dual_general(const Cone& sigma, const QSpace& v_space);

/// t(c, f): image of c in the quotient model of V / lin(f).
ModelCone transverse_cone(const Cone& c, RayMask face);

/// Pulling triangulation into simplicial cones spanned by extreme rays. The
/// apex of each face is its ray of smallest priority; by default priority is
/// lexicographic order of the rays.
std::vector<Cone> triangulate(const Cone& c, const std::vector<std::size_t>& priority = {});

/// Lex-rank priority, or its reverse.
std::vector<std::size_t> lex_priority(const Cone& c, bool reverse = false);

/// Assigns excluded facets to a triangulation of a full-dimensional pointed
/// cone so that the pieces partition its lattice points.
std::vector<HalfOpenSimplicialCone> half_open_decompose(const std::vector<Cone>& pieces, const RatVec& witness);

/// Lattice points of the half-open parallelepiped of a full-dimensional
/// half-open simplicial cone.
std::vector<IntVec> box_points(const HalfOpenSimplicialCone& h);

/// Whether x lies in the half-open cone.
bool contains(const HalfOpenSimplicialCone& h, const IntVec& x);

// ---------------------------------------------------------------------------
// Fans.

struct Fan {
  QSpace space;
  std::vector<Cone> cones;
  bool complete = false;

  int dim() const { return static_cast<int>(space.dim()); }
  std::optional<std::size_t> find(const Cone& c) const;
  std::vector<std::size_t> maximal() const;
  /// Indices of the fan cones that are faces of cones[i] (including itself).
  std::vector<std::size_t> faces_of(std::size_t i) const;
};

/// Closes a list of cones under faces and deduplicates.
Fan fan_closure(const QSpace& space, const std::vector<Cone>& cones, bool complete);

struct FanDiagnostics {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

FanDiagnostics fan_validate(const Fan& f);

/// Refines every cone by pulling triangulation with one global ray order,
/// giving a simplicial fan with the same rays.
Fan pulling_refinement(const Fan& f);

/// Rays of the intersection of the cones {x : a·x >= 0}; nullopt when the
/// intersection contains a line.
std::optional<std::vector<IntVec>> h_cone_rays(const std::vector<IntVec>& inequalities, std::size_t dim);

// ---------------------------------------------------------------------------
// Lattice polytopes.

struct PolytopeFace {
  RayMask vertices;  ///< indices into LatticePolytope::vertices()
  int dim;
  IntVec x0;         ///< lexicographically smallest vertex of the face
};

class LatticePolytope {
 public:
  /// Throws InputError on an empty vertex list or dimension above 4.
  LatticePolytope(QSpace space, const std::vector<IntVec>& points);

  const QSpace& space() const { return space_; }
  std::size_t ambient_dim() const { return space_.dim(); }
  /// Extreme points, lexicographically sorted.
  const std::vector<IntVec>& vertices() const { return vertices_; }
  int dim() const { return cone_.dim() - 1; }
  bool is_full_dim() const { return dim() == static_cast<int>(ambient_dim()); }
  /// Faces of every dimension, the polytope last.
  const std::vector<PolytopeFace>& faces() const { return faces_; }
  /// The cone over {1} x p.
  const Cone& homogenization() const { return cone_; }
  bool contains(const IntVec& x) const;
  std::vector<IntVec> face_vertices(const PolytopeFace& f) const;

 private:
  QSpace space_;
  std::vector<IntVec> vertices_;
  Cone cone_;
  std::vector<PolytopeFace> faces_;
};

}  // namespace eml
