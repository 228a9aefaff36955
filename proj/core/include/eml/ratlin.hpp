#pragma once

// Exact linear algebra over Q and Z: normal forms, sublattices, quotient
// lattices and Q-orthogonal projections.

#include <optional>
#include <vector>

#include "eml/rational.hpp"

namespace eml {

/// A rational vector space R^d carrying the standard lattice Z^d and a
/// rational positive-definite scalar product, stored as its Gram matrix.
class QSpace {
 public:
  /// Throws InputError unless `gram` is square, symmetric and positive definite.
  explicit QSpace(RatMat gram);
  static QSpace standard(std::size_t dim);

  std::size_t dim() const { return gram_.rows(); }
  const RatMat& gram() const { return gram_; }
  Rat product(const RatVec& x, const RatVec& y) const;

  friend bool operator==(const QSpace& a, const QSpace& b) { return a.gram_ == b.gram_; }

 private:
  RatMat gram_;
};

// ---------------------------------------------------------------------------
// Dense exact helpers.

std::size_t rank(const RatMat& m);
Rat determinant(RatMat m);
Int determinant(const IntMat& m);
std::optional<RatMat> inverse(const RatMat& m);
/// Basis of {x : m x = 0}.
std::vector<RatVec> kernel(const RatMat& m);
/// Unique solution of a x = b for square invertible a; throws InputError otherwise.
RatVec solve(const RatMat& a, const RatVec& b);
/// Coordinates of x in the (independent) columns of `basis`, or nullopt if
/// x is outside their span.
std::optional<RatVec> coordinates(const RatMat& basis, const RatVec& x);
/// Indices of a maximal independent subset, chosen greedily in order.
std::vector<std::size_t> independent_subset(const std::vector<RatVec>& vectors, std::size_t dim);

// ---------------------------------------------------------------------------
// Integer normal forms.

struct HermiteForm {
  IntMat h;  ///< lower-triangular column Hermite normal form
  IntMat u;  ///< unimodular, m * u == h
};

/// Column-style Hermite normal form. Pivots are positive; entries left of a
/// pivot in its row are reduced into [0, pivot).
HermiteForm hnf(const IntMat& m);

struct SmithForm {
  IntMat s;  ///< diagonal, s_i | s_{i+1}, nonnegative
  IntMat u;  ///< unimodular (rows x rows)
  IntMat v;  ///< unimodular (cols x cols), u * m * v == s
};

SmithForm snf(const IntMat& m);

/// The primitive lattice vector on the ray R_+ v. Throws InputError on v == 0.
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);

/// Smallest positive integer multiple that clears all denominators.
IntVec clear_denominators(const RatVec& v);

/// Basis of the lattice Z^d intersected with lin(span).
std::vector<IntVec> sublattice_basis(const std::vector<RatVec>& span, std::size_t dim);
std::vector<IntVec> sublattice_basis(const std::vector<IntVec>& span, std::size_t dim);

// ---------------------------------------------------------------------------
// Models of subspaces and quotients.

/// lin(W) with its lattice Z^d ∩ lin(W), realised as Z^k with the restricted
/// scalar product.
struct SubspaceModel {
  QSpace parent;
  IntMat basis;  ///< d x k, columns form a lattice basis of Z^d ∩ lin(W)
  QSpace space;  ///< Z^k with Gram basis^T Q basis

  /// Lattice coordinates of a vector of lin(W).
  RatVec coordinates_of(const RatVec& x) const;
  IntVec coordinates_of(const IntVec& x) const;
  /// Matrix L with η = L ξ the restriction of a functional ξ on R^d to lin(W).
  RatMat pullback() const;
};

SubspaceModel subspace_model(const QSpace& space, const std::vector<RatVec>& span);

/// The quotient V / lin(F) realised as the Q-orthogonal complement F^⊥ with
/// the orthogonal projection of the parent lattice.
struct QuotientModel {
  QSpace parent;
  std::vector<RatVec> f_basis;      ///< basis of lin(F), ambient coordinates
  std::vector<RatVec> comp_basis;   ///< basis of F^⊥, ambient coordinates
  RatMat proj_lattice_basis;        ///< m x m, projected-lattice basis in comp_basis coordinates
  RatMat lattice_basis;             ///< d x m, the same basis in ambient coordinates
  IntMat projection;                ///< m x d, e_j ↦ lattice coordinates of its projection
  QSpace quotient;                  ///< Z^m with the restricted scalar product

  std::size_t dim() const { return quotient.dim(); }
  /// Lattice coordinates of the orthogonal projection of x.
  IntVec project(const IntVec& x) const;
  RatVec project(const RatVec& x) const;
  /// Matrix L (m x d) such that a germ on the quotient dual pulled back along
  /// the orthogonal projection of the dual space is ξ ↦ f(L ξ).
  RatMat pullback() const;
};

QuotientModel quotient_model(const QSpace& space, const std::vector<RatVec>& f_span);

/// Q-orthogonal projection of x onto span(w_basis).
RatVec orth_project(const QSpace& space, const std::vector<RatVec>& w_basis, const RatVec& x);

}  // namespace eml
