#pragma once

// Named fans and seeded random instances shared by the verification suites.

#include <random>
#include <string>
#include <vector>

#include "eml/cones.hpp"
#include "eml/series.hpp"

namespace eml::corpus {

using Rng = std::mt19937_64;

struct NamedFan {
  std::string name;
  Fan fan;
};

/// Complete fans with the standard scalar product: P1, P2, P1xP1, the
/// weighted plane {e1, e2, -e1-2e2} and the fan over the faces of the cube.
Fan p1();
Fan p2();
Fan p1xp1();
Fan weighted_plane();
Fan cube_fan();
std::vector<NamedFan> named_fans();
/// The simplicial named fans (everything but the cube fan).
std::vector<NamedFan> simplicial_fans();

/// A complete simplicial fan in the plane with 3 to 6 rays.
Fan random_plane_fan(Rng& rng);

/// A pointed full-dimensional 2-D cone and an interior ray splitting it.
struct ConeSplit {
  Cone whole;
  Cone left;
  Cone right;
};
ConeSplit random_plane_split(Rng& rng);

/// Full-dimensional pointed cones in dimensions 2 and 3.
std::vector<Cone> stokes_cones();

/// Vertices of an integral polytope of dimension 1 to 3 (possibly
/// lower-dimensional after taking the hull), coordinates in [-4, 4].
std::vector<IntVec> random_polytope_points(Rng& rng, std::size_t dim);

/// A polynomial of degree at most max_degree with small rational coefficients.
Polynomial random_polynomial(Rng& rng, std::size_t nvars, int max_degree);

IntVec random_vector(Rng& rng, std::size_t dim, int bound);

}  // namespace eml::corpus
