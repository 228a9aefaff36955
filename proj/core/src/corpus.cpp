#include "eml/corpus.hpp"

#include <algorithm>

namespace eml::corpus {

namespace {

using Rays = std::vector<IntVec>;

Fan plane_fan_from_cycle(const Rays& cycle) {
  QSpace s = QSpace::standard(2);
  std::vector<Cone> maxi;
  for (std::size_t i = 0; i < cycle.size(); ++i) maxi.emplace_back(s, Rays{cycle[i], cycle[(i + 1) % cycle.size()]});
  return fan_closure(s, maxi, true);
}

Int cross(const IntVec& a, const IntVec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Upper half-plane (including the positive x axis) first, then by cross product.
bool angle_less(const IntVec& a, const IntVec& b) {
  auto half = [](const IntVec& v) { return v[1] > 0 || (v[1] == 0 && v[0] > 0) ? 0 : 1; };
  if (half(a) != half(b)) return half(a) < half(b);
  return cross(a, b) > 0;
}

}  // namespace

Fan p1() {
  QSpace s = QSpace::standard(1);
  return fan_closure(s, {Cone(s, Rays{{1}}), Cone(s, Rays{{-1}})}, true);
}

Fan p2() { return plane_fan_from_cycle({{1, 0}, {0, 1}, {-1, -1}}); }

Fan p1xp1() { return plane_fan_from_cycle({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

Fan weighted_plane() { return plane_fan_from_cycle({{1, 0}, {0, 1}, {-1, -2}}); }

Fan cube_fan() {
  QSpace s = QSpace::standard(3);
  std::vector<Cone> maxi;
  for (std::size_t axis = 0; axis < 3; ++axis)
    for (int sign : {1, -1}) {
      Rays rays;
      for (int a : {1, -1})
        for (int b : {1, -1}) {
          IntVec v(3);
          v[axis] = sign;
          v[(axis + 1) % 3] = a;
          v[(axis + 2) % 3] = b;
          rays.push_back(v);
        }
      maxi.emplace_back(s, rays);
    }
  return fan_closure(s, maxi, true);
}

std::vector<NamedFan> simplicial_fans() {
  return {{"P1", p1()}, {"P2", p2()}, {"P1xP1", p1xp1()}, {"weighted", weighted_plane()}};
}

std::vector<NamedFan> named_fans() {
  auto out = simplicial_fans();
  out.push_back({"cube", cube_fan()});
  return out;
}

IntVec random_vector(Rng& rng, std::size_t dim, int bound) {
  std::uniform_int_distribution<int> coord(-bound, bound);
  IntVec v(dim);
  for (auto& x : v) x = coord(rng);
  return v;
}

Fan random_plane_fan(Rng& rng) {
  std::uniform_int_distribution<int> count(3, 6);
  while (true) {
    const int k = count(rng);
    Rays rays;
    while (static_cast<int>(rays.size()) < k) {
      IntVec v = random_vector(rng, 2, 3);
      if (v[0] == 0 && v[1] == 0) continue;
      v = primitive(v);
      if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(v);
    }
    std::sort(rays.begin(), rays.end(), angle_less);
    bool ok = true;
    for (std::size_t i = 0; i < rays.size() && ok; ++i) ok = cross(rays[i], rays[(i + 1) % rays.size()]) > 0;
    if (ok) return plane_fan_from_cycle(rays);
  }
}

ConeSplit random_plane_split(Rng& rng) {
  QSpace s = QSpace::standard(2);
  std::uniform_int_distribution<int> weight(1, 3);
  while (true) {
    IntVec a = random_vector(rng, 2, 4), b = random_vector(rng, 2, 4);
    if (cross(a, b) <= 0) continue;
    a = primitive(a);
    b = primitive(b);
    const int p = weight(rng), q = weight(rng);
    IntVec c = primitive(IntVec{a[0] * p + b[0] * q, a[1] * p + b[1] * q});
    if (c == a || c == b) continue;
    return {Cone(s, Rays{a, b}), Cone(s, Rays{a, c}), Cone(s, Rays{c, b})};
  }
}

std::vector<Cone> stokes_cones() {
  QSpace s2 = QSpace::standard(2), s3 = QSpace::standard(3);
  return {
      Cone(s2, Rays{{1, 0}, {0, 1}}),
      Cone(s2, Rays{{1, 0}, {1, 3}}),
      Cone(s2, Rays{{2, -1}, {-1, 3}}),
      Cone(s3, Rays{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
      Cone(s3, Rays{{1, 2, 0}, {0, 1, 3}, {2, 0, 1}}),
      Cone(s3, Rays{{1, 1, 1}, {1, -1, 1}, {-1, -1, 1}, {-1, 1, 1}}),
      Cone(s3, Rays{{1, 0, 1}, {0, 1, 1}, {-1, -1, 1}, {2, 1, 3}}),
  };
}

std::vector<IntVec> random_polytope_points(Rng& rng, std::size_t dim) {
  std::uniform_int_distribution<int> extra(1, 4);
  const std::size_t n = dim + static_cast<std::size_t>(extra(rng));
  std::vector<IntVec> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_vector(rng, dim, 4));
  return pts;
}

Polynomial random_polynomial(Rng& rng, std::size_t nvars, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), num(-5, 5), den(1, 4), terms(1, 4);
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  Polynomial p(nvars);
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    std::vector<int> e(nvars, 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p.add_term(Monomial(e), make_rat(num(rng), den(rng)));
  }
  return p;
}

}  // namespace eml::corpus
