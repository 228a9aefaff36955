#include "eml/polyeml.hpp"

#include "eml/errors.hpp"
#include "eml/parallel.hpp"

namespace eml {

namespace {

IntVec minus(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool is_zero_vec(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// ∫ over the standard simplex {t >= 0, Σ t <= 1} in k variables.
Rat integrate_standard_simplex(const Polynomial& g, std::size_t k) {
  Rat total = 0;
  for (const auto& [m, c] : g.terms()) {
    Rat num = 1;
    for (std::size_t i = 0; i < k; ++i) num *= factorial(m.exponent(i));
    total += c * num / factorial(static_cast<int>(k) + m.degree());
  }
  return total;
}

}  // namespace

ModelCone transverse_cone_at_face(const LatticePolytope& p, const PolytopeFace& f, const IntVec& x0) {
  if (!p.is_full_dim()) throw InputError("transverse cones need a full-dimensional polytope");
  std::vector<RatVec> span;
  for (const auto& w : p.face_vertices(f)) span.push_back(to_rat(minus(w, x0)));
  QuotientModel model = quotient_model(p.space(), span);
  std::vector<IntVec> gens;
  for (const auto& v : p.vertices()) {
    IntVec u = model.project(minus(v, x0));
    if (!is_zero_vec(u)) gens.push_back(std::move(u));
  }
  Cone cone = gens.empty() ? Cone::zero(model.quotient) : Cone(model.quotient, gens);
  return {std::move(model), std::move(cone)};
}

Polynomial apply_symbol(const TruncSeries& symbol, const Polynomial& h) {
  if (symbol.nvars() != h.nvars()) throw InputError("symbol and polynomial have different variable counts");
  Polynomial out(h.nvars());
  if (h.is_zero()) return out;
  const int deg = h.degree();
  if (symbol.order() < deg)
    throw OrderBudgetError("symbol carried through order " + std::to_string(symbol.order()) + " but the weight has degree " +
                           std::to_string(deg));
  for (const auto& [m, c] : symbol.terms()) {
    if (m.degree() > deg) break;
    Polynomial g = h;
    for (std::size_t i = 0; i < h.nvars() && !g.is_zero(); ++i)
      for (int e = 0; e < m.exponent(i); ++e) g = g.derivative(i);
    if (!g.is_zero()) out = out + c * g;
  }
  return out;
}

Rat integrate_over_face(const LatticePolytope& p, const PolytopeFace& f, const Polynomial& g) {
  const std::vector<IntVec> verts = p.face_vertices(f);
  const IntVec& x0 = f.x0;
  if (f.dim == 0) return g.evaluate(to_rat(x0));

  std::vector<RatVec> span;
  for (const auto& w : verts) span.push_back(to_rat(minus(w, x0)));
  SubspaceModel sub = subspace_model(p.space(), span);
  const std::size_t k = sub.basis.cols();
  std::vector<IntVec> coords;
  for (const auto& w : verts) coords.push_back(sub.coordinates_of(minus(w, x0)));
  Polynomial local = g.subst_affine(to_rat(sub.basis), to_rat(x0));

  LatticePolytope face(QSpace::standard(k), coords);
  Rat total = 0;
  for (const auto& piece : triangulate(face.homogenization())) {
    const auto& rays = piece.rays();
    std::vector<RatVec> pts;
    for (const auto& r : rays) {
      if (r[0] != 1) throw InvariantError("homogenized vertex is not at height one");
      pts.emplace_back(r.begin() + 1, r.end());
    }
    RatMat edges(k, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < k; ++i) edges(i, j) = pts[j + 1][i] - pts[0][i];
    Rat vol = abs(determinant(edges));
    total += vol * integrate_standard_simplex(local.subst_affine(edges, pts[0]), k);
  }
  return total;
}

LatticeSum lattice_sum(const LatticePolytope& p, const Polynomial& h, MuContext& ctx, int jobs) {
  const std::size_t d = p.ambient_dim();
  if (h.nvars() != d) throw InputError("weight and polytope dimensions differ");
  LatticeSum out;
  if (p.dim() == 0) {
    const IntVec& x0 = p.vertices().front();
    out.total = h.evaluate(to_rat(x0));
    out.faces.push_back({0, 0, x0, {x0}, TruncSeries::constant(d, std::max(h.degree(), 0), 1), h, out.total});
    return out;
  }
  if (!p.is_full_dim()) {
    const IntVec& x0 = p.vertices().front();
    std::vector<RatVec> span;
    for (const auto& v : p.vertices()) span.push_back(to_rat(minus(v, x0)));
    SubspaceModel sub = subspace_model(p.space(), span);
    std::vector<IntVec> pts;
    for (const auto& v : p.vertices()) pts.push_back(sub.coordinates_of(minus(v, x0)));
    return lattice_sum(LatticePolytope(sub.space, pts), h.subst_affine(to_rat(sub.basis), to_rat(x0)), ctx, jobs);
  }

  const int deg = std::max(h.degree(), 0);
  const auto& faces = p.faces();
  out.faces.resize(faces.size());
  parallel_for(faces.size(), jobs, [&](std::size_t i) {
    const PolytopeFace& f = faces[i];
    FaceContribution& c = out.faces[i];
    c.face = i;
    c.dim = f.dim;
    c.x0 = f.x0;
    c.vertices = p.face_vertices(f);
    if (f.dim == p.dim()) {
      c.symbol = TruncSeries::constant(d, deg, 1);
    } else {
      ModelCone t = transverse_cone_at_face(p, f, f.x0);
      c.symbol = pullback(ctx.mu(t.cone, deg), t.model);
    }
    c.applied = apply_symbol(c.symbol, h);
    c.integral = integrate_over_face(p, f, c.applied);
  });
  out.total = 0;
  for (const auto& c : out.faces) out.total += c.integral;
  return out;
}

Rat brute_force_sum(const LatticePolytope& p, const Polynomial& h, std::size_t limit) {
  const std::size_t d = p.ambient_dim();
  IntVec lo = p.vertices().front(), hi = lo;
  for (const auto& v : p.vertices())
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
    }
  Int count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= hi[i] - lo[i] + 1;
  if (count > Int(static_cast<unsigned long>(limit))) throw InputError("bounding box too large for enumeration");
  Rat total = 0;
  IntVec x = lo;
  while (true) {
    if (p.contains(x)) total += h.evaluate(to_rat(x));
    std::size_t k = 0;
    while (k < d && x[k] == hi[k]) x[k] = lo[k], ++k;
    if (k == d) break;
    ++x[k];
  }
  return total;
}

EulerMaclaurin1d euler_maclaurin_1d(const Int& a1, const Int& a2, const Polynomial& h) {
  if (h.nvars() != 1) throw InputError("the classical formula takes a polynomial in one variable");
  if (a1 > a2) throw InputError("interval endpoints out of order");
  EulerMaclaurin1d out;
  const RatVec left{Rat(a1)}, right{Rat(a2)};

  Polynomial anti(1);
  for (const auto& [m, c] : h.terms()) {
    const int e = m.exponent(0);
    anti.add_term(Monomial(std::vector<int>{e + 1}), c / (e + 1));
  }
  out.terms.push_back({"integral", anti.evaluate(right) - anti.evaluate(left)});

  Polynomial deriv = h;
  for (int n = 1; !deriv.is_zero(); ++n, deriv = deriv.derivative(0)) {
    const Rat b = bernoulli(n) / factorial(n);
    if (b == 0) continue;
    const std::string tag = "n=" + std::to_string(n);
    out.terms.push_back({"left " + tag, -b * deriv.evaluate(left)});
    out.terms.push_back({"right " + tag, (n % 2 ? -b : b) * deriv.evaluate(right)});
  }
  out.total = 0;
  for (const auto& t : out.terms) out.total += t.value;
  return out;
}

}  // namespace eml
