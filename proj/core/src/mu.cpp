#include "eml/mu.hpp"

#include <mutex>
#include <sstream>

#include "eml/errors.hpp"

namespace eml {

namespace {

std::string cache_key(const Cone& c) {
  std::ostringstream os;
  const RatMat& g = c.space().gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i; j < g.cols(); ++j) os << g(i, j).get_str() << ',';
  os << '|';
  for (const auto& r : c.sorted_rays()) {
    for (const auto& x : r) os << x.get_str() << ',';
    os << ';';
  }
  return os.str();
}

std::vector<RatVec> rat_span(const std::vector<IntVec>& v) {
  std::vector<RatVec> out;
  for (const auto& x : v) out.push_back(to_rat(x));
  return out;
}

}  // namespace

TruncSeries pullback(const TruncSeries& a, const QuotientModel& model) {
  return subst_linear(a, model.pullback());
}

// ---------------------------------------------------------------------------
// S and I

PoleCleared s_series(const HalfOpenSimplicialCone& h, int m) {
  const Cone& c = h.base;
  if (!c.is_full_dim() || !c.is_simplicial()) throw InputError("s_series needs a full-dimensional simplicial cone");
  const std::size_t d = c.ambient_dim();
  const int order = m + static_cast<int>(d);
  TruncSeries box(d, order);
  for (const auto& b : box_points(h)) box += exp_linform(linform(b), order);
  std::vector<LinForm> denoms;
  for (const auto& v : c.rays()) {
    LinForm l = linform(v);
    box = mul(box, todd_one_var(l, order));
    denoms.push_back(std::move(l));
  }
  return PoleCleared::make(std::move(box), denoms);
}

std::vector<PoleCleared> s_series_terms(const Cone& c, int m) {
  if (!c.is_full_dim() || !c.is_pointed()) throw InputError("s_series_terms needs a full-dimensional pointed cone");
  std::vector<PoleCleared> out;
  for (const auto& h : half_open_decompose(triangulate(c), to_rat(c.interior_point()))) out.push_back(s_series(h, m));
  return out;
}

PoleCleared s_series_general(const Cone& c, int m) {
  const std::size_t d = c.ambient_dim();
  const int r = static_cast<int>(c.num_rays());
  if (!c.is_pointed()) return PoleCleared::make(TruncSeries(d, m + r), {});
  if (c.is_zero()) return PoleCleared::make(TruncSeries::constant(d, m, 1), {});
  if (c.is_full_dim()) return join_denominators(s_series_terms(c, m), m + r);

  // Compute inside lin(c) and carry the result back along ξ ↦ B^T ξ.
  SubspaceModel sub = subspace_model(c.space(), rat_span(c.rays()));
  std::vector<IntVec> coords;
  for (const auto& v : c.rays()) coords.push_back(sub.coordinates_of(v));
  Cone inner(sub.space, coords);
  PoleCleared p = join_denominators(s_series_terms(inner, m), m + r);
  RatMat b = to_rat(sub.basis);
  std::vector<LinForm> denoms;
  for (const auto& l : p.denoms) denoms.push_back(LinForm{b * l.coeffs});
  return PoleCleared::make(subst_linear(p.numerator, sub.pullback()), denoms, p.scale);
}

IntegralForm i_form(const Cone& f) {
  if (!f.is_pointed()) throw InputError("i_form needs a pointed cone");
  IntegralForm out;
  out.nvars = f.ambient_dim();
  if (f.is_zero()) {
    out.pieces.push_back({Int(1), {}});
    return out;
  }
  for (const auto& piece : triangulate(f)) out.pieces.push_back({mult(piece), piece.rays()});
  return out;
}

std::vector<PoleCleared> IntegralForm::terms(const TruncSeries& factor) const {
  std::vector<PoleCleared> out;
  for (const auto& p : pieces) {
    std::vector<LinForm> denoms;
    for (const auto& e : p.edges) denoms.push_back(linform(e));
    Rat s = p.edges.size() % 2 ? Rat(-p.mult) : Rat(p.mult);
    out.push_back(PoleCleared::make(scale(factor, s), denoms));
  }
  return out;
}

PoleCleared IntegralForm::as_pole_cleared(int order) const {
  return join_denominators(terms(TruncSeries::constant(nvars, order, 1)));
}

// ---------------------------------------------------------------------------
// μ

TruncSeries MuContext::mu(const Cone& c, int m) {
  if (m < 0) throw OrderBudgetError("negative order");
  if (!c.is_pointed()) throw InputError("mu needs a pointed cone");
  const std::size_t d = c.ambient_dim();
  if (c.is_zero()) return TruncSeries::constant(d, m, 1);
  if (c.is_full_dim()) return mu_full_dim(c, m);

  SubspaceModel sub = subspace_model(c.space(), rat_span(c.rays()));
  std::vector<IntVec> coords;
  for (const auto& v : c.rays()) coords.push_back(sub.coordinates_of(v));
  return subst_linear(mu_full_dim(Cone(sub.space, coords), m), sub.pullback());
}

std::vector<PoleCleared> MuContext::face_terms(const Cone& c, int m, int min_face_dim) {
  const std::size_t d = c.ambient_dim();
  std::vector<PoleCleared> out;
  for (const auto& face : c.faces()) {
    if (face.dim < min_face_dim) continue;
    const int need = m + face.dim;
    TruncSeries factor(d, need);
    if (face.dim == 0) {
      factor = mu_full_dim(c, need);
    } else if (face.dim == c.dim()) {
      factor = TruncSeries::constant(d, need, 1);
    } else {
      ModelCone t = transverse_cone(c, face.rays);
      if (!t.cone.is_pointed() || !t.cone.is_full_dim())
        throw InvariantError("transverse cone along a proper face is not pointed and full-dimensional");
      factor = pullback(mu_full_dim(t.cone, need), t.model);
    }
    auto pieces = i_form(c.face_cone(face.rays)).terms(factor);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

TruncSeries MuContext::mu_full_dim(const Cone& c, int m) {
  if (c.is_zero()) return TruncSeries::constant(c.ambient_dim(), m, 1);
  const std::string key = cache_key(c);
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end() && it->second.order() >= m) {
      ++hits_;
      return it->second.truncated(m);
    }
  }

  const int r = static_cast<int>(c.num_rays());
  std::vector<PoleCleared> terms = s_series_terms(c, m);
  for (auto& t : face_terms(c, m, 1)) {
    t.scale = -t.scale;
    terms.push_back(std::move(t));
  }
  TruncSeries result = extract_holomorphic(join_denominators(terms, m + r), m);

  std::unique_lock lock(mutex_);
  auto& slot = cache_.try_emplace(key, result).first->second;
  if (slot.order() < m) slot = result;
  return result;
}

PoleCleared MuContext::face_expansion(const Cone& c, int m) {
  if (!c.is_full_dim() || !c.is_pointed()) throw InputError("face_expansion needs a full-dimensional pointed cone");
  return join_denominators(face_terms(c, m, 0), m + static_cast<int>(c.num_rays()));
}

TruncSeries MuContext::mu_star(const Cone& sigma, const QSpace& v_space, int m) {
  const std::size_t d = v_space.dim();
  if (sigma.is_zero()) return TruncSeries::constant(d, m, 1);
  ModelCone mc = dual_general(sigma, v_space);
  return pullback(mu(mc.cone, m), mc.model);
}

std::size_t MuContext::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

std::size_t MuContext::cache_hits() const { return hits_.load(); }

bool pole_cleared_equal(const PoleCleared& p, const PoleCleared& q, std::string* detail) {
  PoleCleared diff = difference(p, q);
  if (diff.numerator.is_zero()) return true;
  if (detail) {
    const Monomial first = diff.numerator.terms().begin()->first;
    *detail = "difference numerator nonzero at degree " + std::to_string(first.degree()) + " (carried through " +
              std::to_string(diff.numerator.order()) + ")";
  }
  return false;
}

bool stokes_identity(const Cone& c, const IntVec& v, int order, std::string* detail) {
  if (!c.is_full_dim() || !c.is_pointed()) throw InputError("stokes_identity needs a full-dimensional pointed cone");
  const std::size_t d = c.ambient_dim();
  LinForm neg = linform(v);
  for (auto& x : neg.coeffs) x = -x;
  PoleCleared lhs = times(i_form(c).as_pole_cleared(order), TruncSeries::from_linform(neg, order));
  std::vector<PoleCleared> rhs;
  for (const auto& f : c.facets()) {
    auto t = i_form(c.face_cone(f.rays)).terms(TruncSeries::constant(d, order, Rat(dot(v, f.normal))));
    rhs.insert(rhs.end(), t.begin(), t.end());
  }
  return pole_cleared_equal(lhs, join_denominators(rhs), detail);
}

}  // namespace eml
