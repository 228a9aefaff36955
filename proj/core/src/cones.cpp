#include "eml/cones.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "eml/errors.hpp"

namespace eml {

namespace {

/// Calls fn on every r-subset of {0..n-1}, in lexicographic order.
void for_each_subset(std::size_t n, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int sign(const Rat& x) { return sgn(x); }
int sign(const Int& x) { return sgn(x); }

RatMat rows_matrix(const std::vector<IntVec>& rows, std::size_t cols) {
  RatMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

std::string format_vec(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string format_rays(const std::vector<IntVec>& rays) {
  std::string s = "{";
  for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? " " : "") + format_vec(rays[i]);
  return s + "}";
}

/// Inward normals of a cone full-dimensional in R^k, by brute force over
/// (k-1)-subsets of generators.
std::vector<Facet> brute_force_facets(const std::vector<IntVec>& gens, std::size_t k) {
  std::vector<Facet> out;
  if (k == 0) return out;
  auto consider = [&](RatVec n) {
    IntVec normal = primitive(n);
    int pos = 0, neg = 0;
    RayMask on = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int s = sign(dot(normal, gens[i]));
      if (s > 0) ++pos;
      if (s < 0) ++neg;
      if (s == 0) on |= RayMask{1} << i;
    }
    if (pos > 0 && neg > 0) return;
    if (neg > 0)
      for (auto& x : normal) x = -x;
    for (const auto& f : out)
      if (f.normal == normal) return;
    out.push_back({std::move(normal), on});
  };
  if (k == 1) {
    consider(RatVec{1});
    return out;
  }
  for_each_subset(gens.size(), k - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVec> sub;
    for (auto i : idx) sub.push_back(gens[i]);
    RatMat m = rows_matrix(sub, k);
    if (rank(m) != k - 1) return;
    consider(kernel(m).front());
  });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cone

Cone::Cone(QSpace space, const std::vector<IntVec>& generators) : space_(std::move(space)) { build(generators); }

Cone Cone::from_rational(QSpace space, const std::vector<RatVec>& generators) {
  std::vector<IntVec> gens;
  for (const auto& g : generators)
    if (std::any_of(g.begin(), g.end(), [](const Rat& x) { return x != 0; })) gens.push_back(primitive(g));
  return Cone(std::move(space), gens);
}

Cone Cone::zero(QSpace space) { return Cone(std::move(space), std::vector<IntVec>{}); }

void Cone::build(std::vector<IntVec> generators) {
  const std::size_t d = space_.dim();
  rays_.clear();
  for (const auto& g : generators) {
    if (g.size() != d) throw InputError("generator has the wrong dimension");
    if (std::all_of(g.begin(), g.end(), [](const Int& x) { return x == 0; })) continue;
    IntVec p = primitive(g);
    if (std::find(rays_.begin(), rays_.end(), p) == rays_.end()) rays_.push_back(std::move(p));
  }
  if (rays_.size() > 64) throw InputError("cones with more than 64 rays are not supported");

  dim_ = static_cast<int>(rank(rows_matrix(rays_, d)));
  const std::size_t k = static_cast<std::size_t>(dim_);
  if (k == d) {
    lin_basis_ = IntMat::identity(d);
  } else {
    std::vector<IntVec> b = sublattice_basis(rays_, d);
    lin_basis_ = IntMat::from_columns(b, d);
  }
  lin_coords_.clear();
  RatMat basis = to_rat(lin_basis_);
  for (const auto& r : rays_) {
    RatVec c = *coordinates(basis, to_rat(r));
    IntVec ci(k);
    for (std::size_t i = 0; i < k; ++i) ci[i] = c[i].get_num();
    lin_coords_.push_back(std::move(ci));
  }

  facets_ = brute_force_facets(lin_coords_, k);
  std::vector<IntVec> normals;
  for (const auto& f : facets_) normals.push_back(f.normal);
  pointed_ = k == 0 || rank(rows_matrix(normals, k)) == k;

  if (pointed_ && k > 0) {
    // A ray is extreme iff the facets through it have normals of rank k-1.
    std::vector<IntVec> extreme;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      std::vector<IntVec> through;
      for (const auto& f : facets_)
        if (f.rays >> i & 1) through.push_back(f.normal);
      if (rank(rows_matrix(through, k)) == k - 1) extreme.push_back(rays_[i]);
    }
    if (extreme.size() < rays_.size()) {
      const std::size_t removed = rays_.size() - extreme.size();
      build(std::move(extreme));
      dropped_ += removed;
      return;
    }
  }

  // Face lattice: closure of {c} under intersection with facets.
  std::map<RayMask, int> seen;
  std::vector<RayMask> queue{all_rays()};
  seen[all_rays()] = dim_;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& f : facets_) {
      RayMask g = queue[q] & f.rays;
      if (seen.count(g)) continue;
      seen[g] = static_cast<int>(rank(rows_matrix(rays_of(g), d)));
      queue.push_back(g);
    }
  }
  faces_.clear();
  for (const auto& [mask, dim] : seen) faces_.push_back({mask, dim});
  std::stable_sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) { return a.dim < b.dim; });

  // Ambient inequalities: facet normals lifted along B (B^T B)^{-1}, plus
  // the annihilator of lin(c) with both signs.
  inequalities_.clear();
  if (k > 0) {
    RatMat bt = basis.transpose();
    RatMat lift = basis * *inverse(bt * basis);
    for (const auto& n : normals) inequalities_.push_back(clear_denominators(lift * to_rat(n)));
  }
  RatMat annihilator_eq = to_rat(lin_basis_).transpose();
  std::vector<RatVec> ann = k == 0 ? std::vector<RatVec>{} : kernel(annihilator_eq);
  if (k == 0)
    for (std::size_t i = 0; i < d; ++i) {
      RatVec e(d);
      e[i] = 1;
      ann.push_back(e);
    }
  for (const auto& w : ann) {
    IntVec a = clear_denominators(w);
    inequalities_.push_back(a);
    for (auto& x : a) x = -x;
    inequalities_.push_back(std::move(a));
  }
}

bool Cone::contains(const RatVec& x) const {
  for (const auto& a : inequalities_) {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * x[i];
    if (s < 0) return false;
  }
  return true;
}

bool Cone::contains(const IntVec& x) const {
  for (const auto& a : inequalities_)
    if (dot(a, x) < 0) return false;
  return true;
}

bool Cone::is_face(RayMask m) const {
  return std::any_of(faces_.begin(), faces_.end(), [&](const Face& f) { return f.rays == m; });
}

std::vector<IntVec> Cone::rays_of(RayMask m) const {
  std::vector<IntVec> r;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (m >> i & 1) r.push_back(rays_[i]);
  return r;
}

Cone Cone::face_cone(RayMask m) const { return Cone(space_, rays_of(m)); }

IntVec Cone::interior_point() const {
  IntVec s(ambient_dim());
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += r[i];
  return s;
}

std::vector<IntVec> Cone::sorted_rays() const {
  std::vector<IntVec> r = rays_;
  std::sort(r.begin(), r.end());
  return r;
}

bool same_cone(const Cone& a, const Cone& b) {
  return a.space() == b.space() && a.sorted_rays() == b.sorted_rays();
}

Int mult(const Cone& c) {
  if (!c.is_simplicial()) throw InputError("multiplicity is defined for simplicial cones only");
  if (c.is_zero()) return 1;
  return abs(determinant(IntMat::from_rows(c.lin_coords(), c.lin_coords().size())));
}

Cone dual_simplicial(const Cone& c) {
  if (!c.is_simplicial() || !c.is_full_dim()) throw InputError("dual_simplicial needs a full-dimensional simplicial cone");
  const std::size_t d = c.ambient_dim();
  RatMat inv = *inverse(to_rat(IntMat::from_columns(c.rays(), d)));
  std::vector<IntVec> dual;
  for (std::size_t i = 0; i < d; ++i) dual.push_back(primitive(inv.row(i)));
  return Cone(c.space(), dual);
}

std::vector<IntVec> dual_rays_full_dim(const std::vector<RatVec>& generators, std::size_t m) {
  Cone c = Cone::from_rational(QSpace::standard(m), generators);
  if (!c.is_full_dim()) throw InputError("dual_rays_full_dim needs a full-dimensional cone");
  std::vector<IntVec> out;
  for (const auto& f : c.facets()) out.push_back(f.normal);
  return out;
}

ModelCone dual_general(const Cone& sigma, const QSpace& v_space) {
  const std::size_t d = v_space.dim();
  if (sigma.ambient_dim() != d) throw InputError("cone and dual space dimensions differ");
  std::vector<RatVec> f_span;
  if (sigma.is_zero()) {
    for (std::size_t i = 0; i < d; ++i) {
      RatVec e(d);
      e[i] = 1;
      f_span.push_back(std::move(e));
    }
  } else {
    f_span = kernel(rows_matrix(sigma.rays(), d));
  }
  QuotientModel model = quotient_model(v_space, f_span);
  const std::size_t m = model.dim();
  // σ seen in the dual of the model lattice: r ↦ B^T r.
  RatMat bt = model.lattice_basis.transpose();
  std::vector<RatVec> image;
  for (const auto& r : sigma.rays()) image.push_back(bt * to_rat(r));
  std::vector<IntVec> normals = m == 0 ? std::vector<IntVec>{} : dual_rays_full_dim(image, m);
  Cone cone(model.quotient, normals);
  return {std::move(model), std::move(cone)};
}

ModelCone transverse_cone(const Cone& c, RayMask face) {
  if (!c.is_face(face)) throw InputError("transverse_cone: the given ray set is not a face");
  QuotientModel model = quotient_model(c.space(), [&] {
    std::vector<RatVec> span;
    for (const auto& r : c.rays_of(face)) span.push_back(to_rat(r));
    return span;
  }());
  std::vector<IntVec> projected;
  for (std::size_t i = 0; i < c.num_rays(); ++i)
    if (!(face >> i & 1)) projected.push_back(model.project(c.rays()[i]));
  Cone cone(model.quotient, projected);
  return {std::move(model), std::move(cone)};
}

// ---------------------------------------------------------------------------
// Triangulation

std::vector<std::size_t> lex_priority(const Cone& c, bool reverse) {
  std::vector<std::size_t> order(c.num_rays());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c.rays()[a] < c.rays()[b]; });
  if (reverse) std::reverse(order.begin(), order.end());
  std::vector<std::size_t> prio(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) prio[order[r]] = r;
  return prio;
}

std::vector<Cone> triangulate(const Cone& c, const std::vector<std::size_t>& priority) {
  if (!c.is_pointed()) throw InputError("triangulate needs a pointed cone");
  if (c.is_zero()) return {c};
  const std::vector<std::size_t> prio = priority.empty() ? lex_priority(c) : priority;
  if (prio.size() != c.num_rays()) throw InputError("triangulation priority has the wrong length");

  std::map<RayMask, int> dims;
  for (const auto& f : c.faces()) dims[f.rays] = f.dim;
  std::map<RayMask, std::vector<RayMask>> memo;

  std::function<const std::vector<RayMask>&(RayMask)> pull = [&](RayMask f) -> const std::vector<RayMask>& {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    std::vector<RayMask> out;
    const int fdim = dims.at(f);
    if (popcount(f) == fdim) {
      out.push_back(f);
    } else {
      std::size_t apex = c.num_rays();
      for (std::size_t i = 0; i < c.num_rays(); ++i)
        if ((f >> i & 1) && (apex == c.num_rays() || prio[i] < prio[apex])) apex = i;
      const RayMask apex_bit = RayMask{1} << apex;
      for (const auto& [g, gdim] : dims) {
        if (gdim != fdim - 1 || (g & ~f) != 0 || (g & apex_bit)) continue;
        for (RayMask piece : pull(g)) out.push_back(piece | apex_bit);
      }
      std::sort(out.begin(), out.end());
    }
    return memo.emplace(f, std::move(out)).first->second;
  };

  std::vector<Cone> pieces;
  for (RayMask m : pull(c.all_rays())) pieces.push_back(c.face_cone(m));
  return pieces;
}

std::vector<HalfOpenSimplicialCone> half_open_decompose(const std::vector<Cone>& pieces, const RatVec& witness) {
  bool inside = false;
  std::vector<HalfOpenSimplicialCone> out;
  for (const auto& p : pieces) {
    if (!p.is_simplicial() || !p.is_full_dim())
      throw InputError("half-open decomposition needs full-dimensional simplicial pieces");
    if (p.contains(witness)) inside = true;
    const std::size_t d = p.ambient_dim();
    RatMat inv = *inverse(to_rat(IntMat::from_columns(p.rays(), d)));
    std::vector<bool> excluded(d);
    for (std::size_t i = 0; i < d; ++i) {
      RatVec n = inv.row(i);
      // Sign of ⟨n, w + ε e_0 + ε² e_1 + …⟩ for small ε > 0.
      int s = sign(dot(n, witness));
      for (std::size_t j = 0; s == 0 && j < d; ++j) s = sign(n[j]);
      excluded[i] = s < 0;
    }
    out.push_back({p, std::move(excluded)});
  }
  if (!pieces.empty() && !inside) throw InputError("half-open decomposition witness lies outside the cone");
  return out;
}

std::vector<IntVec> box_points(const HalfOpenSimplicialCone& h) {
  const Cone& c = h.base;
  if (!c.is_simplicial()) throw InputError("box_points needs independent rays");
  if (!c.is_full_dim()) throw InputError("box_points needs a full-dimensional cone");
  const std::size_t d = c.ambient_dim();
  if (d == 0) return {IntVec{}};
  IntMat v = IntMat::from_columns(c.rays(), d);
  RatMat vr = to_rat(v);
  RatMat vinv = *inverse(vr);
  SmithForm s = snf(v);
  RatMat uinv = *inverse(to_rat(s.u));

  std::vector<long> radix(d);
  for (std::size_t i = 0; i < d; ++i) radix[i] = s.s(i, i).get_si();
  std::vector<long> y(d, 0);
  std::vector<IntVec> out;
  for (;;) {
    RatVec yr(d);
    for (std::size_t i = 0; i < d; ++i) yr[i] = y[i];
    RatVec t = vinv * (uinv * yr);
    for (std::size_t i = 0; i < d; ++i) {
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), t[i].get_num_mpz_t(), t[i].get_den_mpz_t());
      t[i] -= fl;
      if (t[i] == 0 && h.excluded[i]) t[i] = 1;
    }
    RatVec x = vr * t;
    IntVec xi(d);
    for (std::size_t i = 0; i < d; ++i) xi[i] = x[i].get_num();
    out.push_back(std::move(xi));
    std::size_t i = 0;
    while (i < d && ++y[i] == radix[i]) y[i++] = 0;
    if (i == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const HalfOpenSimplicialCone& h, const IntVec& x) {
  const std::size_t d = h.base.ambient_dim();
  RatVec t = solve(to_rat(IntMat::from_columns(h.base.rays(), d)), to_rat(x));
  for (std::size_t i = 0; i < d; ++i) {
    if (t[i] < 0) return false;
    if (t[i] == 0 && h.excluded[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fans

namespace {

/// Whether a is a face of b (a's rays are rays of b forming a face of b).
bool is_face_of(const Cone& a, const Cone& b) {
  RayMask m = 0;
  for (const auto& r : a.rays()) {
    auto it = std::find(b.rays().begin(), b.rays().end(), r);
    if (it == b.rays().end()) return false;
    m |= RayMask{1} << (it - b.rays().begin());
  }
  return b.is_face(m);
}

bool cone_less(const Cone& a, const Cone& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return a.sorted_rays() < b.sorted_rays();
}

}  // namespace

std::optional<std::size_t> Fan::find(const Cone& c) const {
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (same_cone(cones[i], c)) return i;
  return std::nullopt;
}

std::vector<std::size_t> Fan::maximal() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool is_max = true;
    for (std::size_t j = 0; j < cones.size() && is_max; ++j)
      if (j != i && cones[j].dim() > cones[i].dim() && is_face_of(cones[i], cones[j])) is_max = false;
    if (is_max) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Fan::faces_of(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cones.size(); ++j)
    if (is_face_of(cones[j], cones[i])) out.push_back(j);
  return out;
}

Fan fan_closure(const QSpace& space, const std::vector<Cone>& cones, bool complete) {
  std::vector<Cone> all;
  std::set<std::vector<IntVec>> keys;
  for (const auto& c : cones) {
    if (c.space() != space) throw InputError("fan cone lives in a different space");
    for (const auto& f : c.faces()) {
      Cone fc = c.face_cone(f.rays);
      if (keys.insert(fc.sorted_rays()).second) all.push_back(std::move(fc));
    }
  }
  std::stable_sort(all.begin(), all.end(), cone_less);
  return Fan{space, std::move(all), complete};
}

std::optional<std::vector<IntVec>> h_cone_rays(const std::vector<IntVec>& inequalities, std::size_t dim) {
  if (rank(rows_matrix(inequalities, dim)) < dim) return std::nullopt;
  std::vector<IntVec> out;
  auto consider = [&](const RatVec& r) {
    for (int s : {1, -1}) {
      IntVec v = primitive(r);
      if (s < 0)
        for (auto& x : v) x = -x;
      bool ok = std::all_of(inequalities.begin(), inequalities.end(), [&](const IntVec& a) { return dot(a, v) >= 0; });
      if (ok && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
  };
  if (dim == 1) {
    consider(RatVec{1});
    return out;
  }
  for_each_subset(inequalities.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVec> sub;
    for (auto i : idx) sub.push_back(inequalities[i]);
    RatMat m = rows_matrix(sub, dim);
    if (rank(m) != dim - 1) return;
    consider(kernel(m).front());
  });
  std::sort(out.begin(), out.end());
  return out;
}

FanDiagnostics fan_validate(const Fan& f) {
  FanDiagnostics diag;
  const std::size_t d = f.space.dim();
  for (const auto& c : f.cones) {
    if (c.space() != f.space) diag.violations.push_back("cone " + format_rays(c.rays()) + " lives in a different space");
    if (!c.is_pointed()) diag.violations.push_back("cone " + format_rays(c.rays()) + " is not pointed");
  }
  if (!diag.ok()) return diag;

  for (const auto& c : f.cones)
    for (const auto& face : c.faces())
      if (!f.find(c.face_cone(face.rays)))
        diag.violations.push_back("cone " + format_rays(c.rays()) + " is missing its face " +
                                  format_rays(c.rays_of(face.rays)));

  for (std::size_t i = 0; i < f.cones.size(); ++i)
    for (std::size_t j = i + 1; j < f.cones.size(); ++j) {
      const Cone& a = f.cones[i];
      const Cone& b = f.cones[j];
      std::vector<IntVec> common;
      for (const auto& r : a.rays())
        if (std::find(b.rays().begin(), b.rays().end(), r) != b.rays().end()) common.push_back(r);
      Cone g(f.space, common);
      const std::string pair = format_rays(a.rays()) + " and " + format_rays(b.rays());
      if (!is_face_of(g, a) || !is_face_of(g, b)) {
        diag.violations.push_back("common rays of " + pair + " do not span a common face");
        continue;
      }
      std::vector<IntVec> ineq = a.inequalities();
      ineq.insert(ineq.end(), b.inequalities().begin(), b.inequalities().end());
      auto rays = h_cone_rays(ineq, d);
      bool ok = rays.has_value() &&
                std::all_of(rays->begin(), rays->end(), [&](const IntVec& r) { return g.contains(r); });
      if (!ok) diag.violations.push_back("intersection of " + pair + " is not a common face");
    }

  if (f.complete) {
    std::vector<std::size_t> maxi = f.maximal();
    for (auto i : maxi)
      if (!f.cones[i].is_full_dim())
        diag.violations.push_back("maximal cone " + format_rays(f.cones[i].rays()) + " is not full-dimensional");
    for (auto i : maxi) {
      const Cone& c = f.cones[i];
      for (const auto& face : c.faces()) {
        if (face.dim != c.dim() - 1) continue;
        Cone fc = c.face_cone(face.rays);
        int count = 0;
        for (auto j : maxi)
          if (is_face_of(fc, f.cones[j])) ++count;
        if (count != 2)
          diag.violations.push_back("facet " + format_rays(fc.rays()) + " lies in " + std::to_string(count) +
                                    " maximal cones instead of 2");
      }
    }
  }
  return diag;
}

Fan pulling_refinement(const Fan& f) {
  std::vector<IntVec> all_rays;
  for (const auto& c : f.cones)
    for (const auto& r : c.rays())
      if (std::find(all_rays.begin(), all_rays.end(), r) == all_rays.end()) all_rays.push_back(r);
  std::sort(all_rays.begin(), all_rays.end());
  std::vector<Cone> pieces;
  for (auto i : f.maximal()) {
    const Cone& c = f.cones[i];
    std::vector<std::size_t> prio;
    for (const auto& r : c.rays())
      prio.push_back(static_cast<std::size_t>(std::find(all_rays.begin(), all_rays.end(), r) - all_rays.begin()));
    for (auto& p : triangulate(c, prio)) pieces.push_back(std::move(p));
  }
  return fan_closure(f.space, pieces, f.complete);
}

// ---------------------------------------------------------------------------
// Lattice polytopes

namespace {

Cone homogenize(std::size_t d, const std::vector<IntVec>& points) {
  if (points.empty()) throw InputError("a polytope needs at least one vertex");
  if (d > 4) throw InputError("polytopes of dimension above 4 are not supported");
  std::vector<IntVec> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<IntVec> gens;
  for (const auto& p : sorted) {
    if (p.size() != d) throw InputError("polytope vertex has the wrong dimension");
    IntVec g{1};
    g.insert(g.end(), p.begin(), p.end());
    gens.push_back(std::move(g));
  }
  return Cone(QSpace::standard(d + 1), gens);
}

}  // namespace

LatticePolytope::LatticePolytope(QSpace space, const std::vector<IntVec>& points)
    : space_(std::move(space)), cone_(homogenize(space_.dim(), points)) {
  for (const auto& r : cone_.rays()) vertices_.emplace_back(r.begin() + 1, r.end());
  for (const auto& f : cone_.faces()) {
    if (f.rays == 0) continue;
    std::size_t first = 0;
    while (!(f.rays >> first & 1)) ++first;
    faces_.push_back({f.rays, f.dim - 1, vertices_[first]});
  }
}

bool LatticePolytope::contains(const IntVec& x) const {
  IntVec h{1};
  h.insert(h.end(), x.begin(), x.end());
  return cone_.contains(h);
}

std::vector<IntVec> LatticePolytope::face_vertices(const PolytopeFace& f) const {
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (f.vertices >> i & 1) out.push_back(vertices_[i]);
  return out;
}

}  // namespace eml
