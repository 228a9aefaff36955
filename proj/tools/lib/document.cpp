#include "document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "eml/errors.hpp"

namespace eml::doc {

namespace {

const char* const kKinds[] = {"cone", "fan", "polytope", "polynomial", "series", "todd-expansion", "report"};

Rat rat_from(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  throw InputError("expected a rational string, got " + j.dump());
}

Int int_from(const Json& j) {
  Rat r = rat_from(j);
  if (r.get_den() != 1) throw InputError("expected an integer, got " + j.dump());
  return r.get_num();
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

const Json& array_field(const Json& j, const char* name) {
  const Json& a = field(j, name);
  if (!a.is_array()) throw InputError(std::string("field '") + name + "' must be an array");
  return a;
}

IntVec int_vec_from(const Json& j, std::size_t dim, const char* what) {
  if (!j.is_array() || j.size() != dim)
    throw InputError(std::string(what) + " must be an array of " + std::to_string(dim) + " entries");
  IntVec v;
  for (const auto& x : j) v.push_back(int_from(x));
  return v;
}

std::vector<IntVec> rays_from(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw InputError("ray list must be an array");
  std::vector<IntVec> out;
  for (const auto& r : j) out.push_back(int_vec_from(r, dim, "ray"));
  return out;
}

Json rays_json(const std::vector<IntVec>& rays) {
  Json a = Json::array();
  for (const auto& r : rays) a.push_back(vec_json(r));
  return a;
}

Json terms_json(const std::vector<SeriesTerm>& terms) {
  Json a = Json::array();
  for (const auto& [e, c] : terms) a.push_back(Json{{"exp", e}, {"coeff", rat_json(c)}});
  return a;
}

template <class Sink>
void read_terms(const Json& a, std::size_t dim, Sink&& sink) {
  if (!a.is_array()) throw InputError("terms must be an array");
  for (const auto& t : a) {
    const Json& e = field(t, "exp");
    if (!e.is_array() || e.size() != dim) throw InputError("term exponent has the wrong length");
    std::vector<int> ex;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<long>() < 0 || x.get<long>() > static_cast<long>(Monomial::kMaxExponent))
        throw InputError("exponents must be integers in [0, " + std::to_string(Monomial::kMaxExponent) + "]");
      ex.push_back(x.get<int>());
    }
    sink(Monomial(ex), rat_from(field(t, "coeff")));
  }
}

std::vector<SeriesTerm> polynomial_terms(const Polynomial& p) {
  std::vector<SeriesTerm> out;
  for (const auto& [m, c] : p.terms()) out.emplace_back(m.exponents(p.nvars()), c);
  std::sort(out.begin(), out.end(), [](const SeriesTerm& a, const SeriesTerm& b) { return graded_lex_less(a.first, b.first); });
  return out;
}

void expect_kind(const Document& d, const char* kind) {
  if (d.kind != kind) throw InputError("expected a " + std::string(kind) + " document, got " + d.kind);
}

}  // namespace

Json rat_json(const Rat& r) { return format_rat(r); }

Json vec_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json series_terms_json(const TruncSeries& s) { return terms_json(sorted_terms(s)); }

Document parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object()) throw InputError("document must be a JSON object");
  const Json& version = field(j, "version");
  if (!version.is_number_integer() || version.get<int>() != kVersion)
    throw InputError("unsupported document version " + version.dump());
  Document d;
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw InputError("kind must be a string");
  d.kind = kind.get<std::string>();
  if (std::find(std::begin(kKinds), std::end(kKinds), d.kind) == std::end(kKinds))
    throw InputError("unknown document kind '" + d.kind + "'");
  const Json& dim = field(j, "dim");
  if (!dim.is_number_unsigned()) throw InputError("dim must be a nonnegative integer");
  d.dim = dim.get<std::size_t>();
  if (d.dim > Monomial::kMaxVars) throw InputError("dim above " + std::to_string(Monomial::kMaxVars) + " is not supported");
  if (j.contains("Q") && !j.at("Q").is_null()) {
    const Json& q = j.at("Q");
    if (!q.is_array() || q.size() != d.dim) throw InputError("Q must be a dim x dim matrix");
    RatMat m(d.dim, d.dim);
    for (std::size_t r = 0; r < d.dim; ++r) {
      if (!q[r].is_array() || q[r].size() != d.dim) throw InputError("Q must be a dim x dim matrix");
      for (std::size_t c = 0; c < d.dim; ++c) m(r, c) = rat_from(q[r][c]);
    }
    QSpace check(m);
    d.q = m;
  }
  d.payload = field(j, "payload");
  if (!d.payload.is_object()) throw InputError("payload must be an object");
  return d;
}

std::string print(const Document& d) {
  Json j{{"version", kVersion}, {"kind", d.kind}, {"dim", d.dim}, {"payload", d.payload}};
  if (d.q) {
    Json q = Json::array();
    for (std::size_t r = 0; r < d.q->rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < d.q->cols(); ++c) row.push_back(rat_json((*d.q)(r, c)));
      q.push_back(row);
    }
    j["Q"] = q;
  }
  return j.dump(2) + "\n";
}

Document read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

RatMat gram_of(const Document& d) { return d.q ? *d.q : RatMat::identity(d.dim); }

Document cone_document(const Cone& c) {
  Document d{"cone", c.ambient_dim(), {}, Json{{"rays", rays_json(c.rays())}}};
  if (c.space().gram() != RatMat::identity(c.ambient_dim())) d.q = c.space().gram();
  return d;
}

Cone cone_from(const Document& d) {
  expect_kind(d, "cone");
  QSpace space(gram_of(d));
  auto rays = rays_from(array_field(d.payload, "rays"), d.dim);
  rays.erase(std::remove_if(rays.begin(), rays.end(),
                            [](const IntVec& r) { return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; }); }),
             rays.end());
  return rays.empty() ? Cone::zero(space) : Cone(space, rays);
}

Document fan_document(const Fan& f, const RatMat& q) {
  std::vector<std::vector<IntVec>> cones;
  for (auto i : f.maximal()) cones.push_back(f.cones[i].sorted_rays());
  std::sort(cones.begin(), cones.end());
  Json a = Json::array();
  for (const auto& c : cones) a.push_back(rays_json(c));
  Document d{"fan", f.space.dim(), {}, Json{{"complete", f.complete}, {"cones", a}}};
  if (q != RatMat::identity(f.space.dim())) d.q = q;
  return d;
}

Fan fan_from(const Document& d) {
  expect_kind(d, "fan");
  if (d.dim == 0) throw InputError("a fan needs a positive dimension");
  QSpace v(gram_of(d));
  bool complete = true;
  if (d.payload.contains("complete")) {
    if (!d.payload.at("complete").is_boolean()) throw InputError("complete must be a boolean");
    complete = d.payload.at("complete").get<bool>();
  }
  std::vector<Cone> cones;
  for (const auto& c : array_field(d.payload, "cones")) {
    auto rays = rays_from(c, d.dim);
    cones.push_back(rays.empty() ? Cone::zero(v) : Cone(v, rays));
  }
  for (const auto& c : cones)
    if (!c.is_pointed()) throw InputError("fan cone " + cone_label(c) + " is not pointed");
  return fan_with_dual_product(gram_of(d), cones, complete);
}

Document polytope_document(const LatticePolytope& p) {
  Document d{"polytope", p.ambient_dim(), {}, Json{{"vertices", rays_json(p.vertices())}}};
  if (p.space().gram() != RatMat::identity(p.ambient_dim())) d.q = p.space().gram();
  return d;
}

LatticePolytope polytope_from(const Document& d) {
  expect_kind(d, "polytope");
  const Json& verts = array_field(d.payload, "vertices");
  std::vector<IntVec> pts;
  for (const auto& v : verts) {
    if (!v.is_array() || v.size() != d.dim) throw InputError("vertex has the wrong dimension");
    IntVec p;
    for (const auto& x : v) {
      Rat r = rat_from(x);
      if (r.get_den() != 1) throw InputError("non-integral vertex coordinate " + format_rat(r));
      p.push_back(r.get_num());
    }
    pts.push_back(std::move(p));
  }
  return LatticePolytope(QSpace(gram_of(d)), pts);
}

Document polynomial_document(const Polynomial& p) {
  return {"polynomial", p.nvars(), {}, Json{{"terms", terms_json(polynomial_terms(p))}}};
}

Polynomial polynomial_from(const Document& d) {
  expect_kind(d, "polynomial");
  Polynomial p(d.dim);
  read_terms(array_field(d.payload, "terms"), d.dim, [&](Monomial m, const Rat& c) { p.add_term(m, c); });
  return p;
}

Document series_document(const TruncSeries& s, const std::optional<RatMat>& q) {
  return {"series", s.nvars(), q, Json{{"order", s.order()}, {"terms", series_terms_json(s)}}};
}

TruncSeries series_from(const Document& d) {
  expect_kind(d, "series");
  const Json& order = field(d.payload, "order");
  if (!order.is_number_integer() || order.get<int>() < 0) throw InputError("order must be a nonnegative integer");
  TruncSeries s(d.dim, order.get<int>());
  read_terms(array_field(d.payload, "terms"), d.dim, [&](Monomial m, const Rat& c) {
    if (m.degree() > s.order()) throw InputError("series term above the stated order");
    s.add_term(m, c);
  });
  return s;
}

Document todd_document(const ToddExpansion& t, const RatMat& q) {
  std::vector<std::size_t> idx(t.fan.cones.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Cone& x = t.fan.cones[a];
    const Cone& y = t.fan.cones[b];
    if (x.dim() != y.dim()) return x.dim() < y.dim();
    return x.sorted_rays() < y.sorted_rays();
  });
  Json cones = Json::array();
  for (auto i : idx) {
    const Cone& c = t.fan.cones[i];
    cones.push_back(Json{{"rays", rays_json(c.sorted_rays())}, {"dim", c.dim()}, {"terms", series_terms_json(t.coeffs[i])}});
  }
  Document d{"todd-expansion", t.fan.space.dim(), {}, Json{{"order", t.order}, {"cones", cones}}};
  if (q != RatMat::identity(q.rows())) d.q = q;
  return d;
}

}  // namespace eml::doc
