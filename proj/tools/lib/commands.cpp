#include "commands.hpp"

#include <fstream>
#include <sstream>

#include "eml/errors.hpp"

namespace eml::cli {

namespace {

doc::Document with_q(doc::Document d, const Options& opt) {
  if (opt.q) {
    if (opt.q->rows() != d.dim) throw InputError("--Q has the wrong size for this document");
    d.q = *opt.q;
  }
  return d;
}

void check_order(const Options& opt) {
  if (opt.order < 0) throw InputError("--order must be nonnegative");
}

}  // namespace

RatMat read_q_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  doc::Json j;
  try {
    j = doc::Json::parse(ss.str());
  } catch (const doc::Json::exception& e) {
    throw InputError(std::string("malformed Q file: ") + e.what());
  }
  if (j.is_object() && j.contains("Q")) j = j.at("Q");
  if (!j.is_array() || j.empty()) throw InputError("Q must be a nonempty square matrix");
  const std::size_t n = j.size();
  RatMat q(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw InputError("Q must be a square matrix");
    for (std::size_t c = 0; c < n; ++c) {
      const auto& x = j[r][c];
      if (x.is_string()) q(r, c) = parse_rat(x.get<std::string>());
      else if (x.is_number_integer()) q(r, c) = Rat(Int(x.dump()));
      else throw InputError("Q entries must be integers or rational strings");
    }
  }
  QSpace check(q);
  return q;
}

doc::Document cmd_mu(const doc::Document& cone, const Options& opt) {
  check_order(opt);
  doc::Document d = with_q(cone, opt);
  Cone c = doc::cone_from(d);
  if (!c.is_pointed()) throw InputError("mu needs a pointed cone; " + cone_label(c) + " contains a line");
  MuContext ctx;
  return doc::series_document(ctx.mu(c, opt.order), d.q);
}

doc::Document cmd_todd(const doc::Document& fan, const Options& opt) {
  check_order(opt);
  doc::Document d = with_q(fan, opt);
  Fan f = doc::fan_from(d);
  MuContext ctx;
  return doc::todd_document(todd_coefficients(f, opt.order, ctx, opt.jobs), doc::gram_of(d));
}

doc::Document cmd_count(const doc::Document& polytope, const std::optional<doc::Document>& weight, const Options& opt) {
  doc::Document d = with_q(polytope, opt);
  LatticePolytope p = doc::polytope_from(d);
  Polynomial h = weight ? doc::polynomial_from(*weight) : Polynomial::constant(p.ambient_dim(), 1);
  if (h.nvars() != p.ambient_dim()) throw InputError("weight and polytope dimensions differ");
  MuContext ctx;
  LatticeSum sum = lattice_sum(p, h, ctx, opt.jobs);
  doc::Json payload{{"command", "count"}, {"total", doc::rat_json(sum.total)}};
  if (opt.breakdown) {
    doc::Json faces = doc::Json::array();
    for (const auto& f : sum.faces) {
      doc::Json verts = doc::Json::array();
      for (const auto& v : f.vertices) verts.push_back(doc::vec_json(v));
      faces.push_back(doc::Json{{"face", f.face},
                                {"dim", f.dim},
                                {"x0", doc::vec_json(f.x0)},
                                {"vertices", verts},
                                {"symbol", doc::series_terms_json(f.symbol)},
                                {"applied", doc::series_terms_json(f.applied.as_series(std::max(f.applied.degree(), 0)))},
                                {"integral", doc::rat_json(f.integral)}});
    }
    payload["breakdown"] = faces;
  }
  return {"report", p.ambient_dim(), d.q, payload};
}

verify::Report cmd_verify(const std::string& suite, const Options& opt) {
  check_order(opt);
  return verify::run_suite(suite, opt.seed, opt.order, opt.jobs);
}

}  // namespace eml::cli
