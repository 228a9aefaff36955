#include "eml/todd.hpp"

#include <algorithm>
#include <optional>

#include "eml/errors.hpp"
#include "eml/parallel.hpp"

namespace eml {

namespace {

std::string first_discrepancy(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries d = sub(a, b);
  if (d.is_zero()) return {};
  const auto terms = sorted_terms(d);
  const auto& [e, c] = terms.front();
  std::string where = "[";
  for (std::size_t i = 0; i < e.size(); ++i) where += (i ? "," : "") + std::to_string(e[i]);
  where += "]";
  return "coefficient " + where + " differs: " + format_rat(a.coeff(e)) + " vs " + format_rat(b.coeff(e));
}

bool contained_in(const Cone& small, const Cone& big) {
  for (const auto& r : small.rays())
    if (!big.contains(r)) return false;
  return true;
}

Polynomial linear_poly(const IntVec& v) {
  Polynomial p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) p.add_term(Monomial::variable(i), Rat(v[i]));
  return p;
}

struct SimplicialData {
  Cone dual;
  std::vector<std::size_t> in_sigma;  // indices of σ0's rays lying in σ
};

std::optional<SimplicialData> simplicial_data(const Fan& fan, std::size_t sigma, std::size_t sigma0) {
  const Cone& s0 = fan.cones.at(sigma0);
  const Cone& s = fan.cones.at(sigma);
  if (!s0.is_simplicial() || !s0.is_full_dim()) throw InputError("phi restriction needs a simplicial maximal cone");
  if (!contained_in(s, s0)) return std::nullopt;
  SimplicialData out{dual_simplicial(s0), {}};
  for (std::size_t i = 0; i < s0.num_rays(); ++i)
    for (const auto& r : s.rays())
      if (r == s0.rays()[i]) out.in_sigma.push_back(i);
  if (out.in_sigma.size() != s.num_rays()) throw InputError("cone is not a face of the maximal cone");
  return out;
}

}  // namespace

QSpace dual_space(const Fan& fan) {
  auto inv = inverse(fan.space.gram());
  if (!inv) throw InputError("singular scalar product");
  return QSpace(*inv);
}

Fan fan_with_dual_product(const RatMat& q, const std::vector<Cone>& cones, bool complete) {
  auto inv = inverse(q);
  if (!inv) throw InputError("singular scalar product");
  QSpace g(*inv);
  std::vector<Cone> in_g;
  for (const auto& c : cones) in_g.emplace_back(g, c.rays());
  return fan_closure(g, in_g, complete);
}

std::string cone_label(const Cone& c) {
  std::string s = "[";
  bool first = true;
  for (const auto& r : c.sorted_rays()) {
    s += first ? "(" : ",(";
    first = false;
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i].get_str();
    s += ")";
  }
  return s + "]";
}

ToddExpansion todd_coefficients(const Fan& fan, int m, MuContext& ctx, int jobs) {
  if (!fan.complete) throw InputError("todd coefficients need a complete fan");
  FanDiagnostics diag = fan_validate(fan);
  if (!diag.ok()) {
    std::string msg = "invalid fan:";
    for (const auto& v : diag.violations) msg += " " + v + ";";
    throw InputError(msg);
  }
  const QSpace v = dual_space(fan);
  ToddExpansion out{fan, m, std::vector<TruncSeries>(fan.cones.size(), TruncSeries(fan.space.dim(), m))};
  parallel_for(fan.cones.size(), jobs, [&](std::size_t i) { out.coeffs[i] = ctx.mu_star(fan.cones[i], v, m); });
  return out;
}

TruncSeries simplicial_restriction(const Fan& fan, std::size_t sigma0, int m) {
  const Cone& s0 = fan.cones.at(sigma0);
  if (!s0.is_simplicial() || !s0.is_full_dim()) throw InputError("simplicial_restriction needs a simplicial maximal cone");
  Cone dual(dual_space(fan), dual_simplicial(s0).rays());
  PoleCleared s = s_series_general(dual, m);
  TruncSeries num = s.numerator;
  for (const auto& v : dual.rays()) {
    LinForm neg = linform(v);
    for (auto& c : neg.coeffs) c = -c;
    num = mul_linform(num, neg);
  }
  TruncSeries out = extract_holomorphic(PoleCleared{std::move(num), s.denoms, s.scale}, m);
  out *= Rat(1) / Rat(mult(dual));
  return out;
}

Polynomial phi_restriction(const Fan& fan, std::size_t sigma, std::size_t sigma0) {
  const std::size_t d = fan.space.dim();
  auto data = simplicial_data(fan, sigma, sigma0);
  if (!data) return Polynomial(d);
  std::vector<IntVec> rest;
  Polynomial p = Polynomial::constant(d, 1);
  for (std::size_t j = 0; j < d; ++j) {
    const IntVec& v = data->dual.rays()[j];
    if (std::find(data->in_sigma.begin(), data->in_sigma.end(), j) != data->in_sigma.end())
      p = p * linear_poly(v);
    else
      rest.push_back(v);
  }
  Cone f(fan.space, rest);
  return make_rat(mult(f), mult(data->dual)) * p;
}

Polynomial phi_restriction_direct(const Fan& fan, std::size_t sigma, std::size_t sigma0) {
  const std::size_t d = fan.space.dim();
  auto data = simplicial_data(fan, sigma, sigma0);
  if (!data) return Polynomial(d);
  const Cone& s0 = fan.cones[sigma0];
  Polynomial p = Polynomial::constant(d, Rat(mult(fan.cones[sigma])));
  for (auto j : data->in_sigma) {
    const IntVec& v = data->dual.rays()[j];
    p = make_rat(1, dot(v, s0.rays()[j])) * (p * linear_poly(v));
  }
  return p;
}

CheckResult check_tt_at(const Fan& fan, std::size_t i0, int m, MuContext& ctx) {
  const QSpace v = dual_space(fan);
  CheckResult r{"tt at " + cone_label(fan.cones.at(i0)), false, {}};
  TruncSeries lhs = simplicial_restriction(fan, i0, m);
  TruncSeries rhs(fan.space.dim(), m);
  for (auto j : fan.faces_of(i0)) {
    TruncSeries term = mul(ctx.mu_star(fan.cones[j], v, m), phi_restriction(fan, j, i0).as_series(m));
    if (fan.cones[j].dim() % 2) rhs -= term;
    else rhs += term;
  }
  r.detail = first_discrepancy(lhs, rhs);
  r.pass = r.detail.empty();
  return r;
}

std::vector<CheckResult> check_tt(const Fan& fan, int m, MuContext& ctx) {
  std::vector<CheckResult> out;
  for (auto i0 : fan.maximal()) out.push_back(check_tt_at(fan, i0, m, ctx));
  return out;
}

CheckResult localization_check(const Fan& fan, std::size_t sigma0, int m, MuContext& ctx) {
  const Cone& s0 = fan.cones.at(sigma0);
  CheckResult r{"localization at " + cone_label(s0), false, {}};
  if (!s0.is_full_dim()) throw InputError("localization_check needs a maximal full-dimensional cone");
  const QSpace v = dual_space(fan);
  const std::size_t d = v.dim();
  std::vector<RatVec> gens;
  for (const auto& x : s0.rays()) gens.push_back(to_rat(x));
  Cone dual(v, dual_rays_full_dim(gens, d));

  std::vector<PoleCleared> terms;
  for (auto j : fan.faces_of(sigma0)) {
    const Cone& s = fan.cones[j];
    RayMask mask = 0;
    for (std::size_t k = 0; k < dual.num_rays(); ++k) {
      bool orth = true;
      for (const auto& eta : s.rays()) orth = orth && dot(dual.rays()[k], eta) == 0;
      if (orth) mask |= RayMask{1} << k;
    }
    Cone f = dual.face_cone(mask);
    if (f.dim() != static_cast<int>(d) - s.dim()) throw InvariantError("dual face has the wrong dimension");
    auto t = i_form(f).terms(ctx.mu_star(s, v, m + f.dim()));
    terms.insert(terms.end(), t.begin(), t.end());
  }
  PoleCleared lhs = join_denominators(terms, m + static_cast<int>(dual.num_rays()));
  r.pass = pole_cleared_equal(lhs, s_series_general(dual, m), &r.detail);
  return r;
}

CheckResult danilov_check(const Cone& sigma, const std::vector<Fan>& fans, int m) {
  CheckResult r{"danilov for " + cone_label(sigma), true, {}};
  std::string reference;
  for (std::size_t k = 0; k < fans.size(); ++k) {
    const Fan& fan = fans[k];
    Cone s(fan.space, sigma.rays());
    if (!fan.find(s)) throw InputError("cone " + cone_label(sigma) + " is not in fan " + std::to_string(k));
    MuContext ctx;
    std::string text = format_series(ctx.mu_star(s, dual_space(fan), m));
    if (k == 0) {
      reference = text;
    } else if (text != reference) {
      r.pass = false;
      r.detail = "fan " + std::to_string(k) + " gives " + text + " instead of " + reference;
      break;
    }
  }
  return r;
}

std::vector<CheckResult> refinement_check(const Fan& fan, const Fan& refined, int m, MuContext& ctx) {
  const QSpace v = dual_space(fan);
  std::vector<CheckResult> out;
  for (const auto& s : fan.cones) {
    CheckResult r{"refinement of " + cone_label(s), false, {}};
    TruncSeries whole = ctx.mu_star(s, v, m);
    TruncSeries parts(fan.space.dim(), m);
    int count = 0;
    for (const auto& t : refined.cones)
      if (t.dim() == s.dim() && contained_in(t, s)) {
        parts += ctx.mu_star(t, v, m);
        ++count;
      }
    r.detail = first_discrepancy(whole, parts);
    if (count == 0) r.detail = "no refinement piece of the same dimension";
    r.pass = r.detail.empty();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eml
