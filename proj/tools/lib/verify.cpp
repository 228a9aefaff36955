#include "verify.hpp"

#include <algorithm>
#include <functional>

#include "eml/corpus.hpp"
#include "eml/errors.hpp"
#include "eml/parallel.hpp"

namespace eml::verify {

namespace {

using Task = std::function<Instance()>;
using Rays = std::vector<IntVec>;

Instance from_check(const CheckResult& r, const std::string& identity) { return {r.instance, identity, r.pass, r.detail}; }

Instance compare(std::string instance, std::string identity, const TruncSeries& a, const TruncSeries& b) {
  Instance out{std::move(instance), std::move(identity), a == b, {}};
  if (out.pass) return out;
  if (a.nvars() != b.nvars() || a.order() != b.order()) {
    out.detail = "shapes differ: order " + std::to_string(a.order()) + " vs " + std::to_string(b.order());
    return out;
  }
  auto diff = sorted_terms(sub(a, b));
  const auto& e = diff.front().first;
  std::string exp = "[";
  for (std::size_t i = 0; i < e.size(); ++i) exp += (i ? "," : "") + std::to_string(e[i]);
  exp += "]";
  const Monomial mono(e);
  out.detail = "first failing coefficient " + exp + ": " + format_rat(a.coeff(mono)) + " vs " + format_rat(b.coeff(mono));
  return out;
}

Instance compare(std::string instance, std::string identity, const Rat& a, const Rat& b) {
  Instance out{std::move(instance), std::move(identity), a == b, {}};
  if (!out.pass) out.detail = format_rat(a) + " vs " + format_rat(b);
  return out;
}

std::string points_label(const Rays& pts) {
  std::string s = "conv{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s += i ? ",(" : "(";
    for (std::size_t k = 0; k < pts[i].size(); ++k) s += (k ? "," : "") + pts[i][k].get_str();
    s += ")";
  }
  return s + "}";
}

std::vector<Task> valuation_tasks(corpus::Rng& rng, int m, MuContext& ctx) {
  std::vector<Task> tasks;
  tasks.push_back([m, &ctx] {
    QSpace s = QSpace::standard(1);
    TruncSeries sum = add(ctx.mu_star(Cone(s, Rays{{1}}), s, m), ctx.mu_star(Cone(s, Rays{{-1}}), s, m));
    TruncSeries line = ctx.mu_star(Cone(s, Rays{{1}, {-1}}), s, m);
    Instance a = compare("line R = R+ u R-", "mu*(R+) + mu*(R-) = 1", sum, TruncSeries::constant(1, m, 1));
    Instance b = compare("line R = R+ u R-", "mu*(R) = 1", line, TruncSeries::constant(1, m, 1));
    if (!b.pass) return b;
    return a;
  });
  for (int i = 0; i < 10; ++i) {
    corpus::ConeSplit split = corpus::random_plane_split(rng);
    const RatMat q = i % 2 ? RatMat{{2, 1}, {1, 3}} : RatMat::identity(2);
    tasks.push_back([split, q, m, &ctx] {
      QSpace v(q);
      TruncSeries whole = ctx.mu_star(split.whole, v, m);
      TruncSeries parts = add(ctx.mu_star(split.left, v, m), ctx.mu_star(split.right, v, m));
      return compare(cone_label(split.whole) + " split at " + cone_label(split.left), "mu*(whole) = sum of pieces", whole, parts);
    });
  }
  tasks.push_back([m, &ctx] {
    QSpace s = QSpace::standard(3);
    Cone whole(s, Rays{{1, 1, 1}, {1, -1, 1}, {-1, -1, 1}, {-1, 1, 1}});
    Cone a(s, Rays{{1, 1, 1}, {1, -1, 1}, {-1, -1, 1}});
    Cone b(s, Rays{{1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}});
    return compare("cone over a square", "mu*(whole) = sum of pieces", ctx.mu_star(whole, s, m),
                   add(ctx.mu_star(a, s, m), ctx.mu_star(b, s, m)));
  });
  return tasks;
}

std::vector<Task> stokes_tasks(corpus::Rng& rng, int m) {
  std::vector<Task> tasks;
  for (const auto& c : corpus::stokes_cones())
    for (int k = 0; k < 5; ++k) {
      IntVec v;
      do v = corpus::random_vector(rng, c.ambient_dim(), 3);
      while (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; }));
      tasks.push_back([c, v, m] {
        Instance out{cone_label(c) + " v=" + cone_label(Cone(c.space(), Rays{v})), "-<v,xi> I(c) = sum <v,n> I(facet)", false, {}};
        out.pass = stokes_identity(c, v, m, &out.detail);
        return out;
      });
    }
  return tasks;
}

std::vector<Task> tt_tasks(corpus::Rng& rng, int m, MuContext& ctx) {
  std::vector<corpus::NamedFan> fans = corpus::simplicial_fans();
  for (int i = 0; i < 10; ++i) fans.push_back({"random plane fan " + std::to_string(i), corpus::random_plane_fan(rng)});
  std::vector<Task> tasks;
  for (const auto& nf : fans)
    for (auto i0 : nf.fan.maximal())
      tasks.push_back([nf, i0, m, &ctx] {
        CheckResult r = check_tt_at(nf.fan, i0, m, ctx);
        r.instance = nf.name + " " + r.instance;
        return from_check(r, "simplicial Todd expansion");
      });
  return tasks;
}

std::vector<Task> localization_tasks(corpus::Rng& rng, int m, MuContext& ctx) {
  std::vector<corpus::NamedFan> fans = corpus::named_fans();
  for (int i = 0; i < 3; ++i) fans.push_back({"random plane fan " + std::to_string(i), corpus::random_plane_fan(rng)});
  std::vector<Task> tasks;
  for (const auto& nf : fans)
    for (auto i0 : nf.fan.maximal())
      tasks.push_back([nf, i0, m, &ctx] {
        CheckResult r = localization_check(nf.fan, i0, m, ctx);
        r.instance = nf.name + " " + r.instance;
        return from_check(r, "sum mu*(s) I(dual face) = S(dual cone)");
      });
  return tasks;
}

std::vector<Task> danilov_tasks(int m, MuContext& ctx) {
  std::vector<Task> tasks;
  const QSpace s2 = QSpace::standard(2);
  tasks.push_back([m, s2] { return from_check(danilov_check(Cone(s2, Rays{{1, 0}}), {corpus::p2(), corpus::p1xp1()}, m), "fan independence"); });
  tasks.push_back([m, s2] {
    return from_check(danilov_check(Cone::zero(s2), {corpus::p2(), corpus::p1xp1(), corpus::weighted_plane()}, m), "fan independence");
  });
  tasks.push_back([m, s2] {
    Fan p2 = corpus::p2();
    Fan refined = fan_closure(s2,
                              {Cone(s2, Rays{{1, 0}, {1, 1}}), Cone(s2, Rays{{1, 1}, {0, 1}}), Cone(s2, Rays{{0, 1}, {-1, -1}}),
                               Cone(s2, Rays{{-1, -1}, {1, 0}})},
                              true);
    return from_check(danilov_check(Cone(s2, Rays{{0, 1}, {-1, -1}}), {p2, refined}, m), "fan independence under refinement");
  });
  Fan cube = corpus::cube_fan();
  Fan refined = pulling_refinement(cube);
  for (std::size_t i = 0; i < cube.cones.size(); ++i)
    tasks.push_back([cube, refined, i, m, &ctx] {
      Fan single{cube.space, {cube.cones[i]}, false};
      auto r = refinement_check(single, refined, m, ctx).front();
      return from_check(r, "mu*(s) = sum over same-dimension refinement pieces");
    });
  return tasks;
}

std::vector<Task> oracle_tasks(corpus::Rng& rng, MuContext& ctx) {
  std::vector<Task> tasks;
  for (int i = 0; i < 30; ++i) {
    const std::size_t d = 1 + static_cast<std::size_t>(i % 3);
    Rays pts = corpus::random_polytope_points(rng, d);
    Polynomial h = corpus::random_polynomial(rng, d, 3);
    tasks.push_back([pts, h, &ctx] {
      LatticePolytope p(QSpace::standard(pts.front().size()), pts);
      return compare(points_label(p.vertices()), "face expansion = enumeration", lattice_sum(p, h, ctx).total, brute_force_sum(p, h));
    });
  }
  for (int k = 1; k <= 4; ++k)
    tasks.push_back([k, &ctx] {
      LatticePolytope p(QSpace::standard(2), Rays{{0, 0}, {k, 0}, {0, k}, {k, k}});
      Polynomial one = Polynomial::constant(2, 1);
      Rat sum = lattice_sum(p, one, ctx).total;
      Instance out = compare(std::to_string(k) + " x unit square", "face expansion = enumeration", sum, brute_force_sum(p, one));
      if (out.pass) out = compare(std::to_string(k) + " x unit square", "count = (k+1)^2", sum, Rat((k + 1) * (k + 1)));
      return out;
    });
  return tasks;
}

std::vector<Task> eml1d_tasks(corpus::Rng& rng, MuContext& ctx) {
  std::vector<Task> tasks;
  for (int i = 0; i < 20; ++i) {
    IntVec ends = corpus::random_vector(rng, 2, 6);
    if (ends[0] > ends[1]) std::swap(ends[0], ends[1]);
    Polynomial h = corpus::random_polynomial(rng, 1, 5);
    tasks.push_back([ends, h, &ctx] {
      LatticePolytope p(QSpace::standard(1), Rays{{ends[0]}, {ends[1]}});
      const std::string name = "[" + ends[0].get_str() + "," + ends[1].get_str() + "]";
      Rat classical = euler_maclaurin_1d(ends[0], ends[1], h).total;
      Instance out = compare(name, "face expansion = classical formula", lattice_sum(p, h, ctx).total, classical);
      if (out.pass) out = compare(name, "classical formula = enumeration", classical, brute_force_sum(p, h));
      return out;
    });
  }
  return tasks;
}

}  // namespace

bool Report::pass() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& i : instances) n += !i.pass;
  return n;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"valuation", "stokes", "tt", "localization", "danilov", "oracle", "eml1d"};
  return names;
}

Report run_suite(const std::string& suite, std::uint64_t seed, int order, int jobs) {
  if (order < 0) throw InputError("order must be nonnegative");
  corpus::Rng rng(seed);
  MuContext ctx;
  std::vector<Task> tasks;
  if (suite == "valuation") tasks = valuation_tasks(rng, order, ctx);
  else if (suite == "stokes") tasks = stokes_tasks(rng, order);
  else if (suite == "tt") tasks = tt_tasks(rng, order, ctx);
  else if (suite == "localization") tasks = localization_tasks(rng, order, ctx);
  else if (suite == "danilov") tasks = danilov_tasks(order, ctx);
  else if (suite == "oracle") tasks = oracle_tasks(rng, ctx);
  else if (suite == "eml1d") tasks = eml1d_tasks(rng, ctx);
  else throw InputError("unknown suite '" + suite + "'");

  Report r{suite, seed, order, std::vector<Instance>(tasks.size())};
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    try {
      r.instances[i] = tasks[i]();
    } catch (const InvariantError& e) {
      r.instances[i] = {"task " + std::to_string(i), suite, false, std::string("invariant breach: ") + e.what()};
    }
  });
  return r;
}

doc::Document report_document(const Report& r) {
  doc::Json items = doc::Json::array();
  for (const auto& i : r.instances)
    items.push_back(doc::Json{{"instance", i.instance}, {"identity", i.identity}, {"pass", i.pass}, {"detail", i.detail}});
  return {"report", 0, {},
          doc::Json{{"suite", r.suite},
                    {"seed", std::to_string(r.seed)},
                    {"order", r.order},
                    {"pass", r.pass()},
                    {"failures", r.failures()},
                    {"instances", items}}};
}

}  // namespace eml::verify
