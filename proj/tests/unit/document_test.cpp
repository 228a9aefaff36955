#include <gtest/gtest.h>

#include "commands.hpp"
#include "eml/corpus.hpp"
#include "eml/errors.hpp"
#include "oracles.hpp"

using namespace eml;
using Rays = std::vector<IntVec>;

namespace {

doc::Document data(const std::string& name) { return doc::read_file(std::string(EML_TEST_DATA) + "/" + name); }

void expect_round_trip(const doc::Document& d) {
  const std::string text = doc::print(d);
  doc::Document back = doc::parse(text);
  EXPECT_EQ(back, d) << text;
  EXPECT_EQ(doc::print(back), text);
}

}  // namespace

TEST(Document, RoundTripAllKinds) {
  QSpace s2 = QSpace::standard(2);
  QSpace skew(RatMat{{2, 1}, {1, 3}});
  expect_round_trip(doc::cone_document(Cone(s2, Rays{{1, 0}, {1, 2}})));
  expect_round_trip(doc::cone_document(Cone(skew, Rays{{1, 0}, {1, 2}})));
  expect_round_trip(doc::cone_document(Cone::zero(s2)));
  expect_round_trip(doc::fan_document(corpus::p2(), RatMat::identity(2)));
  expect_round_trip(doc::fan_document(corpus::cube_fan(), RatMat{{2, 1, 0}, {1, 2, 0}, {0, 0, 1}}));
  expect_round_trip(doc::polytope_document(LatticePolytope(s2, Rays{{0, 0}, {3, 0}, {0, 2}})));

  corpus::Rng rng(5);
  Polynomial h = corpus::random_polynomial(rng, 3, 3);
  expect_round_trip(doc::polynomial_document(h));
  EXPECT_EQ(doc::polynomial_from(doc::parse(doc::print(doc::polynomial_document(h)))), h);

  MuContext ctx;
  TruncSeries mu = ctx.mu(Cone(s2, Rays{{1, 0}, {1, 2}}), 5);
  expect_round_trip(doc::series_document(mu));
  EXPECT_EQ(doc::series_from(doc::parse(doc::print(doc::series_document(mu)))), mu);

  expect_round_trip(doc::todd_document(todd_coefficients(corpus::p1xp1(), 3, ctx), RatMat::identity(2)));
  expect_round_trip(verify::report_document(verify::run_suite("eml1d", 2, 3, 1)));
}

TEST(Document, ObjectsSurviveRoundTrip) {
  QSpace skew(RatMat{{2, 1}, {1, 3}});
  Cone c(skew, Rays{{2, 0}, {1, 2}});
  Cone back = doc::cone_from(doc::parse(doc::print(doc::cone_document(c))));
  EXPECT_TRUE(same_cone(back, c));
  EXPECT_EQ(back.space().gram(), skew.gram());

  Fan f = corpus::weighted_plane();
  Fan g = doc::fan_from(doc::parse(doc::print(doc::fan_document(f, RatMat::identity(2)))));
  EXPECT_EQ(g.cones.size(), f.cones.size());
}

TEST(Document, RejectsMalformedInput) {
  EXPECT_THROW(doc::parse("{"), InputError);
  EXPECT_THROW(doc::parse("[]"), InputError);
  EXPECT_THROW(doc::parse(R"({"version":2,"kind":"cone","dim":1,"payload":{}})"), InputError);
  EXPECT_THROW(doc::parse(R"({"version":1,"kind":"shape","dim":1,"payload":{}})"), InputError);
  EXPECT_THROW(doc::parse(R"({"version":1,"kind":"cone","dim":9,"payload":{}})"), InputError);
  EXPECT_THROW(doc::parse(R"({"version":1,"kind":"cone","dim":2,"Q":[["1","2"],["2","1"]],"payload":{}})"), InputError);
  EXPECT_THROW(doc::cone_from(doc::parse(R"({"version":1,"kind":"cone","dim":2,"payload":{"rays":[["1"]]}})")), InputError);
  EXPECT_THROW(doc::cone_from(doc::parse(R"({"version":1,"kind":"cone","dim":1,"payload":{"rays":[["x"]]}})")), InputError);
  EXPECT_THROW(doc::series_from(doc::parse(R"({"version":1,"kind":"cone","dim":1,"payload":{}})")), InputError);
  EXPECT_THROW(doc::polynomial_from(doc::parse(R"({"version":1,"kind":"polynomial","dim":1,"payload":{"terms":[{"exp":[300],"coeff":"1"}]}})")),
               InputError);
  EXPECT_THROW(data("malformed.json"), InputError);
}

TEST(CmdMu, HalfLineMatchesBernoulli) {
  cli::Options opt;
  opt.order = 4;
  TruncSeries s = doc::series_from(cli::cmd_mu(data("rplus.json"), opt));
  auto expected = oracle::half_line_series(4);
  ASSERT_EQ(s.order(), 4);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(s.coeff(std::vector<int>{k}), expected[k]) << "k=" << k;
  EXPECT_EQ(s.coeff(std::vector<int>{0}), Rat(1, 2));
}

TEST(CmdMu, ZeroConeAndOrthant) {
  cli::Options opt;
  EXPECT_EQ(doc::series_from(cli::cmd_mu(data("zero_cone.json"), opt)), TruncSeries::constant(2, 6, 1));

  TruncSeries o = doc::series_from(cli::cmd_mu(data("orthant.json"), opt));
  auto h = oracle::half_line_series(6);
  EXPECT_EQ(o.coeff(std::vector<int>{0, 0}), Rat(1, 4));
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b) EXPECT_EQ(o.coeff(std::vector<int>{a, b}), h[a] * h[b]) << a << "," << b;
}

TEST(CmdMu, RejectsNonPointedAndBadQ) {
  cli::Options opt;
  EXPECT_THROW(cli::cmd_mu(data("halfplane.json"), opt), InputError);
  opt.q = RatMat::identity(3);
  EXPECT_THROW(cli::cmd_mu(data("orthant.json"), opt), InputError);
  opt.q.reset();
  opt.order = -1;
  EXPECT_THROW(cli::cmd_mu(data("orthant.json"), opt), InputError);
}

TEST(CmdMu, ScalarProductOverride) {
  cli::Options opt;
  opt.q = cli::read_q_file(std::string(EML_TEST_DATA) + "/q_skew.json");
  doc::Document d = cli::cmd_mu(data("orthant.json"), opt);
  ASSERT_TRUE(d.q.has_value());
  MuContext ctx;
  QSpace skew(*opt.q);
  EXPECT_EQ(doc::series_from(d), ctx.mu(Cone(skew, Rays{{1, 0}, {0, 1}}), 6));
  EXPECT_NE(doc::series_from(d), doc::series_from(cli::cmd_mu(data("orthant.json"), cli::Options{})));
}

TEST(CmdTodd, ConeCounts) {
  cli::Options opt;
  opt.order = 3;
  EXPECT_EQ(cli::cmd_todd(data("p1.json"), opt).payload.at("cones").size(), 3u);
  EXPECT_EQ(cli::cmd_todd(data("p2.json"), opt).payload.at("cones").size(), 7u);
  doc::Document cube = doc::fan_document(corpus::cube_fan(), RatMat::identity(3));
  EXPECT_EQ(cli::cmd_todd(cube, opt).payload.at("cones").size(), 27u);
  EXPECT_THROW(cli::cmd_todd(data("incomplete_fan.json"), opt), InputError);
}

TEST(CmdTodd, OutputIsDeterministic) {
  cli::Options serial;
  cli::Options parallel;
  parallel.jobs = 4;
  doc::Document cube = doc::fan_document(corpus::cube_fan(), RatMat::identity(3));
  const std::string a = doc::print(cli::cmd_todd(cube, serial));
  EXPECT_EQ(a, doc::print(cli::cmd_todd(cube, parallel)));
  EXPECT_EQ(a, doc::print(cli::cmd_todd(cube, serial)));
}

TEST(CmdCount, Examples) {
  cli::Options opt;
  int triangle = 0;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y) triangle += x >= 0 && y >= 0 && x + y <= 1;
  int squares = 0;
  for (int k = 0; k <= 10; ++k) squares += k * k;

  EXPECT_EQ(cli::cmd_count(data("unit_triangle.json"), {}, opt).payload.at("total"), std::to_string(triangle));
  EXPECT_EQ(cli::cmd_count(data("unit_cube.json"), {}, opt).payload.at("total"), "8");
  EXPECT_EQ(cli::cmd_count(data("interval10.json"), data("x_squared.json"), opt).payload.at("total"), std::to_string(squares));
  EXPECT_THROW(cli::cmd_count(data("nonintegral.json"), {}, opt), InputError);
  EXPECT_THROW(cli::cmd_count(data("unit_triangle.json"), data("x_squared.json"), opt), InputError);
}

TEST(CmdCount, BreakdownSumsToTotal) {
  cli::Options opt;
  opt.breakdown = true;
  doc::Document r = cli::cmd_count(data("unit_cube.json"), {}, opt);
  const auto& faces = r.payload.at("breakdown");
  EXPECT_EQ(faces.size(), 27u);
  Rat sum = 0;
  for (const auto& f : faces) sum += parse_rat(f.at("integral").get<std::string>());
  EXPECT_EQ(format_rat(sum), r.payload.at("total").get<std::string>());
}

TEST(CmdVerify, SeededReportsAreReproducible) {
  cli::Options opt;
  opt.seed = 7;
  verify::Report a = cli::cmd_verify("valuation", opt);
  EXPECT_TRUE(a.pass());
  EXPECT_EQ(a.instances.size(), 12u);
  opt.jobs = 3;
  EXPECT_EQ(doc::print(verify::report_document(a)), doc::print(verify::report_document(cli::cmd_verify("valuation", opt))));

  opt.seed = 3;
  verify::Report o = cli::cmd_verify("oracle", opt);
  EXPECT_TRUE(o.pass());
  EXPECT_EQ(o.instances.size(), 34u);
  EXPECT_THROW(cli::cmd_verify("nonsense", opt), InputError);
}
