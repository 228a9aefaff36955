#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::string& args) {
  static int calls = 0;
  const std::string err_path =
      ::testing::TempDir() + "eml_cli_" + std::to_string(getpid()) + "_" + std::to_string(calls++) + ".txt";
  const std::string cmd = std::string(EML_BINARY) + " " + args + " 2>" + err_path;
  FILE* p = popen(cmd.c_str(), "r");
  Result r{-1, {}, {}};
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  std::remove(err_path.c_str());
  return r;
}

std::string data(const std::string& name) { return std::string(EML_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Cli, MuPrintsSeriesDocument) {
  Result r = run("mu " + data("rplus.json") + " --order 4");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("kind"), "series");
  EXPECT_EQ(j.at("payload").at("order"), 4);
  EXPECT_EQ(j.at("payload").at("terms").at(0).at("coeff"), "1/2");
  EXPECT_EQ(run("mu " + data("rplus.json") + " --order 4").out, r.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("mu " + data("malformed.json")).code, 2);
  EXPECT_EQ(run("mu " + data("does_not_exist.json")).code, 2);
  EXPECT_EQ(run("count " + data("nonintegral.json")).code, 2);
  EXPECT_EQ(run("todd " + data("incomplete_fan.json")).code, 2);
  EXPECT_EQ(run("mu").code, 2);
  EXPECT_EQ(run("verify nonsense").code, 2);
  EXPECT_EQ(run("mu " + data("orthant.json") + " --order -3").code, 2);
  EXPECT_EQ(run("verify eml1d --seed 4 --order 3").code, 0);
}

TEST(Cli, ErrorsAreStructured) {
  Result r = run("mu " + data("halfplane.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j.at("error").at("kind"), "input");
  EXPECT_FALSE(j.at("error").at("message").template get<std::string>().empty());
}

TEST(Cli, CountAndTodd) {
  Result c = run("count " + data("interval10.json") + " --weight " + data("x_squared.json"));
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(nlohmann::json::parse(c.out).at("payload").at("total"), "385");

  Result b = run("count " + data("unit_triangle.json") + " --breakdown");
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(nlohmann::json::parse(b.out).at("payload").at("breakdown").size(), 7u);

  Result t = run("todd " + data("p2.json") + " --order 2 --jobs 2");
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(nlohmann::json::parse(t.out).at("kind"), "todd-expansion");
  EXPECT_EQ(nlohmann::json::parse(t.out).at("payload").at("cones").size(), 7u);
}

TEST(Cli, VerifyWritesReportAndSummary) {
  Result r = run("verify tt --seed 7 --order 3");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("kind"), "report");
  EXPECT_EQ(j.at("payload").at("pass"), true);
  EXPECT_EQ(j.at("payload").at("seed"), "7");
  EXPECT_NE(r.err.find("0 failed"), std::string::npos);
}
