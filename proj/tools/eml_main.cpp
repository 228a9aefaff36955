#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "eml/errors.hpp"

namespace {

using eml::doc::Json;

int fail(const char* kind, const std::string& message, int code) {
  std::cerr << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eml;
  CLI::App app{"Exact local Euler-Maclaurin computations for cones, fans and lattice polytopes", "eml"};
  app.require_subcommand(1);

  cli::Options opt;
  std::string q_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--order", opt.order, "Truncation order of every series")->default_val(6);
    sub->add_option("--Q", q_path, "JSON file with the scalar product matrix");
    sub->add_option("--jobs", opt.jobs, "Worker threads")->default_val(1)->check(CLI::PositiveNumber);
  };

  std::string input, weight_path, suite;
  CLI::App* mu = app.add_subcommand("mu", "Print the germ of a pointed cone");
  mu->add_option("cone", input, "Cone document")->required();
  add_common(mu);

  CLI::App* todd = app.add_subcommand("todd", "Print Todd coefficients of every cone of a complete fan");
  todd->add_option("fan", input, "Fan document")->required();
  add_common(todd);

  CLI::App* count = app.add_subcommand("count", "Weighted lattice-point sum over an integral polytope");
  count->add_option("polytope", input, "Polytope document")->required();
  count->add_option("--weight", weight_path, "Polynomial document (default: 1)");
  count->add_flag("--breakdown", opt.breakdown, "Include per-face contributions");
  add_common(count);

  CLI::App* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(verify::suite_names()));
  verify->add_option("--seed", opt.seed, "Seed for random instances")->default_val(1);
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInputError;
  }

  try {
    if (!q_path.empty()) opt.q = cli::read_q_file(q_path);
    if (*mu) {
      std::cout << doc::print(cli::cmd_mu(doc::read_file(input), opt));
    } else if (*todd) {
      std::cout << doc::print(cli::cmd_todd(doc::read_file(input), opt));
    } else if (*count) {
      std::optional<doc::Document> weight;
      if (!weight_path.empty()) weight = doc::read_file(weight_path);
      std::cout << doc::print(cli::cmd_count(doc::read_file(input), weight, opt));
    } else if (*verify) {
      verify::Report r = cli::cmd_verify(suite, opt);
      std::cout << doc::print(verify::report_document(r));
      std::cerr << "suite " << r.suite << " (seed " << r.seed << ", order " << r.order << "): " << r.instances.size()
                << " instances, " << r.failures() << " failed\n";
      for (const auto& i : r.instances)
        if (!i.pass) std::cerr << "  FAIL " << i.instance << " [" << i.identity << "] " << i.detail << "\n";
      return r.pass() ? cli::kOk : cli::kVerificationFailed;
    }
  } catch (const InputError& e) {
    return fail("input", e.what(), cli::kInputError);
  } catch (const OrderBudgetError& e) {
    return fail("order-budget", e.what(), cli::kInternalError);
  } catch (const InvariantError& e) {
    return fail("invariant", e.what(), cli::kInternalError);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), cli::kInternalError);
  }
  return cli::kOk;
}
