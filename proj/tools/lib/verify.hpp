#pragma once

// Property suites run by `eml verify`: each checks one family of exact
// identities on the built-in corpus plus seeded random instances.

#include <cstdint>
#include <string>
#include <vector>

#include "document.hpp"

namespace eml::verify {

struct Instance {
  std::string instance;
  std::string identity;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  int order = 0;
  std::vector<Instance> instances;

  bool pass() const;
  std::size_t failures() const;
};

const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown suite.
Report run_suite(const std::string& suite, std::uint64_t seed, int order, int jobs = 1);

doc::Document report_document(const Report& r);

}  // namespace eml::verify
