#pragma once

#include <optional>
#include <string>

#include "document.hpp"
#include "verify.hpp"

namespace eml::cli {

struct Options {
  int order = 6;
  std::optional<RatMat> q;  ///< overrides the document's scalar product
  std::uint64_t seed = 1;
  bool breakdown = false;
  int jobs = 1;
};

/// Reads a scalar product from a JSON file: either a bare matrix or an
/// object with a "Q" field.
RatMat read_q_file(const std::string& path);

doc::Document cmd_mu(const doc::Document& cone, const Options& opt);
doc::Document cmd_todd(const doc::Document& fan, const Options& opt);
doc::Document cmd_count(const doc::Document& polytope, const std::optional<doc::Document>& weight, const Options& opt);
verify::Report cmd_verify(const std::string& suite, const Options& opt);

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kVerificationFailed = 3;
inline constexpr int kInternalError = 4;

}  // namespace eml::cli
