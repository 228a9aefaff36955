#pragma once

// Versioned JSON documents for cones, fans, polytopes, polynomials, series,
// Todd expansions and reports. Numbers are written as decimal or "a/b"
// strings; series and polynomial terms appear in graded-lex order.

#include <optional>
#include <string>

#include "json.hpp"

#include "eml/cones.hpp"
#include "eml/polyeml.hpp"
#include "eml/series.hpp"
#include "eml/todd.hpp"

namespace eml::doc {

using Json = nlohmann::json;

inline constexpr int kVersion = 1;

struct Document {
  std::string kind;
  std::size_t dim = 0;
  std::optional<RatMat> q;
  Json payload = Json::object();

  friend bool operator==(const Document&, const Document&) = default;
};

/// Throws InputError on malformed text or a missing/unknown field.
Document parse(const std::string& text);
std::string print(const Document& d);
Document read_file(const std::string& path);

/// The scalar product of the document, identity when absent.
RatMat gram_of(const Document& d);

Document cone_document(const Cone& c);
/// The cone lives in V with the document's scalar product.
Cone cone_from(const Document& d);

/// Maximal cones only; Q is the scalar product on the dual space g*.
Document fan_document(const Fan& f, const RatMat& q);
Fan fan_from(const Document& d);

Document polytope_document(const LatticePolytope& p);
LatticePolytope polytope_from(const Document& d);

Document polynomial_document(const Polynomial& p);
Polynomial polynomial_from(const Document& d);

Document series_document(const TruncSeries& s, const std::optional<RatMat>& q = {});
TruncSeries series_from(const Document& d);

Document todd_document(const ToddExpansion& t, const RatMat& q);

Json rat_json(const Rat& r);
Json vec_json(const IntVec& v);
Json series_terms_json(const TruncSeries& s);

}  // namespace eml::doc
