#pragma once

#include <string>

#include <json.hpp>

#include "subgeo/core.hpp"

namespace subgeo {

// File format: {"field": "real"|"complex", "ambient": n,
//               "vectors": [[x, ...], ...]} where each inner array is one
// spanning vector of length n. Complex entries are [re, im] pairs (bare
// numbers also accepted with imaginary part zero); real files take bare
// numbers only. Entries must be finite.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Subspace subspace_from_json(const nlohmann::json& j, const Tolerances& tol = {});
Subspace read_subspace_file(const std::string& path, const Tolerances& tol = {});

// Serializes the orthonormal basis as the spanning vectors, so a round trip
// reproduces the span.
nlohmann::json subspace_to_json(const Subspace& s);
void write_subspace_file(const std::string& path, const Subspace& s);

}  // namespace subgeo
