#pragma once

#include "simplexorder/comparisons.hpp"

#include <json.hpp>

#include <variant>

namespace simplexorder {

using ParsedSpec = std::variant<Simplex, GramMatrix>;

// Accepts {"geometry": ..., "vertices": [[...]], "model": "hyperboloid"|"poincare"}
// or {"gram": [[...]]}; throws InputError with a field-path diagnostic.
ParsedSpec parse_simplex_spec(const nlohmann::json& spec, const TolerancePolicy& tol = {});
ParsedSpec parse_simplex_spec(const std::string& text, const TolerancePolicy& tol = {});

nlohmann::json simplex_to_json(const Simplex& s);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
nlohmann::json angles_to_json(const DihedralAngles& a);
nlohmann::json dual_chain_to_json(const DualChain& c);

// Resolves a spec to a simplex, realizing a Gram matrix input if necessary.
Simplex to_simplex(const ParsedSpec& spec, const TolerancePolicy& tol = {});
GramMatrix to_gram(const ParsedSpec& spec, const TolerancePolicy& tol = {});

}  // namespace simplexorder
