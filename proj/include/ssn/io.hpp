#pragma once

#include <string>

#include "json.hpp"
#include "ssn/beta.hpp"
#include "ssn/model.hpp"

namespace ssn {

using json = nlohmann::json;

/// {"maps": [{"s": "1/3", "t": "0"}, ...], "weights": ["1/2", "1/2"]}.
/// Missing weights mean uniform.
SimilarityIFS ifs_from_json(const json& j);
json ifs_to_json(const SimilarityIFS& ifs);

/// Exact strings throughout; round-trips losslessly.
json model_to_json(const Model& m);
Model model_from_json(const json& j);

/// A string ("golden", "5/2", "x^3 - x^2 - x - 1") or integer coefficients,
/// highest degree first ([1, -1, -1] is x^2 - x - 1).
BetaBase beta_from_json(const json& j);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ssn
