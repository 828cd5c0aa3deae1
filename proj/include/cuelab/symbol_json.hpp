#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "cuelab/toeplitz.hpp"

namespace cuelab {

/// Parses a symbol description. Two forms are accepted:
///
///   {"v_coeffs": [{"j": 1, "re": 0.3, "im": 0.0}, ...],
///    "singularities": [{"location": 0.0, "alpha_exp": 0.3,
///                       "beta_jump": {"re": 0.0, "im": -0.25}}, ...]}
///
///   {"sigma": 3, "theta": 0.0, "theta2": 1.5707963, "alpha": 0.6,
///    "beta": 0.0, "k": 0}
///
/// Missing arrays are empty; `beta_jump` may also be a plain number.
SymbolSpec symbol_from_json(const nlohmann::json& j);
nlohmann::json symbol_to_json(const SymbolSpec& spec);

/// Reads "sizes" (array of positive integers) from a symbol document.
std::vector<std::size_t> sizes_from_json(const nlohmann::json& j);

}  // namespace cuelab
