#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "imex/porous.hpp"
#include "imex/spectra.hpp"

namespace imex::cli {

/// Reads a JSON file; throws ConfigError on I/O or syntax errors.
nlohmann::json load_json(const std::string& path);

/// Throws ConfigError if `j` has keys outside `allowed`.
void reject_unknown_keys(const nlohmann::json& j, const std::vector<std::string>& allowed);

/// Common convergence keys: orders, k, N, delta, sigma, t_final.
ConvergenceConfig convergence_config(const nlohmann::json& j, const ConvergenceConfig& defaults);

/// Matrix from nested row arrays; entries are numbers or [re, im].
ComplexMatrix parse_matrix(const nlohmann::json& j, const std::string& name);

/// {"A": ..., "B": ..., "null_basis": ...}; null_basis is optional, given as n x m rows.
SplittingPair parse_pair(const nlohmann::json& j);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace imex::cli
