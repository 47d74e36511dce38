#include "config.hpp"

#include <fstream>
#include <sstream>

#include "imex/errors.hpp"

namespace imex::cli {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ConfigError("unknown configuration key '" + item.key() + "'");
  }
}

namespace {

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("configuration key '") + key + "' has the wrong type");
  }
}

std::complex<double> parse_entry(const json& e, const std::string& name) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ConfigError("matrix " + name + ": entries must be numbers or [re, im] pairs");
}

}  // namespace

ConvergenceConfig convergence_config(const json& j, const ConvergenceConfig& defaults) {
  ConvergenceConfig c = defaults;
  c.orders = get<std::vector<int>>(j, "orders", c.orders);
  if (j.contains("k")) {
    const auto& k = j.at("k");
    if (k.is_string()) c.ks = parse_k_ladder(k.get<std::string>());
    else if (k.is_array()) c.ks = get<std::vector<double>>(j, "k", {});
    else throw ConfigError("configuration key 'k' must be a ladder string or a number list");
  }
  c.n = get<int>(j, "N", c.n);
  c.delta = get<double>(j, "delta", c.delta);
  c.sigma = get<double>(j, "sigma", c.sigma);
  c.t_final = get<double>(j, "t_final", c.t_final);
  if (c.ks.empty()) throw ConfigError("no time steps given");
  if (c.orders.empty()) throw ConfigError("no orders given");
  for (double k : c.ks)
    if (!(k > 0.0)) throw ConfigError("time steps must be positive");
  return c;
}

ComplexMatrix parse_matrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix " + name + " must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ConfigError("matrix " + name + ": rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ConfigError("matrix " + name + ": ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_entry(row[c], name);
  }
  return m;
}

SplittingPair parse_pair(const json& j) {
  reject_unknown_keys(j, {"A", "B", "null_basis"});
  if (!j.contains("A") || !j.contains("B")) throw ConfigError("pair file needs matrices A and B");
  SplittingPair s{parse_matrix(j.at("A"), "A"), parse_matrix(j.at("B"), "B"), std::nullopt};
  if (j.contains("null_basis")) s.null_basis = parse_matrix(j.at("null_basis"), "null_basis");
  return s;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw ConfigError("bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      throw ConfigError("bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw ConfigError("bad number '" + item + "'");
    } catch (const std::logic_error&) {
      throw ConfigError("bad number '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

}  // namespace imex::cli
