#include "imex/convergence_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace imex {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::vector<ConvergenceRow> ConvergenceReport::rows_for(int order) const {
  std::vector<ConvergenceRow> out;
  for (const auto& r : rows)
    if (r.order == order) out.push_back(r);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.k > y.k; });
  return out;
}

const ConvergenceRow* ConvergenceReport::find(int order, double k) const {
  for (const auto& r : rows)
    if (r.order == order && std::abs(r.k - k) <= 1e-12 * k) return &r;
  return nullptr;
}

std::optional<double> ConvergenceReport::fitted_rate(int order, int count) const {
  std::vector<ConvergenceRow> rs;
  for (const auto& r : rows_for(order))
    if (!r.unstable && r.error > 0.0 && std::isfinite(r.error)) rs.push_back(r);
  if (static_cast<int>(rs.size()) < std::max(count, 2)) return std::nullopt;
  rs.erase(rs.begin(), rs.end() - count);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rs) {
    const double x = std::log(r.k), y = std::log(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rs.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void ConvergenceReport::compute_rates(double roundoff_level) {
  std::vector<int> orders;
  for (const auto& r : rows)
    if (std::find(orders.begin(), orders.end(), r.order) == orders.end()) orders.push_back(r.order);
  for (int q : orders) {
    std::vector<ConvergenceRow*> rs;
    for (auto& r : rows)
      if (r.order == q) rs.push_back(&r);
    std::sort(rs.begin(), rs.end(), [](auto* x, auto* y) { return x->k > y->k; });
    for (std::size_t i = 1; i < rs.size(); ++i) {
      auto* prev = rs[i - 1];
      auto* cur = rs[i];
      if (prev->unstable || cur->unstable || !(prev->error > 0.0) || !(cur->error > 0.0)) continue;
      cur->rate = std::log(prev->error / cur->error) / std::log(prev->k / cur->k);
      cur->roundoff = cur->error < roundoff_level && *cur->rate < q - 0.5;
    }
  }
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream out;
  if (!target.empty()) out << "# target: " << target << "\n";
  for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << "\n";
  out << "order,steps,k,error,rate,flag\n";
  for (const auto& r : rows) {
    out << r.order << "," << r.steps << "," << format_double(r.k) << ",";
    if (!r.unstable && std::isfinite(r.error)) out << format_double(r.error);
    out << ",";
    if (r.rate) out << format_double(*r.rate);
    out << "," << (r.unstable ? "unstable" : r.roundoff ? "roundoff" : "") << "\n";
  }
  return out.str();
}

}  // namespace imex
