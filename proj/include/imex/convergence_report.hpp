#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace imex {

struct ConvergenceRow {
  int order = 0;
  long steps = 0;
  double k = 0.0;
  double error = std::numeric_limits<double>::quiet_NaN();  ///< NaN when not available
  std::optional<double> rate;
  bool unstable = false;
  bool roundoff = false;  ///< rate computed where error sits at the round-off plateau
};

struct ConvergenceReport {
  std::string target;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ConvergenceRow> rows;
  double wall_seconds = 0.0;

  std::vector<ConvergenceRow> rows_for(int order) const;
  const ConvergenceRow* find(int order, double k) const;

  /// Least-squares slope of log(error) against log(k) over the `count`
  /// smallest stable k for the given order.
  std::optional<double> fitted_rate(int order, int count) const;

  /// Fills rate/roundoff for consecutive k of each order.
  void compute_rates(double roundoff_level = 1e-7);

  /// '#'-prefixed metadata lines, then order,steps,k,error,rate,flag.
  /// Wall time is not written so identical inputs give identical bytes.
  std::string to_csv() const;
};

std::string format_double(double x);

}  // namespace imex
