#pragma once

#include <Eigen/Dense>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "imex/coeffs.hpp"

namespace imex {

using Vector = Eigen::VectorXd;

/// Linear implicit part A, explicit part B (+ forcing), and the shifted
/// solve (alpha I - beta A) x = rhs used by the stepper.
class SplitOperator {
 public:
  virtual ~SplitOperator() = default;
  virtual Eigen::Index dim() const = 0;
  virtual Vector apply_implicit(const Vector& u) const = 0;
  /// B(u) + f(t); B may be nonlinear.
  virtual Vector apply_explicit(const Vector& u, double t) const = 0;
  virtual Vector solve_shifted(double alpha, double beta, const Vector& rhs) const = 0;
};

struct HistoryEntry {
  double t = 0.0;
  Vector u;
  Vector implicit_term;  ///< A u
  Vector explicit_term;  ///< B(u) + f(t)
};

struct StepperState {
  ImExScheme scheme;
  double k = 0.0;
  long steps = 0;
  double reference_norm = 0.0;  ///< largest norm in the initial history
  std::deque<HistoryEntry> history;  ///< oldest first, size r

  double t() const { return history.back().t; }
  const Vector& u() const { return history.back().u; }
};

/// History given directly: samples[j] = u(t_start + j k), j = 0..r-1.
struct ExactInit {
  double t_start = 0.0;
  std::vector<Vector> samples;
};

/// Start-up from u0 alone: a first order phase on k/m^2 substeps up to t0 + k/m,
/// then the second order scheme (or first order if max_order == 1) on k/m
/// substeps, sampled every m substeps.
struct BootstrapInit {
  double t0 = 0.0;
  Vector u0;
  int substeps = 64;
  int max_order = 2;
  std::optional<double> delta;  ///< defaults to the target scheme's delta
};

StepperState initialize(const SplitOperator& op, const ImExScheme& scheme, double k, const ExactInit& init);
StepperState initialize(const SplitOperator& op, const ImExScheme& scheme, double k, const BootstrapInit& init);

/// Advances one step in place: one implicit apply, one explicit apply, one solve.
void step(StepperState& state, const SplitOperator& op);

using StepCallback = std::function<void(const StepperState&)>;

/// Steps until t_final (must be reachable in whole steps). Throws
/// InstabilityError when the state becomes non-finite or its norm exceeds
/// 1e12 times the reference norm.
void integrate(StepperState& state, const SplitOperator& op, double t_final, const StepCallback& callback = {});

inline constexpr double kBlowupFactor = 1e12;

}  // namespace imex
