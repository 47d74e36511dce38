#include "imex/lmm_stepper.hpp"

#include <cmath>
#include <sstream>

#include "imex/errors.hpp"

namespace imex {

namespace {

HistoryEntry make_entry(const SplitOperator& op, double t, Vector u) {
  HistoryEntry e;
  e.t = t;
  e.implicit_term = op.apply_implicit(u);
  e.explicit_term = op.apply_explicit(u, t);
  e.u = std::move(u);
  return e;
}

void check_step(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw ParameterError("time step must be positive and finite");
}

StepperState from_samples(const SplitOperator& op, const ImExScheme& scheme, double k, double t_start,
                          std::vector<Vector> samples) {
  StepperState s;
  s.scheme = scheme;
  s.k = k;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (samples[j].size() != op.dim()) throw DimensionError("history sample has wrong dimension");
    s.reference_norm = std::max(s.reference_norm, samples[j].norm());
    s.history.push_back(make_entry(op, t_start + static_cast<double>(j) * k, std::move(samples[j])));
  }
  return s;
}

}  // namespace

StepperState initialize(const SplitOperator& op, const ImExScheme& scheme, double k, const ExactInit& init) {
  check_step(k);
  if (static_cast<int>(init.samples.size()) != scheme.order) {
    std::ostringstream msg;
    msg << "order " << scheme.order << " scheme needs " << scheme.order << " history samples, got "
        << init.samples.size();
    throw InitializationError(msg.str());
  }
  return from_samples(op, scheme, k, init.t_start, init.samples);
}

StepperState initialize(const SplitOperator& op, const ImExScheme& scheme, double k, const BootstrapInit& init) {
  check_step(k);
  if (init.u0.size() != op.dim()) throw DimensionError("initial state has wrong dimension");
  if (init.substeps < 1) throw InitializationError("bootstrap needs at least one substep");
  if (init.max_order < 1 || init.max_order > 2) throw InitializationError("bootstrap order must be 1 or 2");
  const int r = scheme.order;
  std::vector<Vector> samples{init.u0};
  if (r > 1) {
    const double delta = init.delta.value_or(scheme.delta);
    const int m = init.substeps;
    const double ks = k / m;

    // First order phase on the fine grid up to t0 + ks.
    StepperState fine = from_samples(op, generate_scheme(1, delta), ks / m, init.t0, {init.u0});
    for (int i = 0; i < m; ++i) step(fine, op);

    StepperState coarse;
    if (init.max_order == 1) {
      coarse = from_samples(op, generate_scheme(1, delta), ks, init.t0 + ks, {fine.u()});
    } else {
      coarse = from_samples(op, generate_scheme(2, delta), ks, init.t0, {init.u0, fine.u()});
    }
    long done = 1;  // substeps of size ks completed
    for (int j = 1; j < r; ++j) {
      while (done < static_cast<long>(j) * m) {
        step(coarse, op);
        ++done;
      }
      samples.push_back(coarse.u());
    }
  }
  return from_samples(op, scheme, k, init.t0, std::move(samples));
}

void step(StepperState& s, const SplitOperator& op) {
  const int r = s.scheme.order;
  const auto& a = s.scheme.a;
  const auto& b = s.scheme.b;
  const auto& c = s.scheme.c;
  const long index = s.steps + 1;

  // Solve for the increment over the newest level. The a_j sum to zero, so the
  // right side is built from differences and rounding does not scale with |u|.
  const HistoryEntry& last = s.history[r - 1];
  Vector rhs = (s.k * c[r]) * last.implicit_term;
  for (int j = 0; j < r; ++j) {
    const HistoryEntry& e = s.history[j];
    if (j < r - 1) rhs.noalias() -= a[j] * (e.u - last.u);
    rhs.noalias() += (s.k * c[j]) * e.implicit_term + (s.k * b[j]) * e.explicit_term;
  }
  Vector next;
  try {
    next = last.u + op.solve_shifted(a[r], s.k * c[r], rhs);
  } catch (const StepError&) {
    throw;
  } catch (const std::exception& ex) {
    throw SolverError(index, std::string("solve failed at step ") + std::to_string(index) + ": " + ex.what());
  }
  const double t_next = s.t() + s.k;
  s.history.pop_front();
  s.history.push_back(make_entry(op, t_next, std::move(next)));
  s.steps = index;
}

void integrate(StepperState& s, const SplitOperator& op, double t_final, const StepCallback& callback) {
  const double span = t_final - s.t();
  const double count = span / s.k;
  const long n = std::lround(count);
  if (n < 0 || std::abs(count - static_cast<double>(n)) > 1e-8 * std::max(1.0, count))
    throw ParameterError("t_final is not reachable in whole steps");
  const double limit = kBlowupFactor * std::max(s.reference_norm, 1.0);
  for (long i = 0; i < n; ++i) {
    step(s, op);
    const double norm = s.u().norm();
    if (!std::isfinite(norm) || norm > limit) {
      std::ostringstream msg;
      msg << "instability detected at step " << s.steps << " (norm " << norm << ")";
      throw InstabilityError(s.steps, msg.str());
    }
    if (callback) callback(s);
  }
}

}  // namespace imex
