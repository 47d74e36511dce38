#include "imex/coeffs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <sstream>

#include "imex/errors.hpp"
#include "imex/polynomial_roots.hpp"

namespace imex {

namespace {

// (delta - 1)^m
DeltaPoly shifted_power(int m) {
  DeltaPoly out{Rational(1)};
  const DeltaPoly base{Rational(-1), Rational(1)};
  for (int i = 0; i < m; ++i) out = poly_mul(out, base);
  return out;
}

DeltaPoly monomial(int m, const Rational& coef) {
  DeltaPoly out(m + 1);
  out[m] = coef;
  poly_trim(out);
  return out;
}

const SymbolicScheme& cached_symbolic(int r) {
  static std::array<SymbolicScheme, kMaxOrder + 1> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int q = kMinOrder; q <= kMaxOrder; ++q) cache[q] = derive_symbolic_scheme(q);
  });
  return cache[r];
}

double max_abs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

void cross_check(const std::vector<double>& derived, const std::vector<DeltaPoly>& table, double delta,
                 const char* name, int r) {
  std::vector<double> ref(table.size());
  for (std::size_t j = 0; j < table.size(); ++j) ref[j] = poly_eval(table[j], delta);
  const double scale = std::max(max_abs(ref), 1e-300);
  for (std::size_t j = 0; j < ref.size(); ++j) {
    if (std::abs(derived[j] - ref[j]) > 1e-12 * scale) {
      std::ostringstream msg;
      msg << "coefficient " << name << "_" << j << " for order " << r << " disagrees with table: "
          << derived[j] << " vs " << ref[j];
      throw InvalidSchemeError(msg.str());
    }
  }
}

}  // namespace

void validate_order_delta(int r, double delta) {
  if (r < kMinOrder || r > kMaxOrder)
    throw ParameterError("order must be in 1..5, got " + std::to_string(r));
  if (!(delta > 0.0 && delta <= 1.0))
    throw ParameterError("delta must lie in (0, 1], got " + std::to_string(delta));
}

SymbolicScheme derive_symbolic_scheme(int r) {
  if (r < kMinOrder || r > kMaxOrder)
    throw ParameterError("order must be in 1..5, got " + std::to_string(r));
  SymbolicScheme s;
  s.order = r;
  s.a.resize(r + 1);
  s.b.resize(r + 1);
  s.c.resize(r + 1);

  for (int j = 0; j <= r; ++j) {
    s.c[j] = poly_scale(shifted_power(r - j), Rational(binomial(r, j)));
    const std::int64_t sign = ((r - j) % 2 == 0) ? 1 : -1;
    s.b[j] = poly_add(s.c[j], DeltaPoly{Rational(-sign * binomial(r, j))});
  }

  // Taylor coefficients alpha_n of ln(1+w) (w+delta)^r in powers of w = z - 1.
  std::vector<DeltaPoly> alpha(r + 1);
  for (int n = 1; n <= r; ++n) {
    for (int m = 1; m <= n; ++m) {
      const Rational log_coef((m % 2 == 1) ? 1 : -1, m);
      alpha[n] = poly_add(alpha[n], monomial(r - n + m, log_coef * Rational(binomial(r, n - m))));
    }
  }
  // Back to the monomial basis: w^n = sum_j binom(n,j) (-1)^(n-j) z^j.
  for (int j = 0; j <= r; ++j) {
    for (int n = std::max(j, 1); n <= r; ++n) {
      const std::int64_t sign = ((n - j) % 2 == 0) ? 1 : -1;
      s.a[j] = poly_add(s.a[j], poly_scale(alpha[n], Rational(sign * binomial(n, j))));
    }
  }
  return s;
}

std::vector<Rational> exact_coefficients(const std::vector<DeltaPoly>& poly, const Rational& delta) {
  std::vector<Rational> out;
  out.reserve(poly.size());
  for (const auto& p : poly) out.push_back(poly_eval(p, delta));
  return out;
}

ImExScheme generate_scheme(int r, double delta) {
  validate_order_delta(r, delta);
  const SymbolicScheme& sym = cached_symbolic(r);
  ImExScheme s;
  s.order = r;
  s.delta = delta;
  for (int j = 0; j <= r; ++j) {
    s.a.push_back(poly_eval(sym.a[j], delta));
    s.b.push_back(poly_eval(sym.b[j], delta));
    s.c.push_back(poly_eval(sym.c[j], delta));
  }
  const SymbolicScheme table = tabulated_scheme(r);
  cross_check(s.a, table.a, delta, "a", r);
  cross_check(s.b, table.b, delta, "b", r);
  cross_check(s.c, table.c, delta, "c", r);
  return s;
}

PolynomialValues evaluate_polynomials(const ImExScheme& s, std::complex<double> z) {
  PolynomialValues out{0.0, 0.0, 0.0};
  for (int j = s.order; j >= 0; --j) {
    out.a = out.a * z + s.a[j];
    out.b = out.b * z + s.b[j];
    out.c = out.c * z + s.c[j];
  }
  return out;
}

std::vector<std::complex<double>> characteristic_roots(const ImExScheme& s) {
  if (s.a.empty() || s.a.back() == 0.0) throw InvalidSchemeError("a_r vanishes");
  return polynomial_roots(std::span<const double>(s.a));
}

bool check_zero_stability(const ImExScheme& s, double tol) {
  if (s.a.empty() || s.a.back() == 0.0) throw InvalidSchemeError("a_r vanishes");
  double scale = 0.0, at_one = 0.0;
  for (double v : s.a) {
    scale = std::max(scale, std::abs(v));
    at_one += v;
  }
  std::vector<double> poly = s.a;
  if (std::abs(at_one) <= tol * scale) {
    // Divide out the consistency root z = 1 exactly; the companion solve
    // blurs it by ~1e-9 when the other roots cluster (r = 5, small delta).
    // The quotient at 1 equals a'(1), so a zero there means a double root.
    std::vector<double> q(poly.size() - 1);
    double carry = 0.0;
    for (std::size_t j = poly.size() - 1; j >= 1; --j) {
      carry = poly[j] + carry;
      q[j - 1] = carry;
    }
    double q_one = 0.0;
    for (double v : q) q_one += v;
    if (std::abs(q_one) <= tol * scale) return false;
    poly = q;
  }
  if (poly.size() < 2) return true;
  const auto roots = polynomial_roots(std::span<const double>(poly));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double m = std::abs(roots[i]);
    if (m > 1.0 + tol) return false;
    if (m >= 1.0 - tol) {
      if (std::abs(roots[i] - 1.0) <= tol && poly.size() != s.a.size()) return false;
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != i && std::abs(roots[j] - roots[i]) <= tol) return false;
    }
  }
  return true;
}

OrderResiduals order_residuals(const ImExScheme& s, int max_power) {
  const int r = s.order;
  OrderResiduals out;
  out.implicit_part.assign(max_power + 1, 0.0);
  out.explicit_part.assign(max_power + 1, 0.0);
  std::vector<double> diff(r + 1);  // coefficients of (z-1)^r
  for (int j = 0; j <= r; ++j)
    diff[j] = static_cast<double>(binomial(r, j)) * (((r - j) % 2 == 0) ? 1.0 : -1.0);

  double fact = 1.0;  // m!
  for (int m = 0; m <= max_power; ++m) {
    if (m > 0) fact *= m;
    double imp = 0.0, expl = 0.0;
    for (int j = 0; j <= r; ++j) {
      const double jm = std::pow(static_cast<double>(j), m);
      imp += s.a[j] * jm / fact;
      if (m > 0) imp -= s.c[j] * std::pow(static_cast<double>(j), m - 1) * m / fact;
      expl += (s.c[j] - s.b[j] - diff[j]) * jm / fact;
    }
    out.implicit_part[m] = imp;
    out.explicit_part[m] = expl;
  }
  return out;
}

bool check_order_conditions(const ImExScheme& s, double tol) {
  const auto res = order_residuals(s, s.order);
  const double scale = std::max({max_abs(s.a), max_abs(s.b), max_abs(s.c), 1.0});
  for (int m = 0; m <= s.order; ++m) {
    const double weight = std::pow(static_cast<double>(s.order), m) * scale;
    if (std::abs(res.implicit_part[m]) > tol * weight) return false;
    if (std::abs(res.explicit_part[m]) > tol * weight) return false;
  }
  return true;
}

}  // namespace imex
