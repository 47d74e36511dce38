#pragma once

#include <complex>
#include <vector>

#include "imex/rational.hpp"

namespace imex {

inline constexpr int kMinOrder = 1;
inline constexpr int kMaxOrder = 5;

/// Coefficients of an order-r ImEx multistep scheme
///   (1/k) sum_j a_j u_{n+j} = sum_j (c_j A u_{n+j} + b_j B u_{n+j} + b_j f_{n+j}),
/// indexed j = 0..r (index r is the newest level).
struct ImExScheme {
  int order = 0;
  double delta = 1.0;
  std::vector<double> a, b, c;
};

/// Same coefficients as exact polynomials in delta.
struct SymbolicScheme {
  int order = 0;
  std::vector<DeltaPoly> a, b, c;
};

/// Symbolic coefficients built from the generating polynomials
/// c(z) = (z-1+delta)^r, b(z) = c(z) - (z-1)^r, a(z) = Taylor_r[ln(z) c(z)] about z = 1.
SymbolicScheme derive_symbolic_scheme(int r);

/// Closed-form coefficient table (independent transcription, used as a cross-check).
SymbolicScheme tabulated_scheme(int r);

/// Throws ParameterError for r outside [1,5] or delta outside (0,1], and
/// InvalidSchemeError if the derived coefficients disagree with the table.
ImExScheme generate_scheme(int r, double delta);

/// Exact coefficients at a rational delta.
std::vector<Rational> exact_coefficients(const std::vector<DeltaPoly>& poly, const Rational& delta);

struct PolynomialValues {
  std::complex<double> a, b, c;
};
PolynomialValues evaluate_polynomials(const ImExScheme& s, std::complex<double> z);

std::vector<std::complex<double>> characteristic_roots(const ImExScheme& s);

/// Root condition for a(z): roots in the closed unit disk, those on the
/// circle (within tol) simple.
bool check_zero_stability(const ImExScheme& s, double tol = 1e-10);

/// Taylor coefficients in h (powers 0..max_power) of
///   implicit:  a(e^h) - h c(e^h)
///   explicit:  c(e^h) - b(e^h) - (e^h - 1)^r
struct OrderResiduals {
  std::vector<double> implicit_part;
  std::vector<double> explicit_part;
};
OrderResiduals order_residuals(const ImExScheme& s, int max_power);

/// Both residuals vanish (within tol) through power r.
bool check_order_conditions(const ImExScheme& s, double tol = 1e-12);

void validate_order_delta(int r, double delta);

}  // namespace imex
