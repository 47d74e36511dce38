#pragma once

#include <complex>
#include <span>
#include <vector>

namespace imex {

/// Roots of sum_j p[j] z^j via eigenvalues of the balanced companion matrix.
/// Leading coefficient must be nonzero; degree is p.size() - 1.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> p);
std::vector<std::complex<double>> polynomial_roots(std::span<const double> p);

double max_modulus(const std::vector<std::complex<double>>& roots);

}  // namespace imex
