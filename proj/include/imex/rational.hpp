#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace imex {

/// Exact rational with 64-bit numerator/denominator. Overflow throws.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational operator-() const { return Rational(-num, den); }
  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  friend bool operator==(const Rational& x, const Rational& y) = default;
};

/// Polynomial in delta with rational coefficients; entry k multiplies delta^k.
using DeltaPoly = std::vector<Rational>;

DeltaPoly poly_add(const DeltaPoly& p, const DeltaPoly& q);
DeltaPoly poly_mul(const DeltaPoly& p, const DeltaPoly& q);
DeltaPoly poly_scale(const DeltaPoly& p, const Rational& s);
void poly_trim(DeltaPoly& p);
double poly_eval(const DeltaPoly& p, double x);
Rational poly_eval(const DeltaPoly& p, const Rational& x);

std::int64_t binomial(int n, int k);

}  // namespace imex
