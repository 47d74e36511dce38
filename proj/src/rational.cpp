#include "imex/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace imex {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("rational overflow");
  return out;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& x, const Rational& y) {
  const std::int64_t g = std::gcd(x.den, y.den);
  const std::int64_t lhs = checked_mul(x.num, y.den / g);
  const std::int64_t rhs = checked_mul(y.num, x.den / g);
  return Rational(checked_add(lhs, rhs), checked_mul(x.den / g, y.den));
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
  const std::int64_t g1 = std::gcd(x.num, y.den);
  const std::int64_t g2 = std::gcd(y.num, x.den);
  const std::int64_t a = g1 ? x.num / g1 : 0, d = g1 ? y.den / g1 : y.den;
  const std::int64_t b = g2 ? y.num / g2 : 0, c = g2 ? x.den / g2 : x.den;
  return Rational(checked_mul(a, b), checked_mul(c, d));
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.num == 0) throw std::domain_error("rational division by zero");
  return x * Rational(y.den, y.num);
}

DeltaPoly poly_add(const DeltaPoly& p, const DeltaPoly& q) {
  DeltaPoly out(std::max(p.size(), q.size()));
  for (std::size_t i = 0; i < p.size(); ++i) out[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) out[i] += q[i];
  poly_trim(out);
  return out;
}

DeltaPoly poly_mul(const DeltaPoly& p, const DeltaPoly& q) {
  if (p.empty() || q.empty()) return {};
  DeltaPoly out(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  poly_trim(out);
  return out;
}

DeltaPoly poly_scale(const DeltaPoly& p, const Rational& s) {
  DeltaPoly out(p);
  for (auto& v : out) v *= s;
  poly_trim(out);
  return out;
}

void poly_trim(DeltaPoly& p) {
  while (!p.empty() && p.back().num == 0) p.pop_back();
}

double poly_eval(const DeltaPoly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

Rational poly_eval(const DeltaPoly& p, const Rational& x) {
  Rational acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace imex
