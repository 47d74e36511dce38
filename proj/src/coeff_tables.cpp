// Closed-form coefficients as published, transcribed term by term.
#include <initializer_list>

#include "imex/coeffs.hpp"
#include "imex/errors.hpp"

namespace imex {

namespace {

using R = Rational;

// sum_k terms[k] delta^k, terms given from delta^0 upward.
DeltaPoly P(std::initializer_list<R> terms) {
  DeltaPoly out(terms);
  poly_trim(out);
  return out;
}

// k (delta - 1)^m
DeltaPoly shift(std::int64_t k, int m) {
  DeltaPoly out{R(k)};
  for (int i = 0; i < m; ++i) out = poly_mul(out, P({R(-1), R(1)}));
  return out;
}

DeltaPoly plus(const DeltaPoly& p, std::int64_t c) { return poly_add(p, DeltaPoly{R(c)}); }

}  // namespace

SymbolicScheme tabulated_scheme(int r) {
  SymbolicScheme s;
  s.order = r;
  switch (r) {
    case 1:
      s.a = {P({0, -1}), P({0, 1})};
      s.c = {shift(1, 1), P({1})};
      s.b = {P({0, 1}), P({})};
      break;
    case 2:
      s.a = {P({0, 2, R(-3, 2)}), P({0, -4, 2}), P({0, 2, R(-1, 2)})};
      s.c = {shift(1, 2), shift(2, 1), P({1})};
      s.b = {plus(shift(1, 2), -1), P({0, 2}), P({})};
      break;
    case 3:
      s.a = {P({0, -3, R(9, 2), R(-11, 6)}), P({0, 9, R(-21, 2), 3}), P({0, -9, R(15, 2), R(-3, 2)}),
             P({0, 3, R(-3, 2), R(1, 3)})};
      s.c = {shift(1, 3), shift(3, 2), shift(3, 1), P({1})};
      s.b = {plus(shift(1, 3), 1), P({0, -6, 3}), P({0, 3}), P({})};
      break;
    case 4:
      s.a = {P({0, 4, -9, R(22, 3), R(-25, 12)}), P({0, -16, 30, R(-58, 3), 4}),
             P({0, 24, -36, 18, -3}), P({0, -16, 18, R(-22, 3), R(4, 3)}),
             P({0, 4, -3, R(4, 3), R(-1, 4)})};
      s.c = {shift(1, 4), shift(4, 3), shift(6, 2), shift(4, 1), P({1})};
      s.b = {plus(shift(1, 4), -1), P({0, 12, -12, 4}), P({0, -12, 6}), P({0, 4}), P({})};
      break;
    case 5:
      s.a = {P({0, -5, 15, R(-55, 3), R(125, 12), R(-137, 60)}),
             P({0, 25, -65, R(200, 3), R(-365, 12), 5}),
             P({0, -50, 110, R(-280, 3), 35, -5}),
             P({0, 50, -90, R(190, 3), R(-65, 3), R(10, 3)}),
             P({0, -25, 35, R(-65, 3), R(95, 12), R(-5, 4)}),
             P({0, 5, -5, R(10, 3), R(-5, 4), R(1, 5)})};
      s.c = {shift(1, 5), shift(5, 4), shift(10, 3), shift(10, 2), shift(5, 1), P({1})};
      s.b = {plus(shift(1, 5), 1), P({0, -20, 30, -20, 5}), P({0, 30, -30, 10}), P({0, -20, 10}),
             P({0, 5}), P({})};
      break;
    default:
      throw ParameterError("order must be in 1..5, got " + std::to_string(r));
  }
  return s;
}

}  // namespace imex
