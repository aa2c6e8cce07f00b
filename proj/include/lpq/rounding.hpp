#pragma once

#include <algorithm>
#include <cmath>

#include "lpq/errors.hpp"

namespace lpq {

// Integer ceiling with a relative epsilon guard: a value sitting one float
// rounding error above an integer (e.g. 2 + sqrt(18)*sqrt(2) = 8 evaluated in
// doubles) must not bump the ceiling.
inline int ceil_guarded(double x) {
  if (!std::isfinite(x)) throw ContractViolation("ceil_guarded: non-finite argument");
  return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, std::fabs(x))));
}

// ceil(log2 x) for real x > 0, epsilon-guarded.
inline int ceil_log2_guarded(double x) {
  if (!(x > 0.0)) throw ContractViolation("ceil_log2_guarded: argument must be positive");
  return ceil_guarded(std::log2(x));
}

// Iterated-logarithm count: applications of ln until the value is <= 1.
// The tolerance keeps exact fixed points such as ln(e) = 1 from iterating
// once more on rounding noise.
inline int iterated_ln_count(double a) {
  if (!(a > 0.0)) throw ContractViolation("iterated ln count: argument must be positive");
  int count = 0;
  while (a > 1.0 + 1e-12) {
    a = std::log(a);
    ++count;
  }
  return count;
}

}  // namespace lpq
