#pragma once

#include <utility>

#include "lpq/quantizers.hpp"
#include "lpq/rng.hpp"

namespace lpq {

// Closed-form evaluators for the precision and error bounds. Logs are base 2
// except ln and the iterated logarithm ln*, which are natural.

// Smallest n such that applying ln n times to a yields a value <= 1.
int lnstar(double a);

// Delta2 = ceil(log2(1 + ln*(d/3))).
int delta2(int d);

// Delta1 = ceil(log2(2 + sqrt(18 + 6 ln Delta2) * d^{1/2 - 1/q})) for q > 2
// (1/q = 0 at q = inf). Degenerate below d = 4 where Delta2 = 0.
int delta1(int d, double q);

// Precision sufficient to retain the unquantized rate:
//   p >= 2: d^{2/p} log2(2e d^{1-2/p} + 2e)
//   p <  2: d (ceil(log2(2 sqrt(2) Delta1^{1/q} + 2)) + 3) + Delta2
double r_star_upper(int d, double p);

// Matching lower bound with rho standing in for the unknown constant ratio
// c0/c1:
//   p >= 2: ((rho/4) d^{1/p})^2 v 2 log2((rho/4) d^{1/2})
//   p <  2: (rho / (4 sqrt(log2 d)))^2 d
double r_star_lower(int d, double p, double rho);

// Benchmark accuracy U(T, p) = 4 c1 d^{1/2-1/p} D B / sqrt(T) for p >= 2 and
// 4 c1 sqrt(log2 d) D B / sqrt(T) for p < 2.
double benchmark_u(double T, double p, int d, double diameter, double bound, double c1);

// Unquantized bracketing rates (lower, upper) with supplied constants.
std::pair<double, double> baseline_rate(double T, double p, int d, double diameter,
                                        double bound, double c0, double c1);

// Lower bound on the achievable error at precision r; rho stands in for c0.
//   p >= 2: max of (rho D B d^{1/2-1/p} / sqrt(T)) sqrt(d / (d ^ 2^r))
//           and    (rho D B / sqrt(T)) sqrt(d / (d ^ r))
//   p <  2: (rho D B / sqrt(T)) sqrt(d / (d ^ r))
double error_lower(double T, int r, double p, int d, double diameter, double bound,
                   double rho);

// Monte Carlo lower estimate of alpha0(Q; p): the maximum, over admissible
// probe inputs (scaled basis vectors, uniform-magnitude sign vectors, random
// directions at lq norm B), of the root mean squared output norm -- l2 for
// p >= 2, lq for p < 2. `trials` round trips per probe input.
double alpha0_estimate(const QuantizerSpec& spec, double p, int trials, Rng& rng);

}  // namespace lpq
