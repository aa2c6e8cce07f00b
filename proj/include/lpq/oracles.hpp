#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>

#include "lpq/domain.hpp"
#include "lpq/rng.hpp"

namespace lpq {

// First-order stochastic oracle with a known optimum: every sample has
// ||g||_q <= bound almost surely and its conditional mean is a subgradient of
// the objective at the query point.
struct OracleInstance {
  int dim = 0;
  double p = 2.0;
  double q = 2.0;      // Holder conjugate of p
  double bound = 1.0;  // B
  Domain domain;
  double diameter = 0.0;  // D, lp diameter of the domain
  double optimum = 0.0;   // f* = min over the domain
  std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)> objective;
  std::function<Eigen::VectorXd(const Eigen::Ref<const Eigen::VectorXd>&, Rng&)> sample;
};

// Parameters shared by the two hard-instance families: a sign vector alpha,
// a bias delta in (0, 1/2], the lp diameter D and the gradient bound B. The
// natural domain is the box {x : ||x||_inf <= D / (2 d^{1/p})} with optimum
// at -(D / (2 d^{1/p})) alpha.
struct HardInstanceParams {
  Eigen::VectorXd alpha;  // entries in {-1, +1}
  double delta = 0.5;
  double diameter = 1.0;  // D
  double bound = 1.0;     // B
  double p = 2.0;
};

// f(x) = (2 B delta / d) <alpha, x>; the sampler ignores x and outputs
// +B e_i or -B e_i with probabilities (1 +- 2 delta alpha_i) / (2d).
// Every draw has lq norm exactly B for every q.
OracleInstance paninski_oracle(const HardInstanceParams& params,
                               std::optional<Domain> domain_override = std::nullopt);

// f(x) = (2 B delta / d^{1/q}) <alpha, x>; coordinate i independently takes
// the values +-B / d^{1/q} with probabilities (1 +- 2 delta alpha_i) / 2.
OracleInstance bernoulli_product_oracle(const HardInstanceParams& params,
                                        std::optional<Domain> domain_override = std::nullopt);

// f(x) = (1/n) sum_i |<a_i, x> - b_i| with rows ||a_i||_q <= bound; the
// sampler picks a row uniformly and returns sign(<a_i, x> - b_i) a_i with
// sign(0) = 0. The optimum is computed once at construction by a
// deterministic reference minimization (d <= 32 only).
OracleInstance finite_sum_abs_oracle(const Eigen::MatrixXd& rows, const Eigen::VectorXd& rhs,
                                     const Domain& domain, double p);

}  // namespace lpq
