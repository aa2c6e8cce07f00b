#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "lpq/domain.hpp"
#include "lpq/oracles.hpp"
#include "lpq/quantizers.hpp"

namespace lpq {

// Mirror map psi(x) = ||x||_{p'}^2 / (p' - 1) with p' in (1, 2]; grad_psi and
// grad_psi_star are exact functional inverses of each other.
struct MirrorMap {
  double p_prime = 2.0;
  double q_prime = 2.0;  // Holder conjugate of p'
};

MirrorMap make_mirror_map(double p_prime);

// Standard choice keeping the map strongly convex up to a log d factor.
double default_mirror_exponent(double p, int dim);

Eigen::VectorXd grad_psi(const Eigen::Ref<const Eigen::VectorXd>& x, const MirrorMap& map);
Eigen::VectorXd grad_psi_star(const Eigen::Ref<const Eigen::VectorXd>& z, const MirrorMap& map);

// Bregman projection onto an lp' ball for the norm-generated mirror map:
// radial scaling, which satisfies the first-order optimality condition
// because grad_psi is positively homogeneous of degree 1.
Eigen::VectorXd bregman_project(const Domain& domain, const Eigen::Ref<const Eigen::VectorXd>& y);

// One optimization trial: averaged iterate, its suboptimality against the
// instance's analytic optimum, and the per-step quantizer cost.
struct RunResult {
  Eigen::VectorXd x_bar;
  double suboptimality = 0.0;
  int bits_per_step = 0;
  double step_size = 0.0;
  std::uint64_t seed = 0;
};

// Projected subgradient descent for p >= 2: x_{t+1} = project(x_t - eta g_t)
// with eta = step_c * D / (alpha0 * sqrt(T)), where alpha0 is the analytic
// bound for the quantizer (B when unquantized) and D the lp diameter of the
// domain. Returns the average of the T queried iterates.
RunResult psgd_run(const OracleInstance& oracle, const std::optional<QuantizerSpec>& quantizer,
                   const Domain& domain, int steps, double step_c, std::uint64_t seed);

// Stochastic mirror descent for p in [1, 2) over an lp' ball:
// x_{t+1} = bregman_project(grad_psi_star(grad_psi(x_t) - eta g_t)).
RunResult smd_run(const OracleInstance& oracle, const std::optional<QuantizerSpec>& quantizer,
                  const Domain& domain, int steps, double step_c, std::uint64_t seed);

}  // namespace lpq
