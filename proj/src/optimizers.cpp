#include "lpq/optimizers.hpp"

#include <cmath>
#include <string>

#include "lpq/errors.hpp"
#include "lpq/norms.hpp"

namespace lpq {

MirrorMap make_mirror_map(double p_prime) {
  if (!(p_prime > 1.0) || !(p_prime <= 2.0)) {
    throw ContractViolation("mirror map: p' must lie in (1, 2]");
  }
  return MirrorMap{p_prime, holder_conjugate(p_prime)};
}

double default_mirror_exponent(double p, int dim) {
  if (dim < 2) return 2.0;
  return std::min(2.0, std::max(p, 1.0 + 1.0 / std::log(static_cast<double>(dim))));
}

namespace {

// sign(v_i) |v_i|^{e-1} ||v||_r^{2-e}, the shared shape of both gradients.
Eigen::VectorXd power_map(const Eigen::Ref<const Eigen::VectorXd>& v, double exponent,
                          double r, double scale) {
  const double norm = lp_norm(v, r);
  if (norm == 0.0) return Eigen::VectorXd::Zero(v.size());
  Eigen::VectorXd out(v.size());
  const double norm_factor = std::pow(norm, 2.0 - exponent);
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::fabs(v[i]);
    out[i] = a == 0.0 ? 0.0
                      : scale * (v[i] > 0.0 ? 1.0 : -1.0) * std::pow(a, exponent - 1.0) *
                            norm_factor;
  }
  return out;
}

}  // namespace

Eigen::VectorXd grad_psi(const Eigen::Ref<const Eigen::VectorXd>& x, const MirrorMap& map) {
  return power_map(x, map.p_prime, map.p_prime, 2.0 / (map.p_prime - 1.0));
}

Eigen::VectorXd grad_psi_star(const Eigen::Ref<const Eigen::VectorXd>& z, const MirrorMap& map) {
  return power_map(z, map.q_prime, map.q_prime, (map.p_prime - 1.0) / 2.0);
}

Eigen::VectorXd bregman_project(const Domain& domain,
                                const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (domain.kind != Domain::Kind::lp_ball) {
    throw ContractViolation("bregman_project: domain must be an lp ball");
  }
  const double norm = lp_norm(y, domain.exponent);
  if (norm <= domain.radius) return y;
  return y * (domain.radius / norm);
}

namespace {

double run_step_size(const OracleInstance& oracle,
                     const std::optional<QuantizerSpec>& quantizer, const Domain& domain,
                     int steps, double step_c) {
  const double alpha0 = quantizer ? alpha0_bound(*quantizer) : oracle.bound;
  return step_c * domain.lp_diameter(oracle.p) /
         (alpha0 * std::sqrt(static_cast<double>(steps)));
}

void check_run_config(const OracleInstance& oracle,
                      const std::optional<QuantizerSpec>& quantizer, const Domain& domain,
                      int steps) {
  if (steps < 1) throw ConfigError("run: step count must be positive");
  if (domain.dim != oracle.dim) throw ConfigError("run: domain/oracle dimension mismatch");
  if (!quantizer) return;
  std::string err;
  if (const auto* simq = std::get_if<SimqSpec>(&*quantizer)) {
    if (simq->dim != oracle.dim) err = "SimQ dimension mismatch";
    if (!std::isinf(oracle.p)) err = "SimQ quantizes l1-bounded gradients (p = inf)";
    if (err.empty() && simq->bound != oracle.bound) err = "SimQ bound mismatch";
  } else if (const auto* plus = std::get_if<SimqPlusSpec>(&*quantizer)) {
    if (plus->dim != oracle.dim) err = "SimQ+ dimension mismatch";
    if (err.empty() && plus->p != oracle.p) err = "SimQ+ p mismatch";
    if (err.empty() && plus->bound != oracle.bound) err = "SimQ+ bound mismatch";
  } else if (const auto* split = std::get_if<SplitSpec>(&*quantizer)) {
    if (split->dim != oracle.dim) err = "split quantizer dimension mismatch";
    if (err.empty() && split->p != oracle.p) err = "split quantizer p mismatch";
    if (err.empty() && split->bound != oracle.bound) err = "split quantizer bound mismatch";
  } else {
    err = "CUQ/RATQ are building blocks, not gradient-level quantizers";
  }
  if (!err.empty()) throw ConfigError("run: " + err);
}

Eigen::VectorXd quantized_gradient(const OracleInstance& oracle,
                                   const std::optional<QuantizerSpec>& quantizer,
                                   const Eigen::Ref<const Eigen::VectorXd>& x, Rng& step_rng) {
  Rng oracle_rng = step_rng.fork(0);
  Eigen::VectorXd g = oracle.sample(x, oracle_rng);
  if (!quantizer) return g;
  Rng quant_rng = step_rng.fork(1);
  return quantize_roundtrip(*quantizer, GradientVector{std::move(g), oracle.bound, oracle.q},
                            quant_rng);
}

}  // namespace

RunResult psgd_run(const OracleInstance& oracle, const std::optional<QuantizerSpec>& quantizer,
                   const Domain& domain, int steps, double step_c, std::uint64_t seed) {
  check_run_config(oracle, quantizer, domain, steps);
  if (!(oracle.p >= 2.0)) throw ConfigError("psgd_run: oracle p must be at least 2");
  if (domain.kind == Domain::Kind::lp_ball) {
    throw ConfigError("psgd_run: lp ball domains belong to mirror descent");
  }
  const double eta = run_step_size(oracle, quantizer, domain, steps, step_c);
  Rng trial_rng(seed);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(oracle.dim);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(oracle.dim);
  for (int t = 0; t < steps; ++t) {
    sum += x;
    Rng step_rng = trial_rng.fork(static_cast<std::uint64_t>(t));
    const Eigen::VectorXd g = quantized_gradient(oracle, quantizer, x, step_rng);
    x = project(domain, x - eta * g);
  }
  RunResult result;
  result.x_bar = sum / steps;
  result.suboptimality = oracle.objective(result.x_bar) - oracle.optimum;
  result.bits_per_step = quantizer ? bit_budget(*quantizer) : 0;
  result.step_size = eta;
  result.seed = seed;
  return result;
}

RunResult smd_run(const OracleInstance& oracle, const std::optional<QuantizerSpec>& quantizer,
                  const Domain& domain, int steps, double step_c, std::uint64_t seed) {
  check_run_config(oracle, quantizer, domain, steps);
  if (!(oracle.p >= 1.0) || !(oracle.p < 2.0)) {
    throw ConfigError("smd_run: oracle p must lie in [1, 2)");
  }
  if (domain.kind != Domain::Kind::lp_ball) {
    throw ConfigError("smd_run: domain must be an lp' ball");
  }
  const MirrorMap map = make_mirror_map(domain.exponent);
  const double eta = run_step_size(oracle, quantizer, domain, steps, step_c);
  Rng trial_rng(seed);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(oracle.dim);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(oracle.dim);
  for (int t = 0; t < steps; ++t) {
    sum += x;
    Rng step_rng = trial_rng.fork(static_cast<std::uint64_t>(t));
    const Eigen::VectorXd g = quantized_gradient(oracle, quantizer, x, step_rng);
    x = bregman_project(domain, grad_psi_star(grad_psi(x, map) - eta * g, map));
  }
  RunResult result;
  result.x_bar = sum / steps;
  result.suboptimality = oracle.objective(result.x_bar) - oracle.optimum;
  result.bits_per_step = quantizer ? bit_budget(*quantizer) : 0;
  result.step_size = eta;
  result.seed = seed;
  return result;
}

}  // namespace lpq
