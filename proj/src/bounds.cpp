#include "lpq/bounds.hpp"

#include <cmath>
#include <vector>

#include "lpq/errors.hpp"
#include "lpq/norms.hpp"
#include "lpq/rounding.hpp"

namespace lpq {

int lnstar(double a) { return iterated_ln_count(a); }

int delta2(int d) {
  if (d < 1) throw ContractViolation("delta2: dimension must be positive");
  return ceil_log2_u64(static_cast<std::uint64_t>(1 + lnstar(d / 3.0)));
}

int delta1(int d, double q) {
  if (!(q > 2.0)) throw ContractViolation("delta1: q must exceed 2 (or be inf)");
  const int d2 = delta2(d);
  if (d2 < 1) {
    throw ContractViolation("delta1: degenerate at d <= 3 where Delta2 = 0");
  }
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  return ceil_log2_guarded(2.0 + std::sqrt(18.0 + 6.0 * std::log(static_cast<double>(d2))) *
                                     std::pow(static_cast<double>(d), 0.5 - inv_q));
}

double r_star_upper(int d, double p) {
  if (d < 2) throw ContractViolation("r_star_upper: dimension must be at least 2");
  if (p >= 2.0) {
    const double two_over_p = std::isinf(p) ? 0.0 : 2.0 / p;
    const double dd = static_cast<double>(d);
    const double e2 = 2.0 * std::exp(1.0);
    return std::pow(dd, two_over_p) * std::log2(e2 * std::pow(dd, 1.0 - two_over_p) + e2);
  }
  const double q = holder_conjugate(p);
  const int d1 = delta1(d, q);
  const int w = ceil_log2_guarded(2.0 * std::sqrt(2.0) * root_pow(d1, q) + 2.0);
  return static_cast<double>(d) * (w + 3) + delta2(d);
}

double r_star_lower(int d, double p, double rho) {
  if (d < 2) throw ContractViolation("r_star_lower: dimension must be at least 2");
  const double dd = static_cast<double>(d);
  if (p >= 2.0) {
    const double a = rho / 4.0 * root_pow(dd, p);
    const double b = 2.0 * std::log2(rho / 4.0 * std::sqrt(dd));
    return std::max(a * a, b);
  }
  const double a = rho / (4.0 * std::sqrt(std::log2(dd)));
  return a * a * dd;
}

double benchmark_u(double T, double p, int d, double diameter, double bound, double c1) {
  if (!(T >= 1.0)) throw ContractViolation("benchmark_u: T must be at least 1");
  const double dd = static_cast<double>(d);
  const double scale = 4.0 * c1 * diameter * bound / std::sqrt(T);
  if (p >= 2.0) {
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    return scale * std::pow(dd, 0.5 - inv_p);
  }
  return scale * std::sqrt(std::log2(dd));
}

std::pair<double, double> baseline_rate(double T, double p, int d, double diameter,
                                        double bound, double c0, double c1) {
  if (!(T >= 1.0)) throw ContractViolation("baseline_rate: T must be at least 1");
  const double dd = static_cast<double>(d);
  const double scale = diameter * bound / std::sqrt(T);
  if (p >= 2.0) {
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double shape = std::pow(dd, 0.5 - inv_p);
    return {c0 * shape * scale, c1 * shape * scale};
  }
  return {c0 * scale, c1 * std::sqrt(std::log2(dd)) * scale};
}

double error_lower(double T, int r, double p, int d, double diameter, double bound,
                   double rho) {
  if (r < 1) throw ContractViolation("error_lower: precision must be at least 1");
  const double dd = static_cast<double>(d);
  const double base = rho * diameter * bound / std::sqrt(T);
  const double cap_r = std::min(dd, static_cast<double>(r));
  const double packing_term = base * std::sqrt(dd / cap_r);
  if (p >= 2.0) {
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double cap_2r = std::min(dd, std::exp2(std::min(r, 1100)));
    const double hamming_term =
        base * std::pow(dd, 0.5 - inv_p) * std::sqrt(dd / cap_2r);
    return std::max(hamming_term, packing_term);
  }
  return packing_term;
}

namespace {

struct ProbeContext {
  int dim;
  double bound;
  double input_q;  // admissible inputs live in this lq ball
};

ProbeContext probe_context(const QuantizerSpec& spec) {
  if (const auto* simq = std::get_if<SimqSpec>(&spec)) {
    return {simq->dim, simq->bound, 1.0};
  }
  if (const auto* plus = std::get_if<SimqPlusSpec>(&spec)) {
    return {plus->dim, plus->bound, holder_conjugate(plus->p)};
  }
  if (const auto* split = std::get_if<SplitSpec>(&spec)) {
    return {split->dim, split->bound, split->q};
  }
  throw ContractViolation("alpha0_estimate: defined for SimQ, SimQ+ and the split quantizer");
}

}  // namespace

double alpha0_estimate(const QuantizerSpec& spec, double p, int trials, Rng& rng) {
  if (trials < 1) throw ContractViolation("alpha0_estimate: trials must be positive");
  const ProbeContext ctx = probe_context(spec);
  const double out_norm = p >= 2.0 ? 2.0 : holder_conjugate(p);

  std::vector<Eigen::VectorXd> probes;
  Eigen::VectorXd basis = Eigen::VectorXd::Zero(ctx.dim);
  basis[0] = ctx.bound;
  probes.push_back(basis);
  basis[0] = 0.0;
  basis[ctx.dim - 1] = -ctx.bound;
  probes.push_back(basis);
  const double coord = ctx.bound / root_pow(static_cast<double>(ctx.dim), ctx.input_q);
  for (int rep = 0; rep < 2; ++rep) {
    Eigen::VectorXd signs(ctx.dim);
    for (int i = 0; i < ctx.dim; ++i) signs[i] = coord * rng.next_sign();
    probes.push_back(signs);
  }
  for (int rep = 0; rep < 3; ++rep) {
    Eigen::VectorXd dir(ctx.dim);
    for (int i = 0; i < ctx.dim; ++i) dir[i] = rng.next_gaussian();
    const double norm = lp_norm(dir, ctx.input_q);
    if (norm > 0.0) probes.push_back(dir * (ctx.bound / norm));
  }

  double worst = 0.0;
  for (const auto& probe : probes) {
    double sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Eigen::VectorXd out =
          quantize_roundtrip(spec, GradientVector{probe, ctx.bound, ctx.input_q}, rng);
      const double n = lp_norm(out, out_norm);
      sum_sq += n * n;
    }
    worst = std::max(worst, std::sqrt(sum_sq / trials));
  }
  return worst;
}

}  // namespace lpq
