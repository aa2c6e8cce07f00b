#include "lpq/oracles.hpp"

#include <cmath>

#include "lpq/errors.hpp"
#include "lpq/norms.hpp"

namespace lpq {

namespace {

void check_hard_params(const HardInstanceParams& params) {
  if (params.alpha.size() < 1) throw ContractViolation("hard instance: empty alpha");
  for (int i = 0; i < params.alpha.size(); ++i) {
    if (std::fabs(params.alpha[i]) != 1.0) {
      throw ContractViolation("hard instance: alpha entries must be +1 or -1");
    }
  }
  if (!(params.delta > 0.0) || params.delta > 0.5) {
    throw ContractViolation("hard instance: delta must lie in (0, 1/2]");
  }
  if (!(params.diameter > 0.0) || !(params.bound > 0.0)) {
    throw ContractViolation("hard instance: D and B must be positive");
  }
  if (!(params.p >= 1.0)) throw ContractViolation("hard instance: p must be at least 1");
}

Domain hard_instance_box(const HardInstanceParams& params) {
  const int d = static_cast<int>(params.alpha.size());
  Domain box;
  box.kind = Domain::Kind::box;
  box.dim = d;
  box.radius = params.diameter / (2.0 * root_pow(static_cast<double>(d), params.p));
  return box;
}

// Shared scaffolding for the two linear hard instances: constant gradient,
// closed-form optimum on any supported domain.
OracleInstance linear_instance(const HardInstanceParams& params,
                               const std::optional<Domain>& domain_override,
                               const Eigen::VectorXd& gradient) {
  OracleInstance inst;
  inst.dim = static_cast<int>(params.alpha.size());
  inst.p = params.p;
  inst.q = holder_conjugate(params.p);
  inst.bound = params.bound;
  inst.domain = domain_override.value_or(hard_instance_box(params));
  if (inst.domain.dim != inst.dim) {
    throw ContractViolation("hard instance: domain dimension mismatch");
  }
  inst.diameter = inst.domain.lp_diameter(params.p);
  inst.optimum = min_linear_objective(inst.domain, gradient);
  inst.objective = [gradient](const Eigen::Ref<const Eigen::VectorXd>& x) {
    return gradient.dot(x);
  };
  return inst;
}

}  // namespace

OracleInstance paninski_oracle(const HardInstanceParams& params,
                               std::optional<Domain> domain_override) {
  check_hard_params(params);
  const int d = static_cast<int>(params.alpha.size());
  const Eigen::VectorXd gradient = (2.0 * params.bound * params.delta / d) * params.alpha;
  OracleInstance inst = linear_instance(params, domain_override, gradient);
  const Eigen::VectorXd alpha = params.alpha;
  const double bound = params.bound;
  const double delta = params.delta;
  inst.sample = [d, alpha, bound, delta](const Eigen::Ref<const Eigen::VectorXd>&,
                                         Rng& rng) {
    const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
    const double p_plus = (1.0 + 2.0 * delta * alpha[i]) / 2.0;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
    g[i] = rng.next_double() < p_plus ? bound : -bound;
    return g;
  };
  return inst;
}

OracleInstance bernoulli_product_oracle(const HardInstanceParams& params,
                                        std::optional<Domain> domain_override) {
  check_hard_params(params);
  const int d = static_cast<int>(params.alpha.size());
  const double q = holder_conjugate(params.p);
  const double coord = params.bound / root_pow(static_cast<double>(d), q);
  const Eigen::VectorXd gradient = (2.0 * params.delta * coord) * params.alpha;
  OracleInstance inst = linear_instance(params, domain_override, gradient);
  const Eigen::VectorXd alpha = params.alpha;
  const double delta = params.delta;
  inst.sample = [d, alpha, coord, delta](const Eigen::Ref<const Eigen::VectorXd>&, Rng& rng) {
    Eigen::VectorXd g(d);
    for (int i = 0; i < d; ++i) {
      const double p_plus = (1.0 + 2.0 * delta * alpha[i]) / 2.0;
      g[i] = rng.next_double() < p_plus ? coord : -coord;
    }
    return g;
  };
  return inst;
}

OracleInstance finite_sum_abs_oracle(const Eigen::MatrixXd& rows, const Eigen::VectorXd& rhs,
                                     const Domain& domain, double p) {
  const int n = static_cast<int>(rows.rows());
  const int d = static_cast<int>(rows.cols());
  if (n < 1 || d < 1) throw ContractViolation("finite_sum_abs: empty data");
  if (rhs.size() != n) throw ContractViolation("finite_sum_abs: rhs length mismatch");
  if (domain.dim != d) throw ContractViolation("finite_sum_abs: domain dimension mismatch");
  if (d > 32) {
    throw ContractViolation("finite_sum_abs: reference minimization only supports d <= 32");
  }
  if (domain.kind == Domain::Kind::lp_ball) {
    throw ContractViolation("finite_sum_abs: reference minimization needs a Euclidean "
                            "projection; use an l2 ball or box domain");
  }
  const double q = holder_conjugate(p);
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, lp_norm(rows.row(i).transpose(), q));
  if (!(bound > 0.0)) throw ContractViolation("finite_sum_abs: all rows are zero");

  OracleInstance inst;
  inst.dim = d;
  inst.p = p;
  inst.q = q;
  inst.bound = bound;
  inst.domain = domain;
  inst.diameter = domain.lp_diameter(p);
  inst.objective = [rows, rhs, n](const Eigen::Ref<const Eigen::VectorXd>& x) {
    return (rows * x - rhs).lpNorm<1>() / n;
  };
  inst.sample = [rows, rhs, n](const Eigen::Ref<const Eigen::VectorXd>& x, Rng& rng) {
    const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    const double margin = rows.row(i).dot(x) - rhs[i];
    if (margin == 0.0) return Eigen::VectorXd(Eigen::VectorXd::Zero(rows.cols()));
    Eigen::VectorXd g = rows.row(i).transpose();
    if (margin < 0.0) g = -g;
    return g;
  };

  // Deterministic reference minimization: averaged projected full-subgradient
  // descent, keeping the best objective value seen.
  const int steps = 20000;
  const double radius_scale = domain.lp_diameter(2.0) / 2.0;
  Eigen::VectorXd x = project(domain, Eigen::VectorXd::Zero(d));
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  double best = inst.objective(x);
  for (int t = 1; t <= steps; ++t) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < n; ++i) {
      const double margin = rows.row(i).dot(x) - rhs[i];
      if (margin > 0.0) {
        g += rows.row(i).transpose();
      } else if (margin < 0.0) {
        g -= rows.row(i).transpose();
      }
    }
    g /= n;
    const double step = radius_scale / (bound * std::sqrt(static_cast<double>(t)));
    x = project(domain, x - step * g);
    sum += x;
    best = std::min(best, inst.objective(x));
    best = std::min(best, inst.objective(sum / t));
  }
  inst.optimum = best;
  return inst;
}

}  // namespace lpq
