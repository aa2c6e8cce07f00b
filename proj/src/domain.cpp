#include "lpq/domain.hpp"

#include <cmath>

#include "lpq/errors.hpp"
#include "lpq/norms.hpp"

namespace lpq {

double Domain::lp_diameter(double p) const {
  // Symmetric bodies: diameter = 2 * max ||x||_p over the set.
  const double d = static_cast<double>(dim);
  switch (kind) {
    case Kind::box:
      return 2.0 * radius * root_pow(d, p);
    case Kind::l2_ball:
      // max ||x||_p over ||x||_2 <= R: basis vector for p >= 2, uniform
      // vector for p < 2.
      if (p >= 2.0) return 2.0 * radius;
      return 2.0 * radius * std::pow(d, 1.0 / p - 0.5);
    case Kind::lp_ball:
      if (p >= exponent) return 2.0 * radius;
      return 2.0 * radius * std::pow(d, 1.0 / p - 1.0 / exponent);
  }
  throw ContractViolation("lp_diameter: unknown domain kind");
}

bool Domain::contains(const Eigen::Ref<const Eigen::VectorXd>& x, double tol) const {
  if (static_cast<int>(x.size()) != dim) return false;
  switch (kind) {
    case Kind::box:
      return x.cwiseAbs().maxCoeff() <= radius * (1.0 + tol) + tol;
    case Kind::l2_ball:
      return x.norm() <= radius * (1.0 + tol) + tol;
    case Kind::lp_ball:
      return lp_norm(x, exponent) <= radius * (1.0 + tol) + tol;
  }
  return false;
}

Eigen::VectorXd project(const Domain& domain, const Eigen::Ref<const Eigen::VectorXd>& x) {
  switch (domain.kind) {
    case Domain::Kind::l2_ball: {
      const double n = x.norm();
      if (n <= domain.radius) return x;
      return x * (domain.radius / n);
    }
    case Domain::Kind::box:
      return x.cwiseMax(-domain.radius).cwiseMin(domain.radius);
    case Domain::Kind::lp_ball:
      throw ContractViolation("project: lp ball has no closed-form Euclidean projection");
  }
  throw ContractViolation("project: unknown domain kind");
}

double min_linear_objective(const Domain& domain, const Eigen::Ref<const Eigen::VectorXd>& g) {
  switch (domain.kind) {
    case Domain::Kind::box:
      return -domain.radius * g.lpNorm<1>();
    case Domain::Kind::l2_ball:
      return -domain.radius * g.norm();
    case Domain::Kind::lp_ball:
      return -domain.radius * lp_norm(g, holder_conjugate(domain.exponent));
  }
  throw ContractViolation("min_linear_objective: unknown domain kind");
}

}  // namespace lpq
