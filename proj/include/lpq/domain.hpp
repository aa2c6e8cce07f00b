#pragma once

#include <Eigen/Core>

namespace lpq {

// Compact convex feasible set with a computable lp diameter. The box is the
// hard-instance domain; lp balls are the mirror-descent domains.
struct Domain {
  enum class Kind { l2_ball, box, lp_ball };

  Kind kind = Kind::l2_ball;
  int dim = 0;
  double radius = 1.0;    // ball radius or box half-width
  double exponent = 2.0;  // lp_ball only: the ball's norm index p'

  // Diameter sup_{x,y} ||x - y||_p.
  double lp_diameter(double p) const;

  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x, double tol = 1e-9) const;
};

// Euclidean projection: radial scaling for the l2 ball, coordinate clamp for
// the box. lp balls have no closed-form Euclidean projection and are handled
// by the mirror-descent Bregman projection instead.
Eigen::VectorXd project(const Domain& domain, const Eigen::Ref<const Eigen::VectorXd>& x);

// min_{x in domain} <g, x> for a linear objective; used by the hard instances
// to report exact optima.
double min_linear_objective(const Domain& domain, const Eigen::Ref<const Eigen::VectorXd>& g);

}  // namespace lpq
