#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>

namespace lpq {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ||v||_p for p in [1, inf].
inline double lp_norm(const Eigen::Ref<const Eigen::VectorXd>& v, double p) {
  if (v.size() == 0) return 0.0;
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.lpNorm<1>();
  if (p == 2.0) return v.norm();
  return std::pow(v.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

// Holder conjugate q = p / (p - 1), with 1 <-> inf.
inline double holder_conjugate(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInfinity;
  return p / (p - 1.0);
}

// x^(1/p) with the p = inf convention x^0 = 1.
inline double root_pow(double x, double p) {
  if (std::isinf(p)) return 1.0;
  return std::pow(x, 1.0 / p);
}

}  // namespace lpq
