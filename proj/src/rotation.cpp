#include "lpq/rotation.hpp"

#include <cmath>

#include "lpq/errors.hpp"
#include "lpq/rng.hpp"

namespace lpq {

namespace {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace

int padded_pow2(int n) {
  if (n < 1) throw ContractViolation("padded_pow2: dimension must be positive");
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

Eigen::VectorXd sign_diagonal(std::uint64_t seed, int dim) {
  if (!is_pow2(dim)) throw ContractViolation("sign_diagonal: dim must be a power of two");
  Rng rng(seed);
  Eigen::VectorXd signs(dim);
  for (int i = 0; i < dim; ++i) signs[i] = static_cast<double>(rng.next_sign());
  return signs;
}

void fwht_inplace(Eigen::Ref<Eigen::VectorXd> v, bool normalized) {
  const int n = static_cast<int>(v.size());
  if (!is_pow2(n)) throw ContractViolation("fwht: length must be a power of two");
  for (int half = 1; half < n; half <<= 1) {
    for (int block = 0; block < n; block += half << 1) {
      for (int i = block; i < block + half; ++i) {
        const double a = v[i];
        const double b = v[i + half];
        v[i] = a + b;
        v[i + half] = a - b;
      }
    }
  }
  if (normalized) v *= 1.0 / std::sqrt(static_cast<double>(n));
}

Eigen::VectorXd fwht(const Eigen::Ref<const Eigen::VectorXd>& v, bool normalized) {
  Eigen::VectorXd out = v;
  fwht_inplace(out, normalized);
  return out;
}

Eigen::VectorXd rotate(const Eigen::Ref<const Eigen::VectorXd>& v, std::uint64_t seed) {
  const int n = static_cast<int>(v.size());
  const int dim = padded_pow2(n);
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(dim);
  padded.head(n) = v;
  padded.array() *= sign_diagonal(seed, dim).array();
  fwht_inplace(padded, /*normalized=*/true);
  return padded;
}

Eigen::VectorXd unrotate(const Eigen::Ref<const Eigen::VectorXd>& w, std::uint64_t seed,
                         int original_n) {
  const int dim = static_cast<int>(w.size());
  if (original_n < 1 || padded_pow2(original_n) != dim) {
    throw ContractViolation("unrotate: length is not the padded dimension for original_n");
  }
  Eigen::VectorXd out = fwht(w, /*normalized=*/true);
  out.array() *= sign_diagonal(seed, dim).array();
  return out.head(original_n);
}

}  // namespace lpq
