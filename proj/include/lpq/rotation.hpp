#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace lpq {

// Randomized Hadamard rotation R = (1/sqrt(D)) * H * diag(eps) with a
// Rademacher sign diagonal derived from a shared 64-bit seed. The seed is
// exchanged out-of-band and is not part of any quantizer message.

// Smallest power of two >= n (n >= 1).
int padded_pow2(int n);

// Deterministic +/-1 diagonal for (seed, dim); dim must be a power of two.
Eigen::VectorXd sign_diagonal(std::uint64_t seed, int dim);

// In-place fast Walsh-Hadamard transform; length must be a power of two.
// With normalization 1/sqrt(dim) the transform is an orthonormal involution.
void fwht_inplace(Eigen::Ref<Eigen::VectorXd> v, bool normalized);
Eigen::VectorXd fwht(const Eigen::Ref<const Eigen::VectorXd>& v, bool normalized);

// Zero-pad v to the next power of two, multiply by the sign diagonal, apply
// the normalized transform. Preserves the l2 norm; every output coordinate
// has magnitude at most ||v||_2.
Eigen::VectorXd rotate(const Eigen::Ref<const Eigen::VectorXd>& v, std::uint64_t seed);

// Exact inverse of rotate followed by truncation to the first original_n
// coordinates; w must have the padded length for original_n.
Eigen::VectorXd unrotate(const Eigen::Ref<const Eigen::VectorXd>& w, std::uint64_t seed,
                         int original_n);

}  // namespace lpq
