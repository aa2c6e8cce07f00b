#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "lpq/bitcodec.hpp"
#include "lpq/rng.hpp"

namespace lpq {

// Input at a quantizer entry: a vector with its lq-norm certificate
// ||values||_q <= bound. The bound is checked (1e-9 relative tolerance)
// before any bit is produced; violations are hard errors, never silent
// clipping, since clipping would break unbiasedness.
struct GradientVector {
  Eigen::VectorXd values;
  double bound = 1.0;       // B
  double norm_index = 2.0;  // q in [1, inf]
};

enum class QuantizerFamily { simq, simqplus, cuq, ratq, split };

// Every encoder emits exactly width() payload bits regardless of input; the
// rotation seed is shared randomness exchanged out-of-band (RATQ/split) and
// never counted against the budget.
struct QuantizedMessage {
  QuantizerFamily family;
  BitMessage payload;
  std::uint64_t rotation_seed = 0;
};

// ---------------------------------------------------------------------------
// SimQ: expresses a point of the l1 ball of radius B as a random signed basis
// vector via l1 sampling. Wire format: one big-endian field of
// ceil(log2(2d+1)) bits holding v, where v = 0 is the zero outcome,
// v in [1, d] decodes to +B e_v and v in [d+1, 2d] to -B e_{v-d}.

struct SimqSpec {
  int dim = 0;
  double bound = 1.0;  // l1 bound on admissible inputs
  int width() const;   // ceil(log2(2d+1))
};

SimqSpec derive_simq_spec(int dim, double bound);

// Draws the outcome v in [0, 2d]: index i with probability |y(i)|/bound,
// zero outcome with the remaining mass, sign from y(i).
int simq_sample_outcome(const Eigen::Ref<const Eigen::VectorXd>& y, double bound, Rng& rng);

QuantizedMessage simq_message_from_outcome(int outcome, const SimqSpec& spec);
QuantizedMessage simq_encode(const GradientVector& y, const SimqSpec& spec, Rng& rng);

Eigen::VectorXd simq_decode_outcome(int outcome, const SimqSpec& spec);
Eigen::VectorXd simq_decode(const QuantizedMessage& msg, const SimqSpec& spec);

// ---------------------------------------------------------------------------
// SimQ+: average of k independent SimQ draws at the scaled bound B d^{1/p}.
// Wire format: [type rank: ceil(log2 C(d+k,k)) bits][signs: k bits], where
// bit j holds the sign (+ -> 1) of the j-th smallest distinct nonzero index
// present in the type; unused sign bits are zero.

struct SimqPlusSpec {
  int dim = 0;
  double bound = 1.0;        // B, lq bound with q conjugate to p
  double p = 2.0;            // p in [2, inf]
  int reps = 1;              // k
  double scaled_bound = 1.0; // B~ = B d^{1/p}
  int rank_width = 0;        // ceil(log2 C(d+k,k))
  int width() const { return rank_width + reps; }
};

// reps defaults to ceil(d^{2/p}).
SimqPlusSpec derive_simqplus_spec(int dim, double p, double bound,
                                  std::optional<int> reps = std::nullopt);

struct SimqPlusOutcome {
  MultisetType type;                    // counts over {0, ..., d}
  std::vector<std::uint8_t> sign_bits;  // k entries in {0, 1}
};

SimqPlusOutcome simqplus_sample_outcome(const Eigen::Ref<const Eigen::VectorXd>& y,
                                        const SimqPlusSpec& spec, Rng& rng);
QuantizedMessage simqplus_message_from_outcome(const SimqPlusOutcome& outcome,
                                               const SimqPlusSpec& spec);
QuantizedMessage simqplus_encode(const GradientVector& y, const SimqPlusSpec& spec, Rng& rng);

Eigen::VectorXd simqplus_decode_outcome(const SimqPlusOutcome& outcome,
                                        const SimqPlusSpec& spec);
Eigen::VectorXd simqplus_decode(const QuantizedMessage& msg, const SimqPlusSpec& spec);

// ---------------------------------------------------------------------------
// CUQ: coordinate-wise uniform quantizer over [-M, M] with unbiased
// stochastic rounding onto the grid {-M + 2Mj/k : j = 0..k} (k+1 points).
// Wire format: d big-endian fields of ceil(log2(k+1)) bits.

struct CuqSpec {
  int dim = 0;
  double range = 1.0;  // M
  int levels = 1;      // k; the grid has k+1 points with spacing 2M/k
  int field_width = 1; // ceil(log2(k+1))
  int width() const { return dim * field_width; }
  double grid_value(int level) const { return -range + 2.0 * range * level / levels; }
};

CuqSpec make_cuq_spec(int dim, double range, int levels);

std::vector<int> cuq_sample_levels(const Eigen::Ref<const Eigen::VectorXd>& y1,
                                   const CuqSpec& spec, Rng& rng);
QuantizedMessage cuq_message_from_levels(const std::vector<int>& levels, const CuqSpec& spec);
QuantizedMessage cuq_encode(const Eigen::Ref<const Eigen::VectorXd>& y1, const CuqSpec& spec,
                            Rng& rng);
Eigen::VectorXd cuq_decode(const QuantizedMessage& msg, const CuqSpec& spec);

// ---------------------------------------------------------------------------
// RATQ: randomized Hadamard rotation, then per-group adaptive dynamic range
// from a tetra-iterated ladder, then uniform quantization of each coordinate.
// Wire format: ceil(d''/s) fields of log2(h) bits (group ladder indices)
// followed by d'' fields of log2(k+1) bits, d'' the padded dimension.

struct RatqSpec {
  int dim = 0;          // d', the capacity this instance is sized for
  double bound = 1.0;   // B', l2 bound on admissible inputs
  int padded_dim = 1;   // d'' = 2^ceil(log2 d')
  int ladder_size = 1;  // h
  int group_size = 1;   // s = log2 h, floored at 1
  int levels = 1;       // k, from log2(k+1) = level_width
  int ladder_width = 0; // log2 h bits per group index
  int level_width = 1;  // log2(k+1) bits per coordinate
  double base_m = 0.0;  // m  = 3 B'^2 / d'
  double base_m0 = 0.0; // m0 = (2 B'^2 / d') ln s
  Eigen::VectorXd ladder;  // M_0 <= ... <= M_{h-1}; top clamped to >= B'

  int groups() const { return (padded_dim + group_size - 1) / group_size; }
  int width() const { return groups() * ladder_width + padded_dim * level_width; }
};

RatqSpec derive_ratq_spec(int dim, double bound, int level_width);

struct RatqOutcome {
  std::vector<int> group_ladder;  // one ladder index per group
  std::vector<int> levels;        // one CUQ level per padded coordinate
};

RatqOutcome ratq_sample_outcome(const Eigen::Ref<const Eigen::VectorXd>& y2prime,
                                const RatqSpec& spec, std::uint64_t seed, Rng& rng);
QuantizedMessage ratq_message_from_outcome(const RatqOutcome& outcome, const RatqSpec& spec,
                                           std::uint64_t seed);
QuantizedMessage ratq_encode(const Eigen::Ref<const Eigen::VectorXd>& y2prime,
                             const RatqSpec& spec, std::uint64_t seed, Rng& rng);

RatqOutcome ratq_read_outcome(const QuantizedMessage& msg, const RatqSpec& spec);
Eigen::VectorXd ratq_decode_outcome(const RatqOutcome& outcome, const RatqSpec& spec,
                                    std::uint64_t seed);
Eigen::VectorXd ratq_decode(const QuantizedMessage& msg, const RatqSpec& spec);

// ---------------------------------------------------------------------------
// Split quantizer for p in [1, 2): coordinates with |Y(i)| <= c go through
// CUQ at range c; the at-most-capacity larger coordinates are packed in
// increasing index order, padded to capacity, and go through RATQ. Wire
// format: [support bitmap: d bits][CUQ block over all d coordinates]
// [RATQ block sized for the capacity].

struct SplitSpec {
  int dim = 0;
  double bound = 1.0;   // B, lq bound with q conjugate to p
  double p = 1.0;       // p in [1, 2)
  double q = 2.0;       // Holder conjugate of p
  double threshold = 0; // c = B Delta1^{1/q} / d^{1/q}
  int delta1 = 0;
  int delta2 = 0;
  int capacity = 0;     // floor(d / Delta1)
  CuqSpec cuq;          // dim coordinates at range c
  RatqSpec ratq;        // sized for capacity at bound B d^{1/2-1/q}

  int width() const { return dim + cuq.width() + ratq.width(); }
};

SplitSpec derive_split_spec(int dim, double p, double bound);

struct SplitOutcome {
  std::vector<int> support;  // indices with |Y(i)| > c, increasing
  std::vector<int> cuq_levels;
  RatqOutcome ratq;
};

SplitOutcome split_sample_outcome(const GradientVector& y, const SplitSpec& spec,
                                  std::uint64_t seed, Rng& rng);
QuantizedMessage split_message_from_outcome(const SplitOutcome& outcome, const SplitSpec& spec,
                                            std::uint64_t seed);
QuantizedMessage split_encode(const GradientVector& y, const SplitSpec& spec,
                              std::uint64_t seed, Rng& rng);
Eigen::VectorXd split_decode(const QuantizedMessage& msg, const SplitSpec& spec);

// ---------------------------------------------------------------------------

using QuantizerSpec = std::variant<SimqSpec, SimqPlusSpec, CuqSpec, RatqSpec, SplitSpec>;

// Exact message width in bits for any family.
int bit_budget(const QuantizerSpec& spec);

// Analytic worst-case root second moment of the output: B for SimQ,
// sqrt(B^2 d^{2/p}/k + B^2) for SimQ+, sqrt(12) B for the split quantizer.
double alpha0_bound(const QuantizerSpec& spec);

QuantizerFamily family_of(const QuantizerSpec& spec);

// Encode-then-decode through the wire format; draws a fresh rotation seed
// from rng for the families that use one.
Eigen::VectorXd quantize_roundtrip(const QuantizerSpec& spec, const GradientVector& y, Rng& rng);

}  // namespace lpq
