#include "lpq/quantizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lpq/errors.hpp"
#include "lpq/norms.hpp"
#include "lpq/rotation.hpp"
#include "lpq/rounding.hpp"

namespace lpq {

namespace {

constexpr double kNormTol = 1e-9;  // relative tolerance on norm preconditions

void check_dim(const Eigen::Ref<const Eigen::VectorXd>& v, int dim, const char* who) {
  if (static_cast<int>(v.size()) != dim) {
    throw ContractViolation(std::string(who) + ": input dimension " +
                            std::to_string(v.size()) + " does not match spec dimension " +
                            std::to_string(dim));
  }
}

void check_norm(double value, double bound, const char* who) {
  if (!(value <= bound * (1.0 + kNormTol))) {
    throw ContractViolation(std::string(who) + ": input norm " + std::to_string(value) +
                            " exceeds declared bound " + std::to_string(bound));
  }
}

// Blit src payload bits into dst starting at offset.
void copy_bits(BitMessage& dst, int offset, const BitMessage& src) {
  for (int i = 0; i < src.width(); ++i) dst.set_bit(offset + i, src.get_bit(i));
}

}  // namespace

// --------------------------------------------------------------------------
// SimQ

int SimqSpec::width() const { return ceil_log2_u64(2ULL * dim + 1); }

SimqSpec derive_simq_spec(int dim, double bound) {
  if (dim < 1) throw ContractViolation("simq: dimension must be positive");
  if (!(bound > 0.0)) throw ContractViolation("simq: bound must be positive");
  return SimqSpec{dim, bound};
}

int simq_sample_outcome(const Eigen::Ref<const Eigen::VectorXd>& y, double bound, Rng& rng) {
  const int d = static_cast<int>(y.size());
  const double u = rng.next_double() * bound;
  double cum = 0.0;
  for (int i = 0; i < d; ++i) {
    cum += std::fabs(y[i]);
    if (u < cum) return y[i] > 0.0 ? i + 1 : d + i + 1;
  }
  return 0;
}

QuantizedMessage simq_message_from_outcome(int outcome, const SimqSpec& spec) {
  QuantizedMessage msg{QuantizerFamily::simq, BitMessage(spec.width()), 0};
  msg.payload.write_field(0, spec.width(), static_cast<std::uint64_t>(outcome));
  return msg;
}

QuantizedMessage simq_encode(const GradientVector& y, const SimqSpec& spec, Rng& rng) {
  check_dim(y.values, spec.dim, "simq_encode");
  check_norm(y.values.lpNorm<1>(), spec.bound, "simq_encode");
  return simq_message_from_outcome(simq_sample_outcome(y.values, spec.bound, rng), spec);
}

Eigen::VectorXd simq_decode_outcome(int outcome, const SimqSpec& spec) {
  if (outcome < 0 || outcome > 2 * spec.dim) {
    throw CorruptMessage("simq_decode: outcome " + std::to_string(outcome) + " out of range");
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(spec.dim);
  if (outcome == 0) return z;
  if (outcome <= spec.dim) {
    z[outcome - 1] = spec.bound;
  } else {
    z[outcome - spec.dim - 1] = -spec.bound;
  }
  return z;
}

Eigen::VectorXd simq_decode(const QuantizedMessage& msg, const SimqSpec& spec) {
  const int v = static_cast<int>(msg.payload.read_field(0, spec.width()));
  return simq_decode_outcome(v, spec);
}

// --------------------------------------------------------------------------
// SimQ+

SimqPlusSpec derive_simqplus_spec(int dim, double p, double bound, std::optional<int> reps) {
  if (dim < 1) throw ContractViolation("simqplus: dimension must be positive");
  if (!(bound > 0.0)) throw ContractViolation("simqplus: bound must be positive");
  if (!(p >= 2.0)) throw ContractViolation("simqplus: p must be at least 2");
  SimqPlusSpec spec;
  spec.dim = dim;
  spec.p = p;
  spec.bound = bound;
  spec.reps = reps.value_or(ceil_guarded(std::pow(static_cast<double>(dim),
                                                  std::isinf(p) ? 0.0 : 2.0 / p)));
  if (spec.reps < 1) throw ContractViolation("simqplus: repetition count must be positive");
  spec.scaled_bound = bound * root_pow(static_cast<double>(dim), p);
  spec.rank_width = type_rank_width(dim, spec.reps);
  return spec;
}

SimqPlusOutcome simqplus_sample_outcome(const Eigen::Ref<const Eigen::VectorXd>& y,
                                        const SimqPlusSpec& spec, Rng& rng) {
  const int d = spec.dim;
  // Prefix sums of |y| let each of the k draws run in log d.
  Eigen::VectorXd prefix(d);
  double cum = 0.0;
  for (int i = 0; i < d; ++i) {
    cum += std::fabs(y[i]);
    prefix[i] = cum;
  }
  SimqPlusOutcome outcome;
  outcome.type.counts.assign(static_cast<std::size_t>(d) + 1, 0);
  for (int r = 0; r < spec.reps; ++r) {
    const double u = rng.next_double() * spec.scaled_bound;
    int idx = 0;  // zero outcome
    if (u < cum) {
      const double* begin = prefix.data();
      idx = 1 + static_cast<int>(std::upper_bound(begin, begin + d, u) - begin);
    }
    ++outcome.type.counts[static_cast<std::size_t>(idx)];
  }
  outcome.sign_bits.assign(static_cast<std::size_t>(spec.reps), 0);
  int slot = 0;
  for (int i = 1; i <= d; ++i) {
    if (outcome.type.counts[static_cast<std::size_t>(i)] > 0) {
      outcome.sign_bits[static_cast<std::size_t>(slot++)] = y[i - 1] > 0.0 ? 1 : 0;
    }
  }
  return outcome;
}

QuantizedMessage simqplus_message_from_outcome(const SimqPlusOutcome& outcome,
                                               const SimqPlusSpec& spec) {
  QuantizedMessage msg{QuantizerFamily::simqplus, BitMessage(spec.width()), 0};
  msg.payload.write_big_field(0, spec.rank_width, multiset_rank(outcome.type));
  for (int j = 0; j < spec.reps; ++j) {
    msg.payload.set_bit(spec.rank_width + j, outcome.sign_bits[static_cast<std::size_t>(j)]);
  }
  return msg;
}

QuantizedMessage simqplus_encode(const GradientVector& y, const SimqPlusSpec& spec, Rng& rng) {
  check_dim(y.values, spec.dim, "simqplus_encode");
  check_norm(lp_norm(y.values, holder_conjugate(spec.p)), spec.bound, "simqplus_encode");
  return simqplus_message_from_outcome(simqplus_sample_outcome(y.values, spec, rng), spec);
}

Eigen::VectorXd simqplus_decode_outcome(const SimqPlusOutcome& outcome,
                                        const SimqPlusSpec& spec) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(spec.dim);
  const double unit = spec.scaled_bound / spec.reps;
  int slot = 0;
  for (int i = 1; i <= spec.dim; ++i) {
    const std::uint32_t n = outcome.type.counts[static_cast<std::size_t>(i)];
    if (n > 0) {
      const double sign = outcome.sign_bits[static_cast<std::size_t>(slot++)] ? 1.0 : -1.0;
      z[i - 1] = unit * n * sign;
    }
  }
  return z;
}

Eigen::VectorXd simqplus_decode(const QuantizedMessage& msg, const SimqPlusSpec& spec) {
  const BigUint rank = msg.payload.read_big_field(0, spec.rank_width);
  if (rank >= multiset_type_count(spec.dim, spec.reps)) {
    throw CorruptMessage("simqplus_decode: type rank out of range");
  }
  SimqPlusOutcome outcome;
  outcome.type = multiset_unrank(rank, spec.dim, spec.reps);
  outcome.sign_bits.assign(static_cast<std::size_t>(spec.reps), 0);
  for (int j = 0; j < spec.reps; ++j) {
    outcome.sign_bits[static_cast<std::size_t>(j)] =
        msg.payload.get_bit(spec.rank_width + j) ? 1 : 0;
  }
  return simqplus_decode_outcome(outcome, spec);
}

// --------------------------------------------------------------------------
// CUQ

CuqSpec make_cuq_spec(int dim, double range, int levels) {
  if (dim < 1) throw ContractViolation("cuq: dimension must be positive");
  if (!(range > 0.0)) throw ContractViolation("cuq: range must be positive");
  if (levels < 1) throw ContractViolation("cuq: need at least one level");
  CuqSpec spec;
  spec.dim = dim;
  spec.range = range;
  spec.levels = levels;
  spec.field_width = ceil_log2_u64(static_cast<std::uint64_t>(levels) + 1);
  return spec;
}

std::vector<int> cuq_sample_levels(const Eigen::Ref<const Eigen::VectorXd>& y1,
                                   const CuqSpec& spec, Rng& rng) {
  check_dim(y1, spec.dim, "cuq_encode");
  check_norm(y1.size() == 0 ? 0.0 : y1.cwiseAbs().maxCoeff(), spec.range, "cuq_encode");
  std::vector<int> levels(static_cast<std::size_t>(spec.dim));
  const double m = spec.range;
  for (int i = 0; i < spec.dim; ++i) {
    const double y = std::clamp(y1[i], -m, m);
    const double u = (y + m) * spec.levels / (2.0 * m);
    int lo = static_cast<int>(std::floor(u));
    if (lo >= spec.levels) {
      levels[static_cast<std::size_t>(i)] = spec.levels;  // y == M lands on the top point
      continue;
    }
    const double frac = u - lo;  // stochastic rounding: up with the fractional mass
    levels[static_cast<std::size_t>(i)] = lo + (rng.next_double() < frac ? 1 : 0);
  }
  return levels;
}

QuantizedMessage cuq_message_from_levels(const std::vector<int>& levels, const CuqSpec& spec) {
  QuantizedMessage msg{QuantizerFamily::cuq, BitMessage(spec.width()), 0};
  for (int i = 0; i < spec.dim; ++i) {
    msg.payload.write_field(i * spec.field_width, spec.field_width,
                            static_cast<std::uint64_t>(levels[static_cast<std::size_t>(i)]));
  }
  return msg;
}

QuantizedMessage cuq_encode(const Eigen::Ref<const Eigen::VectorXd>& y1, const CuqSpec& spec,
                            Rng& rng) {
  return cuq_message_from_levels(cuq_sample_levels(y1, spec, rng), spec);
}

Eigen::VectorXd cuq_decode(const QuantizedMessage& msg, const CuqSpec& spec) {
  Eigen::VectorXd z(spec.dim);
  for (int i = 0; i < spec.dim; ++i) {
    const auto level = msg.payload.read_field(i * spec.field_width, spec.field_width);
    if (level > static_cast<std::uint64_t>(spec.levels)) {
      throw CorruptMessage("cuq_decode: level index " + std::to_string(level) +
                           " exceeds " + std::to_string(spec.levels));
    }
    z[i] = spec.grid_value(static_cast<int>(level));
  }
  return z;
}

// --------------------------------------------------------------------------
// RATQ

RatqSpec derive_ratq_spec(int dim, double bound, int level_width) {
  if (dim < 1) throw ContractViolation("ratq: dimension must be positive");
  if (!(bound > 0.0)) throw ContractViolation("ratq: bound must be positive");
  if (level_width < 1) throw ContractViolation("ratq: level width must be positive");
  RatqSpec spec;
  spec.dim = dim;
  spec.bound = bound;
  spec.padded_dim = padded_pow2(dim);
  spec.level_width = level_width;
  spec.levels = (1 << level_width) - 1;
  const int log_h = ceil_log2_u64(
      static_cast<std::uint64_t>(1 + iterated_ln_count(dim / 3.0)));
  spec.ladder_size = 1 << log_h;
  spec.ladder_width = log_h;
  spec.group_size = std::max(1, log_h);
  spec.base_m = 3.0 * bound * bound / dim;
  spec.base_m0 = 2.0 * bound * bound / dim * std::log(static_cast<double>(spec.group_size));
  spec.ladder.resize(spec.ladder_size);
  double e_star = 1.0;  // e*_0 = 1, e*_{j+1} = exp(e*_j)
  for (int j = 0; j < spec.ladder_size; ++j) {
    spec.ladder[j] = std::sqrt(spec.base_m + spec.base_m0 * e_star);
    e_star = std::min(std::exp(e_star), 1e300);
  }
  // Clamp the final level so every admissible input is covered even when the
  // ladder degenerates (s = 1 makes m0 = 0).
  spec.ladder[spec.ladder_size - 1] = std::max(spec.ladder[spec.ladder_size - 1], bound);
  return spec;
}

RatqOutcome ratq_sample_outcome(const Eigen::Ref<const Eigen::VectorXd>& y2prime,
                                const RatqSpec& spec, std::uint64_t seed, Rng& rng) {
  if (static_cast<int>(y2prime.size()) > spec.dim) {
    throw ContractViolation("ratq_encode: input longer than spec capacity");
  }
  check_norm(y2prime.norm(), spec.bound, "ratq_encode");
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(spec.dim);
  padded.head(y2prime.size()) = y2prime;
  const Eigen::VectorXd w = rotate(padded, seed);  // length spec.padded_dim

  RatqOutcome outcome;
  outcome.group_ladder.reserve(static_cast<std::size_t>(spec.groups()));
  outcome.levels.resize(static_cast<std::size_t>(spec.padded_dim));
  for (int g = 0; g < spec.groups(); ++g) {
    const int begin = g * spec.group_size;
    const int len = std::min(spec.group_size, spec.padded_dim - begin);
    const double peak = w.segment(begin, len).cwiseAbs().maxCoeff();
    int j = 0;
    while (j < spec.ladder_size - 1 && peak > spec.ladder[j]) ++j;
    if (peak > spec.ladder[j] * (1.0 + 1e-6)) {
      throw std::logic_error("ratq: rotated coordinate exceeds the clamped ladder top");
    }
    outcome.group_ladder.push_back(j);
    const CuqSpec group_cuq = make_cuq_spec(len, spec.ladder[j], spec.levels);
    // Rotation noise can leave a coordinate a few ulps past the range.
    const Eigen::VectorXd segment =
        w.segment(begin, len).cwiseMax(-spec.ladder[j]).cwiseMin(spec.ladder[j]);
    const std::vector<int> levels = cuq_sample_levels(segment, group_cuq, rng);
    std::copy(levels.begin(), levels.end(),
              outcome.levels.begin() + static_cast<std::ptrdiff_t>(begin));
  }
  return outcome;
}

QuantizedMessage ratq_message_from_outcome(const RatqOutcome& outcome, const RatqSpec& spec,
                                           std::uint64_t seed) {
  QuantizedMessage msg{QuantizerFamily::ratq, BitMessage(spec.width()), seed};
  for (int g = 0; g < spec.groups(); ++g) {
    msg.payload.write_field(g * spec.ladder_width, spec.ladder_width,
                            static_cast<std::uint64_t>(outcome.group_ladder[g]));
  }
  const int base = spec.groups() * spec.ladder_width;
  for (int i = 0; i < spec.padded_dim; ++i) {
    msg.payload.write_field(base + i * spec.level_width, spec.level_width,
                            static_cast<std::uint64_t>(outcome.levels[i]));
  }
  return msg;
}

QuantizedMessage ratq_encode(const Eigen::Ref<const Eigen::VectorXd>& y2prime,
                             const RatqSpec& spec, std::uint64_t seed, Rng& rng) {
  return ratq_message_from_outcome(ratq_sample_outcome(y2prime, spec, seed, rng), spec, seed);
}

RatqOutcome ratq_read_outcome(const QuantizedMessage& msg, const RatqSpec& spec) {
  RatqOutcome outcome;
  outcome.group_ladder.resize(static_cast<std::size_t>(spec.groups()));
  outcome.levels.resize(static_cast<std::size_t>(spec.padded_dim));
  for (int g = 0; g < spec.groups(); ++g) {
    const auto j = msg.payload.read_field(g * spec.ladder_width, spec.ladder_width);
    if (j >= static_cast<std::uint64_t>(spec.ladder_size)) {
      throw CorruptMessage("ratq_decode: ladder index out of range");
    }
    outcome.group_ladder[g] = static_cast<int>(j);
  }
  const int base = spec.groups() * spec.ladder_width;
  for (int i = 0; i < spec.padded_dim; ++i) {
    const auto level = msg.payload.read_field(base + i * spec.level_width, spec.level_width);
    if (level > static_cast<std::uint64_t>(spec.levels)) {
      throw CorruptMessage("ratq_decode: level index out of range");
    }
    outcome.levels[i] = static_cast<int>(level);
  }
  return outcome;
}

Eigen::VectorXd ratq_decode_outcome(const RatqOutcome& outcome, const RatqSpec& spec,
                                    std::uint64_t seed) {
  Eigen::VectorXd w(spec.padded_dim);
  for (int g = 0; g < spec.groups(); ++g) {
    const int begin = g * spec.group_size;
    const int len = std::min(spec.group_size, spec.padded_dim - begin);
    const double m = spec.ladder[outcome.group_ladder[g]];
    for (int i = 0; i < len; ++i) {
      w[begin + i] = -m + 2.0 * m * outcome.levels[begin + i] / spec.levels;
    }
  }
  return unrotate(w, seed, spec.dim);
}

Eigen::VectorXd ratq_decode(const QuantizedMessage& msg, const RatqSpec& spec) {
  return ratq_decode_outcome(ratq_read_outcome(msg, spec), spec, msg.rotation_seed);
}

// --------------------------------------------------------------------------
// Split quantizer

SplitSpec derive_split_spec(int dim, double p, double bound) {
  if (!(p >= 1.0) || !(p < 2.0)) throw ContractViolation("split: p must lie in [1, 2)");
  if (!(bound > 0.0)) throw ContractViolation("split: bound must be positive");
  if (dim < 4) {
    // ln*(d/3) = 0 makes Delta2 = 0 and ln(Delta2) undefined.
    throw ContractViolation("split: dimension below 4 is degenerate");
  }
  SplitSpec spec;
  spec.dim = dim;
  spec.bound = bound;
  spec.p = p;
  spec.q = holder_conjugate(p);
  spec.delta2 = ceil_log2_u64(static_cast<std::uint64_t>(1 + iterated_ln_count(dim / 3.0)));
  const double inv_q = std::isinf(spec.q) ? 0.0 : 1.0 / spec.q;
  spec.delta1 = ceil_log2_guarded(
      2.0 + std::sqrt(18.0 + 6.0 * std::log(static_cast<double>(spec.delta2))) *
                std::pow(static_cast<double>(dim), 0.5 - inv_q));
  spec.threshold = bound * root_pow(static_cast<double>(spec.delta1), spec.q) /
                   root_pow(static_cast<double>(dim), spec.q);
  spec.capacity = dim / spec.delta1;
  const int cuq_width = ceil_log2_guarded(
      2.0 * std::sqrt(2.0) * root_pow(static_cast<double>(spec.delta1), spec.q) + 2.0);
  spec.cuq = make_cuq_spec(dim, spec.threshold, (1 << cuq_width) - 1);
  const double b_prime = bound * std::pow(static_cast<double>(dim), 0.5 - inv_q);
  spec.ratq = derive_ratq_spec(spec.capacity, b_prime, spec.delta1);
  return spec;
}

SplitOutcome split_sample_outcome(const GradientVector& y, const SplitSpec& spec,
                                  std::uint64_t seed, Rng& rng) {
  check_dim(y.values, spec.dim, "split_encode");
  check_norm(lp_norm(y.values, spec.q), spec.bound, "split_encode");
  SplitOutcome outcome;
  Eigen::VectorXd y1 = y.values;
  // The tolerance keeps the support count within capacity for inputs that
  // pass the norm check at its own 1e-9 slack.
  const double cut = spec.threshold * (1.0 + kNormTol);
  for (int i = 0; i < spec.dim; ++i) {
    if (std::fabs(y.values[i]) > cut) {
      outcome.support.push_back(i);
      y1[i] = 0.0;
    }
  }
  if (static_cast<int>(outcome.support.size()) > spec.capacity) {
    throw ContractViolation("split_encode: more than capacity coordinates above the "
                            "threshold; the lq bound cannot hold");
  }
  outcome.cuq_levels = cuq_sample_levels(y1, spec.cuq, rng);
  Eigen::VectorXd y2prime = Eigen::VectorXd::Zero(spec.capacity);
  for (std::size_t j = 0; j < outcome.support.size(); ++j) {
    y2prime[static_cast<int>(j)] = y.values[outcome.support[j]];
  }
  outcome.ratq = ratq_sample_outcome(y2prime, spec.ratq, seed, rng);
  return outcome;
}

QuantizedMessage split_message_from_outcome(const SplitOutcome& outcome, const SplitSpec& spec,
                                            std::uint64_t seed) {
  QuantizedMessage msg{QuantizerFamily::split, BitMessage(spec.width()), seed};
  for (int idx : outcome.support) msg.payload.set_bit(idx, true);
  copy_bits(msg.payload, spec.dim, cuq_message_from_levels(outcome.cuq_levels, spec.cuq).payload);
  copy_bits(msg.payload, spec.dim + spec.cuq.width(),
            ratq_message_from_outcome(outcome.ratq, spec.ratq, seed).payload);
  return msg;
}

QuantizedMessage split_encode(const GradientVector& y, const SplitSpec& spec,
                              std::uint64_t seed, Rng& rng) {
  return split_message_from_outcome(split_sample_outcome(y, spec, seed, rng), spec, seed);
}

Eigen::VectorXd split_decode(const QuantizedMessage& msg, const SplitSpec& spec) {
  std::vector<int> support;
  for (int i = 0; i < spec.dim; ++i) {
    if (msg.payload.get_bit(i)) support.push_back(i);
  }
  if (static_cast<int>(support.size()) > spec.capacity) {
    throw CorruptMessage("split_decode: support bitmap exceeds capacity");
  }
  BitMessage cuq_bits(spec.cuq.width());
  for (int i = 0; i < cuq_bits.width(); ++i) {
    cuq_bits.set_bit(i, msg.payload.get_bit(spec.dim + i));
  }
  Eigen::VectorXd out =
      cuq_decode(QuantizedMessage{QuantizerFamily::cuq, cuq_bits, 0}, spec.cuq);

  BitMessage ratq_bits(spec.ratq.width());
  const int base = spec.dim + spec.cuq.width();
  for (int i = 0; i < ratq_bits.width(); ++i) {
    ratq_bits.set_bit(i, msg.payload.get_bit(base + i));
  }
  const Eigen::VectorXd tail = ratq_decode(
      QuantizedMessage{QuantizerFamily::ratq, ratq_bits, msg.rotation_seed}, spec.ratq);
  for (std::size_t j = 0; j < support.size(); ++j) {
    out[support[j]] += tail[static_cast<int>(j)];
  }
  return out;
}

// --------------------------------------------------------------------------

int bit_budget(const QuantizerSpec& spec) {
  return std::visit([](const auto& s) { return s.width(); }, spec);
}

double alpha0_bound(const QuantizerSpec& spec) {
  if (const auto* simq = std::get_if<SimqSpec>(&spec)) return simq->bound;
  if (const auto* plus = std::get_if<SimqPlusSpec>(&spec)) {
    const double d_2p =
        std::isinf(plus->p) ? 1.0 : std::pow(static_cast<double>(plus->dim), 2.0 / plus->p);
    return std::sqrt(plus->bound * plus->bound * d_2p / plus->reps +
                     plus->bound * plus->bound);
  }
  if (const auto* split = std::get_if<SplitSpec>(&spec)) {
    return std::sqrt(12.0) * split->bound;
  }
  throw ContractViolation("alpha0_bound: defined for SimQ, SimQ+ and the split quantizer");
}

QuantizerFamily family_of(const QuantizerSpec& spec) {
  switch (spec.index()) {
    case 0: return QuantizerFamily::simq;
    case 1: return QuantizerFamily::simqplus;
    case 2: return QuantizerFamily::cuq;
    case 3: return QuantizerFamily::ratq;
    default: return QuantizerFamily::split;
  }
}

Eigen::VectorXd quantize_roundtrip(const QuantizerSpec& spec, const GradientVector& y,
                                   Rng& rng) {
  if (const auto* simq = std::get_if<SimqSpec>(&spec)) {
    return simq_decode(simq_encode(y, *simq, rng), *simq);
  }
  if (const auto* plus = std::get_if<SimqPlusSpec>(&spec)) {
    return simqplus_decode(simqplus_encode(y, *plus, rng), *plus);
  }
  if (const auto* cuq = std::get_if<CuqSpec>(&spec)) {
    return cuq_decode(cuq_encode(y.values, *cuq, rng), *cuq);
  }
  if (const auto* ratq = std::get_if<RatqSpec>(&spec)) {
    const std::uint64_t seed = rng.next_u64();
    return ratq_decode(ratq_encode(y.values, *ratq, seed, rng), *ratq);
  }
  const auto& split = std::get<SplitSpec>(spec);
  const std::uint64_t seed = rng.next_u64();
  return split_decode(split_encode(y, split, seed, rng), split);
}

}  // namespace lpq
