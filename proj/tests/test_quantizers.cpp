#include <doctest.h>

#include <cmath>
#include <vector>

#include "lpq/errors.hpp"
#include "lpq/norms.hpp"
#include "lpq/quantizers.hpp"
#include "lpq/rng.hpp"

using namespace lpq;

namespace {

// Outcome probabilities of SimQ under the sampling rule, indexed by v.
std::vector<double> simq_outcome_probs(const Eigen::VectorXd& y, double bound) {
  const int d = static_cast<int>(y.size());
  std::vector<double> probs(static_cast<std::size_t>(2 * d + 1), 0.0);
  double mass = 0.0;
  for (int i = 0; i < d; ++i) {
    const double p = std::fabs(y[i]) / bound;
    mass += p;
    if (y[i] > 0.0) probs[static_cast<std::size_t>(i + 1)] = p;
    if (y[i] < 0.0) probs[static_cast<std::size_t>(d + i + 1)] = p;
  }
  probs[0] = 1.0 - mass;
  return probs;
}

// Enumerated expectation of the decoded output over all 2d+1 outcomes.
Eigen::VectorXd simq_enumerated_mean(const Eigen::VectorXd& y, const SimqSpec& spec) {
  const auto probs = simq_outcome_probs(y, spec.bound);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(spec.dim);
  for (int v = 0; v <= 2 * spec.dim; ++v) {
    mean += probs[static_cast<std::size_t>(v)] * simq_decode_outcome(v, spec);
  }
  return mean;
}

// Per-coordinate two-point enumeration of CUQ's stochastic rounding.
Eigen::VectorXd cuq_enumerated_mean(const Eigen::VectorXd& y, const CuqSpec& spec) {
  Eigen::VectorXd mean(y.size());
  for (int i = 0; i < y.size(); ++i) {
    const double u = (y[i] + spec.range) * spec.levels / (2.0 * spec.range);
    const int lo = static_cast<int>(std::floor(u));
    if (lo >= spec.levels) {
      mean[i] = spec.grid_value(spec.levels);
      continue;
    }
    const double frac = u - lo;
    mean[i] = (1.0 - frac) * spec.grid_value(lo) + frac * spec.grid_value(lo + 1);
  }
  return mean;
}

Eigen::VectorXd random_direction_with_norm(int dim, double q, double norm, Rng& rng) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.next_gaussian();
  return v * (norm / lp_norm(v, q));
}

}  // namespace

TEST_SUITE("quantizers") {

// ---------------------------------------------------------------- SimQ

TEST_CASE("simq widths") {
  CHECK(derive_simq_spec(3, 1.0).width() == 3);
  CHECK(derive_simq_spec(2, 1.0).width() == 3);
  CHECK(derive_simq_spec(1024, 1.0).width() == 12);
  for (int d = 1; d <= 64; ++d) {
    CHECK(derive_simq_spec(d, 1.0).width() ==
          static_cast<int>(std::ceil(std::log2(2.0 * d + 1.0))));
  }
}

TEST_CASE("simq saturated input always emits its index") {
  const SimqSpec spec = derive_simq_spec(4, 2.5);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
  y[0] = 2.5;  // Y = B e_1
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    CHECK(simq_sample_outcome(y, spec.bound, rng) == 1);
  }
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
  for (int t = 0; t < 200; ++t) {
    CHECK(simq_sample_outcome(zero, spec.bound, rng) == 0);
  }
}

TEST_CASE("simq outcome distribution for the worked example") {
  Eigen::VectorXd y(2);
  y << 0.5, -0.25;
  const auto probs = simq_outcome_probs(y, 1.0);
  CHECK(probs[1] == doctest::Approx(0.5));
  CHECK(probs[4] == doctest::Approx(0.25));
  CHECK(probs[0] == doctest::Approx(0.25));
  CHECK(probs[2] == 0.0);
  CHECK(probs[3] == 0.0);

  // The encoder realizes the rule: frequencies within 4 sigma over N draws.
  const SimqSpec spec = derive_simq_spec(2, 1.0);
  Rng rng(99);
  const int n = 40000;
  std::vector<int> freq(5, 0);
  for (int t = 0; t < n; ++t) ++freq[static_cast<std::size_t>(
      simq_sample_outcome(y, spec.bound, rng))];
  for (int v = 0; v <= 4; ++v) {
    const double p = probs[static_cast<std::size_t>(v)];
    const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / n);
    CHECK(std::fabs(static_cast<double>(freq[static_cast<std::size_t>(v)]) / n - p) <=
          4.0 * sigma + 1e-9);
  }
}

TEST_CASE("simq decode maps outcomes to signed scaled basis vectors") {
  const SimqSpec spec = derive_simq_spec(2, 1.0);
  CHECK(simq_decode_outcome(1, spec) == Eigen::Vector2d(1.0, 0.0));
  CHECK(simq_decode_outcome(4, spec) == Eigen::Vector2d(0.0, -1.0));
  CHECK(simq_decode_outcome(0, spec) == Eigen::Vector2d(0.0, 0.0));
  CHECK_THROWS_AS(simq_decode_outcome(5, spec), CorruptMessage);

  // Corrupt wire value: 3-bit field can hold 7 > 2d = 4.
  QuantizedMessage msg{QuantizerFamily::simq, BitMessage(spec.width()), 0};
  msg.payload.write_field(0, spec.width(), 7);
  CHECK_THROWS_AS(simq_decode(msg, spec), CorruptMessage);
}

TEST_CASE("simq enumerated expectation equals the input exactly") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(8));
    const SimqSpec spec = derive_simq_spec(d, 1.0);
    Eigen::VectorXd y(d);
    for (int i = 0; i < d; ++i) y[i] = rng.next_double() - 0.5;
    y *= 0.9 / std::max(1e-12, y.lpNorm<1>());
    CHECK((simq_enumerated_mean(y, spec) - y).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("simq round trip through the wire format and norm structure") {
  const SimqSpec spec = derive_simq_spec(6, 1.5);
  Rng rng(77);
  for (int t = 0; t < 500; ++t) {
    const GradientVector y{random_direction_with_norm(6, 1.0, 1.2, rng), 1.5, 1.0};
    const QuantizedMessage msg = simq_encode(y, spec, rng);
    CHECK(msg.payload.width() == spec.width());
    const Eigen::VectorXd z = simq_decode(msg, spec);
    const double n = z.norm();
    CHECK((n == 0.0 || std::fabs(n - 1.5) < 1e-12));
  }
  const GradientVector bad{Eigen::VectorXd::Constant(6, 1.0), 1.5, 1.0};
  CHECK_THROWS_AS(simq_encode(bad, spec, rng), ContractViolation);
}

// ---------------------------------------------------------------- SimQ+

TEST_CASE("simqplus default repetitions") {
  CHECK(derive_simqplus_spec(16, kInfinity, 1.0).reps == 1);
  CHECK(derive_simqplus_spec(16, 2.0, 1.0).reps == 16);
  CHECK(derive_simqplus_spec(1024, 2.0, 1.0).reps == 1024);
  CHECK(derive_simqplus_spec(1024, 3.0, 1.0).reps == 102);  // ceil(1024^(2/3))
}

TEST_CASE("simqplus widths match the worked examples") {
  CHECK(derive_simqplus_spec(16, 2.0, 1.0).width() == 46);      // 30 + 16
  CHECK(derive_simqplus_spec(16, kInfinity, 1.0).width() == 6);  // 5 + 1
}

TEST_CASE("simqplus with k=1 draws exactly like simq at the scaled bound") {
  const SimqPlusSpec plus = derive_simqplus_spec(5, kInfinity, 2.0);
  REQUIRE(plus.reps == 1);
  CHECK(plus.scaled_bound == 2.0);
  CHECK(plus.width() >= derive_simq_spec(5, 2.0).width());
  Eigen::VectorXd y(5);
  y << 0.5, -0.3, 0.0, 0.7, -0.2;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng a(seed), b(seed);
    const SimqPlusOutcome outcome = simqplus_sample_outcome(y, plus, a);
    const int v = simq_sample_outcome(y, plus.scaled_bound, b);
    const int idx = v == 0 ? 0 : (v <= 5 ? v : v - 5);
    CHECK(outcome.type.counts[static_cast<std::size_t>(idx)] == 1);
  }
}

TEST_CASE("simqplus per-draw distribution for the worked example") {
  const SimqPlusSpec spec = derive_simqplus_spec(2, 2.0, 1.0, 4);
  CHECK(spec.scaled_bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  Eigen::VectorXd y(2);
  y << 0.5, -0.25;
  Rng rng(123);
  const int n = 30000;
  double hits1 = 0, hits2 = 0, hits0 = 0;
  for (int t = 0; t < n; ++t) {
    const SimqPlusOutcome o = simqplus_sample_outcome(y, spec, rng);
    hits1 += o.type.counts[1];
    hits2 += o.type.counts[2];
    hits0 += o.type.counts[0];
  }
  const double draws = static_cast<double>(n) * spec.reps;
  CHECK(hits1 / draws == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(0.03));
  CHECK(hits2 / draws == doctest::Approx(0.25 / std::sqrt(2.0)).epsilon(0.05));
  CHECK(hits0 / draws ==
        doctest::Approx(1.0 - 0.75 / std::sqrt(2.0)).epsilon(0.03));
}

TEST_CASE("simqplus decode formula on a fixed outcome") {
  const SimqPlusSpec spec = derive_simqplus_spec(2, 2.0, 1.0, 4);
  SimqPlusOutcome outcome;
  outcome.type.counts = {1, 2, 1};
  outcome.sign_bits = {1, 0, 0, 0};  // +1 for index 1, -1 for index 2
  const Eigen::VectorXd z = simqplus_decode_outcome(outcome, spec);
  const double unit = spec.scaled_bound / 4.0;
  CHECK(z[0] == 2.0 * unit);
  CHECK(z[1] == -unit);

  SimqPlusOutcome zero;
  zero.type.counts = {4, 0, 0};
  zero.sign_bits = {0, 0, 0, 0};
  CHECK(simqplus_decode_outcome(zero, spec) == Eigen::Vector2d(0.0, 0.0));
}

TEST_CASE("simqplus wire round trip is exact") {
  const SimqPlusSpec spec = derive_simqplus_spec(9, 3.0, 1.0);
  Rng rng(2024);
  for (int t = 0; t < 300; ++t) {
    const Eigen::VectorXd y =
        random_direction_with_norm(9, holder_conjugate(3.0), 0.99, rng);
    const SimqPlusOutcome outcome = simqplus_sample_outcome(y, spec, rng);
    const QuantizedMessage msg = simqplus_message_from_outcome(outcome, spec);
    CHECK(msg.payload.width() == spec.width());
    CHECK(simqplus_decode(msg, spec) == simqplus_decode_outcome(outcome, spec));
  }
}

TEST_CASE("simqplus rejects corrupt type ranks") {
  // d = 2, k = 2: 6 types, rank width 3, so ranks 6 and 7 are corrupt.
  const SimqPlusSpec spec = derive_simqplus_spec(2, 2.0, 1.0, 2);
  REQUIRE(spec.rank_width == 3);
  QuantizedMessage msg{QuantizerFamily::simqplus, BitMessage(spec.width()), 0};
  msg.payload.write_field(0, 3, 6);
  CHECK_THROWS_AS(simqplus_decode(msg, spec), CorruptMessage);
}

TEST_CASE("simqplus Monte Carlo unbiasedness") {
  const SimqPlusSpec spec = derive_simqplus_spec(6, 2.0, 1.0);
  Rng rng(5150);
  const GradientVector y{random_direction_with_norm(6, 2.0, 0.95, rng), 1.0, 2.0};
  const int n = 100000;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(6);
  for (int t = 0; t < n; ++t) {
    mean += simqplus_decode(simqplus_encode(y, spec, rng), spec);
  }
  mean /= n;
  // Per-coordinate 4-sigma band; coordinate variance is bounded by
  // E||Q||^2 <= 2 B^2.
  const double sigma = std::sqrt(2.0 / n);
  CHECK((mean - y.values).cwiseAbs().maxCoeff() < 4.0 * sigma);
}

TEST_CASE("simqplus exact error identity by full enumeration") {
  // E||Q(Y) - Y||^2 = (B~ ||Y||_1 - ||Y||_2^2) / k, enumerated over all
  // (2d+1)^k draw tuples at d = 2.
  Eigen::VectorXd y(2);
  y << 0.5, -0.25;
  for (int k = 1; k <= 4; ++k) {
    const SimqPlusSpec spec = derive_simqplus_spec(2, 2.0, 1.0, k);
    const auto probs = simq_outcome_probs(y, spec.scaled_bound);
    const int outcomes = 2 * 2 + 1;
    long total = 1;
    for (int i = 0; i < k; ++i) total *= outcomes;
    double err2 = 0.0;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
    for (long code = 0; code < total; ++code) {
      long rest = code;
      double prob = 1.0;
      Eigen::VectorXd dec = Eigen::VectorXd::Zero(2);
      for (int i = 0; i < k; ++i) {
        const int v = static_cast<int>(rest % outcomes);
        rest /= outcomes;
        prob *= probs[static_cast<std::size_t>(v)];
        if (v >= 1 && v <= 2) dec[v - 1] += spec.scaled_bound;
        if (v >= 3) dec[v - 3] -= spec.scaled_bound;
      }
      dec /= k;
      err2 += prob * (dec - y).squaredNorm();
      mean += prob * dec;
    }
    const double expected = (spec.scaled_bound * y.lpNorm<1>() - y.squaredNorm()) / k;
    CHECK(err2 == doctest::Approx(expected).epsilon(1e-12));
    CHECK((mean - y).cwiseAbs().maxCoeff() < 1e-12);
  }
}

// ---------------------------------------------------------------- CUQ

TEST_CASE("cuq rounding probabilities at the midpoint") {
  const CuqSpec spec = make_cuq_spec(1, 1.0, 3);
  CHECK(spec.field_width == 2);
  Eigen::VectorXd y(1);
  y << 0.0;
  Rng rng(8);
  int ones = 0, twos = 0;
  const int n = 20000;
  for (int t = 0; t < n; ++t) {
    const int level = cuq_sample_levels(y, spec, rng)[0];
    CHECK((level == 1 || level == 2));
    ones += level == 1;
    twos += level == 2;
  }
  CHECK(std::fabs(ones - twos) < 4.0 * std::sqrt(0.25 * n) + 1.0);

  y << 1.0;  // grid point: deterministic top level
  for (int t = 0; t < 50; ++t) CHECK(cuq_sample_levels(y, spec, rng)[0] == 3);
  y << -1.0 / 3.0;
  for (int t = 0; t < 50; ++t) CHECK(cuq_sample_levels(y, spec, rng)[0] == 1);
}

TEST_CASE("cuq per-coordinate error bound and enumerated unbiasedness") {
  Rng rng(99);
  const CuqSpec spec = make_cuq_spec(4, 0.8, 5);
  for (int t = 0; t < 500; ++t) {
    Eigen::VectorXd y(4);
    for (int i = 0; i < 4; ++i) y[i] = (2.0 * rng.next_double() - 1.0) * 0.8;
    const QuantizedMessage msg = cuq_encode(y, spec, rng);
    const Eigen::VectorXd z = cuq_decode(msg, spec);
    CHECK((z - y).cwiseAbs().maxCoeff() <= 2.0 * 0.8 / 5 + 1e-12);
    CHECK((cuq_enumerated_mean(y, spec) - y).cwiseAbs().maxCoeff() < 1e-12);
  }
  Eigen::VectorXd big = Eigen::VectorXd::Constant(4, 0.9);
  CHECK_THROWS_AS(cuq_encode(big, spec, rng), ContractViolation);
}

TEST_CASE("cuq rejects corrupt level indices") {
  const CuqSpec spec = make_cuq_spec(2, 1.0, 5);  // 3-bit fields, max level 5
  QuantizedMessage msg{QuantizerFamily::cuq, BitMessage(spec.width()), 0};
  msg.payload.write_field(0, 3, 7);
  CHECK_THROWS_AS(cuq_decode(msg, spec), CorruptMessage);
}

// ---------------------------------------------------------------- RATQ

TEST_CASE("ratq spec derivation at d'=64") {
  const RatqSpec spec = derive_ratq_spec(64, 1.0, 3);
  CHECK(spec.padded_dim == 64);
  CHECK(spec.ladder_size == 4);  // 1 + lnstar(64/3) = 4
  CHECK(spec.group_size == 2);
  CHECK(spec.levels == 7);
  CHECK(spec.ladder_width == 2);
  CHECK(spec.base_m == doctest::Approx(3.0 / 64.0));
  CHECK(spec.base_m0 == doctest::Approx(2.0 / 64.0 * std::log(2.0)));
  CHECK(spec.width() == 32 * 2 + 64 * 3);
  for (int j = 0; j + 1 < spec.ladder_size; ++j) CHECK(spec.ladder[j] <= spec.ladder[j + 1]);
  CHECK(spec.ladder[spec.ladder_size - 1] >= spec.bound);
}

TEST_CASE("ratq degenerate ladder is clamped to the bound") {
  const RatqSpec spec = derive_ratq_spec(2, 1.0, 2);  // lnstar(2/3) = 0 -> h = 1
  CHECK(spec.ladder_size == 1);
  CHECK(spec.ladder_width == 0);
  CHECK(spec.group_size == 1);
  CHECK(spec.base_m0 == 0.0);
  CHECK(spec.ladder[0] >= spec.bound);  // the clamp keeps the single level usable
  CHECK(spec.ladder[0] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  const RatqSpec wide = derive_ratq_spec(8, 1.0, 2);  // m = 3/8 < B'^2: clamp binds
  CHECK(wide.ladder_size == 2);                       // 1 + lnstar(8/3) = 2
  CHECK(wide.ladder[1] == 1.0);
  Rng rng(4);
  Eigen::VectorXd y(2);
  y << 0.6, -0.7;
  const QuantizedMessage msg = ratq_encode(y, spec, 55, rng);
  CHECK(msg.payload.width() == spec.width());
  CHECK(ratq_decode(msg, spec).size() == 2);
}

TEST_CASE("ratq zero input selects the bottom ladder level everywhere") {
  const RatqSpec spec = derive_ratq_spec(16, 1.0, 3);
  Rng rng(31337);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(16);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(16);
  const int n = 4000;
  for (int t = 0; t < n; ++t) {
    const std::uint64_t seed = rng.next_u64();
    const RatqOutcome outcome = ratq_sample_outcome(zero, spec, seed, rng);
    for (int j : outcome.group_ladder) CHECK(j == 0);
    mean += ratq_decode_outcome(outcome, spec, seed);
  }
  mean /= n;
  // Unbiased around zero: 4-sigma band with per-coordinate noise ~ M_0/k.
  const double sigma = spec.ladder[0] / spec.levels / std::sqrt(static_cast<double>(n));
  CHECK(mean.cwiseAbs().maxCoeff() < 6.0 * sigma);
}

TEST_CASE("ratq round trip is deterministic given the rng stream") {
  const RatqSpec spec = derive_ratq_spec(21, 2.0, 3);
  Rng data_rng(7);
  Eigen::VectorXd y(21);
  for (int i = 0; i < 21; ++i) y[i] = data_rng.next_gaussian();
  y *= 1.9 / y.norm();
  Rng a(90210), b(90210);
  const QuantizedMessage m1 = ratq_encode(y, spec, 1234, a);
  const QuantizedMessage m2 = ratq_encode(y, spec, 1234, b);
  CHECK(m1.payload == m2.payload);
  CHECK(ratq_decode(m1, spec) == ratq_decode(m2, spec));
  CHECK_THROWS_AS(ratq_encode(Eigen::VectorXd::Constant(21, 1.0), spec, 1, a),
                  ContractViolation);
}

TEST_CASE("ratq empirical MSE stays under the adaptive-range bound") {
  const RatqSpec spec = derive_ratq_spec(64, 1.0, 3);
  const double bound =
      (9.0 + 3.0 * std::log(static_cast<double>(spec.group_size))) /
      ((spec.levels - 1.0) * (spec.levels - 1.0));
  Rng rng(60601);
  double mse = 0.0;
  const int n = 4000;
  for (int t = 0; t < n; ++t) {
    const Eigen::VectorXd y = random_direction_with_norm(64, 2.0, 1.0, rng);
    const std::uint64_t seed = rng.next_u64();
    const Eigen::VectorXd z = ratq_decode(ratq_encode(y, spec, seed, rng), spec);
    mse += (z - y).squaredNorm();
  }
  mse /= n;
  CHECK(mse <= bound);
}

// ---------------------------------------------------------------- split

TEST_CASE("split derivation at d=4, q=4 routes a large coordinate to RATQ") {
  const double p = 4.0 / 3.0;  // q = 4
  const SplitSpec spec = derive_split_spec(4, p, 1.0);
  CHECK(spec.q == doctest::Approx(4.0));
  CHECK(spec.delta2 == 1);
  CHECK(spec.delta1 == 3);
  CHECK(spec.threshold == doctest::Approx(std::pow(0.75, 0.25)).epsilon(1e-12));
  CHECK(spec.capacity == 1);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
  y[2] = 0.99;
  Rng rng(2);
  const SplitOutcome outcome =
      split_sample_outcome(GradientVector{y, 1.0, spec.q}, spec, 42, rng);
  CHECK(outcome.support == std::vector<int>{2});

  // All-small input leaves the bitmap empty.
  Eigen::VectorXd small = Eigen::VectorXd::Constant(4, 0.55);
  const QuantizedMessage msg =
      split_encode(GradientVector{small, 1.0, spec.q}, spec, 42, rng);
  for (int i = 0; i < 4; ++i) CHECK(!msg.payload.get_bit(i));
  CHECK(msg.payload.width() == spec.width());
}

TEST_CASE("split at p=1 has threshold B and never uses the support") {
  const SplitSpec spec = derive_split_spec(64, 1.0, 1.0);
  CHECK(std::isinf(spec.q));
  CHECK(spec.threshold == 1.0);
  // Delta1 = ceil(log2(2 + sqrt(18 + 6 ln 2) * 64^{1/2})) = ceil(log2(39.66))
  CHECK(spec.delta1 == 6);
  CHECK(spec.capacity == 10);
  CHECK(spec.ratq.padded_dim == 16);
  CHECK(spec.ratq.bound == doctest::Approx(8.0));  // B' = B d^{1/2}
  Rng rng(3);
  Eigen::VectorXd y(64);
  for (int i = 0; i < 64; ++i) y[i] = rng.next_sign() * 1.0;
  const SplitOutcome outcome =
      split_sample_outcome(GradientVector{y, 1.0, spec.q}, spec, 9, rng);
  CHECK(outcome.support.empty());
}

TEST_CASE("split wire round trip reproduces the sampled outcome") {
  const SplitSpec spec = derive_split_spec(12, 1.5, 1.0);
  Rng rng(1941);
  for (int t = 0; t < 200; ++t) {
    const GradientVector y{random_direction_with_norm(12, spec.q, 0.98, rng), 1.0, spec.q};
    const std::uint64_t seed = rng.next_u64();
    Rng enc_a = rng.fork(t);
    Rng enc_b = rng.fork(t);
    const SplitOutcome outcome = split_sample_outcome(y, spec, seed, enc_a);
    const QuantizedMessage direct = split_encode(y, spec, seed, enc_b);
    CHECK(direct.payload == split_message_from_outcome(outcome, spec, seed).payload);
    const Eigen::VectorXd z = split_decode(direct, spec);
    CHECK(z.size() == 12);
  }
}

TEST_CASE("split Monte Carlo unbiasedness") {
  const SplitSpec spec = derive_split_spec(8, 1.5, 1.0);
  Rng rng(777);
  const GradientVector y{random_direction_with_norm(8, spec.q, 0.95, rng), 1.0, spec.q};
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(8);
  const int n = 60000;
  for (int t = 0; t < n; ++t) {
    const std::uint64_t seed = rng.next_u64();
    mean += split_decode(split_encode(y, spec, seed, rng), spec);
  }
  mean /= n;
  // Output q-norm second moment is bounded by 12 B^2, so per-coordinate
  // standard error is at most sqrt(12/n) for q >= 2.
  const double sigma = std::sqrt(12.0 / n);
  CHECK((mean - y.values).cwiseAbs().maxCoeff() < 4.0 * sigma);
}

TEST_CASE("split norm precondition is enforced") {
  const SplitSpec spec = derive_split_spec(6, 1.5, 1.0);
  Rng rng(1);
  const GradientVector bad{Eigen::VectorXd::Constant(6, 1.0), 1.0, spec.q};
  CHECK_THROWS_AS(split_encode(bad, spec, 3, rng), ContractViolation);
  CHECK_THROWS_AS(derive_split_spec(3, 1.5, 1.0), ContractViolation);
  CHECK_THROWS_AS(derive_split_spec(6, 2.0, 1.0), ContractViolation);
}

// ---------------------------------------------------------------- common

TEST_CASE("bit budgets and alpha0 bounds across families") {
  CHECK(bit_budget(QuantizerSpec(derive_simq_spec(3, 1.0))) == 3);
  CHECK(bit_budget(QuantizerSpec(derive_simqplus_spec(16, 2.0, 1.0))) == 46);
  const SplitSpec split = derive_split_spec(64, 1.0, 1.0);
  CHECK(bit_budget(QuantizerSpec(split)) == split.width());

  CHECK(alpha0_bound(QuantizerSpec(derive_simq_spec(8, 2.0))) == 2.0);
  CHECK(alpha0_bound(QuantizerSpec(derive_simqplus_spec(64, 2.0, 1.0))) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(alpha0_bound(QuantizerSpec(split)) ==
        doctest::Approx(std::sqrt(12.0)).epsilon(1e-12));
  CHECK_THROWS_AS(alpha0_bound(QuantizerSpec(make_cuq_spec(4, 1.0, 3))), ContractViolation);

  // alpha0 for SimQ+ is strictly decreasing in k.
  double prev = kInfinity;
  for (int k : {1, 2, 4, 16, 64, 256}) {
    const double a = alpha0_bound(QuantizerSpec(derive_simqplus_spec(64, 2.0, 1.0, k)));
    CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("encode is deterministic given input, spec, seed and rng stream") {
  const SimqPlusSpec spec = derive_simqplus_spec(10, 2.0, 1.0);
  Rng data(12);
  const GradientVector y{random_direction_with_norm(10, 2.0, 0.9, data), 1.0, 2.0};
  Rng a(5), b(5);
  CHECK(simqplus_encode(y, spec, a).payload == simqplus_encode(y, spec, b).payload);
}

}  // TEST_SUITE
