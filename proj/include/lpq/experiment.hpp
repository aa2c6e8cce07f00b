#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpq/oracles.hpp"
#include "lpq/optimizers.hpp"
#include "lpq/quantizers.hpp"

namespace lpq {

// Declarative experiment description, normally parsed from a JSON config
// file. Seeds are listed explicitly; there is no hidden entropy anywhere in
// a run.
struct InstanceConfig {
  std::string family;  // "paninski" | "bernoulli_product" | "finite_sum_abs"
  int dim = 0;
  double p = 2.0;
  double bound = 1.0;     // B
  double diameter = 1.0;  // D (box instances)
  double delta = 0.25;
  std::uint64_t alpha_seed = 1;  // derives the sign vector alpha
  // Optional domain override; exponent <= 0 means "auto" (the default mirror
  // exponent for the instance's p).
  std::optional<std::string> domain_kind;
  double domain_radius = 1.0;
  double domain_exponent = 0.0;
  // finite_sum_abs only.
  int rows = 8;
  std::uint64_t data_seed = 1;
};

struct QuantizerConfig {
  std::string family = "none";  // "none" | "simq" | "simqplus" | "split"
  std::optional<int> reps;      // SimQ+ k override
};

struct ExperimentConfig {
  InstanceConfig instance;
  QuantizerConfig quantizer;
  std::string algo = "psgd";  // "psgd" | "smd"
  int steps = 1000;           // T
  std::vector<std::uint64_t> seeds;
  double step_c = 1.0;
  std::string out = "runs.csv";
};

// One CSV row.
struct RunRecord {
  std::string config_hash;
  std::uint64_t seed = 0;
  int steps = 0;
  int bits_per_step = 0;
  std::uint64_t total_bits = 0;
  double suboptimality = 0.0;
  double wall_time = 0.0;  // seconds; the only nondeterministic column
};

ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Collects every violated constraint; empty means the config is runnable.
std::vector<std::string> validate_config(const ExperimentConfig& config);

OracleInstance build_instance(const InstanceConfig& config);
std::optional<QuantizerSpec> build_quantizer(const QuantizerConfig& config,
                                             const OracleInstance& oracle);

// FNV-1a over the canonical serialized config, hex encoded.
std::string config_hash(const ExperimentConfig& config);

// Runs every seed (fanned out over a small worker pool) and returns records
// in seed order. Throws ConfigError listing all violations if invalid.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

// CSV with a generator-identity comment line, then the header row. Every
// column except wall_time is bit-for-bit reproducible for a fixed config.
std::string records_to_csv(const std::vector<RunRecord>& records);
void write_csv_file(const std::string& path, const std::vector<RunRecord>& records);

}  // namespace lpq
