// Command-line front end: closed-form bound tables, seeded optimization runs
// with CSV output, alpha0 estimation and bit-budget queries.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "lpq/bounds.hpp"
#include "lpq/errors.hpp"
#include "lpq/experiment.hpp"
#include "lpq/norms.hpp"
#include "lpq/quantizers.hpp"

namespace {

double parse_p_arg(const std::string& s) {
  if (s == "inf" || s == "infinity") return lpq::kInfinity;
  return std::stod(s);
}

lpq::QuantizerSpec spec_from_args(const std::string& family, int d, double p, double bound,
                                  int k, double range, int levels) {
  if (family == "simq") return lpq::derive_simq_spec(d, bound);
  if (family == "simqplus") {
    return lpq::derive_simqplus_spec(d, p, bound,
                                     k > 0 ? std::optional<int>(k) : std::nullopt);
  }
  if (family == "split") return lpq::derive_split_spec(d, p, bound);
  if (family == "cuq") return lpq::make_cuq_spec(d, range, levels);
  if (family == "ratq") return lpq::derive_ratq_spec(d, bound, levels);
  throw lpq::ConfigError("unknown quantizer family: " + family);
}

int cmd_bounds(int d, double p, double T, double D, double B, double rho, double c1) {
  const double upper = lpq::r_star_upper(d, p);
  const double lower = lpq::r_star_lower(d, p, rho);
  const double u = lpq::benchmark_u(T, p, d, D, B, c1);
  const auto [base_lo, base_hi] = lpq::baseline_rate(T, p, d, D, B, rho * c1, c1);
  std::printf("d=%d p=%g T=%g D=%g B=%g rho=%g c1=%g\n", d, p, T, D, B, rho, c1);
  std::printf("r*_upper        %12.4f bits\n", upper);
  std::printf("r*_lower        %12.4f bits\n", lower);
  std::printf("U(T,p)          %12.6g\n", u);
  std::printf("baseline rate   [%.6g, %.6g]\n", base_lo, base_hi);
  std::printf("%6s  %14s\n", "r", "error_lower");
  for (int r = 1; r <= 2 * d; r *= 2) {
    std::printf("%6d  %14.6g\n", r, lpq::error_lower(T, r, p, d, D, B, rho));
  }
  return 0;
}

int cmd_budget(const lpq::QuantizerSpec& spec) {
  std::printf("bits_per_message %d\n", lpq::bit_budget(spec));
  if (std::holds_alternative<lpq::SimqSpec>(spec) ||
      std::holds_alternative<lpq::SimqPlusSpec>(spec) ||
      std::holds_alternative<lpq::SplitSpec>(spec)) {
    std::printf("alpha0_bound     %.6g\n", lpq::alpha0_bound(spec));
  }
  return 0;
}

int cmd_alpha0(const lpq::QuantizerSpec& spec, double p, int trials, std::uint64_t seed) {
  lpq::Rng rng(seed);
  const double estimate = lpq::alpha0_estimate(spec, p, trials, rng);
  const double bound = lpq::alpha0_bound(spec);
  std::printf("alpha0_estimate  %.6g\n", estimate);
  std::printf("alpha0_bound     %.6g\n", bound);
  std::printf("ratio            %.4f\n", estimate / bound);
  return 0;
}

int cmd_run(const std::string& config_path) {
  const lpq::ExperimentConfig config = lpq::load_config_file(config_path);
  const auto violations = lpq::validate_config(config);
  if (!violations.empty()) {
    std::cerr << "invalid experiment config:\n";
    for (const auto& v : violations) std::cerr << "  - " << v << "\n";
    return 2;
  }
  const auto records = lpq::run_experiment(config);
  lpq::write_csv_file(config.out, records);
  double mean = 0.0;
  for (const auto& r : records) mean += r.suboptimality;
  mean /= static_cast<double>(records.size());
  std::printf("wrote %zu records to %s (mean suboptimality %.6g, %d bits/step)\n",
              records.size(), config.out.c_str(), mean,
              records.empty() ? 0 : records.front().bits_per_step);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradient quantization toolkit"};
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "evaluate precision and error bounds");
  int b_d = 0;
  std::string b_p;
  double b_T = 10000, b_D = 1.0, b_B = 1.0, b_rho = 1.0, b_c1 = 1.0;
  bounds->add_option("--d", b_d, "dimension")->required();
  bounds->add_option("--p", b_p, "norm index p (number or inf)")->required();
  bounds->add_option("--T", b_T, "iteration budget");
  bounds->add_option("--D", b_D, "domain lp diameter");
  bounds->add_option("--B", b_B, "gradient lq bound");
  bounds->add_option("--rho", b_rho, "constant ratio c0/c1");
  bounds->add_option("--c1", b_c1, "upper-bound constant");

  // quantizer descriptor options shared by budget/alpha0
  std::string q_family;
  int q_d = 0, q_k = 0, q_levels = 1;
  std::string q_p = "2";
  double q_B = 1.0, q_M = 1.0;
  auto add_quantizer_opts = [&](CLI::App* cmd) {
    cmd->add_option("--family", q_family, "simq|simqplus|split|cuq|ratq")->required();
    cmd->add_option("--d", q_d, "dimension")->required();
    cmd->add_option("--p", q_p, "norm index p (number or inf)");
    cmd->add_option("--B", q_B, "input norm bound");
    cmd->add_option("--k", q_k, "SimQ+ repetitions (0 = default d^(2/p))");
    cmd->add_option("--M", q_M, "CUQ dynamic range");
    cmd->add_option("--levels", q_levels, "CUQ level count / RATQ level width");
  };

  auto* budget = app.add_subcommand("budget", "print the exact message width");
  add_quantizer_opts(budget);

  auto* alpha0 = app.add_subcommand("alpha0", "Monte Carlo alpha0 estimate vs analytic bound");
  add_quantizer_opts(alpha0);
  int a_trials = 10000;
  std::uint64_t a_seed = 1;
  alpha0->add_option("--trials", a_trials, "round trips per probe input");
  alpha0->add_option("--seed", a_seed, "rng seed");

  auto* run = app.add_subcommand("run", "execute a config file, emit CSV");
  std::string config_path;
  run->add_option("config", config_path, "JSON config path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) {
      return cmd_bounds(b_d, parse_p_arg(b_p), b_T, b_D, b_B, b_rho, b_c1);
    }
    if (budget->parsed()) {
      return cmd_budget(
          spec_from_args(q_family, q_d, parse_p_arg(q_p), q_B, q_k, q_M, q_levels));
    }
    if (alpha0->parsed()) {
      return cmd_alpha0(
          spec_from_args(q_family, q_d, parse_p_arg(q_p), q_B, q_k, q_M, q_levels),
          parse_p_arg(q_p), a_trials, a_seed);
    }
    if (run->parsed()) return cmd_run(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
