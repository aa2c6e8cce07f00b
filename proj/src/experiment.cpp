#include "lpq/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <json.hpp>
#include <sstream>

#include "lpq/errors.hpp"
#include "lpq/norms.hpp"

namespace lpq {

namespace {

using nlohmann::json;

double parse_p(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
    return std::stod(s);
  }
  return v.get<double>();
}

json canonical_json(const ExperimentConfig& c) {
  json j;
  j["instance"]["family"] = c.instance.family;
  j["instance"]["d"] = c.instance.dim;
  j["instance"]["p"] = std::isinf(c.instance.p) ? json("inf") : json(c.instance.p);
  j["instance"]["B"] = c.instance.bound;
  j["instance"]["D"] = c.instance.diameter;
  j["instance"]["delta"] = c.instance.delta;
  j["instance"]["alpha_seed"] = c.instance.alpha_seed;
  if (c.instance.domain_kind) {
    j["instance"]["domain"]["kind"] = *c.instance.domain_kind;
    j["instance"]["domain"]["radius"] = c.instance.domain_radius;
    j["instance"]["domain"]["exponent"] = c.instance.domain_exponent;
  }
  if (c.instance.family == "finite_sum_abs") {
    j["instance"]["rows"] = c.instance.rows;
    j["instance"]["data_seed"] = c.instance.data_seed;
  }
  j["quantizer"]["family"] = c.quantizer.family;
  if (c.quantizer.reps) j["quantizer"]["k"] = *c.quantizer.reps;
  j["algo"] = c.algo;
  j["T"] = c.steps;
  j["seeds"] = c.seeds;
  j["step_c"] = c.step_c;
  return j;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    const json& inst = j.at("instance");
    c.instance.family = inst.at("family").get<std::string>();
    c.instance.dim = inst.at("d").get<int>();
    c.instance.p = parse_p(inst.at("p"));
    c.instance.bound = inst.value("B", 1.0);
    c.instance.diameter = inst.value("D", 1.0);
    c.instance.delta = inst.value("delta", 0.25);
    c.instance.alpha_seed = inst.value("alpha_seed", std::uint64_t{1});
    c.instance.rows = inst.value("rows", 8);
    c.instance.data_seed = inst.value("data_seed", std::uint64_t{1});
    if (inst.contains("domain")) {
      const json& dom = inst.at("domain");
      c.instance.domain_kind = dom.at("kind").get<std::string>();
      c.instance.domain_radius = dom.value("radius", 1.0);
      if (dom.contains("exponent") && !dom.at("exponent").is_string()) {
        c.instance.domain_exponent = dom.at("exponent").get<double>();
      } else {
        c.instance.domain_exponent = 0.0;  // "auto"
      }
    }
    const json& quant = j.at("quantizer");
    c.quantizer.family = quant.at("family").get<std::string>();
    if (quant.contains("k")) c.quantizer.reps = quant.at("k").get<int>();
    c.algo = j.at("algo").get<std::string>();
    c.steps = j.at("T").get<int>();
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.step_c = j.value("step_c", 1.0);
    c.out = j.value("out", std::string("runs.csv"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

namespace {

Domain resolve_domain(const InstanceConfig& c, std::vector<std::string>* errors) {
  Domain dom;
  dom.dim = c.dim;
  if (!c.domain_kind) {
    dom.kind = Domain::Kind::box;
    dom.radius = c.diameter / (2.0 * root_pow(static_cast<double>(std::max(c.dim, 1)), c.p));
    return dom;
  }
  const std::string& kind = *c.domain_kind;
  if (kind == "box") {
    dom.kind = Domain::Kind::box;
  } else if (kind == "l2_ball") {
    dom.kind = Domain::Kind::l2_ball;
  } else if (kind == "lp_ball") {
    dom.kind = Domain::Kind::lp_ball;
    dom.exponent = c.domain_exponent > 0.0 ? c.domain_exponent
                                           : default_mirror_exponent(c.p, c.dim);
  } else if (errors) {
    errors->push_back("instance.domain.kind must be box, l2_ball or lp_ball");
  }
  dom.radius = c.domain_radius;
  return dom;
}

Eigen::VectorXd derive_alpha(int dim, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd alpha(dim);
  for (int i = 0; i < dim; ++i) alpha[i] = static_cast<double>(rng.next_sign());
  return alpha;
}

}  // namespace

std::vector<std::string> validate_config(const ExperimentConfig& c) {
  std::vector<std::string> errors;
  const bool known_family = c.instance.family == "paninski" ||
                            c.instance.family == "bernoulli_product" ||
                            c.instance.family == "finite_sum_abs";
  if (!known_family) {
    errors.push_back("instance.family must be paninski, bernoulli_product or finite_sum_abs");
  }
  if (c.instance.dim < 1) errors.push_back("instance.d must be positive");
  if (!(c.instance.p >= 1.0)) errors.push_back("instance.p must be at least 1");
  if (!(c.instance.bound > 0.0)) errors.push_back("instance.B must be positive");
  if (!(c.instance.diameter > 0.0)) errors.push_back("instance.D must be positive");
  if (!(c.instance.delta > 0.0) || c.instance.delta > 0.5) {
    errors.push_back("instance.delta must lie in (0, 1/2]");
  }
  if (c.algo != "psgd" && c.algo != "smd") errors.push_back("algo must be psgd or smd");
  if (c.steps < 1) errors.push_back("T must be positive");
  if (c.seeds.empty()) errors.push_back("seeds must list at least one seed");
  if (!(c.step_c > 0.0)) errors.push_back("step_c must be positive");

  const bool p_low = c.instance.p < 2.0;
  if (c.algo == "psgd" && p_low) errors.push_back("psgd requires p >= 2");
  if (c.algo == "smd" && !p_low) errors.push_back("smd requires p in [1, 2)");

  const std::string& qf = c.quantizer.family;
  if (qf != "none" && qf != "simq" && qf != "simqplus" && qf != "split") {
    errors.push_back("quantizer.family must be none, simq, simqplus or split");
  }
  if (qf == "simq" && !std::isinf(c.instance.p)) {
    errors.push_back("simq requires p = inf (l1-bounded gradients)");
  }
  if (qf == "simqplus" && p_low) errors.push_back("simqplus requires p >= 2");
  if (qf == "split" && !p_low) errors.push_back("split requires p in [1, 2)");
  if (qf == "split" && c.instance.dim < 4) {
    errors.push_back("split is degenerate below d = 4");
  }
  if (c.quantizer.reps && *c.quantizer.reps < 1) {
    errors.push_back("quantizer.k must be positive");
  }

  Domain dom = resolve_domain(c.instance, &errors);
  if (c.algo == "smd" && dom.kind != Domain::Kind::lp_ball) {
    errors.push_back("smd requires an lp_ball domain");
  }
  if (c.algo == "psgd" && dom.kind == Domain::Kind::lp_ball) {
    errors.push_back("psgd requires a box or l2_ball domain");
  }
  if (dom.kind == Domain::Kind::lp_ball &&
      (dom.exponent <= 1.0 || dom.exponent > 2.0)) {
    errors.push_back("lp_ball exponent must lie in (1, 2]");
  }
  if (c.instance.family == "finite_sum_abs") {
    if (c.instance.dim > 32) errors.push_back("finite_sum_abs supports d <= 32 only");
    if (c.instance.rows < 1) errors.push_back("instance.rows must be positive");
    if (!c.instance.domain_kind) {
      errors.push_back("finite_sum_abs requires an explicit domain");
    }
  }
  return errors;
}

OracleInstance build_instance(const InstanceConfig& c) {
  std::optional<Domain> domain_override;
  if (c.domain_kind) domain_override = resolve_domain(c, nullptr);
  if (c.family == "paninski" || c.family == "bernoulli_product") {
    HardInstanceParams params;
    params.alpha = derive_alpha(c.dim, c.alpha_seed);
    params.delta = c.delta;
    params.diameter = c.diameter;
    params.bound = c.bound;
    params.p = c.p;
    return c.family == "paninski" ? paninski_oracle(params, domain_override)
                                  : bernoulli_product_oracle(params, domain_override);
  }
  if (c.family == "finite_sum_abs") {
    if (!domain_override) throw ConfigError("finite_sum_abs requires an explicit domain");
    Rng rng(c.data_seed);
    const double q = holder_conjugate(c.p);
    Eigen::MatrixXd rows(c.rows, c.dim);
    Eigen::VectorXd rhs(c.rows);
    for (int i = 0; i < c.rows; ++i) {
      Eigen::VectorXd row(c.dim);
      for (int jj = 0; jj < c.dim; ++jj) row[jj] = rng.next_gaussian();
      const double norm = lp_norm(row, q);
      rows.row(i) = (norm > 0.0 ? row * (c.bound / norm) : row).transpose();
      rhs[i] = 0.1 * rng.next_gaussian();
    }
    return finite_sum_abs_oracle(rows, rhs, *domain_override, c.p);
  }
  throw ConfigError("unknown instance family: " + c.family);
}

std::optional<QuantizerSpec> build_quantizer(const QuantizerConfig& c,
                                             const OracleInstance& oracle) {
  if (c.family == "none") return std::nullopt;
  if (c.family == "simq") return QuantizerSpec(derive_simq_spec(oracle.dim, oracle.bound));
  if (c.family == "simqplus") {
    return QuantizerSpec(derive_simqplus_spec(oracle.dim, oracle.p, oracle.bound, c.reps));
  }
  if (c.family == "split") {
    return QuantizerSpec(derive_split_spec(oracle.dim, oracle.p, oracle.bound));
  }
  throw ConfigError("unknown quantizer family: " + c.family);
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = canonical_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  const std::vector<std::string> violations = validate_config(config);
  if (!violations.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ConfigError(msg);
  }
  const OracleInstance oracle = build_instance(config.instance);
  const std::optional<QuantizerSpec> quantizer = build_quantizer(config.quantizer, oracle);
  const std::string hash = config_hash(config);

  auto run_one = [&](std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const RunResult res = config.algo == "psgd"
                              ? psgd_run(oracle, quantizer, oracle.domain, config.steps,
                                         config.step_c, seed)
                              : smd_run(oracle, quantizer, oracle.domain, config.steps,
                                        config.step_c, seed);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    RunRecord rec;
    rec.config_hash = hash;
    rec.seed = seed;
    rec.steps = config.steps;
    rec.bits_per_step = res.bits_per_step;
    rec.total_bits = static_cast<std::uint64_t>(res.bits_per_step) * config.steps;
    rec.suboptimality = res.suboptimality;
    rec.wall_time = elapsed.count();
    return rec;
  };

  // Fan seeds out over a small pool; records come back in seed order.
  std::vector<std::future<RunRecord>> futures;
  futures.reserve(config.seeds.size());
  for (std::uint64_t seed : config.seeds) {
    futures.push_back(std::async(std::launch::async, run_one, seed));
  }
  std::vector<RunRecord> records;
  records.reserve(config.seeds.size());
  for (auto& f : futures) records.push_back(f.get());
  return records;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "# generator: " << Rng::kName << "\n";
  out << "config_hash,seed,T,bits_per_step,total_bits,suboptimality,wall_time\n";
  for (const auto& r : records) {
    char sub[40];
    std::snprintf(sub, sizeof(sub), "%.17g", r.suboptimality);
    out << r.config_hash << ',' << r.seed << ',' << r.steps << ',' << r.bits_per_step << ','
        << r.total_bits << ',' << sub << ',' << r.wall_time << "\n";
  }
  return out.str();
}

void write_csv_file(const std::string& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write CSV to " + path);
  out << records_to_csv(records);
}

}  // namespace lpq
