// Command-line front end: single runs, multi-trial sweeps, noise
// certification, MGF checks, closed-form bounds and rate-slope fits.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hpopt/harness.hpp"

namespace {

using hpopt::ExperimentConfig;
using nlohmann::json;

struct CommonFlags {
  std::string config_path;
  std::string problem = "quadratic";
  int dim = 2;
  std::vector<double> diag, linear, cost;
  double entropy_coeff = 1.0;
  std::string algorithm = "sgd";
  std::string geometry = "euclidean";
  std::string schedule = "constant";
  double eta = 0.1;
  std::string noise = "none";
  double noise_std = 0.0;
  double sigma = -1.0;  // <0: use the model's certified default
  long T = 100;
  long n_trials = 1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string metric;
  double adagrad_eta = 1.0;
  double adagrad_b0 = 1.0;
  std::vector<double> x1;
  std::vector<std::string> checks;
  std::string bound;
  std::string summary, trials_csv, trace_csv;
  bool warn_only = false;
  int threads = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; overrides the flags below");
  cmd->add_option("--problem", f.problem, "problem name");
  cmd->add_option("--dim", f.dim, "problem dimension");
  cmd->add_option("--diag", f.diag, "quadratic diagonal");
  cmd->add_option("--linear", f.linear, "quadratic linear term");
  cmd->add_option("--cost", f.cost, "simplex cost vector");
  cmd->add_option("--entropy-coeff", f.entropy_coeff, "simplex entropy coefficient");
  cmd->add_option("--algorithm", f.algorithm, "smd|asmd|sgd|adagrad_norm|adagrad_coord");
  cmd->add_option("--geometry", f.geometry, "euclidean|negentropy");
  cmd->add_option("--schedule", f.schedule, "step-size schedule kind");
  cmd->add_option("--eta", f.eta, "base step size for constant/inv_sqrt_t");
  cmd->add_option("--noise", f.noise, "none|gaussian_iso|gaussian_diag|bounded_rademacher");
  cmd->add_option("--noise-std", f.noise_std, "per-coordinate std / rademacher scale");
  cmd->add_option("--sigma", f.sigma, "declared sub-Gaussian parameter override");
  cmd->add_option("--T", f.T, "iterations per run");
  cmd->add_option("--n-trials", f.n_trials, "independent trials");
  cmd->add_option("--delta", f.delta, "failure probability");
  cmd->add_option("--seed", f.seed, "base seed");
  cmd->add_option("--metric", f.metric, "avg_gap|gap_of_avg|final_gap|avg_grad_sq|final_breg");
  cmd->add_option("--adagrad-eta", f.adagrad_eta, "adaptive-method eta");
  cmd->add_option("--adagrad-b0", f.adagrad_b0, "adaptive-method b0");
  cmd->add_option("--x1", f.x1, "start point");
  cmd->add_option("--checks", f.checks, "certificate checks: step weights cor1");
  cmd->add_option("--bound", f.bound, "theorem bound id to compare against");
  cmd->add_option("--summary", f.summary, "summary JSON path");
  cmd->add_option("--trials-csv", f.trials_csv, "per-trial CSV path");
  cmd->add_option("--trace-csv", f.trace_csv, "per-step CSV path (trial 0)");
  cmd->add_flag("--warn-only", f.warn_only, "report certificate violations without failing");
  cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
}

json flags_to_json(const CommonFlags& f) {
  json j;
  j["problem"] = {{"name", f.problem}, {"dim", f.dim}};
  if (!f.diag.empty()) j["problem"]["diag"] = f.diag;
  if (!f.linear.empty()) j["problem"]["linear"] = f.linear;
  if (!f.cost.empty()) j["problem"]["cost"] = f.cost;
  j["problem"]["entropy_coeff"] = f.entropy_coeff;
  j["algorithm"] = f.algorithm;
  j["geometry"] = f.geometry;
  j["schedule"] = {{"kind", f.schedule}, {"eta", f.eta}};
  j["noise"] = {{"kind", f.noise}, {"std", f.noise_std}};
  if (f.sigma >= 0.0) j["noise"]["sigma"] = f.sigma;
  j["T"] = f.T;
  j["n_trials"] = f.n_trials;
  j["delta"] = f.delta;
  j["base_seed"] = f.seed;
  if (!f.metric.empty()) j["metric"] = f.metric;
  j["adagrad"] = {{"eta", f.adagrad_eta}, {"b0", f.adagrad_b0}};
  if (!f.x1.empty()) j["x1"] = f.x1;
  if (!f.checks.empty()) j["checks"] = f.checks;
  if (!f.bound.empty()) j["bound"] = f.bound;
  json outputs;
  if (!f.summary.empty()) outputs["summary"] = f.summary;
  if (!f.trials_csv.empty()) outputs["trials_csv"] = f.trials_csv;
  if (!f.trace_csv.empty()) outputs["trace_csv"] = f.trace_csv;
  if (!outputs.empty()) j["outputs"] = outputs;
  j["warn_only"] = f.warn_only;
  j["threads"] = f.threads;
  return j;
}

ExperimentConfig resolve_config(const CommonFlags& f) {
  json doc = flags_to_json(f);
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw hpopt::ConfigError("cannot open config file " + f.config_path);
    json file_doc;
    in >> file_doc;
    doc.merge_patch(file_doc);  // file settings win over flags
  }
  return ExperimentConfig::from_json(doc);
}

int finish_trials(const ExperimentConfig& config, double max_violation_fraction) {
  const hpopt::TrialStats stats = hpopt::run_trials(config);
  std::cout << hpopt::summary_json(config, stats).dump(2) << std::endl;
  if (stats.failed_checks > 0) {
    std::cerr << "certificate violation in " << stats.failed_checks << " check(s)" << std::endl;
    if (!config.warn_only) return 2;
  }
  if (max_violation_fraction >= 0.0 && stats.bound_value &&
      stats.violation_fraction > max_violation_fraction) {
    std::cerr << "violation fraction " << stats.violation_fraction << " exceeds threshold "
              << max_violation_fraction << std::endl;
    return 4;
  }
  return 0;
}

// noise model + norm pair for the standalone noise subcommands; a config
// file routes through the full setup so gaussian_diag and geometry rules
// apply, bare flags cover the scalar models.
std::pair<hpopt::NoiseModel, hpopt::NormPair> noise_setup(const CommonFlags& f) {
  if (!f.config_path.empty()) {
    const hpopt::ExperimentSetup setup = hpopt::build_setup(resolve_config(f));
    return {setup.noise, setup.map.norm_pair()};
  }
  hpopt::NoiseModel m;
  if (f.noise == "none") {
    m = hpopt::NoiseModel::none(f.dim);
  } else if (f.noise == "gaussian_iso") {
    m = hpopt::NoiseModel::gaussian_iso(f.dim, f.noise_std);
  } else if (f.noise == "bounded_rademacher") {
    m = hpopt::NoiseModel::bounded_rademacher(f.dim, f.noise_std);
  } else if (f.noise == "gaussian_diag") {
    throw hpopt::ConfigError("gaussian_diag needs a config file with noise.diag");
  } else {
    throw hpopt::ConfigError("unknown noise kind: " + f.noise);
  }
  if (f.sigma >= 0.0) m.declared_sigma_override = f.sigma;
  const hpopt::NormPair pair{f.geometry == "negentropy" ? hpopt::NormPairKind::L1Linf
                                                        : hpopt::NormPairKind::EuclideanL2};
  return {m, pair};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic first-order methods with high-probability verification"};
  app.require_subcommand(1);

  CommonFlags run_flags, trials_flags, certify_flags, mgf_flags, slope_flags;
  double max_violation = -1.0;

  CLI::App* cmd_run = app.add_subcommand("run", "single traced run");
  add_common_flags(cmd_run, run_flags);

  CLI::App* cmd_trials = app.add_subcommand("trials", "multi-trial sweep with quantiles");
  add_common_flags(cmd_trials, trials_flags);
  cmd_trials->add_option("--max-violation-fraction", max_violation,
                         "exit 4 if the bound violation fraction exceeds this");

  CLI::App* cmd_certify = app.add_subcommand("certify-noise", "sub-Gaussian certification");
  add_common_flags(cmd_certify, certify_flags);
  long cert_samples = 200000;
  int cert_lambdas = 16;
  cmd_certify->add_option("--n-samples", cert_samples, "Monte-Carlo sample count (>= 1e5)");
  cmd_certify->add_option("--n-lambda", cert_lambdas, "lambda grid size");

  CLI::App* cmd_mgf = app.add_subcommand("mgf-check", "MGF lemma / concentration checks");
  add_common_flags(cmd_mgf, mgf_flags);
  std::string which = "lemma";
  std::vector<double> mgf_a;
  double mgf_b = 0.0;
  long mgf_samples = 200000;
  std::string mgf_family = "md";
  cmd_mgf->add_option("--which", which, "lemma|theorem");
  cmd_mgf->add_option("--a", mgf_a, "inner-product vector for the lemma check");
  cmd_mgf->add_option("--b", mgf_b, "quadratic coefficient for the lemma check");
  cmd_mgf->add_option("--n-samples", mgf_samples, "samples (lemma) / trials (theorem)");
  cmd_mgf->add_option("--family", mgf_family, "md|sgd (theorem check)");

  CLI::App* cmd_bounds = app.add_subcommand("bounds", "print a closed-form theorem bound");
  std::string bound_id = "thm1-fixed";
  hpopt::TheoremInputs bound_in;
  cmd_bounds->add_option("--id", bound_id, "thm1-fixed|thm1-varying|thm4-fixed|thm4-varying|thm5-fixed|thm5-varying|thm6|thm7");
  cmd_bounds->add_option("--d1", bound_in.d1, "initial Bregman distance / gap");
  cmd_bounds->add_option("--G", bound_in.G, "Lipschitz constant");
  cmd_bounds->add_option("--sigma", bound_in.sigma, "noise level");
  cmd_bounds->add_option("--L", bound_in.L, "smoothness constant");
  cmd_bounds->add_option("--delta", bound_in.delta, "failure probability");
  cmd_bounds->add_option("--T", bound_in.T, "iterations");

  CLI::App* cmd_slope = app.add_subcommand("slope", "log-log rate fit over a horizon sweep");
  add_common_flags(cmd_slope, slope_flags);
  std::vector<long> slope_ts;
  double expect_lo = 1.0, expect_hi = -1.0;
  std::string plotdata_path;
  cmd_slope->add_option("--T-list", slope_ts, "horizons (>= 4, spanning two decades)")->required();
  cmd_slope->add_option("--expect-lo", expect_lo, "exit 4 if the slope is below this");
  cmd_slope->add_option("--expect-hi", expect_hi, "exit 4 if the slope is above this");
  cmd_slope->add_option("--plotdata", plotdata_path, "write (T, median, quantile, bound) CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      CommonFlags f = run_flags;
      f.n_trials = 1;
      return finish_trials(resolve_config(f), -1.0);
    }
    if (cmd_trials->parsed()) {
      return finish_trials(resolve_config(trials_flags), max_violation);
    }
    if (cmd_certify->parsed()) {
      const auto [model, pair] = noise_setup(certify_flags);
      hpopt::RngStream rng(certify_flags.seed, 0);
      const hpopt::CertReport report =
          hpopt::certify_subgaussian(model, pair, cert_samples, cert_lambdas, rng);
      std::cout << hpopt::cert_report_json(report).dump(2) << std::endl;
      return report.pass ? 0 : 2;
    }
    if (cmd_mgf->parsed()) {
      if (which == "lemma") {
        const auto [model, pair] = noise_setup(mgf_flags);
        if (mgf_a.empty()) mgf_a.assign(model.dim, 0.0);
        hpopt::RngStream rng(mgf_flags.seed, 0);
        const hpopt::CheckReport report =
            hpopt::mgf_lemma_check(mgf_a, mgf_b, model, pair, mgf_samples, rng);
        std::cout << hpopt::check_report_json(report).dump(2) << std::endl;
        return report.pass ? 0 : 2;
      }
      if (which != "theorem") throw hpopt::ConfigError("--which must be lemma or theorem");
      const ExperimentConfig config = resolve_config(mgf_flags);
      const hpopt::ExperimentSetup setup = hpopt::build_setup(config);
      hpopt::MgfCheckConfig mc;
      mc.family = mgf_family;
      mc.objective = &setup.objective;
      mc.map = setup.map;
      mc.schedule = setup.schedule;
      mc.regime = mgf_family == "md"
                      ? (config.schedule_kind == "inv_sqrt_t" ||
                                 config.schedule_kind == "thm1_varying"
                             ? hpopt::WeightRegime::MDVarying
                             : hpopt::WeightRegime::MDFixed)
                      : (config.schedule_kind == "inv_sqrt_t" ||
                                 config.schedule_kind == "thm4_varying"
                             ? hpopt::WeightRegime::SGDVarying
                             : hpopt::WeightRegime::SGDConstant);
      mc.noise = setup.noise;
      mc.sigma = setup.sigma;
      mc.G = setup.G_cert;
      mc.L = setup.L;
      mc.x1 = setup.x1;
      mc.T = config.T;
      mc.base_seed = config.base_seed;
      const hpopt::CheckReport report = hpopt::mgf_theorem_check(mc, config.n_trials);
      std::cout << hpopt::check_report_json(report).dump(2) << std::endl;
      return report.pass ? 0 : 2;
    }
    if (cmd_bounds->parsed()) {
      const hpopt::TheoremBound bound = hpopt::theorem_bound(bound_id, bound_in);
      json j;
      j["id"] = bound.id;
      j["supported"] = bound.supported;
      if (bound.supported) {
        j["value"] = bound.value;
        if (bound.eta) j["eta"] = *bound.eta;
        if (bound.distance_bound) j["distance_bound"] = *bound.distance_bound;
      }
      std::cout << j.dump(2) << std::endl;
      return 0;
    }
    if (cmd_slope->parsed()) {
      const ExperimentConfig base = resolve_config(slope_flags);
      std::vector<hpopt::SweepRow> rows;
      const double slope = hpopt::rate_slope_sweep(base, slope_ts, &rows);
      if (!plotdata_path.empty()) hpopt::emit_plotdata(rows, plotdata_path);
      json j;
      j["slope"] = slope;
      j["T"] = slope_ts;
      json medians = json::array();
      for (const auto& r : rows) medians.push_back(r.median);
      j["medians"] = medians;
      std::cout << j.dump(2) << std::endl;
      if (expect_hi >= expect_lo && (slope < expect_lo || slope > expect_hi)) return 4;
      return 0;
    }
  } catch (const hpopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
