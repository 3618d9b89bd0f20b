#pragma once

#include "json.hpp"

#include "hpopt/certificates.hpp"
#include "hpopt/problems.hpp"

namespace hpopt {

/// Fully validated experiment description. Parsed from a JSON document;
/// unknown keys anywhere in the document are configuration errors.
struct ExperimentConfig {
  ProblemSpec problem;
  std::string algorithm;        // smd | asmd | sgd | adagrad_norm | adagrad_coord
  std::string geometry = "euclidean";  // euclidean | negentropy
  std::string schedule_kind = "constant";
  double schedule_eta = 0.1;    // constant / inv_sqrt_t base step
  std::string noise_kind = "none";
  double noise_std = 0.0;       // gaussian_iso std or rademacher scale
  Vector noise_diag;            // gaussian_diag stds
  std::optional<double> sigma_override;  // declared sigma override
  long T = 100;
  long n_trials = 1;
  double delta = 0.1;
  std::uint64_t base_seed = 0;
  std::string metric;           // avg_gap | gap_of_avg | final_gap | avg_grad_sq | final_breg
  double adagrad_eta = 1.0;
  double adagrad_b0 = 1.0;
  Vector x1;                    // optional explicit start
  std::vector<std::string> checks;  // step | adagrad | weights | cor1 | mgf
  std::string bound_id;         // theorem bound to compare the metric against
  std::optional<double> d1_override;      // surrogate D1/D0/Delta1 for misspecification studies
  std::optional<double> G_override;       // surrogate Lipschitz constant
  std::string summary_path;
  std::string trials_csv_path;
  std::string trace_csv_path;
  bool warn_only = false;
  int threads = 0;              // 0 = min(n_trials, hardware)
  bool store_full_trace = false;  // force Full mode even without checks

  static ExperimentConfig from_json(const nlohmann::json& doc);
  static ExperimentConfig from_file(const std::string& path);
};

/// Pieces assembled from a config: objective, oracle ingredients and the
/// schedule, with the derived constants the run needs.
struct ExperimentSetup {
  Objective objective;
  NoiseModel noise;
  MirrorMap map;
  StepSchedule schedule = StepSchedule::constant(1.0);
  Vector x1;
  double sigma = 0.0;   // declared noise level for the active geometry
  double G_cert = 0.0;  // certificate G (0 until a trace-based fallback fills it)
  double L = 0.0;
  double d_initial = 0.0;  // D(x*, x_1) / Delta_1 used by theorem schedules
  std::string metric;
  std::optional<TheoremBound> bound;
};

ExperimentSetup build_setup(const ExperimentConfig& config);

struct CheckSummary {
  std::string name;
  double min_residual = 0.0;
  long argmin_t = 0;
  long argmin_trial = 0;
  bool pass = true;
};

struct TrialStats {
  std::vector<double> metrics;  // by trial index
  double median = 0.0;
  double quantile = 0.0;  // order statistic k = ceil((1-delta) n)
  long quantile_index = 0;  // 1-based k
  std::optional<double> bound_value;
  double violation_fraction = 0.0;
  std::optional<double> distance_bound_value;
  double distance_violation_fraction = 0.0;
  std::vector<CheckSummary> checks;
  long failed_checks = 0;
};

/// Runs config.n_trials independent trials with RngStream(base_seed, trial),
/// executes the requested certificate checks per trial, writes the summary
/// JSON / per-trial CSV / single-run trace CSV when paths are set. Results
/// are deterministic for a fixed config, independent of thread count.
TrialStats run_trials(const ExperimentConfig& config);

/// Empirical quantile at level 1-delta using the order statistic
/// k = ceil((1-delta) n), 1-based.
double empirical_quantile(std::vector<double> values, double delta, long* index_out = nullptr);

/// Share of values strictly above the bound.
double violation_fraction(const std::vector<double>& values, double bound);

/// Least-squares slope of log(median metric) against log(T). Requires at
/// least 4 horizons spanning two decades.
double rate_slope(const std::vector<double>& horizons, const std::vector<double>& medians);

struct SweepRow {
  double T = 0.0;
  double median = 0.0;
  double quantile = 0.0;
  double bound = 0.0;  // NaN when the config names no theorem bound
};

/// Runs the sweep for each horizon (same config otherwise) and fits the
/// slope; rows_out gets one (T, median, quantile, bound) row per horizon.
double rate_slope_sweep(const ExperimentConfig& base, const std::vector<long>& horizons,
                        std::vector<SweepRow>* rows_out = nullptr);

/// Writes (T, median, q_{1-delta}, bound) rows as CSV, header always
/// present.
void emit_plotdata(const std::vector<SweepRow>& rows, const std::string& path);

nlohmann::json summary_json(const ExperimentConfig& config, const TrialStats& stats);
nlohmann::json cert_report_json(const CertReport& report);
nlohmann::json check_report_json(const CheckReport& report);

}  // namespace hpopt
