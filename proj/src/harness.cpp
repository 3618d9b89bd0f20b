#include "hpopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace hpopt {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

Vector json_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  Vector v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(where + ": expected an array of numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

ProblemSpec parse_problem(const json& j) {
  reject_unknown_keys(j, {"name", "dim", "diag", "linear", "cost", "entropy_coeff", "n_samples",
                          "data_seed"},
                      "problem");
  ProblemSpec spec;
  if (!j.contains("name")) throw ConfigError("problem.name is required");
  spec.name = j.at("name").get<std::string>();
  spec.dim = j.value("dim", 2);
  if (j.contains("diag")) spec.quad_diag = json_vector(j.at("diag"), "problem.diag");
  if (j.contains("linear")) spec.quad_linear = json_vector(j.at("linear"), "problem.linear");
  if (j.contains("cost")) spec.cost = json_vector(j.at("cost"), "problem.cost");
  spec.entropy_coeff = j.value("entropy_coeff", 1.0);
  spec.n_samples = j.value("n_samples", 50);
  spec.data_seed = j.value("data_seed", std::uint64_t{0});
  return spec;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  reject_unknown_keys(doc,
                      {"problem", "algorithm", "geometry", "schedule", "noise", "T", "n_trials",
                       "delta", "base_seed", "metric", "adagrad", "x1", "checks", "bound",
                       "overrides", "outputs", "warn_only", "threads", "store_full_trace"},
                      "config");
  ExperimentConfig c;
  if (!doc.contains("problem")) throw ConfigError("config.problem is required");
  c.problem = parse_problem(doc.at("problem"));
  if (!doc.contains("algorithm")) throw ConfigError("config.algorithm is required");
  c.algorithm = doc.at("algorithm").get<std::string>();
  c.geometry = doc.value("geometry", std::string("euclidean"));

  if (doc.contains("schedule")) {
    const json& s = doc.at("schedule");
    reject_unknown_keys(s, {"kind", "eta"}, "schedule");
    c.schedule_kind = s.value("kind", std::string("constant"));
    c.schedule_eta = s.value("eta", 0.1);
  }
  if (doc.contains("noise")) {
    const json& s = doc.at("noise");
    reject_unknown_keys(s, {"kind", "std", "diag", "sigma"}, "noise");
    c.noise_kind = s.value("kind", std::string("none"));
    c.noise_std = s.value("std", 0.0);
    if (s.contains("diag")) c.noise_diag = json_vector(s.at("diag"), "noise.diag");
    if (s.contains("sigma")) c.sigma_override = s.at("sigma").get<double>();
  }
  c.T = doc.value("T", 100L);
  c.n_trials = doc.value("n_trials", 1L);
  c.delta = doc.value("delta", 0.1);
  c.base_seed = doc.value("base_seed", std::uint64_t{0});
  c.metric = doc.value("metric", std::string());
  if (doc.contains("adagrad")) {
    const json& s = doc.at("adagrad");
    reject_unknown_keys(s, {"eta", "b0"}, "adagrad");
    c.adagrad_eta = s.value("eta", 1.0);
    c.adagrad_b0 = s.value("b0", 1.0);
  }
  if (doc.contains("x1")) c.x1 = json_vector(doc.at("x1"), "x1");
  if (doc.contains("checks")) {
    for (const auto& name : doc.at("checks")) c.checks.push_back(name.get<std::string>());
  }
  c.bound_id = doc.value("bound", std::string());
  if (doc.contains("overrides")) {
    const json& s = doc.at("overrides");
    reject_unknown_keys(s, {"d1", "G"}, "overrides");
    if (s.contains("d1")) c.d1_override = s.at("d1").get<double>();
    if (s.contains("G")) c.G_override = s.at("G").get<double>();
  }
  if (doc.contains("outputs")) {
    const json& s = doc.at("outputs");
    reject_unknown_keys(s, {"summary", "trials_csv", "trace_csv"}, "outputs");
    c.summary_path = s.value("summary", std::string());
    c.trials_csv_path = s.value("trials_csv", std::string());
    c.trace_csv_path = s.value("trace_csv", std::string());
  }
  c.warn_only = doc.value("warn_only", false);
  c.threads = doc.value("threads", 0);
  c.store_full_trace = doc.value("store_full_trace", false);

  if (c.delta <= 0.0 || c.delta >= 1.0) throw ConfigError("delta must lie in (0,1)");
  if (c.T < 1) throw ConfigError("T must be >= 1");
  if (c.n_trials < 1) throw ConfigError("n_trials must be >= 1");
  static const std::vector<std::string> algos = {"smd", "asmd", "sgd", "adagrad_norm",
                                                 "adagrad_coord"};
  if (std::find(algos.begin(), algos.end(), c.algorithm) == algos.end()) {
    throw ConfigError("unknown algorithm: " + c.algorithm);
  }
  for (const auto& name : c.checks) {
    if (name != "step" && name != "weights" && name != "cor1") {
      throw ConfigError("unknown check: " + name);
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return from_json(doc);
}

namespace {

NoiseModel build_noise(const ExperimentConfig& c, int dim) {
  NoiseModel m;
  if (c.noise_kind == "none") {
    m = NoiseModel::none(dim);
  } else if (c.noise_kind == "gaussian_iso") {
    m = NoiseModel::gaussian_iso(dim, c.noise_std);
  } else if (c.noise_kind == "gaussian_diag") {
    if (static_cast<int>(c.noise_diag.size()) != dim) {
      throw ConfigError("noise.diag size must match problem dim");
    }
    m = NoiseModel::gaussian_diag(c.noise_diag);
  } else if (c.noise_kind == "bounded_rademacher") {
    m = NoiseModel::bounded_rademacher(dim, c.noise_std);
  } else {
    throw ConfigError("unknown noise kind: " + c.noise_kind);
  }
  m.declared_sigma_override = c.sigma_override;
  return m;
}

std::string default_metric(const std::string& algorithm) {
  if (algorithm == "smd") return "avg_gap";
  if (algorithm == "asmd") return "final_gap";
  return "avg_grad_sq";
}

double metric_of(const RunTrace& tr, const std::string& name) {
  if (name == "avg_gap") return tr.avg_gap;
  if (name == "gap_of_avg") return tr.gap_of_avg;
  if (name == "final_gap") return tr.f_gap_final;
  if (name == "avg_grad_sq") return tr.avg_grad_sq;
  if (name == "final_breg") return tr.breg_final;
  throw ConfigError("unknown metric: " + name);
}

}  // namespace

ExperimentSetup build_setup(const ExperimentConfig& c) {
  ExperimentSetup s;
  s.objective = make_problem(c.problem);
  const int dim = s.objective.dim;

  s.map.kind = c.geometry == "negentropy" ? MirrorMapKind::NegEntropy
                                          : MirrorMapKind::EuclideanHalfSq;
  if (c.geometry != "euclidean" && c.geometry != "negentropy") {
    throw ConfigError("unknown geometry: " + c.geometry);
  }
  if (s.objective.domain == Domain::Simplex && s.map.kind != MirrorMapKind::NegEntropy) {
    throw ConfigError("simplex problems need the negentropy geometry");
  }
  if (s.objective.domain == Domain::AllSpace && s.map.kind == MirrorMapKind::NegEntropy) {
    throw ConfigError("negentropy geometry needs a simplex problem");
  }

  s.noise = build_noise(c, dim);
  s.sigma = s.noise.declared_sigma(s.map.norm_pair());
  s.L = s.objective.smooth_L.value_or(0.0);

  if (!c.x1.empty()) {
    if (static_cast<int>(c.x1.size()) != dim) throw ConfigError("x1 size must match problem dim");
    s.x1 = c.x1;
  } else if (s.objective.domain == Domain::Simplex) {
    s.x1.assign(dim, 1.0 / dim);
  } else {
    s.x1.assign(dim, 1.0);
  }

  const double G_sched = c.G_override.value_or(s.objective.lipschitz_G.value_or(0.0));
  s.G_cert = s.objective.lipschitz_G.value_or(0.0);

  // initial distance/gap used by the theorem schedules
  if (c.d1_override) {
    s.d_initial = *c.d1_override;
  } else if (c.algorithm == "smd" || c.algorithm == "asmd") {
    if (s.objective.x_star) s.d_initial = bregman(s.map, *s.objective.x_star, s.x1);
  } else if (s.objective.f_star) {
    s.d_initial = s.objective.eval(s.x1) - *s.objective.f_star;
  }

  const std::string& k = c.schedule_kind;
  try {
    if (k == "constant") {
      s.schedule = StepSchedule::constant(c.schedule_eta);
    } else if (k == "inv_sqrt_t") {
      s.schedule = StepSchedule::inv_sqrt_t(c.schedule_eta);
    } else if (k == "thm1_fixed") {
      s.schedule = StepSchedule::thm1_fixed(s.d_initial, G_sched, s.sigma, c.delta, c.T);
    } else if (k == "thm1_varying") {
      s.schedule = StepSchedule::thm1_varying(s.d_initial, G_sched, s.sigma, c.delta);
    } else if (k == "thm4_fixed") {
      s.schedule = StepSchedule::thm4_fixed(s.d_initial, s.sigma, s.L, c.T);
    } else if (k == "thm4_varying") {
      s.schedule = StepSchedule::thm4_varying(s.L);
    } else if (k == "thm5_fixed") {
      s.schedule = StepSchedule::thm5_fixed(s.d_initial, G_sched, s.sigma, s.L, c.delta, c.T);
    } else if (k == "thm5_varying") {
      s.schedule = StepSchedule::thm5_varying(s.d_initial, G_sched, s.sigma, s.L, c.delta);
    } else {
      throw ConfigError("unknown schedule kind: " + k);
    }
  } catch (const std::invalid_argument& e) {
    // missing problem constants (D1, Delta1, L, positive K) are config errors;
    // overrides.d1 / overrides.G supply surrogates
    throw ConfigError("schedule " + k + ": " + e.what());
  }

  s.metric = c.metric.empty() ? default_metric(c.algorithm) : c.metric;
  if (!c.bound_id.empty()) {
    TheoremInputs in;
    in.d1 = s.d_initial;
    in.G = G_sched;
    in.sigma = s.sigma;
    in.L = s.L;
    in.delta = c.delta;
    in.T = c.T;
    s.bound = theorem_bound(c.bound_id, in);
    if (!s.bound->supported) throw ConfigError("bound " + c.bound_id + " has no closed form");
  }
  return s;
}

namespace {

WeightRegime regime_for(const std::string& algorithm, const std::string& schedule_kind) {
  const bool varying = schedule_kind == "inv_sqrt_t" || schedule_kind == "thm1_varying" ||
                       schedule_kind == "thm4_varying" || schedule_kind == "thm5_varying";
  if (algorithm == "smd") return varying ? WeightRegime::MDVarying : WeightRegime::MDFixed;
  if (algorithm == "asmd") return varying ? WeightRegime::ASMDVarying : WeightRegime::ASMDFixed;
  if (algorithm == "sgd") return varying ? WeightRegime::SGDVarying : WeightRegime::SGDConstant;
  throw ConfigError("no weight regime for algorithm " + algorithm);
}

RunTrace run_algorithm(const ExperimentSetup& s, const ExperimentConfig& c, RngStream& rng,
                       TraceMode mode) {
  StochasticOracle oracle{&s.objective, s.noise, true};
  if (c.algorithm == "smd") return run_smd(oracle, s.map, s.schedule, s.x1, c.T, rng, mode);
  if (c.algorithm == "asmd") return run_asmd(oracle, s.map, s.schedule, s.x1, c.T, rng, mode);
  if (c.algorithm == "sgd") return run_sgd(oracle, s.schedule, s.x1, c.T, rng, mode);
  if (c.algorithm == "adagrad_norm") {
    return run_adagrad_norm(oracle, c.adagrad_eta, c.adagrad_b0, s.x1, c.T, rng, mode);
  }
  return run_adagrad_coord(oracle, c.adagrad_eta, Vector(s.x1.size(), c.adagrad_b0), s.x1, c.T,
                           rng, mode);
}

// per-trial checks, reduced to (lemma -> min residual)
std::vector<CheckSummary> run_trace_checks(const RunTrace& trace, const ExperimentSetup& s,
                                           const ExperimentConfig& c,
                                           const WeightSequence* weights) {
  std::vector<CertificateResidual> residuals;
  const bool want_step = std::find(c.checks.begin(), c.checks.end(), "step") != c.checks.end();
  const bool want_cor1 = std::find(c.checks.begin(), c.checks.end(), "cor1") != c.checks.end();

  double G_md = s.G_cert;
  if (want_step || want_cor1) {
    if ((c.algorithm == "smd" || c.algorithm == "asmd") && G_md == 0.0) {
      G_md = grad_dual_max(trace, s.objective, s.map.norm_pair());
    }
  }
  if (want_step) {
    if (c.algorithm == "smd") {
      residuals = check_run(trace, s.objective, &s.map, G_md, 0.0);
    } else if (c.algorithm == "asmd") {
      // condition-(1) constants: doubled Lipschitz part plus the smooth part
      const double G_cond = s.objective.smooth_L && !s.objective.lipschitz_G ? 0.0 : 2.0 * G_md;
      residuals = check_run(trace, s.objective, &s.map, G_cond, s.L);
    } else {
      residuals = check_run(trace, s.objective, nullptr, 0.0, s.L);
    }
  }
  if (want_cor1 && c.algorithm == "smd" && weights != nullptr) {
    const Cor1Check c1 = cor1_event_check(trace, *weights, G_md, c.delta);
    CertificateResidual r;
    r.t = 0;
    r.lemma = "cor1-implication";
    r.lhs = c1.lhs;
    r.rhs = c1.rhs;
    r.residual = c1.event ? c1.rhs - c1.lhs : std::numeric_limits<double>::infinity();
    r.pass = c1.implication_ok;
    residuals.push_back(r);
  }

  // reduce by lemma name
  std::vector<CheckSummary> out;
  for (const auto& r : residuals) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const CheckSummary& cs) { return cs.name == r.lemma; });
    if (it == out.end()) {
      out.push_back({r.lemma, r.residual, r.t, 0, r.pass});
    } else {
      if (r.residual < it->min_residual) {
        it->min_residual = r.residual;
        it->argmin_t = r.t;
      }
      it->pass = it->pass && r.pass;
    }
  }
  return out;
}

void write_trace_csv(const RunTrace& trace, const std::vector<CertificateResidual>& step_residuals,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,eta_t,f_gap,grad_sq,bregman_to_opt,b_t,residual_min\n";
  std::vector<double> min_res(trace.T, std::numeric_limits<double>::quiet_NaN());
  for (const auto& r : step_residuals) {
    if (r.t >= 1 && r.t <= trace.T) {
      double& slot = min_res[r.t - 1];
      if (std::isnan(slot) || r.residual < slot) slot = r.residual;
    }
  }
  out << std::setprecision(17);
  for (long t = 1; t <= trace.T; ++t) {
    const std::size_t k = static_cast<std::size_t>(t - 1);
    out << t << ',' << trace.eta[k] << ',' << trace.f_gap[k] << ',' << trace.grad_sq[k] << ','
        << trace.breg_to_opt[k] << ',' << (trace.b.empty() ? std::numeric_limits<double>::quiet_NaN() : trace.b[k])
        << ',' << min_res[k] << '\n';
  }
}

}  // namespace

double violation_fraction(const std::vector<double>& values, double bound) {
  if (values.empty()) throw std::invalid_argument("violation_fraction: empty sample");
  long count = 0;
  for (double v : values) {
    if (v > bound) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(values.size());
}

double empirical_quantile(std::vector<double> values, double delta, long* index_out) {
  if (values.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must lie in (0,1)");
  std::sort(values.begin(), values.end());
  const long n = static_cast<long>(values.size());
  long k = static_cast<long>(std::ceil((1.0 - delta) * static_cast<double>(n)));
  k = std::max(1L, std::min(n, k));
  if (index_out) *index_out = k;
  return values[k - 1];
}

TrialStats run_trials(const ExperimentConfig& config) {
  const ExperimentSetup setup = build_setup(config);
  const long n = config.n_trials;

  const bool want_step = std::find(config.checks.begin(), config.checks.end(), "step") !=
                         config.checks.end();
  const bool want_weights = std::find(config.checks.begin(), config.checks.end(), "weights") !=
                            config.checks.end();
  const bool want_cor1 = std::find(config.checks.begin(), config.checks.end(), "cor1") !=
                         config.checks.end();
  const bool need_full = want_step || want_cor1 || config.store_full_trace ||
                         !config.trace_csv_path.empty();
  const TraceMode mode = need_full ? TraceMode::Full : TraceMode::Summary;

  std::optional<WeightSequence> weights;
  if (want_weights || want_cor1) {
    weights = build_weights(regime_for(config.algorithm, config.schedule_kind), setup.sigma,
                            setup.schedule, config.T, setup.L);
  }

  TrialStats stats;
  stats.metrics.assign(n, 0.0);
  std::vector<double> final_breg(n, 0.0);
  std::vector<std::vector<CheckSummary>> trial_checks(n);
  std::vector<std::string> errors(n);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const long workers = config.threads > 0
                           ? config.threads
                           : std::min<long>(n, static_cast<long>(hw));
  auto work = [&](long w) {
    for (long i = w; i < n; i += workers) {
      try {
        RngStream rng(config.base_seed, static_cast<std::uint64_t>(i));
        const RunTrace trace = run_algorithm(setup, config, rng, mode);
        stats.metrics[i] = metric_of(trace, setup.metric);
        final_breg[i] = trace.breg_final;
        trial_checks[i] = run_trace_checks(trace, setup, config,
                                           weights ? &*weights : nullptr);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (long w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (long i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      throw std::runtime_error("trial " + std::to_string(i) + " failed: " + errors[i]);
    }
  }

  // deterministic merge by trial index
  for (long i = 0; i < n; ++i) {
    for (CheckSummary cs : trial_checks[i]) {
      cs.argmin_trial = i;
      auto it = std::find_if(stats.checks.begin(), stats.checks.end(),
                             [&](const CheckSummary& have) { return have.name == cs.name; });
      if (it == stats.checks.end()) {
        stats.checks.push_back(cs);
      } else {
        if (cs.min_residual < it->min_residual) {
          it->min_residual = cs.min_residual;
          it->argmin_t = cs.argmin_t;
          it->argmin_trial = i;
        }
        it->pass = it->pass && cs.pass;
      }
    }
  }

  if (weights) {
    // sequence-level conditions are trial-independent
    CheckSummary recursion{"weights-recursion", std::numeric_limits<double>::infinity(), 0, true};
    CheckSummary induction{"weights-induction", std::numeric_limits<double>::infinity(), 0, true};
    const bool md_like = !weights->induction_cap.empty();
    for (long t = 1; t <= weights->T; ++t) {
      if (md_like) {
        const double gap_rec = std::abs(weights->w[t - 1] - weights->w[t] - weights->v[t]);
        const double rel = gap_rec / weights->w[t - 1];
        if (-rel < recursion.min_residual) {
          recursion.min_residual = -rel;
          recursion.argmin_t = t;
        }
        if (rel > 1e-12) recursion.pass = false;
        const double slack = weights->induction_cap[t] * (1.0 + 1e-12) - weights->w[t];
        if (slack < induction.min_residual) {
          induction.min_residual = slack;
          induction.argmin_t = t;
        }
        if (slack < 0.0) induction.pass = false;
      }
      if (weights->w[t] > weights->w[t - 1]) recursion.pass = false;
    }
    stats.checks.push_back(recursion);
    if (md_like) stats.checks.push_back(induction);
    CheckSummary cond{"weights-condition", weights->cond_quarter ? 1.0 : -1.0, 0,
                      weights->cond_quarter};
    stats.checks.push_back(cond);
  }
  for (const auto& cs : stats.checks) {
    if (!cs.pass) ++stats.failed_checks;
  }

  std::vector<double> sorted = stats.metrics;
  std::sort(sorted.begin(), sorted.end());
  stats.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  stats.quantile = empirical_quantile(stats.metrics, config.delta, &stats.quantile_index);

  if (setup.bound) {
    stats.bound_value = setup.bound->value;
    stats.violation_fraction = violation_fraction(stats.metrics, setup.bound->value);
    if (setup.bound->distance_bound) {
      stats.distance_bound_value = *setup.bound->distance_bound;
      stats.distance_violation_fraction =
          violation_fraction(final_breg, *setup.bound->distance_bound);
    }
  }

  if (!config.trials_csv_path.empty()) {
    std::ofstream out(config.trials_csv_path);
    if (!out) throw std::runtime_error("cannot write " + config.trials_csv_path);
    out << "trial,seed,metric,bound,violated\n";
    out << std::setprecision(17);
    for (long i = 0; i < n; ++i) {
      const double b = stats.bound_value.value_or(std::numeric_limits<double>::quiet_NaN());
      out << i << ',' << config.base_seed << ',' << stats.metrics[i] << ',' << b << ','
          << (stats.bound_value && stats.metrics[i] > *stats.bound_value ? 1 : 0) << '\n';
    }
  }
  if (!config.trace_csv_path.empty()) {
    // re-run trial 0 with full recording for the per-step file
    RngStream rng(config.base_seed, 0);
    const RunTrace trace = run_algorithm(setup, config, rng, TraceMode::Full);
    std::vector<CertificateResidual> step_residuals;
    if (want_step) {
      double G_md = setup.G_cert;
      if ((config.algorithm == "smd" || config.algorithm == "asmd") && G_md == 0.0) {
        G_md = grad_dual_max(trace, setup.objective, setup.map.norm_pair());
      }
      if (config.algorithm == "smd") {
        step_residuals = check_run(trace, setup.objective, &setup.map, G_md, 0.0);
      } else if (config.algorithm == "asmd") {
        const double G_cond =
            setup.objective.smooth_L && !setup.objective.lipschitz_G ? 0.0 : 2.0 * G_md;
        step_residuals = check_run(trace, setup.objective, &setup.map, G_cond, setup.L);
      } else {
        step_residuals = check_run(trace, setup.objective, nullptr, 0.0, setup.L);
      }
    }
    write_trace_csv(trace, step_residuals, config.trace_csv_path);
  }
  if (!config.summary_path.empty()) {
    std::ofstream out(config.summary_path);
    if (!out) throw std::runtime_error("cannot write " + config.summary_path);
    out << summary_json(config, stats).dump(2) << '\n';
  }
  return stats;
}

double rate_slope(const std::vector<double>& horizons, const std::vector<double>& medians) {
  if (horizons.size() != medians.size() || horizons.size() < 4) {
    throw std::invalid_argument("rate_slope: need >= 4 horizons");
  }
  const auto [lo, hi] = std::minmax_element(horizons.begin(), horizons.end());
  if (*lo <= 0.0 || *hi / *lo < 100.0) {
    throw std::invalid_argument("rate_slope: horizons must span at least two decades");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(horizons.size());
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (medians[i] <= 0.0) throw std::invalid_argument("rate_slope: medians must be positive");
    const double x = std::log(horizons[i]);
    const double y = std::log(medians[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double rate_slope_sweep(const ExperimentConfig& base, const std::vector<long>& horizons,
                        std::vector<SweepRow>* rows_out) {
  std::vector<double> ts, medians;
  if (rows_out) rows_out->clear();
  for (long T : horizons) {
    ExperimentConfig c = base;
    c.T = T;
    c.summary_path.clear();
    c.trials_csv_path.clear();
    c.trace_csv_path.clear();
    const TrialStats stats = run_trials(c);
    ts.push_back(static_cast<double>(T));
    medians.push_back(stats.median);
    if (rows_out) {
      rows_out->push_back({static_cast<double>(T), stats.median, stats.quantile,
                           stats.bound_value.value_or(std::numeric_limits<double>::quiet_NaN())});
    }
  }
  return rate_slope(ts, medians);
}

void emit_plotdata(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "T,median,quantile,bound\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.T << ',' << r.median << ',' << r.quantile << ',' << r.bound << '\n';
  }
}

json summary_json(const ExperimentConfig& config, const TrialStats& stats) {
  json j;
  j["algorithm"] = config.algorithm;
  j["problem"] = config.problem.name;
  j["geometry"] = config.geometry;
  j["schedule"] = config.schedule_kind;
  j["noise"] = config.noise_kind;
  j["T"] = config.T;
  j["n_trials"] = config.n_trials;
  j["delta"] = config.delta;
  j["base_seed"] = config.base_seed;
  j["median"] = stats.median;
  j["quantile"] = stats.quantile;
  j["quantile_index"] = stats.quantile_index;
  if (stats.bound_value) {
    j["bound"] = *stats.bound_value;
    j["violation_fraction"] = stats.violation_fraction;
  }
  if (stats.distance_bound_value) {
    j["distance_bound"] = *stats.distance_bound_value;
    j["distance_violation_fraction"] = stats.distance_violation_fraction;
  }
  json checks = json::array();
  for (const auto& cs : stats.checks) {
    checks.push_back({{"name", cs.name},
                      {"min_residual", cs.min_residual},
                      {"argmin_t", cs.argmin_t},
                      {"argmin_trial", cs.argmin_trial},
                      {"pass", cs.pass}});
  }
  j["checks"] = checks;
  j["failed_checks"] = stats.failed_checks;
  return j;
}

json cert_report_json(const CertReport& report) {
  json j;
  j["lambda_grid"] = report.lambda_grid;
  j["estimates"] = report.estimates;
  j["bounds"] = report.bounds;
  j["pass"] = report.pass;
  j["worst_margin"] = report.worst_margin;
  j["sigma"] = report.sigma;
  j["slack"] = report.slack;
  if (!report.reason.empty()) j["reason"] = report.reason;
  return j;
}

json check_report_json(const CheckReport& report) {
  json j;
  j["estimate"] = report.estimate;
  j["bound"] = report.bound;
  j["pass"] = report.pass;
  j["margin"] = report.margin;
  j["slack"] = report.slack;
  if (report.sharp_bound) j["sharp_bound"] = *report.sharp_bound;
  if (report.sharp_pass) j["sharp_pass"] = *report.sharp_pass;
  if (!report.reason.empty()) j["reason"] = report.reason;
  return j;
}

}  // namespace hpopt
