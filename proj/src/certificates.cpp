#include "hpopt/certificates.hpp"

#include <cmath>
#include <limits>

namespace hpopt {

double residual_tolerance(double rhs) { return 1e-9 * (1.0 + std::abs(rhs)); }

CertificateResidual make_residual(long t, std::string lemma, double lhs, double rhs) {
  CertificateResidual r;
  r.t = t;
  r.lemma = std::move(lemma);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = rhs - lhs;
  r.pass = r.residual >= -residual_tolerance(rhs);
  return r;
}

namespace {

void require_full(const RunTrace& trace, const char* who) {
  if (trace.mode != TraceMode::Full || trace.x.empty()) {
    throw std::invalid_argument(std::string(who) + ": needs a full white-box trace");
  }
}

void require_step(const RunTrace& trace, long t, const char* who) {
  if (t < 1 || t > trace.T) throw std::invalid_argument(std::string(who) + ": step out of range");
}

const Vector& opt_point(const Objective& objective, const char* who) {
  if (!objective.x_star) throw std::invalid_argument(std::string(who) + ": x_star unknown");
  return *objective.x_star;
}

}  // namespace

double grad_dual_max(const RunTrace& trace, const Objective& objective, const NormPair& pair) {
  require_full(trace, "grad_dual_max");
  double m = 0.0;
  for (const Vector& xt : trace.x) m = std::max(m, pair.dual(objective.grad(xt)));
  return m;
}

CertificateResidual check_step_md(const RunTrace& trace, long t, const Objective& objective,
                                  const MirrorMap& map, double G) {
  require_full(trace, "check_step_md");
  require_step(trace, t, "check_step_md");
  const Vector& xs = opt_point(objective, "check_step_md");
  const NormPair pair = map.norm_pair();
  const std::size_t k = static_cast<std::size_t>(t - 1);

  const double eta = trace.eta[k];
  const Vector& xt = trace.x[k];
  const Vector& xi = trace.xi[k];
  const Vector& x_next = (t == trace.T) ? trace.x_final : trace.x[k + 1];

  const double gap_t = objective.eval(xt) - *objective.f_star;
  const double lhs = eta * gap_t - eta * eta * G * G + bregman(map, xs, x_next) -
                     bregman(map, xs, xt);
  const double xin = pair.dual(xi);
  const double rhs = eta * dot(xi, sub(xs, xt)) + eta * eta * xin * xin;
  return make_residual(t, "md-step", lhs, rhs);
}

CertificateResidual check_step_asmd(const RunTrace& trace, long t, const Objective& objective,
                                    const MirrorMap& map, double G, double L) {
  require_full(trace, "check_step_asmd");
  require_step(trace, t, "check_step_asmd");
  const Vector& xs = opt_point(objective, "check_step_asmd");
  const NormPair pair = map.norm_pair();
  const std::size_t k = static_cast<std::size_t>(t - 1);

  const double eta = trace.eta[k];
  const double alpha = trace.alpha[k];
  const double damp = 1.0 - L * alpha * eta;
  if (damp <= 0.0) throw std::invalid_argument("check_step_asmd: L alpha_t eta_t >= 1");

  const Vector& z_prev = (t == 1) ? trace.z0 : trace.z[k - 1];
  const double fy = trace.fgap_y[k];
  const double fy_prev = (t == 1) ? 0.0 : trace.fgap_y[k - 1];  // coefficient vanishes at t = 1
  const double coeff_prev = (t == 1) ? 0.0 : eta * (1.0 - alpha) / alpha;

  const double lhs = (eta / alpha) * fy - coeff_prev * fy_prev - eta * eta * G * G / damp +
                     bregman(map, xs, trace.z[k]) - bregman(map, xs, z_prev);
  const Vector& xi = trace.xi[k];
  const double xin = pair.dual(xi);
  const double rhs = eta * dot(xi, sub(xs, z_prev)) + eta * eta * xin * xin / damp;
  return make_residual(t, "asmd-step", lhs, rhs);
}

CertificateResidual check_step_sgd(const RunTrace& trace, long t, const Objective& objective,
                                   double L) {
  require_full(trace, "check_step_sgd");
  require_step(trace, t, "check_step_sgd");
  const std::size_t k = static_cast<std::size_t>(t - 1);

  const double eta = trace.eta[k];
  const Vector grad = objective.grad(trace.x[k]);
  const Vector& xi = trace.xi[k];
  const double gsq = norm_l2_sq(grad);
  const double delta_t = trace.f_gap[k];
  const double delta_next = (t == trace.T) ? trace.f_gap_final : trace.f_gap[k + 1];

  const double lhs = eta * (1.0 - L * eta / 2.0) * gsq + delta_next - delta_t;
  const double rhs = (L * eta * eta - eta) * dot(grad, xi) + 0.5 * L * eta * eta * norm_l2_sq(xi);
  return make_residual(t, "sgd-step", lhs, rhs);
}

CertificateResidual check_step_smoothness(const RunTrace& trace, long t,
                                          const Objective& objective, double L) {
  require_full(trace, "check_step_smoothness");
  require_step(trace, t, "check_step_smoothness");
  const std::size_t k = static_cast<std::size_t>(t - 1);
  const Vector& xt = trace.x[k];
  const Vector& x_next = (t == trace.T) ? trace.x_final : trace.x[k + 1];
  const Vector step = sub(x_next, xt);
  const double lhs = objective.eval(x_next) - objective.eval(xt);
  const double rhs = dot(objective.grad(xt), step) + 0.5 * L * norm_l2_sq(step);
  return make_residual(t, "smoothness", lhs, rhs);
}

namespace {

// ghat_t recomputed exactly as the runner formed it: grad f(x_t) + xi_t.
Vector recompute_ghat(const RunTrace& trace, const Objective& objective, std::size_t k) {
  return add(objective.grad(trace.x[k]), trace.xi[k]);
}

std::vector<CertificateResidual> adagrad_norm_lemmas(const RunTrace& trace,
                                                     const Objective& objective) {
  std::vector<CertificateResidual> out;
  const long T = trace.T;
  const double eta = trace.adagrad_eta;
  const double L = objective.smooth_L.value_or(0.0);
  const double delta1 = trace.f_gap[0];

  double sum_grad_over_b = 0.0, sum_grad_over_a_sq = 0.0, sum_xi_over_b_sq = 0.0;
  double sum_inner_over_a = 0.0, sum_ghat_over_b_sq = 0.0, max_noise = 0.0;
  for (long t = 1; t <= T; ++t) {
    const std::size_t k = static_cast<std::size_t>(t - 1);
    const double b_t = trace.b[k];
    const double a_t = trace.a[k];
    const Vector grad = objective.grad(trace.x[k]);
    const Vector& xi = trace.xi[k];
    const Vector ghat = recompute_ghat(trace, objective, k);
    const double xin = norm_l2(xi);

    out.push_back(make_residual(t, "adagrad-proxy-diff", std::abs(1.0 / a_t - 1.0 / b_t),
                                xin / (a_t * b_t)));

    sum_grad_over_b += norm_l2_sq(grad) / b_t;
    sum_grad_over_a_sq += norm_l2_sq(grad) / (a_t * a_t);
    sum_xi_over_b_sq += norm_l2_sq(xi) / (b_t * b_t);
    sum_inner_over_a += dot(grad, xi) / a_t;
    sum_ghat_over_b_sq += norm_l2_sq(ghat) / (b_t * b_t);
    max_noise = std::max(max_noise, xin);
  }
  const double descent_rhs = delta1 / eta +
                             0.5 * max_noise * (sum_grad_over_a_sq + sum_xi_over_b_sq) -
                             sum_inner_over_a + 0.5 * L * eta * sum_ghat_over_b_sq;
  out.push_back(make_residual(0, "adagrad-descent", sum_grad_over_b, descent_rhs));
  out.push_back(make_residual(0, "adagrad-step-mass", sum_ghat_over_b_sq,
                              2.0 * std::log(trace.b.back() / trace.b0)));
  out.push_back(make_residual(0, "adagrad-proxy-mass", sum_grad_over_a_sq,
                              4.0 * std::log(trace.b.back() / trace.b0) + 2.0 * sum_xi_over_b_sq));
  return out;
}

std::vector<CertificateResidual> adagrad_coord_lemmas(const RunTrace& trace,
                                                      const Objective& objective) {
  std::vector<CertificateResidual> out;
  const long T = trace.T;
  const std::size_t d = trace.b0_coord.size();
  const double eta = trace.adagrad_eta;
  const double L = objective.smooth_L.value_or(0.0);
  const double delta1 = trace.f_gap[0];

  double sum_grad_over_b = 0.0, sum_inner_over_a = 0.0, sum_abs_mixed = 0.0;
  double sum_ghat_over_b_sq = 0.0;
  std::vector<double> ghat_mass(d, 0.0), proxy_mass(d, 0.0), xi_mass(d, 0.0);
  for (long t = 1; t <= T; ++t) {
    const std::size_t k = static_cast<std::size_t>(t - 1);
    const Vector grad = objective.grad(trace.x[k]);
    const Vector& xi = trace.xi[k];
    const Vector ghat = recompute_ghat(trace, objective, k);
    const Vector& b_t = trace.b_coord[k];
    const Vector& a_t = trace.a_coord[k];
    for (std::size_t i = 0; i < d; ++i) {
      out.push_back(make_residual(t, "adagrad-proxy-diff[" + std::to_string(i) + "]",
                                  std::abs(1.0 / a_t[i] - 1.0 / b_t[i]),
                                  std::abs(xi[i]) / (a_t[i] * b_t[i])));
      sum_grad_over_b += grad[i] * grad[i] / b_t[i];
      sum_inner_over_a += grad[i] * xi[i] / a_t[i];
      sum_abs_mixed += std::abs(xi[i]) * (grad[i] * grad[i] / (2.0 * a_t[i] * a_t[i]) +
                                          xi[i] * xi[i] / (2.0 * b_t[i] * b_t[i]));
      sum_ghat_over_b_sq += ghat[i] * ghat[i] / (b_t[i] * b_t[i]);
      ghat_mass[i] += ghat[i] * ghat[i] / (b_t[i] * b_t[i]);
      proxy_mass[i] += grad[i] * grad[i] / (a_t[i] * a_t[i]);
      xi_mass[i] += xi[i] * xi[i] / (b_t[i] * b_t[i]);
    }
  }
  const double descent_rhs =
      delta1 / eta - sum_inner_over_a + sum_abs_mixed + 0.5 * L * eta * sum_ghat_over_b_sq;
  out.push_back(make_residual(0, "adagrad-descent", sum_grad_over_b, descent_rhs));
  for (std::size_t i = 0; i < d; ++i) {
    const double log_growth = std::log(trace.b_coord.back()[i] / trace.b0_coord[i]);
    out.push_back(make_residual(0, "adagrad-step-mass[" + std::to_string(i) + "]", ghat_mass[i],
                                2.0 * log_growth));
    out.push_back(make_residual(0, "adagrad-proxy-mass[" + std::to_string(i) + "]", proxy_mass[i],
                                4.0 * log_growth + 2.0 * xi_mass[i]));
  }
  return out;
}

}  // namespace

std::vector<CertificateResidual> check_adagrad_lemmas(const RunTrace& trace,
                                                      const Objective& objective) {
  require_full(trace, "check_adagrad_lemmas");
  if (trace.algorithm == "adagrad_norm") return adagrad_norm_lemmas(trace, objective);
  if (trace.algorithm == "adagrad_coord") return adagrad_coord_lemmas(trace, objective);
  throw std::invalid_argument("check_adagrad_lemmas: not an adaptive-run trace");
}

std::vector<CertificateResidual> check_run(const RunTrace& trace, const Objective& objective,
                                           const MirrorMap* map, double G, double L) {
  std::vector<CertificateResidual> out;
  if (trace.algorithm == "smd") {
    if (map == nullptr) throw std::invalid_argument("check_run: smd needs a mirror map");
    for (long t = 1; t <= trace.T; ++t) out.push_back(check_step_md(trace, t, objective, *map, G));
  } else if (trace.algorithm == "asmd") {
    if (map == nullptr) throw std::invalid_argument("check_run: asmd needs a mirror map");
    for (long t = 1; t <= trace.T; ++t) {
      out.push_back(check_step_asmd(trace, t, objective, *map, G, L));
    }
  } else if (trace.algorithm == "sgd") {
    for (long t = 1; t <= trace.T; ++t) {
      out.push_back(check_step_sgd(trace, t, objective, L));
      out.push_back(check_step_smoothness(trace, t, objective, L));
    }
  } else if (trace.algorithm == "adagrad_norm" || trace.algorithm == "adagrad_coord") {
    out = check_adagrad_lemmas(trace, objective);
  } else {
    throw std::invalid_argument("check_run: unknown algorithm " + trace.algorithm);
  }
  return out;
}

std::vector<MartingalePoint> martingale_trace(const RunTrace& trace, const WeightSequence& weights,
                                              double G, double L) {
  if (weights.T != trace.T) throw ConfigError("martingale_trace: weight/trace horizon mismatch");
  const long T = trace.T;
  std::vector<double> z(T + 1, 0.0);

  if (trace.algorithm == "smd") {
    if (weights.regime != WeightRegime::MDFixed && weights.regime != WeightRegime::MDVarying &&
        weights.sigma != 0.0) {
      throw ConfigError("martingale_trace: weight regime does not match an smd trace");
    }
    for (long t = 1; t <= T; ++t) {
      const std::size_t k = static_cast<std::size_t>(t - 1);
      const double eta = trace.eta[k];
      const double d_t = trace.breg_to_opt[k];
      const double d_next = (t == T) ? trace.breg_final : trace.breg_to_opt[k + 1];
      const double a_t = eta * trace.f_gap[k] - eta * eta * G * G + d_next - d_t;
      z[t] = weights.w[t] * a_t - weights.v[t] * d_t;
    }
  } else if (trace.algorithm == "asmd") {
    if (weights.regime != WeightRegime::ASMDFixed && weights.regime != WeightRegime::ASMDVarying &&
        weights.sigma != 0.0) {
      throw ConfigError("martingale_trace: weight regime does not match an asmd trace");
    }
    for (long t = 1; t <= T; ++t) {
      const std::size_t k = static_cast<std::size_t>(t - 1);
      const double eta = trace.eta[k];
      const double alpha = trace.alpha[k];
      const double damp = 1.0 - L * alpha * eta;
      if (damp <= 0.0) throw std::invalid_argument("martingale_trace: L alpha_t eta_t >= 1");
      const double d_prev = (t == 1) ? trace.breg_z0 : trace.breg_z[k - 1];
      const double coeff_prev = (t == 1) ? 0.0 : eta * (1.0 - alpha) / alpha;
      const double fy_prev = (t == 1) ? 0.0 : trace.fgap_y[k - 1];
      const double b_t = (eta / alpha) * trace.fgap_y[k] - coeff_prev * fy_prev -
                         eta * eta * G * G / damp + trace.breg_z[k] - d_prev;
      z[t] = weights.w[t] * b_t - weights.v[t] * d_prev;
    }
  } else if (trace.algorithm == "sgd") {
    if (weights.regime != WeightRegime::SGDConstant && weights.regime != WeightRegime::SGDVarying &&
        weights.sigma != 0.0) {
      throw ConfigError("martingale_trace: weight regime does not match an sgd trace");
    }
    for (long t = 1; t <= T; ++t) {
      const std::size_t k = static_cast<std::size_t>(t - 1);
      const double eta = trace.eta[k];
      const double gsq = trace.grad_sq[k];
      const double delta_next = (t == T) ? trace.f_gap_final : trace.f_gap[k + 1];
      const double c_t = eta * (1.0 - L * eta / 2.0) * gsq + delta_next - trace.f_gap[k];
      z[t] = weights.w[t] * c_t - weights.v[t] * gsq;
    }
  } else {
    throw ConfigError("martingale_trace: unsupported algorithm " + trace.algorithm);
  }

  std::vector<MartingalePoint> points(T);
  double suffix = 0.0;
  for (long t = T; t >= 1; --t) {
    suffix += z[t];
    points[t - 1] = {z[t], suffix};
  }
  return points;
}

Cor1Check cor1_event_check(const RunTrace& trace, const WeightSequence& weights, double G,
                           double delta) {
  if (trace.algorithm != "smd") throw ConfigError("cor1_event_check: needs an smd trace");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must lie in (0,1)");
  const auto points = martingale_trace(trace, weights, G);
  const double s2 = weights.sigma * weights.sigma;
  Cor1Check c;
  c.s1 = points.empty() ? 0.0 : points.front().s;
  c.threshold = 3.0 * s2 * weights.sum_w_eta_sq() + std::log(1.0 / delta);
  c.event = c.s1 < c.threshold;
  double weighted_gap = 0.0;
  for (long t = 1; t <= trace.T; ++t) {
    weighted_gap += weights.w[t] * trace.eta[t - 1] * trace.f_gap[t - 1];
  }
  c.lhs = weighted_gap + weights.w[trace.T] * trace.breg_final;
  c.rhs = weights.w[0] * trace.breg_to_opt[0] + (G * G + 3.0 * s2) * weights.sum_w_eta_sq() +
          std::log(1.0 / delta);
  c.inequality = c.lhs <= c.rhs + residual_tolerance(c.rhs);
  c.implication_ok = !c.event || c.inequality;
  return c;
}

AdagradHpCheck adagrad_hp_check(const RunTrace& trace, const Objective& objective, double sigma,
                                double delta) {
  require_full(trace, "adagrad_hp_check");
  if (trace.algorithm != "adagrad_norm") {
    throw ConfigError("adagrad_hp_check: needs an adagrad_norm trace");
  }
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must lie in (0,1)");
  if (sigma <= 0.0) throw std::invalid_argument("sigma must be > 0");

  const long T = trace.T;
  const double eta = trace.adagrad_eta;
  const double L = objective.smooth_L.value_or(0.0);
  const double log_inv_delta = std::log(1.0 / delta);
  const double log_t_delta = std::log(static_cast<double>(T) / delta);

  double grad_over_b = 0.0, grad_over_a_sq = 0.0, xi_over_b_sq = 0.0, inner_over_a = 0.0;
  for (long t = 1; t <= T; ++t) {
    const std::size_t k = static_cast<std::size_t>(t - 1);
    const Vector grad = objective.grad(trace.x[k]);
    grad_over_b += norm_l2_sq(grad) / trace.b[k];
    grad_over_a_sq += norm_l2_sq(grad) / (trace.a[k] * trace.a[k]);
    xi_over_b_sq += norm_l2_sq(trace.xi[k]) / (trace.b[k] * trace.b[k]);
    inner_over_a += dot(grad, trace.xi[k]) / trace.a[k];
  }
  const double log_growth = std::log(trace.b.back() / trace.b0);

  AdagradHpCheck c;
  c.event_martingale = -inner_over_a <= 2.0 * sigma * std::sqrt(log_inv_delta) * grad_over_a_sq +
                                            sigma * std::sqrt(log_inv_delta);
  c.event_max_noise = trace.max_noise.back() <= 2.0 * sigma * std::sqrt(log_t_delta);
  c.premise_fold = 2.0 * std::sqrt(log_inv_delta) <= std::sqrt(log_t_delta);
  c.lhs = grad_over_b;
  c.rhs = trace.f_gap[0] / eta +
          sigma * std::sqrt(log_t_delta) * (8.0 * log_growth + 5.0 * xi_over_b_sq) +
          sigma * std::sqrt(log_inv_delta) + L * eta * log_growth;
  c.inequality = c.lhs <= c.rhs + residual_tolerance(c.rhs);
  c.implication_ok =
      !(c.event_martingale && c.event_max_noise && c.premise_fold) || c.inequality;
  return c;
}

CheckReport mgf_theorem_check(const MgfCheckConfig& config, long n_trials) {
  if (n_trials < 1) throw std::invalid_argument("mgf_theorem_check: n_trials must be >= 1");
  if (config.objective == nullptr) throw ConfigError("mgf_theorem_check: missing objective");
  if (config.T < 0) throw ConfigError("mgf_theorem_check: T must be >= 0");
  if (config.T == 0) {
    // empty run: S_1 = 0 and the bound is exp(0)
    CheckReport trivial;
    trivial.estimate = 1.0;
    trivial.bound = 1.0;
    trivial.pass = true;
    trivial.margin = 0.0;
    trivial.slack = 5.0 / std::sqrt(static_cast<double>(n_trials));
    return trivial;
  }

  const bool md = config.family == "md";
  if (!md && config.family != "sgd") {
    throw ConfigError("mgf_theorem_check: family must be md or sgd");
  }
  const WeightRegime regime = config.regime;
  const WeightSequence weights =
      build_weights(regime, config.sigma, config.schedule, config.T, config.L);
  const double s2 = config.sigma * config.sigma;

  double exponent = 0.0;
  if (md) {
    exponent = 3.0 * s2 * weights.sum_w_eta_sq();
  } else {
    // Corollary hypothesis: eta_t L <= 1 on top of the weight condition
    for (long t = 1; t <= config.T; ++t) {
      if (config.schedule.eta(t) * config.L > 1.0 + 1e-12) {
        throw std::invalid_argument("mgf_theorem_check: eta_t L > 1 at t = " + std::to_string(t));
      }
    }
    exponent = 1.5 * s2 * config.L * weights.sum_w_eta_sq();
  }

  StochasticOracle oracle{config.objective, config.noise, true};
  double mean = 0.0;
  for (long trial = 0; trial < n_trials; ++trial) {
    RngStream rng(config.base_seed, static_cast<std::uint64_t>(trial));
    RunTrace trace = md ? run_smd(oracle, config.map, config.schedule, config.x1, config.T, rng,
                                  TraceMode::Summary)
                        : run_sgd(oracle, config.schedule, config.x1, config.T, rng,
                                  TraceMode::Summary);
    const auto points = martingale_trace(trace, weights, config.G, config.L);
    mean += std::exp(points.front().s);
  }
  mean /= static_cast<double>(n_trials);

  CheckReport report;
  report.slack = 5.0 / std::sqrt(static_cast<double>(n_trials));
  report.estimate = mean;
  report.bound = std::exp(exponent);
  if (!std::isfinite(mean)) {
    report.pass = false;
    report.reason = "divergent MGF";
    report.margin = -std::numeric_limits<double>::infinity();
    return report;
  }
  report.pass = mean <= report.bound * (1.0 + report.slack);
  report.margin = (report.bound * (1.0 + report.slack) - mean) / report.bound;
  if (!report.pass) report.reason = "bound exceeded";
  return report;
}

TheoremBound theorem_bound(const std::string& id, const TheoremInputs& in) {
  TheoremBound out;
  out.id = id;
  if (id == "thm6" || id == "thm7") {
    // rates with unspecified polylog constants; no closed form to evaluate
    out.supported = false;
    return out;
  }
  if (in.delta <= 0.0 || in.delta >= 1.0) throw std::invalid_argument("delta must lie in (0,1)");
  if (in.T < 1) throw std::invalid_argument("T must be >= 1");
  if (!(in.d1 > 0.0)) throw std::invalid_argument("initial distance/gap must be > 0");
  const double Td = static_cast<double>(in.T);
  const double root6 = std::sqrt(6.0);

  if (id == "thm1-fixed" || id == "thm1-varying") {
    const double K = noise_adjusted_sq(in.G, in.sigma, in.delta);
    if (id == "thm1-fixed") {
      out.eta = std::sqrt(in.d1 / (6.0 * K * Td));
      out.value = 4.0 * root6 / std::sqrt(Td) * std::sqrt(in.d1 * K);
      out.distance_bound = 4.0 * in.d1;
    } else {
      out.eta = std::sqrt(in.d1 / (6.0 * K));
      out.value = 2.0 * root6 / std::sqrt(Td) * (2.0 + std::log(Td)) * std::sqrt(in.d1 * K);
      out.distance_bound = 2.0 * (2.0 + std::log(Td)) * in.d1;
    }
    return out;
  }
  if (id == "thm4-fixed" || id == "thm4-varying") {
    if (!(in.L > 0.0)) throw std::invalid_argument("thm4 needs L > 0");
    const double log_inv_delta = std::log(1.0 / in.delta);
    if (id == "thm4-fixed") {
      out.value = 2.0 * in.d1 * in.L / Td + 5.0 * in.sigma * std::sqrt(in.d1 * in.L / Td) +
                  12.0 * in.sigma * in.sigma * log_inv_delta / Td;
      const double noisy = in.sigma > 0.0
                               ? std::sqrt(in.d1 / (in.sigma * in.sigma * in.L * Td))
                               : std::numeric_limits<double>::infinity();
      out.eta = std::min(1.0 / in.L, noisy);
    } else {
      out.value = (2.0 * in.d1 * in.L + 3.0 * in.sigma * in.sigma * (1.0 + std::log(Td)) +
                   12.0 * in.sigma * in.sigma * log_inv_delta) /
                  std::sqrt(Td);
      out.eta = 1.0 / in.L;
    }
    return out;
  }
  if (id == "thm5-fixed" || id == "thm5-varying") {
    if (in.L < 0.0) throw std::invalid_argument("thm5 needs L >= 0");
    const double K = noise_adjusted_sq(in.G, in.sigma, in.delta);
    const double curvature = 16.0 * in.L * in.d1 / (Td * Td);
    if (id == "thm5-fixed") {
      out.value = curvature + 8.0 * root6 / std::sqrt(Td) * std::sqrt(in.d1 * K);
      out.distance_bound = 4.0 * in.d1;
      const double c = std::sqrt(in.d1 / (6.0 * K)) / std::pow(Td, 1.5);
      out.eta = in.L > 0.0 ? std::min(1.0 / (4.0 * in.L), c) : c;
    } else {
      out.value = curvature +
                  4.0 * root6 * (2.0 + std::log(Td)) / std::sqrt(Td) * std::sqrt(in.d1 * K);
      out.distance_bound = 2.0 * (2.0 + std::log(Td)) * in.d1;
      out.eta = std::sqrt(in.d1 / (6.0 * K));
    }
    return out;
  }
  throw ConfigError("theorem_bound: unknown id " + id);
}

}  // namespace hpopt
