#include "hpopt/algorithms.hpp"

#include <cmath>

namespace hpopt {

namespace {

void require_run_inputs(const StochasticOracle& oracle, long T) {
  if (oracle.objective == nullptr) throw std::invalid_argument("oracle has no objective");
  if (!oracle.white_box) throw std::invalid_argument("traced runs need a white-box oracle");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
}

void check_in_domain(const Objective& obj, const Vector& v, Domain dom, long step) {
  if (static_cast<int>(v.size()) != obj.dim) {
    throw std::invalid_argument("iterate dimension does not match objective");
  }
  for (double c : v) {
    if (!std::isfinite(c)) {
      throw DomainViolation("non-finite iterate at step " + std::to_string(step));
    }
    if (dom == Domain::Simplex && c <= 0.0) {
      throw DomainViolation("nonpositive simplex iterate at step " + std::to_string(step));
    }
  }
}

double gap(const Objective& obj, double fx) {
  return obj.f_star ? fx - *obj.f_star : std::numeric_limits<double>::quiet_NaN();
}

void reserve_common(RunTrace& tr, long T, bool white_box_cols) {
  tr.eta.reserve(T);
  tr.f_gap.reserve(T);
  tr.grad_sq.reserve(T);
  tr.breg_to_opt.reserve(T);
  if (white_box_cols) {
    tr.x.reserve(T);
    tr.xi.reserve(T);
  }
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

RunTrace run_smd(const StochasticOracle& oracle, const MirrorMap& map, const StepSchedule& schedule,
                 const Vector& x1, long T, RngStream& rng, TraceMode mode) {
  require_run_inputs(oracle, T);
  const Objective& obj = *oracle.objective;
  check_in_domain(obj, x1, map.domain(), 0);

  RunTrace tr;
  tr.algorithm = "smd";
  tr.T = T;
  tr.mode = mode;
  reserve_common(tr, T, mode == TraceMode::Full);

  const bool has_opt = obj.x_star.has_value();
  Vector x = x1;
  Vector sum_x(x.size(), 0.0);
  for (long t = 1; t <= T; ++t) {
    const double eta_t = schedule.eta(t);
    SampleResult s = oracle.sample(x, rng);
    tr.eta.push_back(eta_t);
    tr.f_gap.push_back(gap(obj, obj.eval(x)));
    tr.grad_sq.push_back(norm_l2_sq(s.grad));
    tr.breg_to_opt.push_back(has_opt ? bregman(map, *obj.x_star, x)
                                     : std::numeric_limits<double>::quiet_NaN());
    if (mode == TraceMode::Full) {
      tr.x.push_back(x);
      tr.xi.push_back(s.xi);
    }
    for (std::size_t i = 0; i < x.size(); ++i) sum_x[i] += x[i];
    bool clamped = false;
    x = mirror_step(map, x, s.ghat, eta_t, &clamped);
    if (clamped) tr.clamped_steps.push_back(t);
    check_in_domain(obj, x, map.domain(), t);
  }
  tr.x_final = x;
  tr.f_gap_final = gap(obj, obj.eval(x));
  tr.breg_final = has_opt ? bregman(map, *obj.x_star, x) : std::numeric_limits<double>::quiet_NaN();
  tr.avg_iterate = scale(1.0 / static_cast<double>(T), sum_x);
  tr.avg_gap = mean(tr.f_gap);
  tr.gap_of_avg = gap(obj, obj.eval(tr.avg_iterate));
  tr.avg_grad_sq = mean(tr.grad_sq);
  return tr;
}

RunTrace run_asmd(const StochasticOracle& oracle, const MirrorMap& map, const StepSchedule& schedule,
                  const Vector& x0, long T, RngStream& rng, TraceMode mode) {
  require_run_inputs(oracle, T);
  const Objective& obj = *oracle.objective;
  check_in_domain(obj, x0, map.domain(), 0);

  RunTrace tr;
  tr.algorithm = "asmd";
  tr.T = T;
  tr.mode = mode;
  reserve_common(tr, T, mode == TraceMode::Full);
  tr.alpha.reserve(T);
  tr.fgap_y.reserve(T);
  tr.breg_z.reserve(T);

  const bool has_opt = obj.x_star.has_value();
  Vector y = x0;
  Vector z = x0;
  tr.z0 = x0;
  tr.breg_z0 = has_opt ? bregman(map, *obj.x_star, z) : std::numeric_limits<double>::quiet_NaN();
  Vector sum_x(x0.size(), 0.0);
  for (long t = 1; t <= T; ++t) {
    const double alpha_t = 2.0 / static_cast<double>(t + 1);
    const double eta_t = schedule.eta(t);
    const Vector x = combine(1.0 - alpha_t, y, alpha_t, z);
    SampleResult s = oracle.sample(x, rng);
    bool clamped = false;
    const Vector z_next = mirror_step(map, z, s.ghat, eta_t, &clamped);
    if (clamped) tr.clamped_steps.push_back(t);
    y = combine(1.0 - alpha_t, y, alpha_t, z_next);
    z = z_next;
    check_in_domain(obj, y, map.domain(), t);
    check_in_domain(obj, z, map.domain(), t);

    tr.eta.push_back(eta_t);
    tr.alpha.push_back(alpha_t);
    tr.f_gap.push_back(gap(obj, obj.eval(x)));
    tr.grad_sq.push_back(norm_l2_sq(s.grad));
    tr.breg_to_opt.push_back(has_opt ? bregman(map, *obj.x_star, x)
                                     : std::numeric_limits<double>::quiet_NaN());
    tr.fgap_y.push_back(gap(obj, obj.eval(y)));
    tr.breg_z.push_back(has_opt ? bregman(map, *obj.x_star, z)
                                : std::numeric_limits<double>::quiet_NaN());
    if (mode == TraceMode::Full) {
      tr.x.push_back(x);
      tr.xi.push_back(s.xi);
      tr.y.push_back(y);
      tr.z.push_back(z);
    }
    for (std::size_t i = 0; i < x.size(); ++i) sum_x[i] += x[i];
  }
  tr.x_final = y;  // algorithm returns y_T
  tr.f_gap_final = tr.fgap_y.back();
  tr.breg_final = tr.breg_z.empty() ? std::numeric_limits<double>::quiet_NaN() : tr.breg_z.back();
  tr.avg_iterate = scale(1.0 / static_cast<double>(T), sum_x);
  tr.avg_gap = mean(tr.fgap_y);
  tr.gap_of_avg = gap(obj, obj.eval(tr.avg_iterate));
  tr.avg_grad_sq = mean(tr.grad_sq);
  return tr;
}

RunTrace run_sgd(const StochasticOracle& oracle, const StepSchedule& schedule, const Vector& x1,
                 long T, RngStream& rng, TraceMode mode) {
  require_run_inputs(oracle, T);
  const Objective& obj = *oracle.objective;
  if (obj.domain != Domain::AllSpace) throw std::invalid_argument("run_sgd needs an unconstrained objective");
  check_in_domain(obj, x1, Domain::AllSpace, 0);

  RunTrace tr;
  tr.algorithm = "sgd";
  tr.T = T;
  tr.mode = mode;
  reserve_common(tr, T, mode == TraceMode::Full);

  const bool has_opt = obj.x_star.has_value();
  Vector x = x1;
  Vector sum_x(x.size(), 0.0);
  for (long t = 1; t <= T; ++t) {
    const double eta_t = schedule.eta(t);
    SampleResult s = oracle.sample(x, rng);
    tr.eta.push_back(eta_t);
    tr.f_gap.push_back(gap(obj, obj.eval(x)));
    tr.grad_sq.push_back(norm_l2_sq(s.grad));
    tr.breg_to_opt.push_back(has_opt ? 0.5 * norm_l2_sq(sub(*obj.x_star, x))
                                     : std::numeric_limits<double>::quiet_NaN());
    if (mode == TraceMode::Full) {
      tr.x.push_back(x);
      tr.xi.push_back(s.xi);
    }
    for (std::size_t i = 0; i < x.size(); ++i) sum_x[i] += x[i];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] - eta_t * s.ghat[i];
    check_in_domain(obj, x, Domain::AllSpace, t);
  }
  tr.x_final = x;
  tr.f_gap_final = gap(obj, obj.eval(x));
  tr.breg_final = has_opt ? 0.5 * norm_l2_sq(sub(*obj.x_star, x))
                          : std::numeric_limits<double>::quiet_NaN();
  tr.avg_iterate = scale(1.0 / static_cast<double>(T), sum_x);
  tr.avg_gap = mean(tr.f_gap);
  tr.gap_of_avg = gap(obj, obj.eval(tr.avg_iterate));
  tr.avg_grad_sq = mean(tr.grad_sq);
  return tr;
}

RunTrace run_adagrad_norm(const StochasticOracle& oracle, double eta, double b0, const Vector& x1,
                          long T, RngStream& rng, TraceMode mode) {
  require_run_inputs(oracle, T);
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  if (!(b0 > 0.0)) throw std::invalid_argument("b0 must be > 0");
  const Objective& obj = *oracle.objective;
  if (obj.domain != Domain::AllSpace) throw std::invalid_argument("adagrad needs an unconstrained objective");
  check_in_domain(obj, x1, Domain::AllSpace, 0);

  RunTrace tr;
  tr.algorithm = "adagrad_norm";
  tr.T = T;
  tr.mode = mode;
  tr.adagrad_eta = eta;
  tr.b0 = b0;
  reserve_common(tr, T, mode == TraceMode::Full);
  tr.b.reserve(T);
  tr.a.reserve(T);
  tr.max_noise.reserve(T);

  const bool has_opt = obj.x_star.has_value();
  Vector x = x1;
  double b_sq = b0 * b0;
  double max_noise = 0.0;
  for (long t = 1; t <= T; ++t) {
    SampleResult s = oracle.sample(x, rng);
    const double a_t = std::sqrt(b_sq + norm_l2_sq(s.grad));
    b_sq += norm_l2_sq(s.ghat);
    const double b_t = std::sqrt(b_sq);
    max_noise = std::max(max_noise, norm_l2(s.xi));

    tr.eta.push_back(eta / b_t);
    tr.f_gap.push_back(gap(obj, obj.eval(x)));
    tr.grad_sq.push_back(norm_l2_sq(s.grad));
    tr.breg_to_opt.push_back(has_opt ? 0.5 * norm_l2_sq(sub(*obj.x_star, x))
                                     : std::numeric_limits<double>::quiet_NaN());
    tr.b.push_back(b_t);
    tr.a.push_back(a_t);
    tr.max_noise.push_back(max_noise);
    if (mode == TraceMode::Full) {
      tr.x.push_back(x);
      tr.xi.push_back(s.xi);
    }
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] - (eta / b_t) * s.ghat[i];
    check_in_domain(obj, x, Domain::AllSpace, t);
  }
  tr.x_final = x;
  tr.f_gap_final = gap(obj, obj.eval(x));
  tr.breg_final = has_opt ? 0.5 * norm_l2_sq(sub(*obj.x_star, x))
                          : std::numeric_limits<double>::quiet_NaN();
  tr.avg_gap = mean(tr.f_gap);
  tr.avg_grad_sq = mean(tr.grad_sq);
  return tr;
}

RunTrace run_adagrad_coord(const StochasticOracle& oracle, double eta, const Vector& b0,
                           const Vector& x1, long T, RngStream& rng, TraceMode mode) {
  require_run_inputs(oracle, T);
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  for (double c : b0) {
    if (!(c > 0.0)) throw std::invalid_argument("b0 entries must be > 0");
  }
  const Objective& obj = *oracle.objective;
  if (obj.domain != Domain::AllSpace) throw std::invalid_argument("adagrad needs an unconstrained objective");
  if (b0.size() != x1.size()) throw std::invalid_argument("b0 dimension mismatch");
  check_in_domain(obj, x1, Domain::AllSpace, 0);

  const std::size_t d = x1.size();
  RunTrace tr;
  tr.algorithm = "adagrad_coord";
  tr.T = T;
  tr.mode = mode;
  tr.adagrad_eta = eta;
  tr.b0_coord = b0;
  reserve_common(tr, T, mode == TraceMode::Full);

  const bool has_opt = obj.x_star.has_value();
  Vector x = x1;
  Vector b_sq(d), b_t(d), a_t(d), max_noise(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) b_sq[i] = b0[i] * b0[i];
  for (long t = 1; t <= T; ++t) {
    SampleResult s = oracle.sample(x, rng);
    for (std::size_t i = 0; i < d; ++i) {
      a_t[i] = std::sqrt(b_sq[i] + s.grad[i] * s.grad[i]);
      b_sq[i] += s.ghat[i] * s.ghat[i];
      b_t[i] = std::sqrt(b_sq[i]);
      max_noise[i] = std::max(max_noise[i], std::abs(s.xi[i]));
    }
    tr.eta.push_back(eta / b_t[0]);  // representative scalar; full vector in b_coord
    tr.f_gap.push_back(gap(obj, obj.eval(x)));
    tr.grad_sq.push_back(norm_l2_sq(s.grad));
    tr.breg_to_opt.push_back(has_opt ? 0.5 * norm_l2_sq(sub(*obj.x_star, x))
                                     : std::numeric_limits<double>::quiet_NaN());
    tr.b.push_back(b_t[0]);
    tr.a.push_back(a_t[0]);
    tr.max_noise.push_back(max_noise[0]);
    if (mode == TraceMode::Full) {
      tr.x.push_back(x);
      tr.xi.push_back(s.xi);
      tr.b_coord.push_back(b_t);
      tr.a_coord.push_back(a_t);
      tr.max_noise_coord.push_back(max_noise);
    }
    for (std::size_t i = 0; i < d; ++i) x[i] = x[i] - (eta / b_t[i]) * s.ghat[i];
    check_in_domain(obj, x, Domain::AllSpace, t);
  }
  tr.x_final = x;
  tr.f_gap_final = gap(obj, obj.eval(x));
  tr.breg_final = has_opt ? 0.5 * norm_l2_sq(sub(*obj.x_star, x))
                          : std::numeric_limits<double>::quiet_NaN();
  tr.avg_gap = mean(tr.f_gap);
  tr.avg_grad_sq = mean(tr.grad_sq);
  return tr;
}

}  // namespace hpopt
