#include "hpopt/weights.hpp"

#include <cmath>

namespace hpopt {

namespace {
double acc_factor(double L, long t, double eta_t) {
  const double alpha_t = 2.0 / static_cast<double>(t + 1);
  const double denom = 1.0 - L * alpha_t * eta_t;
  if (denom <= 0.0) {
    throw std::invalid_argument("weights: L alpha_t eta_t >= 1 at t = " + std::to_string(t));
  }
  return denom;
}
}  // namespace

double WeightSequence::sum_w_eta_sq() const {
  double s = 0.0;
  for (long t = 1; t <= T; ++t) s += w[t] * eta[t] * eta[t];
  return s;
}

double WeightSequence::sum_w_eta_sq_acc(double L) const {
  double s = 0.0;
  for (long t = 1; t <= T; ++t) s += w[t] * eta[t] * eta[t] / acc_factor(L, t, eta[t]);
  return s;
}

WeightSequence build_weights(WeightRegime regime, double sigma, const StepSchedule& schedule,
                             long T, double L) {
  if (T < 1) throw std::invalid_argument("build_weights: T must be >= 1");
  if (sigma < 0.0) throw std::invalid_argument("build_weights: sigma must be >= 0");
  const bool accelerated = regime == WeightRegime::ASMDFixed || regime == WeightRegime::ASMDVarying;
  const bool sgd = regime == WeightRegime::SGDConstant || regime == WeightRegime::SGDVarying;

  WeightSequence ws;
  ws.regime = regime;
  ws.sigma = sigma;
  ws.T = T;
  ws.eta.assign(T + 1, 0.0);
  for (long t = 1; t <= T; ++t) ws.eta[t] = schedule.eta(t);
  ws.w.assign(T + 1, 1.0);
  ws.v.assign(T + 1, 0.0);

  if (sigma == 0.0) {
    // degenerate convention: uniform weights, no divergence losses
    return ws;
  }
  const double s2 = sigma * sigma;

  if (sgd) {
    if (ws.eta[1] <= 0.0) throw std::invalid_argument("build_weights: schedule has no positive steps");
    const double w_const = 1.0 / (6.0 * s2 * ws.eta[1]);
    for (long t = 0; t <= T; ++t) ws.w[t] = w_const;
    for (long t = 1; t <= T; ++t) {
      const double e = ws.eta[t];
      ws.v[t] = 3.0 * s2 * w_const * w_const * e * e * (e * L - 1.0) * (e * L - 1.0);
      // Theorem hypothesis: w_t eta_t^2 L <= 1/(2 s^2)
      if (w_const * e * e * L > 0.5 / s2 * (1.0 + 1e-12)) {
        throw std::invalid_argument("build_weights: w eta^2 L > 1/(2 sigma^2) at t = " +
                                    std::to_string(t));
      }
    }
    return ws;
  }

  // MD/ASMD: C = 6 s^2 sum eta_t^2, w_T = 1/(2C), backward recursion
  double sum_eta_sq = 0.0;
  for (long t = 1; t <= T; ++t) sum_eta_sq += ws.eta[t] * ws.eta[t];
  if (sum_eta_sq <= 0.0) throw std::invalid_argument("build_weights: schedule has no positive steps");
  const double C = 6.0 * s2 * sum_eta_sq;
  ws.cap_constant = C;
  ws.w[T] = 1.0 / (2.0 * C);
  for (long t = T; t >= 1; --t) {
    ws.v[t] = 6.0 * s2 * ws.eta[t] * ws.eta[t] * ws.w[t] * ws.w[t];
    ws.w[t - 1] = ws.w[t] + ws.v[t];
  }

  ws.induction_cap.assign(T + 1, 0.0);
  double partial = 0.0;
  ws.induction_cap[0] = 1.0 / C;
  for (long t = 1; t <= T; ++t) {
    partial += ws.eta[t] * ws.eta[t];
    ws.induction_cap[t] = 1.0 / (C + 6.0 * s2 * partial);
  }

  for (long t = 1; t <= T; ++t) {
    const double we2 = ws.w[t] * ws.eta[t] * ws.eta[t];
    const double lhs = accelerated ? we2 / acc_factor(L, t, ws.eta[t]) : we2;
    if (lhs > 0.25 / s2 * (1.0 + 1e-12)) {
      ws.cond_quarter = false;
      throw std::invalid_argument("build_weights: concentration hypothesis fails at t = " +
                                  std::to_string(t));
    }
    if (lhs > 1.0 / (6.0 * s2) * (1.0 + 1e-12)) ws.cond_sixth = false;
  }
  return ws;
}

}  // namespace hpopt
