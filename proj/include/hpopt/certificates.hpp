#pragma once

#include "hpopt/algorithms.hpp"
#include "hpopt/weights.hpp"

namespace hpopt {

/// One evaluated inequality: residual = rhs - lhs, certified when
/// residual >= -1e-9 (1 + |rhs|). t = 0 marks whole-run aggregates.
struct CertificateResidual {
  long t = 0;
  std::string lemma;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool pass = false;
};

double residual_tolerance(double rhs);
CertificateResidual make_residual(long t, std::string lemma, double lhs, double rhs);

/// Largest dual-norm gradient over the visited iterates; a valid Lipschitz
/// surrogate for the per-step certificates when the objective declares no
/// global G. Needs a full (white-box) trace.
double grad_dual_max(const RunTrace& trace, const Objective& objective, const NormPair& pair);

/// Mirror-descent step inequality ("md-step"):
///   eta_t (f(x_t)-f*) - eta_t^2 G^2 + D(x*,x_{t+1}) - D(x*,x_t)
///     <= eta_t <xi_t, x*-x_t> + eta_t^2 |xi_t|_*^2.
/// Requires x_star and a white-box trace; G must bound |grad f(x_t)|_* on
/// the visited iterates.
CertificateResidual check_step_md(const RunTrace& trace, long t, const Objective& objective,
                                  const MirrorMap& map, double G);

/// Accelerated-step inequality ("asmd-step") with the 1/(1 - L alpha eta)
/// factor; G and L are the constants of the generalized smoothness
/// condition f(y) <= f(x) + <grad f(x), y-x> + G|y-x| + (L/2)|y-x|^2.
/// Errors when L alpha_t eta_t >= 1.
CertificateResidual check_step_asmd(const RunTrace& trace, long t, const Objective& objective,
                                    const MirrorMap& map, double G, double L);

/// SGD descent inequality ("sgd-step"):
///   eta_t (1 - L eta_t/2) |grad f(x_t)|^2 + Delta_{t+1} - Delta_t
///     <= (L eta_t^2 - eta_t) <grad f(x_t), xi_t> + (L eta_t^2/2) |xi_t|^2.
CertificateResidual check_step_sgd(const RunTrace& trace, long t, const Objective& objective,
                                   double L);

/// Quadratic upper bound for the taken step ("smoothness"):
///   f(x_{t+1}) - f(x_t) <= <grad f(x_t), x_{t+1}-x_t> + (L/2)|x_{t+1}-x_t|^2.
CertificateResidual check_step_smoothness(const RunTrace& trace, long t,
                                          const Objective& objective, double L);

/// All adaptive-run certificates for an adagrad_norm or adagrad_coord
/// trace (the latter gets the per-coordinate analogues):
///  (a) "adagrad-proxy-diff":  |1/a_t - 1/b_t| <= |xi_t| / (a_t b_t), per step;
///  (b) "adagrad-descent":     the aggregate descent inequality
///      sum |grad|^2/b_t <= Delta_1/eta + (M_T/2)[sum |grad|^2/a_t^2
///        + sum |xi|^2/b_t^2] - sum <grad,xi>/a_t + sum (L eta / 2 b_t^2)|ghat|^2;
///  (c) "adagrad-step-mass":   sum |ghat_t|^2/b_t^2 <= 2 ln(b_T/b_0);
///  (d) "adagrad-proxy-mass":  sum |grad|^2/a_t^2 <= 4 ln(b_T/b_0)
///        + 2 sum |xi|^2/b_t^2.
std::vector<CertificateResidual> check_adagrad_lemmas(const RunTrace& trace,
                                                      const Objective& objective);

/// Per-step checks for a whole run, dispatched on trace.algorithm. The
/// sgd family includes the smoothness residuals; adagrad families defer to
/// check_adagrad_lemmas.
std::vector<CertificateResidual> check_run(const RunTrace& trace, const Objective& objective,
                                           const MirrorMap* map, double G, double L);

struct MartingalePoint {
  double z = 0.0;  // Z_t
  double s = 0.0;  // S_t = sum_{i>=t} Z_i
};

/// Z_t/S_t sequence of the concentration argument for a recorded run:
/// MD:   Z_t = w_t A_t - v_t D(x*, x_t)
/// ASMD: Z_t = w_t B_t - v_t D(x*, z_{t-1})
/// SGD:  Z_t = w_t C_t - v_t |grad f(x_t)|^2.
/// Scalar trace columns suffice (no white-box data needed).
std::vector<MartingalePoint> martingale_trace(const RunTrace& trace, const WeightSequence& weights,
                                              double G, double L = 0.0);

/// Implication check of the high-probability event behind the MD
/// convergence corollary: whenever S_1 < 3 s^2 sum w_t eta_t^2 + ln(1/delta),
/// the weighted-gap inequality must hold on the same trace.
struct Cor1Check {
  double s1 = 0.0;
  double threshold = 0.0;
  bool event = false;  // S_1 below threshold
  double lhs = 0.0;    // sum w_t eta_t gap_t + w_T D(x*, x_{T+1})
  double rhs = 0.0;    // w_0 D(x*, x_1) + (G^2 + 3 s^2) sum w_t eta_t^2 + ln(1/delta)
  bool inequality = false;
  bool implication_ok = false;
};

Cor1Check cor1_event_check(const RunTrace& trace, const WeightSequence& weights, double G,
                           double delta);

/// Implication check for the adaptive method's high-probability descent
/// bound. The probabilistic ingredients are the martingale event
///   -sum <grad f(x_t), xi_t>/a_t <= 2 s sqrt(ln 1/d) sum |grad|^2/a_t^2
///                                  + s sqrt(ln 1/d)
/// and the noise-maximum event M_T <= 2 s sqrt(ln(T/d)); combined with the
/// deterministic per-run lemmas (and the fold condition
/// 2 sqrt(ln 1/d) <= sqrt(ln T/d)) they force
///   sum |grad f(x_t)|^2 / b_t <= Delta_1/eta
///     + s sqrt(ln(T/d)) (8 ln(b_T/b_0) + 5 sum |xi|^2/b_t^2)
///     + s sqrt(ln 1/d) + L eta ln(b_T/b_0).
/// Only the implication is checked, never the events' probability.
struct AdagradHpCheck {
  bool event_martingale = false;
  bool event_max_noise = false;
  bool premise_fold = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool inequality = false;
  bool implication_ok = false;
};

AdagradHpCheck adagrad_hp_check(const RunTrace& trace, const Objective& objective, double sigma,
                                double delta);

/// Monte-Carlo check of the moment bound E[exp(S_1)] <= exp(3 s^2 K) over
/// independent runs, K = sum w_t eta_t^2 (MD) or sum w_t eta_t^2 L / 2 (SGD).
struct MgfCheckConfig {
  std::string family;  // "md" | "sgd"
  const Objective* objective = nullptr;
  MirrorMap map;  // md only
  StepSchedule schedule = StepSchedule::constant(1.0);
  WeightRegime regime = WeightRegime::MDFixed;
  NoiseModel noise;
  double sigma = 0.0;  // declared for the geometry in play
  double G = 0.0;      // md
  double L = 0.0;      // sgd
  Vector x1;
  long T = 0;
  std::uint64_t base_seed = 0;
};

CheckReport mgf_theorem_check(const MgfCheckConfig& config, long n_trials);

/// Closed-form high-probability bounds. Supported ids: thm1-fixed,
/// thm1-varying (average-gap bounds for mirror descent), thm4-fixed,
/// thm4-varying (average squared-gradient bounds for SGD), thm5-fixed,
/// thm5-varying (final-gap bounds for the accelerated method). The
/// adaptive-method theorems hide unspecified polylog constants; requesting
/// thm6/thm7 returns supported = false.
struct TheoremInputs {
  double d1 = 0.0;  // D(x*,x_1), D(x*,z_0), or Delta_1 depending on the id
  double G = 0.0;
  double sigma = 0.0;
  double L = 0.0;
  double delta = 0.0;
  long T = 0;
};

struct TheoremBound {
  std::string id;
  bool supported = true;
  double value = 0.0;
  std::optional<double> eta;             // the schedule constant the theorem pins
  std::optional<double> distance_bound;  // e.g. D(x*,x_{T+1}) <= 4 D(x*,x_1)
};

TheoremBound theorem_bound(const std::string& id, const TheoremInputs& in);

}  // namespace hpopt
