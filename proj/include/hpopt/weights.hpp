#pragma once

#include "hpopt/schedules.hpp"

namespace hpopt {

/// Weight-sequence regimes. The MD/ASMD regimes build the backward
/// recursion w_{t-1} = w_t + 6 s^2 eta_t^2 w_t^2 from w_T = 1/(2C) with
/// C = 6 s^2 sum_{t<=T} eta_t^2; they differ in which schedule family they
/// expect and in the validity condition checked. The SGD regimes use the
/// constant weight w = 1/(6 s^2 eta) with v_t = 3 s^2 w^2 eta_t^2 (eta_t L - 1)^2.
enum class WeightRegime { MDFixed, MDVarying, ASMDFixed, ASMDVarying, SGDConstant, SGDVarying };

struct WeightSequence {
  WeightRegime regime = WeightRegime::MDFixed;
  double sigma = 0.0;
  long T = 0;
  std::vector<double> w;  // size T+1: w[0..T]
  std::vector<double> v;  // size T+1, v[0] = 0 unused; v[t] pairs with step t
  std::vector<double> eta;  // size T+1, eta[0] = 0 unused

  /// C of the induction cap (MD/ASMD; 0 for SGD regimes and sigma = 0).
  double cap_constant = 0.0;
  /// 1/(C + 6 s^2 sum_{i<=t} eta_i^2) for t = 0..T (MD/ASMD only, else empty).
  std::vector<double> induction_cap;

  /// Validity of the concentration hypothesis for the constructed sequence,
  /// reported against both constants in circulation: w_t eta_t^2 <= 1/(4 s^2)
  /// (the theorem's stated hypothesis; the ASMD check carries the extra
  /// 1/(1 - L alpha_t eta_t) factor) and the sharper 1/(6 s^2) that the
  /// induction actually delivers.
  bool cond_quarter = true;
  bool cond_sixth = true;

  double sum_w_eta_sq() const;          // sum_t w_t eta_t^2
  double sum_w_eta_sq_acc(double L) const;  // sum_t w_t eta_t^2 / (1 - L a_t eta_t)
};

/// Builds the regime's weight sequence for the given schedule over horizon
/// T. sigma = 0 degenerates to uniform weights w_t = 1 with v_t = 0. L is
/// required by the ASMD regimes (condition factor) and the SGD regimes
/// (v_t). Errors if the stated hypothesis fails at some step, naming it.
WeightSequence build_weights(WeightRegime regime, double sigma, const StepSchedule& schedule,
                             long T, double L = 0.0);

}  // namespace hpopt
