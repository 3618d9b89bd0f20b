#pragma once

#include <limits>

#include "hpopt/core.hpp"

namespace hpopt {

/// Full keeps per-step iterates and noise vectors (white-box certificate
/// checks need them); Summary keeps the scalar columns only, for long-T
/// sweeps where O(T d) storage would hurt.
enum class TraceMode { Full, Summary };

/// Per-run record. Columns are indexed by step: entry t-1 belongs to step t,
/// t = 1..T. NaN marks columns a run does not populate (e.g. Bregman
/// distances when x* is unknown).
struct RunTrace {
  std::string algorithm;
  long T = 0;
  TraceMode mode = TraceMode::Full;

  // common scalar columns
  std::vector<double> eta;
  std::vector<double> f_gap;        // f(x_t) - f_star
  std::vector<double> grad_sq;      // |grad f(x_t)|_2^2
  std::vector<double> breg_to_opt;  // D(x*, x_t)

  // white-box columns
  std::vector<Vector> x;
  std::vector<Vector> xi;

  // accelerated runs
  std::vector<double> alpha;   // 2/(t+1)
  std::vector<double> fgap_y;  // f(y_t) - f_star
  std::vector<double> breg_z;  // D(x*, z_t)
  std::vector<Vector> y;
  std::vector<Vector> z;
  Vector z0;  // initial y0 = z0 = x0
  double breg_z0 = std::numeric_limits<double>::quiet_NaN();

  // adaptive runs
  double adagrad_eta = 0.0;  // the method's base eta (eta column holds eta/b_t)
  double b0 = 0.0;
  Vector b0_coord;
  std::vector<double> b;          // b_t
  std::vector<double> a;          // proxy a_t = sqrt(b_{t-1}^2 + |grad|^2)
  std::vector<double> max_noise;  // M_t = max_{i<=t} |xi_i|
  std::vector<Vector> b_coord;
  std::vector<Vector> a_coord;
  std::vector<Vector> max_noise_coord;  // M_{t,i} = max_{j<=t} |xi_{j,i}|

  // post-run state
  Vector x_final;  // x_{T+1} (ASMD: y_T)
  double f_gap_final = std::numeric_limits<double>::quiet_NaN();
  double breg_final = std::numeric_limits<double>::quiet_NaN();  // D(x*, x_{T+1}); ASMD: D(x*, z_T)

  // summary metrics
  double avg_gap = std::numeric_limits<double>::quiet_NaN();     // mean f_gap (ASMD: mean over y_t)
  double gap_of_avg = std::numeric_limits<double>::quiet_NaN();  // f((1/T) sum x_t) - f_star
  double avg_grad_sq = std::numeric_limits<double>::quiet_NaN();
  Vector avg_iterate;

  std::vector<long> clamped_steps;
};

}  // namespace hpopt
