#pragma once

#include "hpopt/geometry.hpp"
#include "hpopt/noise.hpp"
#include "hpopt/schedules.hpp"
#include "hpopt/trace.hpp"

namespace hpopt {

/// Stochastic mirror descent:
///   x_{t+1} = argmin_x { eta_t <ghat_t, x> + D(x, x_t) }.
/// The running average (1/T) sum x_t is tracked incrementally; the summary
/// reports both the average of gaps and the gap of the average iterate.
RunTrace run_smd(const StochasticOracle& oracle, const MirrorMap& map, const StepSchedule& schedule,
                 const Vector& x1, long T, RngStream& rng, TraceMode mode = TraceMode::Full);

/// Accelerated stochastic mirror descent with alpha_t = 2/(t+1):
///   x_t = (1-a_t) y_{t-1} + a_t z_{t-1},
///   z_t = argmin_x { eta_t <ghat(x_t), x> + D(x, z_{t-1}) },
///   y_t = (1-a_t) y_{t-1} + a_t z_t;  returns y_T.
RunTrace run_asmd(const StochasticOracle& oracle, const MirrorMap& map, const StepSchedule& schedule,
                  const Vector& x0, long T, RngStream& rng, TraceMode mode = TraceMode::Full);

/// Plain stochastic gradient descent on R^d: x_{t+1} = x_t - eta_t ghat_t.
RunTrace run_sgd(const StochasticOracle& oracle, const StepSchedule& schedule, const Vector& x1,
                 long T, RngStream& rng, TraceMode mode = TraceMode::Full);

/// Scalar-step adaptive method:
///   b_t^2 = b_0^2 + sum_{i<=t} |ghat_i|^2,  x_{t+1} = x_t - (eta/b_t) ghat_t.
/// The trace also records the proxy a_t^2 = b_{t-1}^2 + |grad f(x_t)|^2 and
/// the running noise maximum M_t.
RunTrace run_adagrad_norm(const StochasticOracle& oracle, double eta, double b0, const Vector& x1,
                          long T, RngStream& rng, TraceMode mode = TraceMode::Full);

/// Per-coordinate variant: b_{t,i}^2 = b_{0,i}^2 + sum_{j<=t} ghat_{j,i}^2,
/// x_{t+1,i} = x_{t,i} - (eta/b_{t,i}) ghat_{t,i}. With d = 1 the trajectory
/// is bit-identical to run_adagrad_norm.
RunTrace run_adagrad_coord(const StochasticOracle& oracle, double eta, const Vector& b0,
                           const Vector& x1, long T, RngStream& rng,
                           TraceMode mode = TraceMode::Full);

}  // namespace hpopt
