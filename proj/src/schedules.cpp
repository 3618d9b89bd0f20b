#include "hpopt/schedules.hpp"

#include <cmath>
#include <limits>

namespace hpopt {

double noise_adjusted_sq(double G, double sigma, double delta) {
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must lie in (0,1)");
  return G * G + sigma * sigma * (1.0 + std::log(1.0 / delta));
}

namespace {
void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}
}  // namespace

double StepSchedule::eta(long t) const {
  if (t < 1) throw std::invalid_argument("schedule: t must be >= 1");
  if (horizon_ && t > *horizon_) throw std::invalid_argument("schedule: t exceeds horizon T");
  const double td = static_cast<double>(t);
  const double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case ScheduleKind::Constant:
    case ScheduleKind::Thm1Fixed:
    case ScheduleKind::Thm4Fixed:
      return base_;
    case ScheduleKind::InvSqrtT:
    case ScheduleKind::Thm1Varying:
    case ScheduleKind::Thm4Varying:
      return base_ / std::sqrt(td);
    case ScheduleKind::Thm5Fixed:
      return std::min(L_ > 0.0 ? td / (4.0 * L_) : inf, base_ * td);
    case ScheduleKind::Thm5Varying:
      return std::min(L_ > 0.0 ? td / (4.0 * L_) : inf, base_ / std::sqrt(td));
  }
  return base_;
}

StepSchedule StepSchedule::constant(double eta) {
  // eta = 0 is allowed here only as the degenerate frozen-iterate schedule
  if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
  StepSchedule s;
  s.kind_ = ScheduleKind::Constant;
  s.base_ = eta;
  return s;
}

StepSchedule StepSchedule::inv_sqrt_t(double eta) {
  require_positive(eta, "eta");
  StepSchedule s;
  s.kind_ = ScheduleKind::InvSqrtT;
  s.base_ = eta;
  return s;
}

StepSchedule StepSchedule::thm1_fixed(double d1, double G, double sigma, double delta, long T) {
  require_positive(d1, "D1");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  const double K = noise_adjusted_sq(G, sigma, delta);
  require_positive(K, "G^2 + sigma^2 (1 + ln 1/delta)");
  StepSchedule s;
  s.kind_ = ScheduleKind::Thm1Fixed;
  s.base_ = std::sqrt(d1 / (6.0 * K * static_cast<double>(T)));
  s.horizon_ = T;
  return s;
}

StepSchedule StepSchedule::thm1_varying(double d1, double G, double sigma, double delta) {
  require_positive(d1, "D1");
  const double K = noise_adjusted_sq(G, sigma, delta);
  require_positive(K, "G^2 + sigma^2 (1 + ln 1/delta)");
  StepSchedule s;
  s.kind_ = ScheduleKind::Thm1Varying;
  s.base_ = std::sqrt(d1 / (6.0 * K));
  return s;
}

StepSchedule StepSchedule::thm4_fixed(double delta1, double sigma, double L, long T) {
  require_positive(L, "L");
  require_positive(delta1, "Delta1");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  StepSchedule s;
  s.kind_ = ScheduleKind::Thm4Fixed;
  // sigma = 0 collapses to the deterministic step 1/L
  const double noisy = sigma > 0.0
                           ? std::sqrt(delta1 / (sigma * sigma * L * static_cast<double>(T)))
                           : std::numeric_limits<double>::infinity();
  s.base_ = std::min(1.0 / L, noisy);
  s.horizon_ = T;
  return s;
}

StepSchedule StepSchedule::thm4_varying(double L) {
  require_positive(L, "L");
  StepSchedule s;
  s.kind_ = ScheduleKind::Thm4Varying;
  s.base_ = 1.0 / L;
  return s;
}

StepSchedule StepSchedule::thm5_fixed(double d0, double G, double sigma, double L, double delta, long T) {
  require_positive(d0, "D0");
  if (L < 0.0) throw std::invalid_argument("L must be >= 0");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  const double K = noise_adjusted_sq(G, sigma, delta);
  if (K == 0.0 && L == 0.0) throw std::invalid_argument("thm5 needs G, sigma or L positive");
  StepSchedule s;
  s.kind_ = ScheduleKind::Thm5Fixed;
  // K = 0 (deterministic smooth case) leaves only the t/(4L) branch
  s.base_ = K > 0.0 ? std::sqrt(d0 / (6.0 * K)) / std::pow(static_cast<double>(T), 1.5)
                    : std::numeric_limits<double>::infinity();
  s.L_ = L;
  s.horizon_ = T;
  return s;
}

StepSchedule StepSchedule::thm5_varying(double d0, double G, double sigma, double L, double delta) {
  require_positive(d0, "D0");
  if (L < 0.0) throw std::invalid_argument("L must be >= 0");
  const double K = noise_adjusted_sq(G, sigma, delta);
  if (K == 0.0 && L == 0.0) throw std::invalid_argument("thm5 needs G, sigma or L positive");
  StepSchedule s;
  s.kind_ = ScheduleKind::Thm5Varying;
  s.base_ = K > 0.0 ? std::sqrt(d0 / (6.0 * K)) : std::numeric_limits<double>::infinity();
  s.L_ = L;
  return s;
}

}  // namespace hpopt
