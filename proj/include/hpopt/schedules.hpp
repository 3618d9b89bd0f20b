#pragma once

#include <optional>

#include "hpopt/core.hpp"

namespace hpopt {

enum class ScheduleKind {
  Constant,     // eta_t = eta
  InvSqrtT,     // eta_t = eta / sqrt(t)
  Thm1Fixed,    // eta_t = sqrt(D1 / (6 (G^2 + s^2 (1 + ln 1/delta)) T))
  Thm1Varying,  // same with t in place of T
  Thm4Fixed,    // eta_t = min{ 1/L, sqrt(Delta1 / (s^2 L T)) }
  Thm4Varying,  // eta_t = 1 / (L sqrt(t))
  Thm5Fixed,    // eta_t = min{ t/(4L), c t },    c = sqrt(D0) / (sqrt(6 (G^2+s^2(1+ln 1/delta))) T^{3/2})
  Thm5Varying,  // eta_t = min{ t/(4L), c/sqrt(t) }, c = sqrt(D0) / sqrt(6 (G^2+s^2(1+ln 1/delta)))
};

/// Step-size schedule. Horizon-dependent kinds carry T and reject queries
/// past it; every schedule yields eta_t > 0 for t >= 1.
class StepSchedule {
 public:
  double eta(long t) const;
  ScheduleKind kind() const { return kind_; }
  std::optional<long> horizon() const { return horizon_; }

  static StepSchedule constant(double eta);
  static StepSchedule inv_sqrt_t(double eta);
  static StepSchedule thm1_fixed(double d1, double G, double sigma, double delta, long T);
  static StepSchedule thm1_varying(double d1, double G, double sigma, double delta);
  static StepSchedule thm4_fixed(double delta1, double sigma, double L, long T);
  static StepSchedule thm4_varying(double L);
  static StepSchedule thm5_fixed(double d0, double G, double sigma, double L, double delta, long T);
  static StepSchedule thm5_varying(double d0, double G, double sigma, double L, double delta);

 private:
  ScheduleKind kind_ = ScheduleKind::Constant;
  double base_ = 0.0;  // precomputed constant (eta, or the theorem's c)
  double L_ = 0.0;
  std::optional<long> horizon_;
};

/// The G^2 + sigma^2 (1 + ln(1/delta)) factor shared by the convex-case
/// schedules and bounds.
double noise_adjusted_sq(double G, double sigma, double delta);

}  // namespace hpopt
