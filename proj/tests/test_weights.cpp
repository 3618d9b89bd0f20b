#include <doctest.h>

#include <cmath>

#include "hpopt/weights.hpp"

using namespace hpopt;

TEST_CASE("md fixed-step weights match the hand-evaluated T=2 recursion") {
  // sigma = 1, base eta = 1, T = 2: per-step eta = 1/sqrt(2)
  const StepSchedule sched = StepSchedule::constant(1.0 / std::sqrt(2.0));
  const WeightSequence ws = build_weights(WeightRegime::MDFixed, 1.0, sched, 2);
  CHECK(ws.w[2] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(ws.w[1] == doctest::Approx(5.0 / 48.0).epsilon(1e-15));
  CHECK(ws.w[0] == doctest::Approx(315.0 / 2304.0).epsilon(1e-15));
  // independent oracle: forward replay of the recursion
  double w2 = 1.0 / 12.0;
  double w1 = w2 + 3.0 * w2 * w2;  // (6/T) sigma^2 eta^2 = 3 for eta_base = 1, T = 2
  double w0 = w1 + 3.0 * w1 * w1;
  CHECK(ws.w[1] == doctest::Approx(w1).epsilon(1e-15));
  CHECK(ws.w[0] == doctest::Approx(w0).epsilon(1e-15));
  // induction caps 1/(6 + 3t)
  CHECK(ws.induction_cap[2] == doctest::Approx(1.0 / 12.0));
  CHECK(ws.induction_cap[1] == doctest::Approx(1.0 / 9.0));
  CHECK(ws.w[1] <= ws.induction_cap[1] * (1.0 + 1e-12));
}

TEST_CASE("md varying weights, T = 1 hand case") {
  const StepSchedule sched = StepSchedule::inv_sqrt_t(1.0);
  const WeightSequence ws = build_weights(WeightRegime::MDVarying, 1.0, sched, 1);
  CHECK(ws.w[1] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(ws.w[0] == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
}

TEST_CASE("sgd constant weights are 1/(6 sigma^2 eta)") {
  const WeightSequence ws =
      build_weights(WeightRegime::SGDConstant, 1.0, StepSchedule::constant(0.5), 5, 1.0);
  for (long t = 0; t <= 5; ++t) CHECK(ws.w[t] == doctest::Approx(1.0 / 3.0));
  // v_t = 3 s^2 w^2 eta^2 (eta L - 1)^2
  CHECK(ws.v[1] == doctest::Approx(3.0 * (1.0 / 9.0) * 0.25 * 0.25));
}

TEST_CASE("recursion, monotonicity and induction caps across regimes") {
  struct Scenario {
    WeightRegime regime;
    StepSchedule sched;
    double L;
  };
  const std::vector<Scenario> scenarios = {
      {WeightRegime::MDFixed, StepSchedule::thm1_fixed(1.0, 1.0, 1.0, 0.1, 50), 0.0},
      {WeightRegime::MDVarying, StepSchedule::thm1_varying(1.0, 1.0, 1.0, 0.1), 0.0},
      {WeightRegime::ASMDFixed, StepSchedule::thm5_fixed(1.0, 1.0, 1.0, 2.0, 0.1, 50), 2.0},
      {WeightRegime::ASMDVarying, StepSchedule::thm5_varying(1.0, 1.0, 1.0, 2.0, 0.1), 2.0},
  };
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (const auto& sc : scenarios) {
      const WeightSequence ws = build_weights(sc.regime, sigma, sc.sched, 50, sc.L);
      for (long t = 1; t <= 50; ++t) {
        CHECK(ws.w[t - 1] == ws.w[t] + ws.v[t]);  // recursion holds exactly as constructed
        CHECK(ws.w[t - 1] >= ws.w[t]);
        CHECK(ws.w[t] <= ws.induction_cap[t] * (1.0 + 1e-12));
        CHECK(ws.v[t] ==
              doctest::Approx(6.0 * sigma * sigma * ws.eta[t] * ws.eta[t] * ws.w[t] * ws.w[t])
                  .epsilon(1e-15));
      }
      CHECK(ws.w[50] == doctest::Approx(1.0 / (2.0 * ws.cap_constant)).epsilon(1e-15));
      CHECK(ws.cond_quarter);
      CHECK(ws.cond_sixth);  // the constructed sequences meet the sharper constant too
    }
  }
}

TEST_CASE("sigma = 0 degenerates to uniform weights") {
  const WeightSequence ws =
      build_weights(WeightRegime::MDFixed, 0.0, StepSchedule::constant(0.3), 10);
  for (long t = 0; t <= 10; ++t) {
    CHECK(ws.w[t] == 1.0);
    CHECK(ws.v[t] == 0.0);
  }
}

TEST_CASE("degenerate schedules are rejected") {
  CHECK_THROWS_AS(build_weights(WeightRegime::MDFixed, 1.0, StepSchedule::constant(0.0), 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_weights(WeightRegime::SGDConstant, 1.0, StepSchedule::constant(0.0), 5, 1.0),
                  std::invalid_argument);
}
