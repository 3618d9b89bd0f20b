#include <doctest.h>

#include <cmath>

#include "hpopt/algorithms.hpp"
#include "hpopt/problems.hpp"

using namespace hpopt;

namespace {

Objective problem(const char* name, int d) {
  ProblemSpec spec;
  spec.name = name;
  spec.dim = d;
  return make_problem(spec);
}

}  // namespace

TEST_CASE("smd two-step hand recursion on 0.5 x^2") {
  Objective obj = problem("quadratic", 1);
  StochasticOracle oracle{&obj, NoiseModel::none(1), true};
  RngStream rng(0, 0);
  const RunTrace tr = run_smd(oracle, MirrorMap{MirrorMapKind::EuclideanHalfSq},
                              StepSchedule::constant(0.5), {1.0}, 2, rng);
  CHECK(tr.x[0][0] == 1.0);
  CHECK(tr.x[1][0] == 0.5);
  CHECK(tr.x_final[0] == 0.25);
  CHECK(tr.avg_gap == doctest::Approx(0.3125));  // (0.5 + 0.125)/2
  CHECK(tr.gap_of_avg == doctest::Approx(0.5 * 0.75 * 0.75));
  CHECK(tr.gap_of_avg <= tr.avg_gap);  // Jensen
}

TEST_CASE("smd on the simplex reproduces the multiplicative-weights step") {
  ProblemSpec spec;
  spec.name = "simplex_lin_entropy";
  spec.dim = 2;
  spec.cost = {std::log(4.0), 0.0};
  spec.entropy_coeff = 0.0;  // pure linear objective
  Objective obj = make_problem(spec);
  StochasticOracle oracle{&obj, NoiseModel::none(2), true};
  RngStream rng(0, 0);
  const RunTrace tr = run_smd(oracle, MirrorMap{MirrorMapKind::NegEntropy},
                              StepSchedule::constant(1.0), {0.5, 0.5}, 1, rng);
  CHECK(tr.x_final[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(tr.x_final[1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("runs reject T < 1") {
  Objective obj = problem("quadratic", 1);
  StochasticOracle oracle{&obj, NoiseModel::none(1), true};
  RngStream rng(0, 0);
  MirrorMap map{MirrorMapKind::EuclideanHalfSq};
  CHECK_THROWS_AS(run_smd(oracle, map, StepSchedule::constant(0.5), {1.0}, 0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_sgd(oracle, StepSchedule::constant(0.5), {1.0}, 0, rng),
                  std::invalid_argument);
}

TEST_CASE("asmd first step collapses to the prox point") {
  Objective obj = problem("quadratic", 1);
  StochasticOracle oracle{&obj, NoiseModel::none(1), true};
  RngStream rng(0, 0);
  const RunTrace tr = run_asmd(oracle, MirrorMap{MirrorMapKind::EuclideanHalfSq},
                               StepSchedule::constant(0.5), {1.0}, 1, rng);
  // alpha_1 = 1: x_1 = z_0 and y_1 = z_1 = 1 - 0.5 * 1 = 0.5
  CHECK(tr.x[0][0] == 1.0);
  CHECK(tr.z[0][0] == doctest::Approx(0.5));
  CHECK(tr.y[0][0] == doctest::Approx(0.5));
  CHECK(tr.x_final[0] == doctest::Approx(0.5));
}

TEST_CASE("asmd coupling identity y_t - x_t = alpha_t (z_t - z_{t-1})") {
  Objective obj = problem("quadratic", 3);
  NoiseModel noise = NoiseModel::gaussian_iso(3, 0.3);
  StochasticOracle oracle{&obj, noise, true};
  RngStream rng(17, 2);
  const RunTrace tr = run_asmd(oracle, MirrorMap{MirrorMapKind::EuclideanHalfSq},
                               StepSchedule::thm5_varying(1.0, 0.0, 1.0, 1.0, 0.1), {1.0, -2.0, 0.5},
                               50, rng);
  for (long t = 1; t <= tr.T; ++t) {
    const std::size_t k = t - 1;
    const Vector& z_prev = t == 1 ? tr.z0 : tr.z[k - 1];
    for (int i = 0; i < 3; ++i) {
      const double lhs = tr.y[k][i] - tr.x[k][i];
      const double rhs = tr.alpha[k] * (tr.z[k][i] - z_prev[i]);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("asmd iterates stay on the simplex") {
  ProblemSpec spec;
  spec.name = "simplex_lin_entropy";
  spec.dim = 3;
  Objective obj = make_problem(spec);
  StochasticOracle oracle{&obj, NoiseModel::bounded_rademacher(3, 0.2), true};
  RngStream rng(31, 0);
  const RunTrace tr = run_asmd(oracle, MirrorMap{MirrorMapKind::NegEntropy},
                               StepSchedule::constant(0.05), Vector(3, 1.0 / 3.0), 30, rng);
  for (const Vector& x : tr.x) {
    double sum = 0.0;
    for (double c : x) {
      CHECK(c >= 0.0);
      sum += c;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("sgd hand computations") {
  Objective obj = problem("quadratic", 1);
  StochasticOracle oracle{&obj, NoiseModel::none(1), true};
  SUBCASE("two steps of 0.5 x^2") {
    RngStream rng(0, 0);
    const RunTrace tr = run_sgd(oracle, StepSchedule::constant(0.5), {1.0}, 2, rng);
    CHECK(tr.avg_grad_sq == doctest::Approx(0.625));  // (1 + 0.25)/2
  }
  SUBCASE("frozen iterate at eta = 0") {
    RngStream rng(0, 0);
    const RunTrace tr = run_sgd(oracle, StepSchedule::constant(0.0), {1.0}, 3, rng);
    CHECK(tr.x_final[0] == 1.0);
    CHECK(tr.avg_grad_sq == doctest::Approx(1.0));
  }
  SUBCASE("noiseless thm4 schedule collapses to 1/L") {
    const StepSchedule sched = StepSchedule::thm4_fixed(1.0, 0.0, 2.0, 10);
    CHECK(sched.eta(1) == doctest::Approx(0.5));
  }
}

TEST_CASE("horizon-bound schedules reject t > T") {
  const StepSchedule sched = StepSchedule::thm1_fixed(1.0, 1.0, 1.0, 0.1, 10);
  CHECK_NOTHROW(sched.eta(10));
  CHECK_THROWS_AS(sched.eta(11), std::invalid_argument);
  CHECK_THROWS_AS(sched.eta(0), std::invalid_argument);
}

TEST_CASE("adagrad-norm hand computation on 0.5 |x|^2") {
  Objective obj = problem("quadratic", 2);
  StochasticOracle oracle{&obj, NoiseModel::none(2), true};
  RngStream rng(0, 0);
  const RunTrace tr = run_adagrad_norm(oracle, 1.0, 1.0, {0.6, 0.8}, 1, rng);
  CHECK(tr.b[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(tr.a[0] == doctest::Approx(std::sqrt(2.0)));  // sigma = 0: a_t = b_t
  CHECK(tr.x_final[0] == doctest::Approx(0.6 * (1.0 - 1.0 / std::sqrt(2.0))).epsilon(1e-14));
  CHECK(tr.x_final[1] == doctest::Approx(0.8 * (1.0 - 1.0 / std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("adagrad-norm freezes at a stationary start") {
  Objective obj = problem("quadratic", 2);
  StochasticOracle oracle{&obj, NoiseModel::none(2), true};
  RngStream rng(0, 0);
  const RunTrace tr = run_adagrad_norm(oracle, 1.0, 1.0, {0.0, 0.0}, 3, rng);
  CHECK(tr.b[0] == 1.0);
  CHECK(tr.x_final[0] == 0.0);
}

TEST_CASE("adagrad b_t is nondecreasing on noisy runs") {
  Objective obj = problem("smooth_nonconvex", 3);
  StochasticOracle oracle{&obj, NoiseModel::gaussian_iso(3, 0.5), true};
  RngStream rng(5, 0);
  const RunTrace tr = run_adagrad_norm(oracle, 1.0, 0.1, {1.0, -1.0, 2.0}, 200, rng);
  for (long t = 1; t < tr.T; ++t) CHECK(tr.b[t] >= tr.b[t - 1]);
  CHECK(tr.b[0] >= tr.b0);
}

TEST_CASE("per-coordinate adagrad hand computation") {
  ProblemSpec spec;
  spec.name = "quadratic";
  spec.dim = 2;
  spec.quad_diag = {3.0, 0.0};
  Objective obj = make_problem(spec);
  StochasticOracle oracle{&obj, NoiseModel::none(2), true};
  RngStream rng(0, 0);
  const RunTrace tr = run_adagrad_coord(oracle, 1.0, {1.0, 1.0}, {1.0, 1.0}, 1, rng);
  CHECK(tr.b_coord[0][0] == doctest::Approx(std::sqrt(10.0)));
  CHECK(tr.b_coord[0][1] == 1.0);
  CHECK(tr.x_final[0] == doctest::Approx(1.0 - 3.0 / std::sqrt(10.0)).epsilon(1e-14));
  CHECK(tr.x_final[1] == 1.0);  // zero stochastic gradient never moves the coordinate
}

TEST_CASE("per-coordinate adagrad with d = 1 is bit-identical to adagrad-norm") {
  Objective obj = problem("smooth_nonconvex", 1);
  StochasticOracle oracle{&obj, NoiseModel::gaussian_iso(1, 0.5), true};
  RngStream rng1(99, 1), rng2(99, 1);
  const RunTrace a = run_adagrad_norm(oracle, 0.7, 0.3, {2.0}, 300, rng1);
  const RunTrace b = run_adagrad_coord(oracle, 0.7, {0.3}, {2.0}, 300, rng2);
  for (long t = 0; t < 300; ++t) {
    CHECK(a.x[t][0] == b.x[t][0]);
    CHECK(a.b[t] == b.b_coord[t][0]);
    CHECK(a.a[t] == b.a_coord[t][0]);
  }
  CHECK(a.x_final[0] == b.x_final[0]);
}

TEST_CASE("euclidean smd is bit-identical to sgd") {
  Objective obj = problem("smooth_nonconvex", 3);
  StochasticOracle oracle{&obj, NoiseModel::gaussian_iso(3, 0.5), true};
  const StepSchedule sched = StepSchedule::inv_sqrt_t(0.2);
  RngStream rng1(123, 4), rng2(123, 4);
  const RunTrace a =
      run_smd(oracle, MirrorMap{MirrorMapKind::EuclideanHalfSq}, sched, {1.0, 2.0, -0.5}, 200, rng1);
  const RunTrace b = run_sgd(oracle, sched, {1.0, 2.0, -0.5}, 200, rng2);
  for (long t = 0; t < 200; ++t) {
    for (int i = 0; i < 3; ++i) CHECK(a.x[t][i] == b.x[t][i]);
  }
  for (int i = 0; i < 3; ++i) CHECK(a.x_final[i] == b.x_final[i]);
}

TEST_CASE("identical seeds give bit-identical traces") {
  Objective obj = problem("quadratic", 2);
  StochasticOracle oracle{&obj, NoiseModel::gaussian_iso(2, 1.0), true};
  RngStream rng1(7, 7), rng2(7, 7);
  const RunTrace a = run_sgd(oracle, StepSchedule::inv_sqrt_t(0.1), {1.0, 1.0}, 100, rng1);
  const RunTrace b = run_sgd(oracle, StepSchedule::inv_sqrt_t(0.1), {1.0, 1.0}, 100, rng2);
  for (long t = 0; t < 100; ++t) {
    CHECK(a.f_gap[t] == b.f_gap[t]);
    CHECK(a.x[t] == b.x[t]);
  }
}

TEST_CASE("divergent runs abort with the offending step index") {
  Objective obj = problem("quadratic", 1);
  StochasticOracle oracle{&obj, NoiseModel::none(1), true};
  RngStream rng(0, 0);
  try {
    run_sgd(oracle, StepSchedule::constant(1e200), {1.0}, 10, rng);
    FAIL("expected DomainViolation");
  } catch (const DomainViolation& e) {
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}

TEST_CASE("entropic clamping is recorded in the trace") {
  ProblemSpec spec;
  spec.name = "simplex_lin_entropy";
  spec.dim = 2;
  spec.cost = {0.0, 1000.0};
  spec.entropy_coeff = 0.0;
  Objective obj = make_problem(spec);
  StochasticOracle oracle{&obj, NoiseModel::none(2), true};
  RngStream rng(0, 0);
  const RunTrace tr = run_smd(oracle, MirrorMap{MirrorMapKind::NegEntropy},
                              StepSchedule::constant(1.0), {0.5, 0.5}, 5, rng);
  CHECK_FALSE(tr.clamped_steps.empty());
  for (double c : tr.x_final) CHECK(c >= 1e-300);
}

TEST_CASE("summary mode drops vectors but keeps scalar columns") {
  Objective obj = problem("quadratic", 2);
  StochasticOracle oracle{&obj, NoiseModel::gaussian_iso(2, 0.5), true};
  RngStream rng(1, 0);
  const RunTrace tr = run_sgd(oracle, StepSchedule::constant(0.1), {1.0, 1.0}, 50, rng,
                              TraceMode::Summary);
  CHECK(tr.x.empty());
  CHECK(tr.xi.empty());
  CHECK(tr.f_gap.size() == 50);
  CHECK(std::isfinite(tr.avg_grad_sq));
}
