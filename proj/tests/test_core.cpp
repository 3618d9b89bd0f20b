#include <doctest.h>

#include <cmath>

#include "hpopt/problems.hpp"

using namespace hpopt;

TEST_CASE("dual norms of the two pairs") {
  NormPair l2{NormPairKind::EuclideanL2};
  NormPair l1{NormPairKind::L1Linf};
  CHECK(dual_norm(l2, {3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(dual_norm(l1, {3.0, -4.0}) == doctest::Approx(4.0));
  CHECK(dual_norm(l2, {0.0, 0.0}) == 0.0);
  CHECK(l1.primal({3.0, -4.0}) == doctest::Approx(7.0));
  CHECK_THROWS_AS(dual_norm(l2, {}), std::invalid_argument);
  CHECK_THROWS_AS(dual_norm(l2, {1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("dual norm properties on random triples") {
  RngStream rng(7, 0);
  for (NormPairKind kind : {NormPairKind::EuclideanL2, NormPairKind::L1Linf}) {
    NormPair pair{kind};
    for (int rep = 0; rep < 200; ++rep) {
      Vector a(5), b(5);
      for (int i = 0; i < 5; ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
      }
      const double lhs = pair.dual(add(a, b));
      const double rhs = pair.dual(a) + pair.dual(b);
      CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
      const double c = 3.0 * rng.normal();
      CHECK(pair.dual(scale(c, a)) ==
            doctest::Approx(std::abs(c) * pair.dual(a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("quadratic problem") {
  ProblemSpec spec;
  spec.name = "quadratic";
  spec.dim = 2;
  spec.quad_diag = {1.0, 1.0};
  spec.quad_linear = {0.0, 0.0};
  Objective obj = make_problem(spec);
  CHECK(obj.eval({0.6, 0.8}) == doctest::Approx(0.5));
  const Vector g = obj.grad({0.6, 0.8});
  CHECK(g[0] == doctest::Approx(0.6));
  CHECK(g[1] == doctest::Approx(0.8));
  REQUIRE(obj.f_star.has_value());
  CHECK(*obj.f_star == 0.0);
  CHECK(*obj.smooth_L == doctest::Approx(1.0));
}

TEST_CASE("abs_sum problem") {
  ProblemSpec spec;
  spec.name = "abs_sum";
  spec.dim = 2;
  Objective obj = make_problem(spec);
  CHECK(obj.eval({-1.0, 2.0}) == doctest::Approx(3.0));
  const Vector g = obj.grad({-1.0, 2.0});
  CHECK(g[0] == -1.0);
  CHECK(g[1] == 1.0);
  CHECK(obj.grad({0.0, 1.0})[0] == 0.0);  // sign(0) = 0
  CHECK(*obj.lipschitz_G == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("smooth_nonconvex problem") {
  ProblemSpec spec;
  spec.name = "smooth_nonconvex";
  spec.dim = 1;
  Objective obj = make_problem(spec);
  CHECK(obj.eval({0.0}) == 0.0);
  CHECK(*obj.f_star == 0.0);
  CHECK(obj.grad({0.0})[0] == 0.0);
  CHECK(*obj.smooth_L == 8.0);
}

TEST_CASE("simplex_lin_entropy optimum matches the softmax formula") {
  ProblemSpec spec;
  spec.name = "simplex_lin_entropy";
  spec.dim = 3;
  spec.cost = {0.0, 1.0, 2.0};
  spec.entropy_coeff = 1.0;
  Objective obj = make_problem(spec);
  REQUIRE(obj.x_star.has_value());
  // grad must vanish up to a constant shift on the support at x*
  const Vector g = obj.grad(*obj.x_star);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(g[0]).epsilon(1e-12));
  CHECK(obj.eval(*obj.x_star) == doctest::Approx(*obj.f_star).epsilon(1e-12));
  // every other simplex point does worse
  RngStream rng(3, 0);
  for (int rep = 0; rep < 50; ++rep) {
    Vector p(3);
    double z = 0.0;
    for (int i = 0; i < 3; ++i) {
      p[i] = -std::log(rng.uniform01() + 1e-12);
      z += p[i];
    }
    for (int i = 0; i < 3; ++i) p[i] /= z;
    CHECK(obj.eval(p) >= *obj.f_star - 1e-12);
  }
}

TEST_CASE("objectives with x_star satisfy eval(x_star) == f_star") {
  for (const char* name : {"quadratic", "abs_sum", "smooth_nonconvex", "simplex_lin_entropy"}) {
    ProblemSpec spec;
    spec.name = name;
    spec.dim = 4;
    Objective obj = make_problem(spec);
    REQUIRE(obj.x_star.has_value());
    CHECK(obj.eval(*obj.x_star) == doctest::Approx(*obj.f_star).epsilon(1e-12));
  }
}

TEST_CASE("unknown problem name raises ConfigError") {
  ProblemSpec spec;
  spec.name = "does_not_exist";
  CHECK_THROWS_AS(make_problem(spec), ConfigError);
}

TEST_CASE("finite-difference gradient check for smooth objectives") {
  for (const char* name : {"quadratic", "smooth_nonconvex", "logistic_synthetic"}) {
    ProblemSpec spec;
    spec.name = name;
    spec.dim = 3;
    spec.quad_diag = {0.5, 1.0, 2.0};
    spec.quad_linear = {0.1, -0.2, 0.3};
    Objective obj = make_problem(spec);
    REQUIRE(obj.smooth_L.has_value());
    RngStream rng(11, 0);
    const double h = 1e-6;
    for (int rep = 0; rep < 100; ++rep) {
      Vector x(3), e(3);
      for (int i = 0; i < 3; ++i) {
        x[i] = rng.normal();
        e[i] = rng.normal();
      }
      const double en = norm_l2(e);
      for (int i = 0; i < 3; ++i) e[i] /= en;
      const double fd = (obj.eval(axpy(x, h, e)) - obj.eval(axpy(x, -h, e))) / (2.0 * h);
      CHECK(std::abs(fd - dot(obj.grad(x), e)) <= 1e-5);
    }
  }
}

TEST_CASE("rng streams reproduce and decorrelate") {
  RngStream a(42, 3), b(42, 3), c(42, 4);
  bool identical = true, distinct = false;
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t va = a.next_u64();
    identical = identical && va == b.next_u64();
    distinct = distinct || va != c.next_u64();
  }
  CHECK(identical);
  CHECK(distinct);
}

TEST_CASE("logistic objective is G-Lipschitz and lower-bounded by f_star") {
  ProblemSpec spec;
  spec.name = "logistic_synthetic";
  spec.dim = 4;
  spec.n_samples = 30;
  Objective obj = make_problem(spec);
  REQUIRE(obj.lipschitz_G.has_value());
  CHECK(*obj.f_star == 0.0);
  CHECK_FALSE(obj.x_star.has_value());
  RngStream rng(5, 0);
  for (int rep = 0; rep < 50; ++rep) {
    Vector x(4);
    for (int i = 0; i < 4; ++i) x[i] = 2.0 * rng.normal();
    CHECK(obj.eval(x) >= 0.0);
    CHECK(norm_l2(obj.grad(x)) <= *obj.lipschitz_G * (1.0 + 1e-12));
  }
}
