#include <doctest.h>

#include <cmath>

#include "hpopt/geometry.hpp"

using namespace hpopt;

namespace {

Vector random_simplex_point(RngStream& rng, int d) {
  Vector p(d);
  double z = 0.0;
  for (int i = 0; i < d; ++i) {
    p[i] = -std::log(1.0 - rng.uniform01());
    z += p[i];
  }
  for (int i = 0; i < d; ++i) p[i] /= z;
  return p;
}

}  // namespace

TEST_CASE("bregman closed forms") {
  MirrorMap euclid{MirrorMapKind::EuclideanHalfSq};
  MirrorMap entropy{MirrorMapKind::NegEntropy};
  CHECK(bregman(euclid, {1.0, 2.0}, {0.0, 0.0}) == doctest::Approx(2.5));
  CHECK(bregman(entropy, {0.3, 0.7}, {0.3, 0.7}) == doctest::Approx(0.0));
  // direct KL evaluation: 0.5 ln 2 + 0.5 ln(2/3)
  const double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  CHECK(bregman(entropy, {0.5, 0.5}, {0.25, 0.75}) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.14384).epsilon(1e-4));
  CHECK_THROWS_AS(bregman(entropy, {0.5, 0.5}, {0.0, 1.0}), std::domain_error);
  // 0 ln 0 = 0: zero entries in x are fine
  CHECK(bregman(entropy, {0.0, 1.0}, {0.5, 0.5}) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("mirror steps in closed form") {
  MirrorMap euclid{MirrorMapKind::EuclideanHalfSq};
  MirrorMap entropy{MirrorMapKind::NegEntropy};
  const Vector e = mirror_step(euclid, {1.0, 0.0}, {2.0, -2.0}, 0.5);
  CHECK(e[0] == doctest::Approx(0.0));
  CHECK(e[1] == doctest::Approx(1.0));
  // multiplicative weights: unnormalized [0.125, 0.5] -> [0.2, 0.8]
  const Vector m = mirror_step(entropy, {0.5, 0.5}, {std::log(4.0), 0.0}, 1.0);
  CHECK(m[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(m[1] == doctest::Approx(0.8).epsilon(1e-12));
  for (const MirrorMap& map : {euclid, entropy}) {
    const Vector x = map.kind == MirrorMapKind::NegEntropy ? Vector{0.3, 0.7} : Vector{1.0, -2.0};
    const Vector same = mirror_step(map, x, {5.0, -1.0}, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(same[i] == doctest::Approx(x[i]));
  }
}

TEST_CASE("entropic step is overflow-safe for huge gradients") {
  MirrorMap entropy{MirrorMapKind::NegEntropy};
  const Vector r = mirror_step(entropy, {0.5, 0.5}, {-1e6, 1e6}, 1.0);
  CHECK(std::isfinite(r[0]));
  CHECK(r[0] + r[1] == doctest::Approx(1.0));
  CHECK(r[0] > r[1]);
}

TEST_CASE("strong convexity: D(x,y) >= 0.5 |x-y|^2 in the paired norm") {
  RngStream rng(21, 0);
  MirrorMap euclid{MirrorMapKind::EuclideanHalfSq};
  MirrorMap entropy{MirrorMapKind::NegEntropy};
  for (int rep = 0; rep < 1000; ++rep) {
    Vector a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    const double d2 = bregman(euclid, a, b);
    CHECK(d2 >= 0.5 * norm_l2_sq(sub(a, b)) - 1e-12);

    const Vector p = random_simplex_point(rng, 4);
    const Vector q = random_simplex_point(rng, 4);
    const double dk = bregman(entropy, p, q);
    const double l1 = norm_l1(sub(p, q));
    CHECK(dk >= 0.5 * l1 * l1 - 1e-12);
    CHECK(dk >= -1e-15);
  }
}

TEST_CASE("three-point identity") {
  RngStream rng(22, 0);
  for (MirrorMapKind kind : {MirrorMapKind::EuclideanHalfSq, MirrorMapKind::NegEntropy}) {
    MirrorMap map{kind};
    for (int rep = 0; rep < 300; ++rep) {
      Vector x, xp, xs;
      if (kind == MirrorMapKind::EuclideanHalfSq) {
        x.resize(4);
        xp.resize(4);
        xs.resize(4);
        for (int i = 0; i < 4; ++i) {
          x[i] = rng.normal();
          xp[i] = rng.normal();
          xs[i] = rng.normal();
        }
      } else {
        x = random_simplex_point(rng, 4);
        xp = random_simplex_point(rng, 4);
        xs = random_simplex_point(rng, 4);
      }
      const double lhs = dot(sub(map.potential_grad(xp), map.potential_grad(x)), sub(xs, xp));
      const double rhs = bregman(map, xs, x) - bregman(map, xp, x) - bregman(map, xs, xp);
      CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
  }
}

TEST_CASE("entropic prox satisfies the simplex KKT conditions") {
  // equal reduced gradients eta g_i + ln(x+_i) - ln(x_i) across coordinates
  RngStream rng(23, 0);
  MirrorMap entropy{MirrorMapKind::NegEntropy};
  for (int rep = 0; rep < 100; ++rep) {
    const Vector x = random_simplex_point(rng, 5);
    Vector g(5);
    for (int i = 0; i < 5; ++i) g[i] = 3.0 * rng.normal();
    const double eta = rng.uniform01();
    const Vector xp = mirror_step(entropy, x, g, eta);
    double sum = 0.0;
    Vector reduced(5);
    for (int i = 0; i < 5; ++i) {
      sum += xp[i];
      reduced[i] = eta * g[i] + std::log(xp[i]) - std::log(x[i]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < 5; ++i) CHECK(std::abs(reduced[i] - reduced[0]) <= 1e-10);
  }
}
