#include <doctest.h>

#include <cmath>

#include "hpopt/noise.hpp"
#include "hpopt/problems.hpp"

using namespace hpopt;

namespace {

Objective quadratic(int d) {
  ProblemSpec spec;
  spec.name = "quadratic";
  spec.dim = d;
  return make_problem(spec);
}

}  // namespace

TEST_CASE("oracle splits ghat = grad + xi exactly") {
  Objective obj = quadratic(2);
  SUBCASE("zero noise") {
    StochasticOracle oracle{&obj, NoiseModel::none(2), true};
    RngStream rng(1, 0);
    const SampleResult s = oracle.sample({1.0, 0.0}, rng);
    CHECK(s.xi[0] == 0.0);
    CHECK(s.xi[1] == 0.0);
    CHECK(s.ghat[0] == 1.0);
    CHECK(s.ghat[1] == 0.0);
  }
  SUBCASE("gaussian noise replays the seeded generator") {
    NoiseModel model = NoiseModel::gaussian_iso(2, 0.5);
    StochasticOracle oracle{&obj, model, true};
    RngStream rng(9, 1), replay(9, 1);
    const SampleResult s = oracle.sample({0.3, -0.7}, rng);
    const Vector expected = model.sample(replay);
    for (int i = 0; i < 2; ++i) {
      CHECK(s.xi[i] == expected[i]);
      CHECK(s.ghat[i] == s.grad[i] + s.xi[i]);
    }
  }
  SUBCASE("rademacher support") {
    StochasticOracle oracle{&obj, NoiseModel::bounded_rademacher(2, 1.0), true};
    RngStream rng(2, 0);
    for (int rep = 0; rep < 20; ++rep) {
      const SampleResult s = oracle.sample({0.0, 0.0}, rng);
      for (double xi : s.xi) CHECK(std::abs(xi) == 1.0);
    }
  }
}

TEST_CASE("noise draw is independent of the query point") {
  Objective obj = quadratic(3);
  NoiseModel model = NoiseModel::gaussian_iso(3, 0.5);
  StochasticOracle oracle{&obj, model, true};
  RngStream rng1(4, 7);
  RngStream rng2 = rng1;  // identical state
  const SampleResult a = oracle.sample({0.0, 0.0, 0.0}, rng1);
  const SampleResult b = oracle.sample({5.0, -3.0, 2.0}, rng2);
  for (int i = 0; i < 3; ++i) CHECK(a.xi[i] == b.xi[i]);
}

TEST_CASE("unbiasedness of the gaussian model") {
  const double s = 0.5;
  NoiseModel model = NoiseModel::gaussian_iso(2, s);
  RngStream rng(100, 0);
  const long n = 1000000;
  Vector sum(2, 0.0);
  for (long i = 0; i < n; ++i) {
    const Vector xi = model.sample(rng);
    sum[0] += xi[0];
    sum[1] += xi[1];
  }
  for (double m : sum) CHECK(std::abs(m / n) <= 5.0 * s / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("certify_subgaussian accepts honest sigma and rejects divergent sigma") {
  NormPair l2{NormPairKind::EuclideanL2};
  RngStream rng(55, 0);

  SUBCASE("gaussian d=1, declared sigma = 2s") {
    NoiseModel model = NoiseModel::gaussian_iso(1, 0.5);
    model.declared_sigma_override = 1.0;
    const CertReport rep = certify_subgaussian(model, l2, 200000, 16, rng);
    CHECK(rep.pass);
    CHECK(rep.worst_margin > 0.0);
  }
  SUBCASE("gaussian d=1, declared sigma = s has a divergent MGF at lambda = 1/sigma") {
    NoiseModel model = NoiseModel::gaussian_iso(1, 0.5);
    model.declared_sigma_override = 0.5;
    const CertReport rep = certify_subgaussian(model, l2, 200000, 16, rng);
    CHECK_FALSE(rep.pass);
  }
  SUBCASE("factor-2 declaration passes across scales") {
    for (double s : {0.1, 0.5, 2.0}) {
      NoiseModel model = NoiseModel::gaussian_iso(1, s);
      model.declared_sigma_override = 2.0 * s;
      const CertReport rep = certify_subgaussian(model, l2, 100000, 16, rng);
      CHECK(rep.pass);
    }
  }
  SUBCASE("zero noise certifies at any sigma") {
    NoiseModel model = NoiseModel::none(3);
    model.declared_sigma_override = 0.7;
    const CertReport rep = certify_subgaussian(model, l2, 100000, 8, rng);
    CHECK(rep.pass);
    for (double e : rep.estimates) CHECK(e == doctest::Approx(1.0));
  }
  SUBCASE("rademacher certifies exactly at c sqrt(d)") {
    NoiseModel model = NoiseModel::bounded_rademacher(3, 0.5);
    const CertReport rep = certify_subgaussian(model, l2, 100000, 16, rng);
    CHECK(rep.pass);
    CHECK(model.declared_sigma(l2) == doctest::Approx(0.5 * std::sqrt(3.0)));
  }
  SUBCASE("diag model certifies per coordinate") {
    NoiseModel model = NoiseModel::gaussian_diag({0.1, 0.4});
    const CertReport rep = certify_subgaussian(model, l2, 100000, 8, rng);
    CHECK(rep.pass);
    CHECK(rep.lambda_grid.size() == 16);  // 8 per coordinate
  }
}

TEST_CASE("closed-form gaussian MGF agrees with the certification bound shape") {
  // E[exp(l^2 X^2)] = (1 - 2 l^2 s^2)^{-1/2} <= exp(l^2 sigma^2) for sigma = 2s
  const double s = 0.5, sigma = 1.0;
  for (int k = 1; k <= 16; ++k) {
    const double l = (k / 16.0) / sigma;
    const double u = l * l * s * s;
    const double closed = 1.0 / std::sqrt(1.0 - 2.0 * u);
    CHECK(closed <= std::exp(l * l * sigma * sigma) * (1.0 + 1e-12));
  }
}

TEST_CASE("mgf_lemma_check") {
  NormPair l2{NormPairKind::EuclideanL2};
  RngStream rng(77, 0);

  SUBCASE("degenerate a = 0, b = 0") {
    NoiseModel model = NoiseModel::gaussian_iso(2, 0.5);
    model.declared_sigma_override = 1.0;
    const CheckReport rep = mgf_lemma_check({0.0, 0.0}, 0.0, model, l2, 1000, rng);
    CHECK(rep.estimate == doctest::Approx(1.0));
    CHECK(rep.bound == doctest::Approx(1.0));
    CHECK(rep.pass);
  }
  SUBCASE("|a| = 1, b = 0: true value exp(s^2/2) far below exp(2 sigma^2)") {
    NoiseModel model = NoiseModel::gaussian_iso(1, 0.5);
    model.declared_sigma_override = 1.0;
    const CheckReport rep = mgf_lemma_check({1.0}, 0.0, model, l2, 400000, rng);
    CHECK(rep.pass);
    CHECK(rep.estimate == doctest::Approx(std::exp(0.125)).epsilon(0.02));
    REQUIRE(rep.sharp_bound.has_value());
    CHECK(*rep.sharp_bound == doctest::Approx(std::exp(2.0)));
    CHECK(*rep.sharp_pass);
  }
  SUBCASE("|a| = 1, b = 0.25 against exp(3(1 + 1/16))") {
    NoiseModel model = NoiseModel::gaussian_iso(1, 0.5);
    model.declared_sigma_override = 1.0;
    const CheckReport rep = mgf_lemma_check({1.0}, 0.25, model, l2, 400000, rng);
    CHECK(rep.pass);
    CHECK(rep.bound == doctest::Approx(std::exp(3.0 * (1.0 + 0.0625))));
    // closed form (1-2as^2)^{-1/2} exp(b^2 s^2 / (2(1-2as^2))) with a = 1/16
    const double alpha = 0.0625, ssq = 0.25;
    const double closed =
        std::exp(ssq / (2.0 * (1.0 - 2.0 * alpha * ssq))) / std::sqrt(1.0 - 2.0 * alpha * ssq);
    CHECK(rep.estimate == doctest::Approx(closed).epsilon(0.05));
  }
  SUBCASE("b beyond 1/(2 sigma) is a precondition error") {
    NoiseModel model = NoiseModel::gaussian_iso(1, 0.5);
    model.declared_sigma_override = 1.0;
    CHECK_THROWS_AS(mgf_lemma_check({1.0}, 0.6, model, l2, 1000, rng), std::invalid_argument);
  }
  SUBCASE("bounded model across seeds") {
    NoiseModel model = NoiseModel::bounded_rademacher(2, 0.5);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RngStream r(seed, 0);
      const double sigma = model.declared_sigma(l2);
      const CheckReport rep =
          mgf_lemma_check({0.7, -0.3}, 0.5 / (2.0 * sigma), model, l2, 100000, r);
      CHECK(rep.pass);
    }
  }
}
