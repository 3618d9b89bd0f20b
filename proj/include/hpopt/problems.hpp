#pragma once

#include <cstdint>

#include "hpopt/core.hpp"

namespace hpopt {

/// Named test problem. Fields beyond `name`/`dim` apply only to the
/// problems that use them.
struct ProblemSpec {
  std::string name;  // quadratic | abs_sum | smooth_nonconvex | simplex_lin_entropy | logistic_synthetic
  int dim = 2;

  // quadratic: f(x) = 1/2 x'diag(a)x + <b,x>
  Vector quad_diag;
  Vector quad_linear;

  // simplex_lin_entropy: f(x) = <cost,x> + entropy_coeff * sum x_i ln x_i
  Vector cost;
  double entropy_coeff = 1.0;

  // logistic_synthetic
  int n_samples = 50;
  std::uint64_t data_seed = 0;
};

/// Builds the deterministic objective for a spec. Exact f_star/x_star are
/// attached whenever analytically available (quadratic, abs_sum,
/// smooth_nonconvex, simplex_lin_entropy); logistic_synthetic carries the
/// lower bound f_star = 0 only. Unknown names raise ConfigError.
Objective make_problem(const ProblemSpec& spec);

}  // namespace hpopt
