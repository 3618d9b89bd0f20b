#include "hpopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace hpopt {

namespace {

Objective make_quadratic(const ProblemSpec& spec) {
  const int d = spec.dim;
  Vector a = spec.quad_diag.empty() ? Vector(d, 1.0) : spec.quad_diag;
  Vector b = spec.quad_linear.empty() ? Vector(d, 0.0) : spec.quad_linear;
  if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d) {
    throw ConfigError("quadratic: diag/linear size must match dim");
  }
  for (double ai : a) {
    if (ai < 0.0) throw ConfigError("quadratic: diag entries must be >= 0");
  }
  Objective obj;
  obj.name = "quadratic";
  obj.dim = d;
  obj.eval = [a, b](const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += 0.5 * a[i] * x[i] * x[i] + b[i] * x[i];
    return s;
  };
  obj.grad = [a, b](const Vector& x) {
    Vector g(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) g[i] = a[i] * x[i] + b[i];
    return g;
  };
  // minimizer x* = -b/a coordinatewise (b_i must vanish where a_i does)
  Vector xs(d);
  double fs = 0.0;
  bool has_min = true;
  for (int i = 0; i < d; ++i) {
    if (a[i] > 0.0) {
      xs[i] = -b[i] / a[i];
      fs += -0.5 * b[i] * b[i] / a[i];
    } else if (b[i] != 0.0) {
      has_min = false;  // linear direction, unbounded below
    } else {
      xs[i] = 0.0;
    }
  }
  if (has_min) {
    obj.x_star = xs;
    obj.f_star = fs;
  }
  obj.smooth_L = *std::max_element(a.begin(), a.end());
  return obj;
}

Objective make_abs_sum(const ProblemSpec& spec) {
  const int d = spec.dim;
  Objective obj;
  obj.name = "abs_sum";
  obj.dim = d;
  obj.eval = [](const Vector& x) { return norm_l1(x); };
  // subgradient sign(x), with sign(0) := 0
  obj.grad = [](const Vector& x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
    return g;
  };
  obj.x_star = Vector(d, 0.0);
  obj.f_star = 0.0;
  obj.lipschitz_G = std::sqrt(static_cast<double>(d));  // l2 norm of the sign vector
  return obj;
}

Objective make_smooth_nonconvex(const ProblemSpec& spec) {
  Objective obj;
  obj.name = "smooth_nonconvex";
  obj.dim = spec.dim;
  obj.eval = [](const Vector& x) {
    double s = 0.0;
    for (double xi : x) {
      const double si = std::sin(xi);
      s += xi * xi + 3.0 * si * si;
    }
    return s;
  };
  obj.grad = [](const Vector& x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i] + 3.0 * std::sin(2.0 * x[i]);
    return g;
  };
  obj.x_star = Vector(spec.dim, 0.0);
  obj.f_star = 0.0;
  obj.smooth_L = 8.0;  // |f''| = |2 + 6 cos(2x)| <= 8 per coordinate
  return obj;
}

Objective make_simplex_lin_entropy(const ProblemSpec& spec) {
  const int d = spec.dim;
  Vector c = spec.cost;
  if (c.empty()) {
    c.resize(d);
    for (int i = 0; i < d; ++i) c[i] = static_cast<double>(i) / d;
  }
  if (static_cast<int>(c.size()) != d) throw ConfigError("simplex_lin_entropy: cost size must match dim");
  const double gamma = spec.entropy_coeff;
  if (gamma < 0.0) throw ConfigError("simplex_lin_entropy: entropy_coeff must be >= 0");

  Objective obj;
  obj.name = "simplex_lin_entropy";
  obj.dim = d;
  obj.domain = Domain::Simplex;
  obj.eval = [c, gamma](const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      s += c[i] * x[i];
      if (gamma > 0.0 && x[i] > 0.0) s += gamma * x[i] * std::log(x[i]);  // 0 ln 0 := 0
    }
    return s;
  };
  obj.grad = [c, gamma](const Vector& x) {
    Vector g(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      g[i] = c[i];
      if (gamma > 0.0) g[i] += gamma * (1.0 + std::log(x[i]));
    }
    return g;
  };
  if (gamma > 0.0) {
    // x* = softmax(-c/gamma), f* = -gamma ln sum exp(-c_i/gamma)
    const double m = -*std::min_element(c.begin(), c.end()) / gamma;
    double z = 0.0;
    Vector xs(d);
    for (int i = 0; i < d; ++i) {
      xs[i] = std::exp(-c[i] / gamma - m);
      z += xs[i];
    }
    for (int i = 0; i < d; ++i) xs[i] /= z;
    obj.x_star = xs;
    obj.f_star = -gamma * (std::log(z) + m);
  } else {
    const auto it = std::min_element(c.begin(), c.end());
    Vector xs(d, 0.0);
    xs[static_cast<std::size_t>(it - c.begin())] = 1.0;
    obj.x_star = xs;
    obj.f_star = *it;
    obj.lipschitz_G = norm_linf(c);  // gradient is the constant c; dual norm of l1 is linf
  }
  return obj;
}

Objective make_logistic_synthetic(const ProblemSpec& spec) {
  const int d = spec.dim;
  const int n = spec.n_samples;
  if (n < 1) throw ConfigError("logistic_synthetic: n_samples must be >= 1");
  auto data = std::make_shared<std::vector<Vector>>();
  auto labels = std::make_shared<std::vector<double>>();
  RngStream rng(spec.data_seed, 0);
  Vector teacher(d);
  for (int j = 0; j < d; ++j) teacher[j] = (j % 2 == 0) ? 1.0 : -1.0;
  double sum_norm = 0.0, sum_norm_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    Vector a(d);
    for (int j = 0; j < d; ++j) a[j] = rng.normal();
    double y = dot(a, teacher) >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform01() < 0.1) y = -y;  // label noise keeps the data non-separable
    data->push_back(a);
    labels->push_back(y);
    sum_norm += norm_l2(a);
    sum_norm_sq += norm_l2_sq(a);
  }
  Objective obj;
  obj.name = "logistic_synthetic";
  obj.dim = d;
  obj.eval = [data, labels, n](const Vector& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double m = -(*labels)[i] * dot((*data)[i], x);
      s += m > 0.0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
    }
    return s / n;
  };
  obj.grad = [data, labels, n, d](const Vector& x) {
    Vector g(d, 0.0);
    for (int i = 0; i < n; ++i) {
      const double m = -(*labels)[i] * dot((*data)[i], x);
      const double p = 1.0 / (1.0 + std::exp(-m));  // sigmoid(m)
      for (int j = 0; j < d; ++j) g[j] -= p * (*labels)[i] * (*data)[i][j] / n;
    }
    return g;
  };
  obj.f_star = 0.0;  // lower bound; exact optimum unknown
  obj.lipschitz_G = sum_norm / n;
  obj.smooth_L = sum_norm_sq / (4.0 * n);
  return obj;
}

}  // namespace

Objective make_problem(const ProblemSpec& spec) {
  if (spec.dim < 1) throw ConfigError("problem dim must be >= 1");
  if (spec.name == "quadratic") return make_quadratic(spec);
  if (spec.name == "abs_sum") return make_abs_sum(spec);
  if (spec.name == "smooth_nonconvex") return make_smooth_nonconvex(spec);
  if (spec.name == "simplex_lin_entropy") return make_simplex_lin_entropy(spec);
  if (spec.name == "logistic_synthetic") return make_logistic_synthetic(spec);
  throw ConfigError("unknown problem: " + spec.name);
}

}  // namespace hpopt
