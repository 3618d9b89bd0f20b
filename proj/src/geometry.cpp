#include "hpopt/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hpopt {

Vector MirrorMap::potential_grad(const Vector& x) const {
  if (kind == MirrorMapKind::EuclideanHalfSq) return x;
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) throw std::domain_error("potential_grad: NegEntropy needs x > 0");
    g[i] = 1.0 + std::log(x[i]);
  }
  return g;
}

double bregman(const MirrorMap& map, const Vector& x, const Vector& y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("bregman: dimension mismatch");
  assert_finite(x, "bregman x");
  assert_finite(y, "bregman y");
  if (map.kind == MirrorMapKind::EuclideanHalfSq) {
    return 0.5 * norm_l2_sq(sub(x, y));
  }
  // sum x ln(x/y) - sum x + sum y with 0 ln 0 := 0
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0 || y[i] < 0.0) throw std::domain_error("bregman: NegEntropy needs nonnegative points");
    if (x[i] > 0.0) {
      if (y[i] == 0.0) throw std::domain_error("bregman: infinite divergence (y_i = 0, x_i > 0)");
      s += x[i] * std::log(x[i] / y[i]);
    }
    s += y[i] - x[i];
  }
  return std::max(s, 0.0);
}

Vector mirror_step(const MirrorMap& map, const Vector& x, const Vector& g, double eta,
                   bool* clamped) {
  if (x.size() != g.size() || x.empty()) throw std::invalid_argument("mirror_step: dimension mismatch");
  if (eta < 0.0) throw std::invalid_argument("mirror_step: eta must be >= 0");
  if (clamped) *clamped = false;
  if (map.kind == MirrorMapKind::EuclideanHalfSq) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - eta * g[i];
    return r;
  }
  // KKT solution on the simplex: x_i exp(-eta g_i), renormalized
  Vector logits(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) throw std::domain_error("mirror_step: NegEntropy needs strictly positive x");
    logits[i] = std::log(x[i]) - eta * g[i];
  }
  const double m = *std::max_element(logits.begin(), logits.end());
  Vector r(x.size());
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r[i] = std::exp(logits[i] - m);
    z += r[i];
  }
  bool hit_floor = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r[i] /= z;
    if (r[i] < 1e-300) {
      r[i] = 1e-300;
      hit_floor = true;
    }
  }
  if (clamped) *clamped = hit_floor;
  return r;
}

}  // namespace hpopt
