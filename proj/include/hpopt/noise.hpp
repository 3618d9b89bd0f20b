#pragma once

#include "hpopt/core.hpp"

namespace hpopt {

enum class NoiseKind { None, GaussianIso, GaussianDiag, BoundedRademacher };

/// Mean-zero gradient perturbation with a declared sub-Gaussian parameter.
/// The declared sigma certifies E[exp(l^2 |X|^2)] <= exp(l^2 sigma^2) for
/// all |l| <= 1/sigma, where |X| is the dual norm of the active pair.
/// Defaults (w.r.t. l2): GaussianIso(s) -> 2 s sqrt(d),
/// GaussianDiag(s) -> 2 |s|_2 with per-coordinate sigma_i = 2 s_i,
/// BoundedRademacher(c) -> c sqrt(d) (exact equality in the MGF bound).
struct NoiseModel {
  NoiseKind kind = NoiseKind::None;
  int dim = 0;
  double iso_std = 0.0;     // GaussianIso
  Vector diag_std;          // GaussianDiag
  double rademacher_scale = 0.0;  // BoundedRademacher

  /// Scalar sigma declared for the pair's dual norm; override with
  /// declared_sigma_override to study misspecification.
  std::optional<double> declared_sigma_override;
  double declared_sigma(const NormPair& pair) const;
  /// Per-coordinate sigmas (GaussianDiag); scalar models report the scalar
  /// value replicated.
  Vector declared_sigma_coord() const;

  Vector sample(RngStream& rng) const;

  static NoiseModel none(int dim);
  static NoiseModel gaussian_iso(int dim, double std_per_coord);
  static NoiseModel gaussian_diag(Vector std_per_coord);
  static NoiseModel bounded_rademacher(int dim, double scale);
};

struct SampleResult {
  Vector ghat;
  Vector xi;    // empty unless the oracle is white-box
  Vector grad;  // true gradient; empty unless the oracle is white-box
};

/// Stochastic gradient oracle: ghat = grad f(x) + xi with xi drawn fresh,
/// independent of x and of history. White-box mode additionally exposes the
/// (ghat, xi, grad) split with ghat = grad + xi exactly.
struct StochasticOracle {
  const Objective* objective = nullptr;
  NoiseModel noise;
  bool white_box = true;

  SampleResult sample(const Vector& x, RngStream& rng) const;
};

/// Empirical certificate that the model's dual-norm magnitude is
/// declared-sigma sub-Gaussian: checks E[exp(l^2 |X|^2)] <= exp(l^2 s^2) on
/// a lambda grid in (0, 1/s]. GaussianDiag is certified per coordinate.
struct CertReport {
  std::vector<double> lambda_grid;
  std::vector<double> estimates;
  std::vector<double> bounds;
  bool pass = false;
  double worst_margin = 0.0;  // min over grid of (threshold - estimate)/bound
  std::string reason;         // on failure: "divergent MGF" or "bound exceeded"
  double sigma = 0.0;
  double slack = 0.0;
};

CertReport certify_subgaussian(const NoiseModel& model, const NormPair& pair, long n_samples,
                               int n_lambda, RngStream& rng);
inline CertReport certify_subgaussian(const NoiseModel& model, const NormPair& pair,
                                      long n_samples, RngStream& rng) {
  return certify_subgaussian(model, pair, n_samples, 16, rng);
}

/// Monte-Carlo check of the MGF helper bound
///   E[exp(<a,X> + b^2 |X|^2)] <= exp(3 (|a|'^2 + b^2) sigma^2),
/// |X| the pair's dual norm, |a|' the pair's primal norm, valid for
/// 0 <= b <= 1/(2 sigma). When b = 0 the sharper exp(2 |a|'^2 sigma^2) is
/// also checked.
struct CheckReport {
  double estimate = 0.0;
  double bound = 0.0;
  bool pass = false;
  double margin = 0.0;
  std::string reason;
  // b = 0 only:
  std::optional<double> sharp_bound;
  std::optional<bool> sharp_pass;
  double slack = 0.0;
};

CheckReport mgf_lemma_check(const Vector& a, double b, const NoiseModel& model,
                            const NormPair& pair, long n_samples, RngStream& rng);

}  // namespace hpopt
