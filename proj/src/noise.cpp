#include "hpopt/noise.hpp"

#include <cmath>
#include <limits>

namespace hpopt {

NoiseModel NoiseModel::none(int dim) {
  NoiseModel m;
  m.kind = NoiseKind::None;
  m.dim = dim;
  return m;
}

NoiseModel NoiseModel::gaussian_iso(int dim, double std_per_coord) {
  if (std_per_coord <= 0.0) throw ConfigError("gaussian_iso: std must be > 0");
  NoiseModel m;
  m.kind = NoiseKind::GaussianIso;
  m.dim = dim;
  m.iso_std = std_per_coord;
  return m;
}

NoiseModel NoiseModel::gaussian_diag(Vector std_per_coord) {
  for (double s : std_per_coord) {
    if (s <= 0.0) throw ConfigError("gaussian_diag: stds must be > 0");
  }
  NoiseModel m;
  m.kind = NoiseKind::GaussianDiag;
  m.dim = static_cast<int>(std_per_coord.size());
  m.diag_std = std::move(std_per_coord);
  return m;
}

NoiseModel NoiseModel::bounded_rademacher(int dim, double scale) {
  if (scale <= 0.0) throw ConfigError("bounded_rademacher: scale must be > 0");
  NoiseModel m;
  m.kind = NoiseKind::BoundedRademacher;
  m.dim = dim;
  m.rademacher_scale = scale;
  return m;
}

double NoiseModel::declared_sigma(const NormPair& pair) const {
  if (declared_sigma_override) return *declared_sigma_override;
  const double rd = std::sqrt(static_cast<double>(dim));
  switch (kind) {
    case NoiseKind::None:
      return 0.0;
    case NoiseKind::GaussianIso:
      return 2.0 * iso_std * rd;
    case NoiseKind::GaussianDiag:
      return 2.0 * norm_l2(diag_std);
    case NoiseKind::BoundedRademacher:
      // |X|_inf = c exactly; |X|_2 = c sqrt(d) exactly
      return pair.kind == NormPairKind::L1Linf ? rademacher_scale : rademacher_scale * rd;
  }
  return 0.0;
}

Vector NoiseModel::declared_sigma_coord() const {
  if (kind == NoiseKind::GaussianDiag) return scale(2.0, diag_std);
  NormPair l2;
  return Vector(dim, declared_sigma(l2));
}

Vector NoiseModel::sample(RngStream& rng) const {
  Vector xi(dim, 0.0);
  switch (kind) {
    case NoiseKind::None:
      break;
    case NoiseKind::GaussianIso:
      for (int i = 0; i < dim; ++i) xi[i] = iso_std * rng.normal();
      break;
    case NoiseKind::GaussianDiag:
      for (int i = 0; i < dim; ++i) xi[i] = diag_std[i] * rng.normal();
      break;
    case NoiseKind::BoundedRademacher:
      for (int i = 0; i < dim; ++i) xi[i] = rademacher_scale * rng.sign();
      break;
  }
  return xi;
}

SampleResult StochasticOracle::sample(const Vector& x, RngStream& rng) const {
  Vector xi = noise.sample(rng);
  SampleResult r;
  Vector grad = objective->grad(x);
  r.ghat = add(grad, xi);
  if (white_box) {
    r.xi = std::move(xi);
    r.grad = std::move(grad);
  }
  return r;
}

namespace {

// One certification pass over a lambda grid for a scalar magnitude stream.
// magnitudes_sq holds |X_j|^2 for the n samples.
void certify_grid(const std::vector<double>& magnitudes_sq, double sigma, int n_lambda,
                  double slack, CertReport& report) {
  const double n = static_cast<double>(magnitudes_sq.size());
  for (int k = 1; k <= n_lambda; ++k) {
    const double lambda = (static_cast<double>(k) / n_lambda) / sigma;
    const double l2 = lambda * lambda;
    double mean = 0.0;
    for (double m2 : magnitudes_sq) mean += std::exp(l2 * m2);
    mean /= n;
    const double bound = std::exp(l2 * sigma * sigma);
    report.lambda_grid.push_back(lambda);
    report.estimates.push_back(mean);
    report.bounds.push_back(bound);
    if (!std::isfinite(mean)) {
      report.pass = false;
      report.reason = "divergent MGF";
      report.worst_margin = -std::numeric_limits<double>::infinity();
      continue;
    }
    const double margin = (bound * (1.0 + slack) - mean) / bound;
    report.worst_margin = std::min(report.worst_margin, margin);
    if (mean > bound * (1.0 + slack)) {
      report.pass = false;
      if (report.reason.empty()) report.reason = "bound exceeded";
    }
  }
}

}  // namespace

CertReport certify_subgaussian(const NoiseModel& model, const NormPair& pair, long n_samples,
                               int n_lambda, RngStream& rng) {
  if (n_samples < 100000) throw std::invalid_argument("certify_subgaussian: n_samples must be >= 1e5");
  if (n_lambda < 1) throw std::invalid_argument("certify_subgaussian: n_lambda must be >= 1");

  CertReport report;
  report.slack = 3.0 / std::sqrt(static_cast<double>(n_samples));
  report.pass = true;
  report.worst_margin = std::numeric_limits<double>::infinity();

  if (model.kind == NoiseKind::None) {
    // X == 0: estimate is identically 1 for any declared sigma > 0
    const double sigma = model.declared_sigma_override.value_or(1.0);
    report.sigma = sigma;
    std::vector<double> zeros(1, 0.0);
    certify_grid(zeros, sigma, n_lambda, report.slack, report);
    return report;
  }

  if (model.kind == NoiseKind::GaussianDiag && !model.declared_sigma_override) {
    // per-coordinate certification; the grids are concatenated per coordinate
    const Vector sig = model.declared_sigma_coord();
    std::vector<std::vector<double>> mags(model.dim);
    for (long j = 0; j < n_samples; ++j) {
      const Vector xi = model.sample(rng);
      for (int i = 0; i < model.dim; ++i) mags[i].push_back(xi[i] * xi[i]);
    }
    report.sigma = norm_linf(sig);
    for (int i = 0; i < model.dim; ++i) certify_grid(mags[i], sig[i], n_lambda, report.slack, report);
    return report;
  }

  const double sigma = model.declared_sigma(pair);
  if (sigma <= 0.0) throw std::invalid_argument("certify_subgaussian: declared sigma must be > 0");
  report.sigma = sigma;
  std::vector<double> mags;
  mags.reserve(n_samples);
  for (long j = 0; j < n_samples; ++j) {
    const Vector xi = model.sample(rng);
    const double m = pair.dual(xi);
    mags.push_back(m * m);
  }
  certify_grid(mags, sigma, n_lambda, report.slack, report);
  return report;
}

CheckReport mgf_lemma_check(const Vector& a, double b, const NoiseModel& model,
                            const NormPair& pair, long n_samples, RngStream& rng) {
  if (n_samples < 1) throw std::invalid_argument("mgf_lemma_check: n_samples must be >= 1");
  assert_finite(a, "mgf_lemma_check a");
  const double sigma = model.declared_sigma(pair);
  if (sigma > 0.0 && b > 1.0 / (2.0 * sigma)) {
    throw std::invalid_argument("mgf_lemma_check: b exceeds 1/(2 sigma)");
  }
  if (b < 0.0) throw std::invalid_argument("mgf_lemma_check: b must be >= 0");

  CheckReport report;
  report.slack = 3.0 / std::sqrt(static_cast<double>(n_samples));
  double mean = 0.0;
  for (long j = 0; j < n_samples; ++j) {
    const Vector xi = model.sample(rng);
    const double m = pair.dual(xi);
    mean += std::exp(dot(a, xi) + b * b * m * m);
  }
  mean /= static_cast<double>(n_samples);
  const double an = pair.primal(a);
  report.estimate = mean;
  report.bound = std::exp(3.0 * (an * an + b * b) * sigma * sigma);
  if (!std::isfinite(mean)) {
    report.pass = false;
    report.reason = "divergent MGF";
    report.margin = -std::numeric_limits<double>::infinity();
    return report;
  }
  report.pass = mean <= report.bound * (1.0 + report.slack);
  report.margin = (report.bound * (1.0 + report.slack) - mean) / report.bound;
  if (!report.pass) report.reason = "bound exceeded";
  if (b == 0.0) {
    report.sharp_bound = std::exp(2.0 * an * an * sigma * sigma);
    report.sharp_pass = mean <= *report.sharp_bound * (1.0 + report.slack);
    if (!*report.sharp_pass) {
      report.pass = false;
      report.reason = "sharp bound exceeded";
    }
  }
  return report;
}

}  // namespace hpopt
