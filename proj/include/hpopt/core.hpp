#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpopt {

/// Dense column vector. All library entry points require finite entries;
/// use assert_finite() at trust boundaries.
using Vector = std::vector<double>;

/// Thrown on malformed experiment configuration (unknown keys, bad enum
/// names, missing constants). The CLI maps this to exit code 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an iterate leaves the feasible domain mid-run; carries the
/// offending step index in the message.
struct DomainViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void assert_finite(const Vector& v, const char* context);

// Elementwise helpers used throughout. Small dimensions, no BLAS needed.
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(double s, const Vector& a);
/// a + s*b
Vector axpy(const Vector& a, double s, const Vector& b);
/// c1*a + c2*b
Vector combine(double c1, const Vector& a, double c2, const Vector& b);
double dot(const Vector& a, const Vector& b);
double norm_l2_sq(const Vector& v);
double norm_l2(const Vector& v);
double norm_l1(const Vector& v);
double norm_linf(const Vector& v);

/// Paired primal/dual norms. EuclideanL2 is self-dual; the dual of l1 is
/// l-infinity.
enum class NormPairKind { EuclideanL2, L1Linf };

struct NormPair {
  NormPairKind kind = NormPairKind::EuclideanL2;

  double primal(const Vector& v) const;
  double dual(const Vector& v) const;
};

/// Dual norm of v for the configured pair. Errors on empty vectors.
double dual_norm(const NormPair& pair, const Vector& v);

enum class Domain { AllSpace, Simplex };

/// Deterministic first-order oracle. f_star is the exact minimum when
/// x_star is present, otherwise a certified lower bound. lipschitz_G bounds
/// the (sub)gradient in the objective's natural dual norm; smooth_L is the
/// gradient Lipschitz constant in l2.
struct Objective {
  int dim = 0;
  std::function<double(const Vector&)> eval;
  std::function<Vector(const Vector&)> grad;
  std::optional<double> lipschitz_G;
  std::optional<double> smooth_L;
  std::optional<double> f_star;
  std::optional<Vector> x_star;
  Domain domain = Domain::AllSpace;
  std::string name;
};

/// Counter-seeded random stream. Distinct stream ids (trial indices) give
/// statistically independent streams via two rounds of splitmix64 mixing of
/// (seed, stream_id); identical (seed, stream_id) reproduce the sample
/// sequence bit-for-bit within one build. Instances are single-owner: never
/// share one stream across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return gen_(); }
  double uniform01();
  double normal() { return normal_(gen_); }
  /// Rademacher sign, +1 or -1.
  double sign() { return (gen_() >> 63) ? 1.0 : -1.0; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

}  // namespace hpopt
