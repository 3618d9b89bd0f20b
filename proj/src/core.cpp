#include "hpopt/core.hpp"

#include <cmath>
#include <cstdlib>

namespace hpopt {

void assert_finite(const Vector& v, const char* context) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string("non-finite entry in ") + context);
    }
  }
}

namespace {
void check_same_dim(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vector dimension mismatch");
  }
}
}  // namespace

Vector add(const Vector& a, const Vector& b) {
  check_same_dim(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  check_same_dim(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scale(double s, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Vector axpy(const Vector& a, double s, const Vector& b) {
  check_same_dim(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

Vector combine(double c1, const Vector& a, double c2, const Vector& b) {
  check_same_dim(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c1 * a[i] + c2 * b[i];
  return r;
}

double dot(const Vector& a, const Vector& b) {
  check_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_l2_sq(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double norm_l2(const Vector& v) { return std::sqrt(norm_l2_sq(v)); }

double norm_l1(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm_linf(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double NormPair::primal(const Vector& v) const {
  return kind == NormPairKind::EuclideanL2 ? norm_l2(v) : norm_l1(v);
}

double NormPair::dual(const Vector& v) const {
  return kind == NormPairKind::EuclideanL2 ? norm_l2(v) : norm_linf(v);
}

double dual_norm(const NormPair& pair, const Vector& v) {
  if (v.empty()) throw std::invalid_argument("dual_norm: dimension 0");
  assert_finite(v, "dual_norm");
  return pair.dual(v);
}

namespace {
std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      gen_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id ^ 0x9E3779B97F4A7C15ull))) {}

double RngStream::uniform01() {
  // 53-bit mantissa in [0,1)
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

}  // namespace hpopt
