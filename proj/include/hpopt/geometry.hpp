#pragma once

#include "hpopt/core.hpp"

namespace hpopt {

/// Mirror map kinds. Both potentials are 1-strongly convex w.r.t. their
/// paired primal norm: half squared l2 on R^d (EuclideanL2 pair), negative
/// entropy on the probability simplex (L1Linf pair).
enum class MirrorMapKind { EuclideanHalfSq, NegEntropy };

struct MirrorMap {
  MirrorMapKind kind = MirrorMapKind::EuclideanHalfSq;

  NormPair norm_pair() const {
    return {kind == MirrorMapKind::EuclideanHalfSq ? NormPairKind::EuclideanL2
                                                   : NormPairKind::L1Linf};
  }
  Domain domain() const {
    return kind == MirrorMapKind::EuclideanHalfSq ? Domain::AllSpace : Domain::Simplex;
  }
  /// Gradient of the potential (identity, or 1 + ln x).
  Vector potential_grad(const Vector& x) const;
};

/// Bregman divergence of the map's potential. Nonnegative; zero iff x == y.
/// NegEntropy requires strictly positive y when the corresponding x entry is
/// positive (otherwise the divergence is infinite and an error is raised);
/// x entries may be zero (0 ln 0 := 0).
double bregman(const MirrorMap& map, const Vector& x, const Vector& y);

/// Prox step  argmin_x { eta <g,x> + D(x, x_t) }  in closed form:
/// Euclidean on R^d gives x - eta g; NegEntropy on the simplex gives the
/// multiplicative-weights update with max-subtraction so finite inputs never
/// overflow. Entropic iterates are clamped to >= 1e-300 after normalization;
/// *clamped is set when that triggers.
Vector mirror_step(const MirrorMap& map, const Vector& x, const Vector& g, double eta,
                   bool* clamped = nullptr);

}  // namespace hpopt
