#pragma once

#include <numbers>

#include "ebdetect/vec.hpp"

namespace ebdetect {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Observation direction in spherical angles: theta in [0, pi], phi in [0, 2pi).
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

/// Right-handed orthonormal spherical triad at a direction: r x theta = phi.
struct SphericalBasis {
  Vec3 r_hat, theta_hat, phi_hat;
};

/// r = (sin t cos p, sin t sin p, cos t), theta_hat = dr/dtheta, phi_hat = (-sin p, cos p, 0).
/// At the poles the basis is taken at the given phi; there is no azimuthal continuity there.
inline SphericalBasis spherical_basis(const Direction& d) {
  const double st = std::sin(d.theta), ct = std::cos(d.theta);
  const double sp = std::sin(d.phi), cp = std::cos(d.phi);
  return {
      {st * cp, st * sp, ct},
      {ct * cp, ct * sp, -st},
      {-sp, cp, 0.0},
  };
}

}  // namespace ebdetect
