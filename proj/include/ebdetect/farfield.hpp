#pragma once

#include <stdexcept>
#include <vector>

#include "ebdetect/direction.hpp"
#include "ebdetect/vec.hpp"

namespace ebdetect {

/// One Hertzian point source. Positions are measured in wavelengths, so the
/// radiation-zone propagation phase is -2pi * (r . position) regardless of the
/// configured wavelength value.
struct Emitter {
  Vec3 position;              ///< in units of the wavelength
  ComplexVec3 moment;         ///< dipole moment, arbitrary relative units
  double phase = 0.0;         ///< relative drive phase, radians

  friend bool operator==(const Emitter&, const Emitter&) = default;
};

/// A set of coherently driven emitters sharing one wavelength.
struct FieldConfig {
  double wavelength = 1.0;
  std::vector<Emitter> emitters;

  /// Two identical z-oriented dipoles, in phase, at +/- separation/2 on the x axis.
  static FieldConfig symmetric_pair(double separation) {
    FieldConfig c;
    const ComplexVec3 p_z{0.0, 0.0, 1.0};
    c.emitters = {{{-separation / 2.0, 0.0, 0.0}, p_z, 0.0},
                  {{separation / 2.0, 0.0, 0.0}, p_z, 0.0}};
    return c;
  }

  void validate() const {
    if (!(wavelength > 0.0)) throw std::invalid_argument("FieldConfig: wavelength must be > 0");
    if (emitters.empty()) throw std::invalid_argument("FieldConfig: at least one emitter required");
    for (const auto& e : emitters) {
      if (!(norm_sq(e.moment) > 0.0)) throw std::invalid_argument("FieldConfig: emitter moment must be nonzero");
    }
  }

  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

/// Relative far-field amplitudes at one direction, common e^{ikr}/r envelope
/// dropped. Both vectors are transverse and b = r x e (radiation zone, c = 1).
struct FarFieldAmplitude {
  ComplexVec3 e_field;
  ComplexVec3 b_field;
};

/// Path-length phase between the two sources of an x-axis symmetric pair:
/// delta = k d sin(theta) cos(phi). Rejects any other geometry.
inline double phase_delta(const FieldConfig& config, const Direction& d) {
  constexpr double tol = 1e-12;
  if (config.emitters.size() != 2)
    throw std::invalid_argument("phase_delta: config must have exactly 2 emitters");
  const Vec3& a = config.emitters[0].position;
  const Vec3& b = config.emitters[1].position;
  const Vec3 sum = a + b;
  if (std::abs(sum.x) > tol || std::abs(sum.y) > tol || std::abs(sum.z) > tol ||
      std::abs(a.y) > tol || std::abs(a.z) > tol)
    throw std::invalid_argument("phase_delta: emitters must sit at +/- d/2 on the x axis");
  const double separation = std::abs(a.x - b.x);  // in wavelengths, so k*d = 2pi*separation
  return two_pi * separation * std::sin(d.theta) * std::cos(d.phi);
}

/// Far field of one emitter: e = [(r x p) x r] e^{i phase} e^{-i k r . x0},
/// b = r x e. For p = z this is -sin(theta) theta_hat, magnitude sin(theta).
inline FarFieldAmplitude single_dipole_farfield(const Emitter& e, const Direction& d) {
  const SphericalBasis basis = spherical_basis(d);
  const ComplexVec3 r_hat = basis.r_hat;
  const Complex radial = dot(r_hat, e.moment);
  const ComplexVec3 transverse = e.moment - radial * r_hat;  // (r x p) x r
  const Complex propagation = std::exp(Complex(0.0, e.phase - two_pi * dot(basis.r_hat, e.position)));
  const ComplexVec3 e_field = propagation * transverse;
  return {e_field, cross(r_hat, e_field)};
}

/// Coherent superposition of all emitter contributions.
inline FarFieldAmplitude total_farfield(const FieldConfig& config, const Direction& d) {
  FarFieldAmplitude total;
  for (const auto& e : config.emitters) {
    const FarFieldAmplitude f = single_dipole_farfield(e, d);
    total.e_field = total.e_field + f.e_field;
    total.b_field = total.b_field + f.b_field;
  }
  return total;
}

}  // namespace ebdetect
