#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

#include "ebdetect/farfield.hpp"

namespace ebdetect {

/// How the sensitivity polarizations are oriented: attached to the local
/// spherical basis (u_e = theta_hat, u_b = phi_hat at each direction) or fixed
/// in the lab frame (the vectors stored in DetectorSpec).
enum class DetectorFrame { local, lab };

inline const char* to_string(DetectorFrame f) { return f == DetectorFrame::local ? "local" : "lab"; }

/// Detector response: electric and magnetic sensitivity polarizations, the
/// complex mixing parameter zeta weighting the magnetic channel, and the
/// empirical sensitivity s entering probabilities as s^2.
///
/// zeta = 0 reduces to the standard electric-only (Glauber) detector.
struct DetectorSpec {
  ComplexVec3 u_e{1.0, 0.0, 0.0};  ///< used in lab frame only
  ComplexVec3 u_b{0.0, 1.0, 0.0};  ///< used in lab frame only
  Complex zeta{0.0, 0.0};
  double sensitivity = 1.0;

  void validate() const {
    constexpr double tol = 1e-12;
    if (std::abs(norm_sq(u_e) - 1.0) > tol) throw std::invalid_argument("DetectorSpec: u_e must be a unit vector");
    if (std::abs(norm_sq(u_b) - 1.0) > tol) throw std::invalid_argument("DetectorSpec: u_b must be a unit vector");
    if (!(sensitivity > 0.0)) throw std::invalid_argument("DetectorSpec: sensitivity must be > 0");
  }

  friend bool operator==(const DetectorSpec&, const DetectorSpec&) = default;
};

/// Sensitivity polarizations resolved at a direction per the frame mode.
inline std::pair<ComplexVec3, ComplexVec3> resolve_polarizations(const DetectorSpec& spec,
                                                                 DetectorFrame frame,
                                                                 const Direction& d) {
  if (frame == DetectorFrame::local) {
    const SphericalBasis basis = spherical_basis(d);
    return {ComplexVec3(basis.theta_hat), ComplexVec3(basis.phi_hat)};
  }
  return {spec.u_e, spec.u_b};
}

/// Detection amplitude A = u_e* . e + zeta (u_b* . b).
inline Complex detection_amplitude(const FarFieldAmplitude& f, const DetectorSpec& spec,
                                   DetectorFrame frame, const Direction& d) {
  const auto [u_e, u_b] = resolve_polarizations(spec, frame, d);
  return hermitian_dot(u_e, f.e_field) + spec.zeta * hermitian_dot(u_b, f.b_field);
}

/// Detection probability P = s^2 |A|^2 (relative units).
inline double detection_probability(const FarFieldAmplitude& f, const DetectorSpec& spec,
                                    DetectorFrame frame, const Direction& d) {
  const Complex a = detection_amplitude(f, spec, frame, d);
  return spec.sensitivity * spec.sensitivity * std::norm(a);
}

/// Electric-only detection, P = s^2 |u_e* . e|^2. Equals the zeta = 0 limit of
/// detection_probability.
inline double glauber_probability(const FarFieldAmplitude& f, const ComplexVec3& u_e,
                                  double sensitivity) {
  return sensitivity * sensitivity * std::norm(hermitian_dot(u_e, f.e_field));
}

/// Absorption models for a detector at its ideal limit, where the absorption
/// and scattering cross sections are equal; both modes carry that limit as a
/// direction-independent factor 1/2.
enum class AbsorptionMode {
  coherent,       ///< absorbed power follows the coherent detection pattern
  particle_like,  ///< interference-free: incoherent sum of per-emitter patterns
};

inline const char* to_string(AbsorptionMode m) {
  return m == AbsorptionMode::coherent ? "coherent" : "particle-like";
}

/// Angular distribution of absorbed power.
///
/// coherent: 1/2 of the coherent detection probability of the summed field.
/// particle_like: 1/2 of the incoherent sum of per-emitter electric-channel
/// probabilities, as if each source radiated classical particles on its own
/// sin^2(theta) pattern; azimuthally uniform for the symmetric pair. No cross
/// terms survive, so the mixing parameter does not enter this mode.
inline double absorbed_distribution(const FieldConfig& config, const DetectorSpec& spec,
                                    DetectorFrame frame, AbsorptionMode mode, const Direction& d) {
  switch (mode) {
    case AbsorptionMode::coherent:
      return 0.5 * detection_probability(total_farfield(config, d), spec, frame, d);
    case AbsorptionMode::particle_like: {
      const auto [u_e, u_b] = resolve_polarizations(spec, frame, d);
      double sum = 0.0;
      for (const auto& e : config.emitters) {
        sum += std::norm(hermitian_dot(u_e, single_dipole_farfield(e, d).e_field));
      }
      return 0.5 * spec.sensitivity * spec.sensitivity * sum;
    }
  }
  throw std::invalid_argument("absorbed_distribution: unknown mode");
}

/// Dipole polarizability alpha(omega), evaluated at one frequency.
/// Passivity requires Im alpha >= 0 there.
struct PolarizabilityModel {
  std::function<Complex(double)> alpha;
  double omega = 1.0;

  static PolarizabilityModel lorentzian(double omega0, double gamma, double omega) {
    return {[omega0, gamma](double w) { return 1.0 / Complex(omega0 * omega0 - w * w, -gamma * w); },
            omega};
  }
};

/// Extinction cross-section scale (omega / c) Im alpha(omega), in c = 1 units.
inline double extinction_scale(const PolarizabilityModel& model) {
  const Complex a = model.alpha(model.omega);
  if (a.imag() < 0.0)
    throw std::domain_error("extinction_scale: Im alpha < 0 violates passivity");
  return model.omega * a.imag();
}

}  // namespace ebdetect
