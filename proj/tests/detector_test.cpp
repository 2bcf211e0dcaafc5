#include <gtest/gtest.h>

#include <random>

#include "ebdetect/detector.hpp"
#include "ebdetect/quadrature.hpp"

using namespace ebdetect;

namespace {

std::mt19937 rng(5550123);

Direction random_direction() {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> a(0.0, two_pi);
  return {std::acos(u(rng)), a(rng)};
}

Complex random_zeta() {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng)};
}

DetectorSpec spec_with_zeta(Complex zeta, double sensitivity = 1.0) {
  DetectorSpec spec;
  spec.zeta = zeta;
  spec.sensitivity = sensitivity;
  return spec;
}

const FieldConfig kPair = FieldConfig::symmetric_pair(3.0);

}  // namespace

TEST(DetectionAmplitude, GlauberLimitAtZeroMixing) {
  const DetectorSpec spec = spec_with_zeta({0.0, 0.0});
  for (int i = 0; i < 100; ++i) {
    const Direction d = random_direction();
    const FarFieldAmplitude f = total_farfield(kPair, d);
    const Complex a = detection_amplitude(f, spec, DetectorFrame::local, d);
    const Complex electric = hermitian_dot(spherical_basis(d).theta_hat, f.e_field);
    EXPECT_NEAR(std::abs(a - electric), 0.0, 1e-15);
  }
}

// Amplitude-level cancellation at zeta = -1 in the local frame, everywhere.
TEST(DetectionAmplitude, PairNullAtZetaMinusOne) {
  const DetectorSpec spec = spec_with_zeta({-1.0, 0.0});
  const SphereGrid grid = build_sphere_grid(64, 128);
  double worst = 0.0;
  for (const auto& node : grid.nodes) {
    const FarFieldAmplitude f = total_farfield(kPair, node.dir);
    worst = std::max(worst, detection_probability(f, spec, DetectorFrame::local, node.dir));
  }
  EXPECT_LT(worst, 1e-24);
}

// At (pi/2, pi/2) the pair field has |e| = 2, and zeta = 1 doubles the
// amplitude: |A| = 4.
TEST(DetectionAmplitude, ZetaPlusOneDoublesFieldAmplitude) {
  const Direction d{pi / 2.0, pi / 2.0};
  const FarFieldAmplitude f = total_farfield(kPair, d);
  const Complex a = detection_amplitude(f, spec_with_zeta({1.0, 0.0}), DetectorFrame::local, d);
  EXPECT_NEAR(std::abs(a), 4.0, 1e-12);
  EXPECT_NEAR(std::abs(a), 2.0 * norm(f.e_field), 1e-12);
}

TEST(DetectionProbability, MixingFactorExamples) {
  for (int i = 0; i < 50; ++i) {
    const Direction d = random_direction();
    const FarFieldAmplitude f = total_farfield(kPair, d);
    const double glauber = detection_probability(f, spec_with_zeta({0.0, 0.0}), DetectorFrame::local, d);
    const double enhanced = detection_probability(f, spec_with_zeta({1.0, 0.0}), DetectorFrame::local, d);
    const double rotated = detection_probability(f, spec_with_zeta({0.0, 1.0}), DetectorFrame::local, d);
    const double nulled = detection_probability(f, spec_with_zeta({-1.0, 0.0}), DetectorFrame::local, d);
    EXPECT_NEAR(enhanced, 4.0 * glauber, 1e-12 * std::max(1.0, enhanced));
    EXPECT_NEAR(rotated, 2.0 * glauber, 1e-12 * std::max(1.0, rotated));
    EXPECT_LT(nulled, 1e-24);
  }
}

// P(zeta) = |1 + zeta|^2 P(0): the enhancement/suppression factor, tested as a
// ratio identity over random mixing values and directions.
TEST(DetectionProbability, FactorizationIdentity) {
  for (int i = 0; i < 50; ++i) {
    const Complex zeta = random_zeta();
    const DetectorSpec spec = spec_with_zeta(zeta);
    const double factor = std::norm(Complex{1.0} + zeta);
    for (int k = 0; k < 50; ++k) {
      const Direction d = random_direction();
      const FarFieldAmplitude f = total_farfield(kPair, d);
      const double p0 = detection_probability(f, spec_with_zeta({0.0, 0.0}), DetectorFrame::local, d);
      const double p = detection_probability(f, spec, DetectorFrame::local, d);
      if (p0 > 1e-30) {
        EXPECT_NEAR(p / p0, factor, 1e-12 * std::max(1.0, factor));
      }
    }
  }
}

TEST(DetectionProbability, NonnegativeEverywhere) {
  for (int i = 0; i < 200; ++i) {
    const Direction d = random_direction();
    const DetectorSpec spec = spec_with_zeta(random_zeta());
    const FarFieldAmplitude f = total_farfield(kPair, d);
    EXPECT_GE(detection_probability(f, spec, DetectorFrame::local, d), 0.0);
  }
}

// In the xy plane theta_hat = -z everywhere, so a lab-frame detector with
// u_e = z reproduces local-frame Glauber probabilities exactly.
TEST(DetectorFrame, LabFrameMatchesLocalInEquatorialPlane) {
  DetectorSpec lab = spec_with_zeta({0.0, 0.0});
  lab.u_e = ComplexVec3{0.0, 0.0, 1.0};
  const DetectorSpec local = spec_with_zeta({0.0, 0.0});
  for (int i = 0; i < 100; ++i) {
    std::uniform_real_distribution<double> a(0.0, two_pi);
    const Direction d{pi / 2.0, a(rng)};
    const FarFieldAmplitude f = total_farfield(kPair, d);
    const double p_lab = detection_probability(f, lab, DetectorFrame::lab, d);
    const double p_local = detection_probability(f, local, DetectorFrame::local, d);
    EXPECT_NEAR(p_lab, p_local, 1e-12 * std::max(1.0, p_local));
  }
}

// With u_b pinned to phi_hat of one direction, the full generalized detector
// agrees with the local frame at that direction for any mixing value.
TEST(DetectorFrame, LabFrameMatchesLocalAtPinnedDirection) {
  const Direction d{pi / 2.0, pi / 2.0};
  for (int i = 0; i < 20; ++i) {
    const Complex zeta = random_zeta();
    DetectorSpec lab = spec_with_zeta(zeta);
    lab.u_e = ComplexVec3{0.0, 0.0, -1.0};    // theta_hat at (pi/2, pi/2)
    lab.u_b = ComplexVec3{-1.0, 0.0, 0.0};    // phi_hat at (pi/2, pi/2)
    const FarFieldAmplitude f = total_farfield(kPair, d);
    const double p_lab = detection_probability(f, lab, DetectorFrame::lab, d);
    const double p_local = detection_probability(f, spec_with_zeta(zeta), DetectorFrame::local, d);
    EXPECT_NEAR(p_lab, p_local, 1e-10 * std::max(1.0, p_local));
  }
}

TEST(DetectionProbability, SensitivityScalesAsSquare) {
  const Direction d{1.1, 2.3};
  const FarFieldAmplitude f = total_farfield(kPair, d);
  for (double s : {0.5, 2.0, 7.25}) {
    const double base = detection_probability(f, spec_with_zeta({0.3, -0.4}, 1.0), DetectorFrame::local, d);
    const double scaled = detection_probability(f, spec_with_zeta({0.3, -0.4}, s), DetectorFrame::local, d);
    EXPECT_DOUBLE_EQ(scaled, s * s * base);
  }
}

TEST(GlauberProbability, PairExamples) {
  const Direction constructive{pi / 2.0, pi / 2.0};
  const ComplexVec3 u_e = spherical_basis(constructive).theta_hat;
  EXPECT_NEAR(glauber_probability(total_farfield(kPair, constructive), u_e, 1.0), 4.0, 1e-12);

  const Direction pole{0.0, 0.0};
  EXPECT_NEAR(glauber_probability(total_farfield(kPair, pole), spherical_basis(pole).theta_hat, 1.0),
              0.0, 1e-24);

  // delta = 3 pi at cos(phi) = 1/2: a zero of cos^2(delta/2).
  const Direction destructive{pi / 2.0, std::acos(0.5)};
  EXPECT_LT(glauber_probability(total_farfield(kPair, destructive), spherical_basis(destructive).theta_hat, 1.0),
            1e-28);
}

TEST(GlauberProbability, EqualsZeroMixingDetection) {
  for (int i = 0; i < 100; ++i) {
    const Direction d = random_direction();
    const FarFieldAmplitude f = total_farfield(kPair, d);
    const double via_spec = detection_probability(f, spec_with_zeta({0.0, 0.0}), DetectorFrame::local, d);
    const double direct = glauber_probability(f, spherical_basis(d).theta_hat, 1.0);
    EXPECT_NEAR(via_spec, direct, 1e-15 * std::max(1.0, direct));
  }
}

TEST(AbsorbedDistribution, CoherentModeIsHalfTheDetectionPattern) {
  const DetectorSpec spec = spec_with_zeta({0.0, 0.0});
  for (int i = 0; i < 100; ++i) {
    const Direction d = random_direction();
    const double glauber = glauber_probability(total_farfield(kPair, d), spherical_basis(d).theta_hat, 1.0);
    const double absorbed = absorbed_distribution(kPair, spec, DetectorFrame::local, AbsorptionMode::coherent, d);
    EXPECT_NEAR(absorbed, 0.5 * glauber, 1e-14 * std::max(1.0, glauber));
  }
}

// The particle-like distribution is azimuthally uniform for the pair and does
// not vanish at zeta = -1: only the coherent channel cancels there.
TEST(AbsorbedDistribution, ParticleModeUniformInPhi) {
  for (const Complex zeta : {Complex{-1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.7, -1.3}}) {
    const DetectorSpec spec = spec_with_zeta(zeta);
    for (double theta : {0.4, pi / 2.0, 2.2}) {
      double lo = 1e300, hi = -1e300;
      for (int k = 0; k < 128; ++k) {
        const Direction d{theta, two_pi * k / 128.0};
        const double p = absorbed_distribution(kPair, spec, DetectorFrame::local,
                                               AbsorptionMode::particle_like, d);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
      EXPECT_GT(hi, 0.0);
      EXPECT_LT(hi - lo, 1e-12 * hi);
    }
  }
}

// For the z-oriented pair the particle-like curve is sin^2(theta) per emitter
// (times the ideal-absorber 1/2).
TEST(AbsorbedDistribution, ParticleModeSinSquaredWeight) {
  const DetectorSpec spec = spec_with_zeta({-1.0, 0.0});
  for (double theta : {0.3, 1.0, pi / 2.0, 2.6}) {
    const Direction d{theta, 1.234};
    const double p = absorbed_distribution(kPair, spec, DetectorFrame::local,
                                           AbsorptionMode::particle_like, d);
    const double expected = 0.5 * 2.0 * std::sin(theta) * std::sin(theta);
    EXPECT_NEAR(p, expected, 1e-12);
  }
}

TEST(AbsorbedDistribution, SingleEmitterModesAgree) {
  FieldConfig single;
  single.emitters = {{{0.35, -0.2, 0.9}, {0.0, 0.0, 1.0}, 0.4}};
  const DetectorSpec spec = spec_with_zeta({0.0, 0.0}, 1.7);
  for (int i = 0; i < 100; ++i) {
    const Direction d = random_direction();
    const double coherent = absorbed_distribution(single, spec, DetectorFrame::local, AbsorptionMode::coherent, d);
    const double particle = absorbed_distribution(single, spec, DetectorFrame::local, AbsorptionMode::particle_like, d);
    EXPECT_NEAR(coherent, particle, 1e-13 * std::max(1.0, coherent));
  }
}

TEST(AbsorbedDistribution, DegenerateDirectionsVanishForZPair) {
  const DetectorSpec spec = spec_with_zeta({0.4, 0.2});
  for (const Direction d : {Direction{0.0, 0.0}, Direction{pi, 2.0}}) {
    EXPECT_LT(absorbed_distribution(kPair, spec, DetectorFrame::local, AbsorptionMode::coherent, d), 1e-30);
    EXPECT_LT(absorbed_distribution(kPair, spec, DetectorFrame::local, AbsorptionMode::particle_like, d), 1e-30);
  }
}

TEST(DetectorSpec, ValidatesUnitVectorsAndSensitivity) {
  DetectorSpec ok;
  EXPECT_NO_THROW(ok.validate());

  DetectorSpec bad_ue;
  bad_ue.u_e = ComplexVec3{1.0, 1.0, 0.0};
  EXPECT_THROW(bad_ue.validate(), std::invalid_argument);

  DetectorSpec bad_s;
  bad_s.sensitivity = 0.0;
  EXPECT_THROW(bad_s.validate(), std::invalid_argument);
}

TEST(ExtinctionScale, DirectValues) {
  const PolarizabilityModel lossless{[](double) { return Complex{2.5, 0.0}; }, 3.0};
  EXPECT_DOUBLE_EQ(extinction_scale(lossless), 0.0);

  const PolarizabilityModel unit{[](double) { return Complex{0.0, 1.0}; }, 1.0};
  EXPECT_DOUBLE_EQ(extinction_scale(unit), 1.0);
}

// At resonance alpha = i / (gamma omega0), so the scale is exactly 1 / gamma;
// cross-checked against a direct numeric evaluation of the model.
TEST(ExtinctionScale, LorentzianOnResonance) {
  const double omega0 = 2.7, gamma = 0.31;
  const PolarizabilityModel model = PolarizabilityModel::lorentzian(omega0, gamma, omega0);
  const Complex alpha_numeric = 1.0 / Complex(omega0 * omega0 - omega0 * omega0, -gamma * omega0);
  EXPECT_NEAR(extinction_scale(model), 1.0 / gamma, 1e-12);
  EXPECT_NEAR(extinction_scale(model), omega0 * alpha_numeric.imag(), 1e-14);
}

TEST(ExtinctionScale, RejectsNonPassiveModel) {
  const PolarizabilityModel gain{[](double) { return Complex{0.0, -0.1}; }, 1.0};
  EXPECT_THROW(extinction_scale(gain), std::domain_error);
}

TEST(PolarizabilityModel, LorentzianPassiveOffResonance) {
  for (double w : {0.5, 1.0, 2.0, 5.0}) {
    const PolarizabilityModel model = PolarizabilityModel::lorentzian(2.0, 0.1, w);
    EXPECT_GE(extinction_scale(model), 0.0);
  }
}
