#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "ebdetect/detector.hpp"
#include "ebdetect/quadrature.hpp"

namespace ebdetect {

/// What a scan or power integral evaluates per direction.
enum class ScanMode { scattering, absorbed_coherent, absorbed_particle };

inline const char* to_string(ScanMode m) {
  switch (m) {
    case ScanMode::scattering: return "scattering";
    case ScanMode::absorbed_coherent: return "absorbed-coherent";
    case ScanMode::absorbed_particle: return "absorbed-particle";
  }
  return "unknown";
}

/// Scan planes. The xz scan folds the polar plot into one parameter t in
/// [0, 2pi): (phi = 0, theta: 0 -> pi) for t <= pi, then (phi = pi,
/// theta: pi -> 0). The xy scan sweeps phi in [0, 2pi) at theta = pi/2.
enum class ScanPlane { xz, xy };

inline const char* to_string(ScanPlane p) { return p == ScanPlane::xz ? "xz" : "xy"; }

inline Direction direction_on_plane(ScanPlane plane, double param) {
  double t = std::fmod(param, two_pi);
  if (t < 0.0) t += two_pi;
  if (plane == ScanPlane::xy) return {pi / 2.0, t};
  return t <= pi ? Direction{t, 0.0} : Direction{two_pi - t, pi};
}

/// Probability per the selected mode at one direction.
inline double probability_at(const FieldConfig& config, const DetectorSpec& spec,
                             DetectorFrame frame, ScanMode mode, const Direction& d) {
  switch (mode) {
    case ScanMode::scattering:
      return detection_probability(total_farfield(config, d), spec, frame, d);
    case ScanMode::absorbed_coherent:
      return absorbed_distribution(config, spec, frame, AbsorptionMode::coherent, d);
    case ScanMode::absorbed_particle:
      return absorbed_distribution(config, spec, frame, AbsorptionMode::particle_like, d);
  }
  throw std::invalid_argument("probability_at: unknown mode");
}

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string append_number(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g;", v);
  return s += buf;
}

/// Stable digest of the physical inputs of a scan, for self-describing exports.
inline std::string field_digest(const FieldConfig& config) {
  std::string s;
  append_number(s, config.wavelength);
  for (const auto& e : config.emitters) {
    append_number(s, e.position.x);
    append_number(s, e.position.y);
    append_number(s, e.position.z);
    for (const Complex& m : {e.moment.x, e.moment.y, e.moment.z}) {
      append_number(s, m.real());
      append_number(s, m.imag());
    }
    append_number(s, e.phase);
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(fnv1a(s)));
  return out;
}

/// Golden-section minimum of f on [a, b]; assumes f is unimodal there.
template <typename F>
std::pair<double, double> golden_minimize(F&& f, double a, double b, int iterations = 90) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace detail

struct ScanSample {
  double param;  ///< scan parameter, radians
  Direction dir;
  double probability;
};

/// Inputs that produced a scan, carried through to exports.
struct ScanProvenance {
  std::string config_digest;
  std::string frame;
  std::string mode;
  std::string plane;
  Complex zeta{};
  double sensitivity = 1.0;
  int n_samples = 0;
};

/// Sampled in-plane probability curve. The evaluator re-computes the
/// probability at an arbitrary parameter; extremum refinement needs it, and it
/// is empty on scans reconstructed from files.
struct AngularScan {
  ScanPlane plane = ScanPlane::xy;
  std::vector<ScanSample> samples;
  ScanProvenance provenance;
  std::function<double(double)> evaluator;
};

/// Samples one plane at n_samples uniformly spaced parameters. Threaded
/// evaluation writes each sample by index, so the output is identical to the
/// sequential order for any n_threads.
inline AngularScan scan_plane(const FieldConfig& config, const DetectorSpec& spec,
                              DetectorFrame frame, ScanMode mode, ScanPlane plane, int n_samples,
                              int n_threads = 1) {
  if (n_samples < 8) throw std::invalid_argument("scan_plane: n_samples must be >= 8");
  config.validate();
  spec.validate();

  AngularScan scan;
  scan.plane = plane;
  scan.provenance = {detail::field_digest(config), to_string(frame),     to_string(mode),
                     to_string(plane),             spec.zeta,            spec.sensitivity,
                     n_samples};
  scan.evaluator = [config, spec, frame, mode, plane](double param) {
    return probability_at(config, spec, frame, mode, direction_on_plane(plane, param));
  };

  scan.samples.resize(n_samples);
  auto fill = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const double param = two_pi * i / n_samples;
      const Direction d = direction_on_plane(plane, param);
      scan.samples[i] = {param, d, probability_at(config, spec, frame, mode, d)};
    }
  };
  if (n_threads <= 1) {
    fill(0, n_samples);
  } else {
    std::vector<std::thread> workers;
    const int chunk = (n_samples + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(n_samples, lo + chunk);
      if (lo < hi) workers.emplace_back(fill, lo, hi);
    }
    for (auto& w : workers) w.join();
  }
  return scan;
}

struct VisibilityReport {
  double v = 0.0;  ///< (p_max - p_min) / (p_max + p_min); 0 for an identically zero scan
  double p_max = 0.0;
  double p_min = 0.0;
  double param_max = 0.0;
  double param_min = 0.0;
  Direction dir_max;
  Direction dir_min;
};

namespace detail {

/// Refine the extremum near sample i over the bracket spanned by its
/// neighbors, unwrapping across the periodic seam.
inline std::pair<double, double> refine_extremum(const AngularScan& scan, std::size_t i, bool maximize) {
  const auto& s = scan.samples;
  const std::size_t n = s.size();
  const double span = two_pi;
  double a = s[(i + n - 1) % n].param;
  double b = s[(i + 1) % n].param;
  const double x0 = s[i].param;
  if (a > x0) a -= span;
  if (b < x0) b += span;
  if (!scan.evaluator) return {x0, s[i].probability};
  if (maximize) {
    auto [x, fx] = golden_minimize([&](double t) { return -scan.evaluator(t); }, a, b);
    return {x, -fx};
  }
  return golden_minimize(scan.evaluator, a, b);
}

}  // namespace detail

/// Fringe visibility of a scan, with sub-sample refinement of both extrema
/// when the scan carries an evaluator.
inline VisibilityReport visibility(const AngularScan& scan) {
  if (scan.samples.empty()) throw std::invalid_argument("visibility: empty scan");
  std::size_t i_max = 0, i_min = 0;
  for (std::size_t i = 1; i < scan.samples.size(); ++i) {
    if (scan.samples[i].probability > scan.samples[i_max].probability) i_max = i;
    if (scan.samples[i].probability < scan.samples[i_min].probability) i_min = i;
  }
  auto [param_max, p_max] = detail::refine_extremum(scan, i_max, true);
  auto [param_min, p_min] = detail::refine_extremum(scan, i_min, false);

  VisibilityReport report;
  report.p_max = p_max;
  report.p_min = p_min;
  report.param_max = param_max;
  report.param_min = param_min;
  report.dir_max = direction_on_plane(scan.plane, param_max);
  report.dir_min = direction_on_plane(scan.plane, param_min);
  const double denom = p_max + p_min;
  report.v = denom > 0.0 ? (p_max - p_min) / denom : 0.0;
  report.v = std::clamp(report.v, 0.0, 1.0);
  return report;
}

/// Number of interference nulls along the scan: sign-definite local minima
/// whose refined value falls below tol * p_max, merged within one sample
/// spacing. Grid samples alone miss exact nulls, so candidates are refined
/// through the scan evaluator when available.
inline int count_zeros(const AngularScan& scan, double tol = 1e-9) {
  if (!(tol > 0.0)) throw std::invalid_argument("count_zeros: tol must be > 0");
  const auto& s = scan.samples;
  const std::size_t n = s.size();
  if (n < 3) return 0;
  double p_max = 0.0;
  for (const auto& sample : s) p_max = std::max(p_max, sample.probability);
  if (!(p_max > 0.0)) return 0;
  const double threshold = tol * p_max;

  std::vector<double> zeros;
  for (std::size_t i = 0; i < n; ++i) {
    const double here = s[i].probability;
    if (here < s[(i + n - 1) % n].probability && here < s[(i + 1) % n].probability) {
      auto [param, value] = detail::refine_extremum(scan, i, false);
      if (value < threshold) {
        double p = std::fmod(param, two_pi);
        if (p < 0.0) p += two_pi;
        zeros.push_back(p);
      }
    }
  }
  if (zeros.empty()) return 0;

  std::sort(zeros.begin(), zeros.end());
  const double spacing = two_pi / static_cast<double>(n);
  int count = 1;
  for (std::size_t i = 1; i < zeros.size(); ++i) {
    if (zeros[i] - zeros[i - 1] > spacing) ++count;
  }
  // The seam between the last and first zero is the same null when closer
  // than one spacing around the wrap.
  if (count > 1 && (zeros.front() + two_pi - zeros.back()) <= spacing) --count;
  return count;
}

/// Quadrature of the mode's probability over the whole sphere.
inline double total_power(const FieldConfig& config, const DetectorSpec& spec, DetectorFrame frame,
                          ScanMode mode, const SphereGrid& grid) {
  config.validate();
  spec.validate();
  return integrate_sphere(grid, [&](const Direction& d) {
    return probability_at(config, spec, frame, mode, d);
  });
}

/// Pointwise deviation statistics between two identically sampled scans.
/// Relative deviations are against the larger of the two values per sample;
/// ratios are taken where the second scan is meaningfully nonzero.
struct ScanComparison {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double max_rel = 0.0;
  double mean_rel = 0.0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  bool ratio_defined = false;
};

inline ScanComparison compare_scans(const AngularScan& a, const AngularScan& b) {
  if (a.plane != b.plane || a.samples.size() != b.samples.size())
    throw std::invalid_argument("compare_scans: sampling mismatch");
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (std::abs(a.samples[i].param - b.samples[i].param) > 1e-15)
      throw std::invalid_argument("compare_scans: sampling mismatch");
  }

  double p_max_b = 0.0;
  for (const auto& s : b.samples) p_max_b = std::max(p_max_b, s.probability);
  const double ratio_cut = 1e-12 * p_max_b;

  ScanComparison cmp;
  double sum_abs = 0.0, sum_rel = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double pa = a.samples[i].probability;
    const double pb = b.samples[i].probability;
    const double diff = std::abs(pa - pb);
    const double scale = std::max(std::abs(pa), std::abs(pb));
    const double rel = scale > 0.0 ? diff / scale : 0.0;
    cmp.max_abs = std::max(cmp.max_abs, diff);
    cmp.max_rel = std::max(cmp.max_rel, rel);
    sum_abs += diff;
    sum_rel += rel;
    if (p_max_b > 0.0 && pb > ratio_cut) {
      const double ratio = pa / pb;
      if (!cmp.ratio_defined) {
        cmp.ratio_min = cmp.ratio_max = ratio;
        cmp.ratio_defined = true;
      } else {
        cmp.ratio_min = std::min(cmp.ratio_min, ratio);
        cmp.ratio_max = std::max(cmp.ratio_max, ratio);
      }
    }
  }
  cmp.mean_abs = sum_abs / static_cast<double>(a.samples.size());
  cmp.mean_rel = sum_rel / static_cast<double>(a.samples.size());
  return cmp;
}

}  // namespace ebdetect
