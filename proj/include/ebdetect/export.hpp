#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include "ebdetect/config.hpp"
#include "ebdetect/scan.hpp"

namespace ebdetect::io {

/// 12 significant digits, scientific notation, '.' decimal separator.
/// All exported floats go through here so files are byte-stable.
inline std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

/// Scale that maps the zeta = 0 reference maximum to 1 for relative
/// normalization. Absorbed modes share the absorbed-coherent zeta = 0
/// reference so that related curves stay mutually comparable; raw returns 1.
inline double normalization_scale(const RunConfig& config, Normalization norm) {
  if (norm == Normalization::raw) return 1.0;
  DetectorSpec reference = config.detector;
  reference.zeta = Complex{0.0, 0.0};
  ScanMode mode = config.scan.mode == ScanMode::absorbed_particle ? ScanMode::absorbed_coherent
                                                                  : config.scan.mode;
  const AngularScan ref = scan_plane(config.field_config(), reference, config.frame, mode,
                                     config.scan.plane, config.scan.samples);
  double p_max = 0.0;
  for (const auto& s : ref.samples) p_max = std::max(p_max, s.probability);
  return p_max > 0.0 ? 1.0 / p_max : 1.0;
}

/// CSV export: header row then one row per sample, ordered by scan parameter.
inline std::string scan_to_csv(const AngularScan& scan, double scale = 1.0) {
  std::string out = "param,theta,phi,probability,mode,zeta_re,zeta_im\n";
  for (const auto& s : scan.samples) {
    out += format_sci(s.param);
    out += ',';
    out += format_sci(s.dir.theta);
    out += ',';
    out += format_sci(s.dir.phi);
    out += ',';
    out += format_sci(s.probability * scale);
    out += ',';
    out += scan.provenance.mode;
    out += ',';
    out += format_sci(scan.provenance.zeta.real());
    out += ',';
    out += format_sci(scan.provenance.zeta.imag());
    out += '\n';
  }
  return out;
}

/// JSON export mirroring the CSV records plus a provenance block. Written by
/// hand so numbers carry the same fixed formatting as the CSV.
inline std::string scan_to_json(const AngularScan& scan, double scale = 1.0,
                                const std::string& normalization = "raw") {
  const auto& p = scan.provenance;
  std::string out = "{\n  \"provenance\": {\n";
  out += "    \"config_hash\": \"" + p.config_digest + "\",\n";
  out += "    \"plane\": \"" + p.plane + "\",\n";
  out += "    \"mode\": \"" + p.mode + "\",\n";
  out += "    \"frame\": \"" + p.frame + "\",\n";
  out += "    \"zeta\": [" + format_sci(p.zeta.real()) + ", " + format_sci(p.zeta.imag()) + "],\n";
  out += "    \"sensitivity\": " + format_sci(p.sensitivity) + ",\n";
  out += "    \"samples\": " + std::to_string(p.n_samples) + ",\n";
  out += "    \"normalization\": \"" + normalization + "\",\n";
  out += "    \"scale\": " + format_sci(scale) + "\n";
  out += "  },\n  \"records\": [\n";
  for (std::size_t i = 0; i < scan.samples.size(); ++i) {
    const auto& s = scan.samples[i];
    out += "    {\"param\": " + format_sci(s.param) + ", \"theta\": " + format_sci(s.dir.theta) +
           ", \"phi\": " + format_sci(s.dir.phi) +
           ", \"probability\": " + format_sci(s.probability * scale) + ", \"mode\": \"" + p.mode +
           "\", \"zeta_re\": " + format_sci(p.zeta.real()) +
           ", \"zeta_im\": " + format_sci(p.zeta.imag()) + "}";
    out += i + 1 < scan.samples.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace ebdetect::io
