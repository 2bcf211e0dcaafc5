#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ebdetect/scan.hpp"

namespace ebdetect::io {

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExportFormat { csv, json };
enum class Normalization { relative, raw };

inline const char* to_string(ExportFormat f) { return f == ExportFormat::csv ? "csv" : "json"; }
inline const char* to_string(Normalization n) { return n == Normalization::relative ? "relative" : "raw"; }

struct ScanSettings {
  ScanPlane plane = ScanPlane::xy;
  int samples = 720;
  ScanMode mode = ScanMode::scattering;

  friend bool operator==(const ScanSettings&, const ScanSettings&) = default;
};

struct OutputSettings {
  ExportFormat format = ExportFormat::csv;
  std::string path = "scan.csv";
  Normalization normalization = Normalization::relative;

  friend bool operator==(const OutputSettings&, const OutputSettings&) = default;
};

/// Everything one run needs: geometry, detector, scan selection, output.
struct RunConfig {
  double wavelength = 1.0;
  std::vector<Emitter> emitters;
  DetectorSpec detector;
  DetectorFrame frame = DetectorFrame::local;
  ScanSettings scan;
  OutputSettings output;

  FieldConfig field_config() const { return {wavelength, emitters}; }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(path.empty() ? item.key() : path + "." + item.key(), "unknown field");
  }
}

inline double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "value must be finite");
  return v;
}

inline int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

inline std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

/// Complex values come as [re, im] or a bare real number.
inline Complex get_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {get_number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im] or a number");
  return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
}

inline Vec3 get_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected an array of 3 numbers");
  return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]"),
          get_number(j[2], path + "[2]")};
}

inline ComplexVec3 get_cvec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected an array of 3 complex [re, im] pairs");
  return {get_complex(j[0], path + "[0]"), get_complex(j[1], path + "[1]"),
          get_complex(j[2], path + "[2]")};
}

template <typename Enum>
Enum get_enum(const json& j, const std::string& path,
              std::initializer_list<std::pair<const char*, Enum>> values) {
  const std::string s = get_string(j, path);
  std::string known;
  for (const auto& [name, value] : values) {
    if (s == name) return value;
    if (!known.empty()) known += ", ";
    known += name;
  }
  fail(path, "must be one of: " + known);
}

inline json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json cvec3_json(const ComplexVec3& v) {
  return json::array({complex_json(v.x), complex_json(v.y), complex_json(v.z)});
}

}  // namespace detail

/// Parse and validate a JSON run configuration. Unknown fields and invalid
/// values are rejected with the offending field path in the message.
inline RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    // parse_error for malformed text, out_of_range for overflowing literals
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) detail::fail("(root)", "expected a JSON object");
  detail::check_keys(root, "", {"wavelength", "emitters", "detector", "scan", "output"});

  RunConfig c;
  if (root.contains("wavelength")) {
    c.wavelength = detail::get_number(root["wavelength"], "wavelength");
    if (!(c.wavelength > 0.0)) detail::fail("wavelength", "must be > 0");
  }

  if (!root.contains("emitters")) detail::fail("emitters", "required field is missing");
  const json& emitters = root["emitters"];
  if (!emitters.is_array() || emitters.empty()) detail::fail("emitters", "must be a non-empty array");
  for (std::size_t i = 0; i < emitters.size(); ++i) {
    const std::string path = "emitters[" + std::to_string(i) + "]";
    const json& e = emitters[i];
    if (!e.is_object()) detail::fail(path, "expected an object");
    detail::check_keys(e, path, {"position", "moment", "phase"});
    if (!e.contains("position")) detail::fail(path + ".position", "required field is missing");
    Emitter emitter;
    emitter.position = detail::get_vec3(e["position"], path + ".position");
    emitter.moment = e.contains("moment") ? detail::get_cvec3(e["moment"], path + ".moment")
                                          : ComplexVec3{0.0, 0.0, 1.0};
    if (!(norm_sq(emitter.moment) > 0.0)) detail::fail(path + ".moment", "must be nonzero");
    if (e.contains("phase")) emitter.phase = detail::get_number(e["phase"], path + ".phase");
    c.emitters.push_back(emitter);
  }

  if (root.contains("detector")) {
    const json& d = root["detector"];
    if (!d.is_object()) detail::fail("detector", "expected an object");
    detail::check_keys(d, "detector", {"zeta", "frame", "u_e", "u_b", "sensitivity"});
    if (d.contains("zeta")) c.detector.zeta = detail::get_complex(d["zeta"], "detector.zeta");
    if (d.contains("frame"))
      c.frame = detail::get_enum<DetectorFrame>(d["frame"], "detector.frame",
                                                {{"local", DetectorFrame::local}, {"lab", DetectorFrame::lab}});
    if (d.contains("u_e")) c.detector.u_e = detail::get_cvec3(d["u_e"], "detector.u_e");
    if (d.contains("u_b")) c.detector.u_b = detail::get_cvec3(d["u_b"], "detector.u_b");
    if (d.contains("sensitivity")) {
      c.detector.sensitivity = detail::get_number(d["sensitivity"], "detector.sensitivity");
      if (!(c.detector.sensitivity > 0.0)) detail::fail("detector.sensitivity", "must be > 0");
    }
    if (std::abs(norm_sq(c.detector.u_e) - 1.0) > 1e-12) detail::fail("detector.u_e", "must be a unit vector");
    if (std::abs(norm_sq(c.detector.u_b) - 1.0) > 1e-12) detail::fail("detector.u_b", "must be a unit vector");
  }

  if (root.contains("scan")) {
    const json& s = root["scan"];
    if (!s.is_object()) detail::fail("scan", "expected an object");
    detail::check_keys(s, "scan", {"plane", "samples", "mode"});
    if (s.contains("plane"))
      c.scan.plane = detail::get_enum<ScanPlane>(s["plane"], "scan.plane",
                                                 {{"xy", ScanPlane::xy}, {"xz", ScanPlane::xz}});
    if (s.contains("samples")) {
      c.scan.samples = detail::get_int(s["samples"], "scan.samples");
      if (c.scan.samples < 8) detail::fail("scan.samples", "must be >= 8");
    }
    if (s.contains("mode"))
      c.scan.mode = detail::get_enum<ScanMode>(s["mode"], "scan.mode",
                                               {{"scattering", ScanMode::scattering},
                                                {"absorbed-coherent", ScanMode::absorbed_coherent},
                                                {"absorbed-particle", ScanMode::absorbed_particle}});
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    if (!o.is_object()) detail::fail("output", "expected an object");
    detail::check_keys(o, "output", {"format", "path", "normalization"});
    if (o.contains("format"))
      c.output.format = detail::get_enum<ExportFormat>(o["format"], "output.format",
                                                       {{"csv", ExportFormat::csv}, {"json", ExportFormat::json}});
    if (o.contains("path")) c.output.path = detail::get_string(o["path"], "output.path");
    if (o.contains("normalization"))
      c.output.normalization = detail::get_enum<Normalization>(
          o["normalization"], "output.normalization",
          {{"relative", Normalization::relative}, {"raw", Normalization::raw}});
  }

  return c;
}

/// Canonical serialization: every field explicit, fixed key order, compact
/// output. parse(serialize(c)) == c, and serializing again is byte-identical.
inline std::string serialize_config(const RunConfig& c) {
  json root;
  root["wavelength"] = c.wavelength;
  root["emitters"] = json::array();
  for (const auto& e : c.emitters) {
    json je;
    je["position"] = json::array({e.position.x, e.position.y, e.position.z});
    je["moment"] = detail::cvec3_json(e.moment);
    je["phase"] = e.phase;
    root["emitters"].push_back(je);
  }
  json jd;
  jd["zeta"] = detail::complex_json(c.detector.zeta);
  jd["frame"] = ebdetect::to_string(c.frame);
  jd["u_e"] = detail::cvec3_json(c.detector.u_e);
  jd["u_b"] = detail::cvec3_json(c.detector.u_b);
  jd["sensitivity"] = c.detector.sensitivity;
  root["detector"] = jd;
  json js;
  js["plane"] = ebdetect::to_string(c.scan.plane);
  js["samples"] = c.scan.samples;
  js["mode"] = ebdetect::to_string(c.scan.mode);
  root["scan"] = js;
  json jo;
  jo["format"] = to_string(c.output.format);
  jo["path"] = c.output.path;
  jo["normalization"] = to_string(c.output.normalization);
  root["output"] = jo;
  return root.dump();
}

/// FNV-1a digest of the canonical serialization, as 16 hex characters.
inline std::string config_hash(const RunConfig& c) {
  char out[17];
  std::snprintf(out, sizeof out, "%016llx",
                static_cast<unsigned long long>(ebdetect::detail::fnv1a(serialize_config(c))));
  return out;
}

/// Built-in configurations: the d = 3 lambda symmetric pair scanned in the xz
/// (fig2a) or xy (fig2b) plane.
inline RunConfig preset(std::string_view name) {
  RunConfig c;
  c.wavelength = 1.0;
  c.emitters = FieldConfig::symmetric_pair(3.0).emitters;
  if (name == "fig2a") {
    c.scan.plane = ScanPlane::xz;
    c.output.path = "fig2a.csv";
  } else if (name == "fig2b") {
    c.scan.plane = ScanPlane::xy;
    c.output.path = "fig2b.csv";
  } else {
    throw ConfigError("config: unknown preset: " + std::string(name));
  }
  return c;
}

inline std::vector<std::pair<std::string, std::string>> preset_catalog() {
  return {
      {"fig2a", "z-oriented dipole pair, d = 3 wavelengths, polar scan in the xz plane"},
      {"fig2b", "z-oriented dipole pair, d = 3 wavelengths, azimuthal scan in the xy plane"},
  };
}

}  // namespace ebdetect::io
