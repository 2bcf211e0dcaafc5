// Command-line front end: angular scans, visibility reports, the Fock-space
// consistency check, and sphere-power quadratures, driven by JSON configs or
// built-in presets. All machine output is JSON lines with fixed float
// formatting so runs are reproducible byte for byte.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ebdetect/ebdetect.hpp"

namespace {

using namespace ebdetect;
using io::format_sci;

struct CommonOptions {
  std::string config_path;
  std::string preset_name;
  std::string zeta;
  std::string mode;
  std::string plane;
  int samples = 0;
  std::string out_path;
  std::string format;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "path to a JSON run configuration");
  cmd->add_option("--preset", opt.preset_name, "built-in configuration name (see `presets`)");
  cmd->add_option("--zeta", opt.zeta, "mixing parameter, RE or RE,IM");
  cmd->add_option("--mode", opt.mode, "scattering | absorbed-coherent | absorbed-particle");
  cmd->add_option("--plane", opt.plane, "xy | xz");
  cmd->add_option("--samples", opt.samples, "samples per scan (>= 8)");
  cmd->add_option("--out", opt.out_path, "output file path");
  cmd->add_option("--format", opt.format, "csv | json");
}

Complex parse_zeta(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string re_text = text.substr(0, comma);
    const std::string im_text = text.substr(comma + 1);
    const double re = std::stod(re_text, &used);
    if (used != re_text.size()) throw std::invalid_argument(text);
    const double im = std::stod(im_text, &used);
    if (used != im_text.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw io::ConfigError("config: --zeta: expected RE or RE,IM, got '" + text + "'");
  }
}

io::RunConfig load_run_config(const CommonOptions& opt) {
  if (!opt.config_path.empty() && !opt.preset_name.empty())
    throw io::ConfigError("config: pass either --config or --preset, not both");

  io::RunConfig config;
  if (!opt.config_path.empty()) {
    std::ifstream f(opt.config_path, std::ios::binary);
    if (!f) throw io::ConfigError("config: cannot read file: " + opt.config_path);
    std::ostringstream text;
    text << f.rdbuf();
    config = io::parse_config(text.str());
  } else if (!opt.preset_name.empty()) {
    config = io::preset(opt.preset_name);
  } else {
    throw io::ConfigError("config: either --config or --preset is required");
  }

  if (!opt.zeta.empty()) config.detector.zeta = parse_zeta(opt.zeta);
  if (!opt.mode.empty()) {
    if (opt.mode == "scattering") config.scan.mode = ScanMode::scattering;
    else if (opt.mode == "absorbed-coherent") config.scan.mode = ScanMode::absorbed_coherent;
    else if (opt.mode == "absorbed-particle") config.scan.mode = ScanMode::absorbed_particle;
    else throw io::ConfigError("config: --mode: unknown value '" + opt.mode + "'");
  }
  if (!opt.plane.empty()) {
    if (opt.plane == "xy") config.scan.plane = ScanPlane::xy;
    else if (opt.plane == "xz") config.scan.plane = ScanPlane::xz;
    else throw io::ConfigError("config: --plane: unknown value '" + opt.plane + "'");
  }
  if (opt.samples != 0) {
    if (opt.samples < 8) throw io::ConfigError("config: --samples: must be >= 8");
    config.scan.samples = opt.samples;
  }
  if (!opt.out_path.empty()) config.output.path = opt.out_path;
  if (!opt.format.empty()) {
    if (opt.format == "csv") config.output.format = io::ExportFormat::csv;
    else if (opt.format == "json") config.output.format = io::ExportFormat::json;
    else throw io::ConfigError("config: --format: unknown value '" + opt.format + "'");
  }
  return config;
}

AngularScan run_scan(const io::RunConfig& config) {
  return scan_plane(config.field_config(), config.detector, config.frame, config.scan.mode,
                    config.scan.plane, config.scan.samples);
}

int cmd_scan(const CommonOptions& opt) {
  const io::RunConfig config = load_run_config(opt);
  const AngularScan scan = run_scan(config);
  const double scale = io::normalization_scale(config, config.output.normalization);

  const std::string content =
      config.output.format == io::ExportFormat::csv
          ? io::scan_to_csv(scan, scale)
          : io::scan_to_json(scan, scale, io::to_string(config.output.normalization));
  io::write_file(config.output.path, content);

  const VisibilityReport report = visibility(scan);
  const int zeros = count_zeros(scan);
  std::cout << "{\"visibility\": " << format_sci(report.v) << ", \"zeros\": " << zeros
            << ", \"p_max\": " << format_sci(report.p_max * scale) << ", \"out\": \""
            << config.output.path << "\", \"normalization\": \""
            << io::to_string(config.output.normalization) << "\", \"config_hash\": \""
            << io::config_hash(config) << "\"}\n";
  return 0;
}

int cmd_visibility(const CommonOptions& opt) {
  const io::RunConfig config = load_run_config(opt);
  const AngularScan scan = run_scan(config);
  const VisibilityReport r = visibility(scan);
  std::cout << "{\"visibility\": " << format_sci(r.v) << ", \"p_max\": " << format_sci(r.p_max)
            << ", \"p_min\": " << format_sci(r.p_min) << ", \"param_max\": "
            << format_sci(r.param_max) << ", \"param_min\": " << format_sci(r.param_min)
            << ", \"zeros\": " << count_zeros(scan) << "}\n";
  return 0;
}

int cmd_quantum_check(const CommonOptions& opt) {
  const io::RunConfig config = load_run_config(opt);
  const FieldConfig field = config.field_config();
  field.validate();
  const int n_modes = static_cast<int>(field.emitters.size());
  if (n_modes > 4)
    throw io::ConfigError("config: emitters: quantum-check supports at most 4 emitters");

  // Single photon shared across the source modes; classical probabilities are
  // compared with the sensitivity squared divided out.
  const fock::ModeSpace space{n_modes, 1};
  const fock::QuantumState psi = fock::symmetric_single_photon(space);
  const double s2 = config.detector.sensitivity * config.detector.sensitivity;
  const double mode_factor = 1.0 / static_cast<double>(n_modes);

  const SphereGrid grid = build_sphere_grid(16, 32);
  double max_dev_coefficients = 0.0;
  double max_dev_classical = 0.0;
  for (const auto& node : grid.nodes) {
    const auto coeffs = fock::detection_coefficients(field, config.detector, config.frame, node.dir);
    const double quantum =
        fock::expectation_normal_ordered(psi, fock::build_detection_operator(space, coeffs));
    Complex coeff_sum{};
    for (const Complex& c : coeffs) coeff_sum += c;
    const double classical =
        detection_probability(total_farfield(field, node.dir), config.detector, config.frame, node.dir) / s2;
    max_dev_coefficients =
        std::max(max_dev_coefficients, std::abs(quantum - mode_factor * std::norm(coeff_sum)));
    max_dev_classical = std::max(max_dev_classical, std::abs(quantum - mode_factor * classical));
  }

  constexpr double tolerance = 1e-10;
  const bool pass = max_dev_coefficients < tolerance && max_dev_classical < tolerance;
  std::cout << "{\"max_dev_vs_coefficients\": " << format_sci(max_dev_coefficients)
            << ", \"max_dev_vs_classical\": " << format_sci(max_dev_classical)
            << ", \"tolerance\": " << format_sci(tolerance) << ", \"grid\": \"16x32\", \"pass\": "
            << (pass ? "true" : "false") << "}\n";
  return pass ? 0 : 1;
}

int cmd_power(const CommonOptions& opt) {
  const io::RunConfig config = load_run_config(opt);
  const FieldConfig field = config.field_config();
  const double coarse = total_power(field, config.detector, config.frame, config.scan.mode,
                                    build_sphere_grid(64, 128));
  const double fine = total_power(field, config.detector, config.frame, config.scan.mode,
                                  build_sphere_grid(128, 256));
  std::cout << "{\"power_64x128\": " << format_sci(coarse) << ", \"power_128x256\": "
            << format_sci(fine) << ", \"abs_diff\": " << format_sci(std::abs(fine - coarse))
            << ", \"mode\": \"" << to_string(config.scan.mode) << "\"}\n";
  return 0;
}

int cmd_presets() {
  const auto catalog = io::preset_catalog();
  std::cout << "[";
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    std::cout << "{\"name\": \"" << catalog[i].first << "\", \"description\": \""
              << catalog[i].second << "\"}" << (i + 1 < catalog.size() ? ", " : "");
  }
  std::cout << "]\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dipole-array far fields and generalized E/B photodetection"};
  app.require_subcommand(1);

  CommonOptions scan_opt, vis_opt, quantum_opt, power_opt;
  CLI::App* scan_cmd = app.add_subcommand("scan", "sample a plane and export CSV/JSON records");
  add_common_options(scan_cmd, scan_opt);
  CLI::App* vis_cmd = app.add_subcommand("visibility", "fringe visibility report for a scan");
  add_common_options(vis_cmd, vis_opt);
  CLI::App* quantum_cmd = app.add_subcommand(
      "quantum-check", "compare classical probabilities against the Fock-space expectation");
  add_common_options(quantum_cmd, quantum_opt);
  CLI::App* power_cmd = app.add_subcommand("power", "total power over the sphere at two grids");
  add_common_options(power_cmd, power_opt);
  CLI::App* presets_cmd = app.add_subcommand("presets", "list built-in configurations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan_cmd->parsed()) return cmd_scan(scan_opt);
    if (vis_cmd->parsed()) return cmd_visibility(vis_opt);
    if (quantum_cmd->parsed()) return cmd_quantum_check(quantum_opt);
    if (power_cmd->parsed()) return cmd_power(power_opt);
    if (presets_cmd->parsed()) return cmd_presets();
  } catch (const std::exception& e) {
    std::string message = e.what();
    for (char& c : message) {
      if (c == '"') c = '\'';
    }
    std::cerr << "{\"error\": \"" << message << "\"}\n";
    return 1;
  }
  return 0;
}
