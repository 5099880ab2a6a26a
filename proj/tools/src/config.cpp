#include "superatom_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "superatom/units.hpp"

namespace superatom::cli {

namespace {

using K = ParamKind;
using D = Dimension;

std::vector<ParamSpec> rate_params(const char* gamma_d = "0") {
  return {
      {"kappa", "1", K::number, D::rate, "collective emission rate into the forward mode"},
      {"gamma", "0", K::number, D::rate, "free-space decay Gamma"},
      {"gamma_d", gamma_d, K::number, D::rate, "dephasing rate W -> D"},
      {"detuning", "0", K::number, D::rate, "drive detuning from |W>"},
  };
}

std::vector<ParamSpec> pulse_params(const char* shape, const char* tau, ParamKind r_in_kind) {
  return {
      {"pulse", shape, K::text, D::none, "pulse shape: none, square or gaussian"},
      {"r_in", "1", r_in_kind, D::rate, "photon rate (peak rate for gaussian pulses)"},
      {"tau", tau, K::number, D::time, "pulse duration (window for gaussian pulses)"},
      {"t_start", "0", K::number, D::time, "pulse start"},
      {"sigma", "0", K::number, D::time, "gaussian width; 0 picks tau / 6"},
      {"phase", "0", K::number, D::none, "drive phase"},
  };
}

std::vector<ParamSpec> join(std::vector<ParamSpec> a, const std::vector<ParamSpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<CommandSpec> make_specs() {
  std::vector<CommandSpec> specs;
  specs.push_back({"check-blockade",
                   "blockade radius and volume, and whether a cloud fits inside",
                   {{"c6", "1e6", K::number, D::none, "van der Waals coefficient"},
                    {"omega_exc", "6.283185307179586", K::number, D::none, "excitation bandwidth"},
                    {"sigma_r", "3", K::number, D::none, "radial cloud width"},
                    {"sigma_z", "3", K::number, D::none, "axial cloud width"},
                    {"safety_factor", "1", K::number, D::none, "required margin max(sigma) * factor <= r_b"}}});
  specs.push_back({"eliminate",
                   "adiabatic elimination of the intermediate state and its error",
                   {{"omega_p", "1", K::number, D::rate, "probe Rabi frequency"},
                    {"omega_c", "10", K::number, D::rate, "control Rabi frequency"},
                    {"delta", "100", K::number, D::rate, "intermediate-state detuning"},
                    {"delta2", "0", K::number, D::rate, "two-photon detuning"},
                    {"gamma_e", "0", K::number, D::rate, "intermediate-state decay"},
                    {"validity_ratio", "10", K::number, D::none, "|delta| / max Rabi frequency deemed valid"},
                    {"horizon", "0", K::number, D::time, "comparison window; 0 picks one effective Rabi period"},
                    {"samples", "2001", K::integer, D::none, "trajectory samples"}}});
  const std::vector<ParamSpec> geometry{
      {"sigma_r", "50", K::number, D::none, "radial cloud width"},
      {"sigma_z", "6", K::number, D::none, "axial cloud width"},
      {"n0", "0.1", K::number, D::none, "peak density"},
      {"w0", "6.5", K::number, D::none, "probe waist"},
      {"lambda_opt", "0.78", K::number, D::none, "probe wavelength"}};
  specs.push_back({"coupling", "collective coupling of a Gaussian cloud to the probe mode",
                   join(geometry,
                        {{"gamma", "38.138934", K::number, D::rate, "single-atom free-space rate"},
                         {"include_vacuum", "false", K::boolean, D::none, "use N + 1 in the golden-rule rate"},
                         {"omega_c", "10", K::number, D::rate, "control Rabi frequency"},
                         {"delta", "100", K::number, D::rate, "intermediate-state detuning"},
                         {"photon_rate", "1", K::number, D::rate, "impinging photon rate"}})});
  specs.push_back({"emission-pattern", "disorder-averaged directed emission of a sampled cloud",
                   {{"sigma_r", "10", K::number, D::none, "radial cloud width"},
                    {"sigma_z", "6", K::number, D::none, "axial cloud width"},
                    {"n0", "0.1", K::number, D::none, "peak density"},
                    {"w0", "6.5", K::number, D::none, "probe waist"},
                    {"lambda_opt", "0.78", K::number, D::none, "probe wavelength"},
                    {"n_atoms", "2000", K::integer, D::none, "atoms per realization"},
                    {"realizations", "100", K::integer, D::none, "independent clouds"},
                    {"n_theta", "181", K::integer, D::none, "polar samples in [0, pi]"},
                    {"n_phi", "1", K::integer, D::none, "azimuthal samples"}}});
  specs.push_back({"simulate", "Lindblad evolution of the driven superatom and its output flux",
                   join(join(rate_params(), pulse_params("square", "5", K::number)),
                        {{"initial", "g", K::text, D::none, "initial state: g or w"},
                         {"t_end", "0", K::number, D::time, "end of the trace; 0 adds 10 decay times after the pulse"},
                         {"samples", "1001", K::integer, D::none, "trace samples"}})});
  specs.push_back({"phase-diagram", "visibility of Rabi oscillations over (lambda, N) for square pulses",
                   {{"kappa", "1", K::number, D::rate, "collective emission rate"},
                    {"gamma", "0", K::number, D::rate, "free-space decay Gamma"},
                    {"gamma_d", "0", K::number, D::rate, "dephasing rate"},
                    {"lambda_min", "0.01", K::number, D::none, "smallest kappa tau"},
                    {"lambda_max", "1000", K::number, D::none, "largest kappa tau"},
                    {"n_lambda", "64", K::integer, D::none, "lambda samples (log spaced)"},
                    {"n_bar_min", "0.01", K::number, D::none, "smallest mean photon number"},
                    {"n_bar_max", "1000", K::number, D::none, "largest mean photon number"},
                    {"n_n_bar", "64", K::integer, D::none, "photon-number samples (log spaced)"}}});
  specs.push_back({"correlations", "g2 or g3 of the output field via the quantum regression theorem",
                   join(join({{"order", "2", K::integer, D::none, "correlation order, 2 or 3"}},
                             join(rate_params(), pulse_params("square", "5", K::number_list))),
                        {{"s_min", "0", K::number, D::time, "first grid time"},
                         {"s_max", "0", K::number, D::time, "last grid time; 0 adds 2 decay times after the pulse"},
                         {"s_samples", "41", K::integer, D::none, "grid times per axis"},
                         {"jacobi_r", "0", K::number, D::time, "R of the Jacobi slice; 0 picks the cube centre"},
                         {"jacobi_samples", "41", K::integer, D::none, "samples per Jacobi axis"}})});
  specs.push_back({"source", "store-and-retrieve single-photon source",
                   join(rate_params(),
                        {{"leakage", "0", K::number, D::none, "probability of a second stored excitation"},
                         {"storage", "false", K::boolean, D::none, "write the excitation with a pulse"},
                         {"storage_r_in", "1", K::number, D::rate, "storage pulse rate"},
                         {"storage_tau", "0.5", K::number, D::time, "storage pulse duration"},
                         {"horizon", "0", K::number, D::time, "retrieval window; 0 picks 40 decay times"},
                         {"samples", "2001", K::integer, D::none, "trace samples"},
                         {"g2_samples", "41", K::integer, D::none, "g2 grid times"}})});
  const std::vector<ParamSpec> absorber{
      {"pulse", "gaussian", K::text, D::none, "pulse shape: square or gaussian"},
      {"n_bar", "5", K::number_list, D::none, "mean input photon numbers, one run each"},
      {"tau", "5", K::number, D::time, "pulse duration (window for gaussian pulses)"},
      {"sigma", "0", K::number, D::time, "gaussian width; 0 picks tau / 6"},
      {"tail", "0", K::number, D::time, "observation after the pulse; 0 picks 6 decay times"},
      {"samples", "801", K::integer, D::none, "trace samples"},
      {"g2_samples", "81", K::integer, D::none, "g2 grid times over pulse and tail"},
      {"detection_efficiency", "1", K::number, D::none, "ion detection efficiency"}};
  specs.push_back({"subtract", "single-photon absorber: transmitted pulse, g2 and ion statistics",
                   join(rate_params("10"), absorber)});
  specs.push_back({"cascade", "mean-field cascade of absorbers",
                   join(join(rate_params("10"), absorber),
                        {{"stages", "3", K::integer, D::none, "number of superatoms"},
                         {"compute_g2", "false", K::boolean, D::none, "g2 of the last stage output"}})});
  return specs;
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_integer(std::string_view s, long long& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    out = false;
    return true;
  }
  return false;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

const ParamSpec& find_param(const CommandSpec& spec, const std::string& key) {
  for (const auto& p : spec.params)
    if (p.name == key) return p;
  throw ConfigError(key, "unknown key for command '" + spec.name + "'");
}

bool is_global(std::string_view key) {
  return std::find(std::begin(kGlobalKeys), std::end(kGlobalKeys), key) != std::end(kGlobalKeys);
}

void set_global(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "command") return;
  if (key == "units") {
    try {
      unit_system(value);
    } catch (const std::exception&) {
      throw ConfigError("units", "expected natural or um-us, got '" + value + "'");
    }
    c.units = value;
  } else if (key == "seed") {
    long long v = 0;
    if (!parse_integer(value, v) || v < 0) throw ConfigError("seed", "expected a non-negative integer");
    c.seed = static_cast<std::uint64_t>(v);
  } else if (key == "out_dir") {
    if (value.empty()) throw ConfigError("out_dir", "must not be empty");
    c.out_dir = value;
  } else if (key == "threads") {
    long long v = 0;
    if (!parse_integer(value, v) || v < 0) throw ConfigError("threads", "expected a non-negative integer");
    c.threads = static_cast<std::size_t>(v);
  } else if (key == "preset") {
    if (!value.empty() && !preset_commands().contains(value)) {
      throw ConfigError("preset", "unknown preset '" + value + "'");
    }
    c.preset = value;
  }
}

}  // namespace

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = make_specs();
  return specs;
}

const CommandSpec& command_spec(std::string_view name) {
  for (const auto& c : command_specs())
    if (c.name == name) return c;
  throw ConfigError("command", "unknown command '" + std::string(name) + "'");
}

void check_value(const ParamSpec& spec, const std::string& value) {
  double d = 0.0;
  long long i = 0;
  bool b = false;
  switch (spec.kind) {
    case K::number:
      if (!parse_double(value, d)) throw ConfigError(spec.name, "expected a number, got '" + value + "'");
      break;
    case K::integer:
      if (!parse_integer(value, i)) throw ConfigError(spec.name, "expected an integer, got '" + value + "'");
      break;
    case K::boolean:
      if (!parse_bool(value, b)) throw ConfigError(spec.name, "expected true or false, got '" + value + "'");
      break;
    case K::number_list: {
      const auto items = split_list(value);
      if (items.empty()) throw ConfigError(spec.name, "expected a comma-separated list of numbers");
      for (const auto& item : items) {
        if (!parse_double(item, d)) {
          throw ConfigError(spec.name, "expected a comma-separated list of numbers, got '" + value + "'");
        }
      }
      break;
    }
    case K::text:
      break;
  }
}

double RunConfig::number(const std::string& key) const {
  double d = 0.0;
  if (!parse_double(text(key), d)) throw ConfigError(key, "expected a number");
  return d;
}

long long RunConfig::integer(const std::string& key) const {
  long long v = 0;
  if (!parse_integer(text(key), v)) throw ConfigError(key, "expected an integer");
  return v;
}

bool RunConfig::boolean(const std::string& key) const {
  bool b = false;
  if (!parse_bool(text(key), b)) throw ConfigError(key, "expected true or false");
  return b;
}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ConfigError(key, "missing");
  return it->second;
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) {
    double d = 0.0;
    if (!parse_double(item, d)) throw ConfigError(key, "expected a list of numbers");
    out.push_back(d);
  }
  return out;
}

const std::map<std::string, std::string>& preset_commands() {
  static const std::map<std::string, std::string> m{
      {"fig2", "phase-diagram"}, {"fig3", "correlations"}, {"fig4", "correlations"}, {"fig6", "subtract"}};
  return m;
}

std::map<std::string, std::string> preset_values(const std::string& preset, const std::string& units) {
  // Written in um-us. kappa is not stated for the measured figures; 0.25 / us is assumed and the
  // losses follow from beta = 0.86 and beta_coh = 0.23.
  const double kappa = 0.25;
  const double gamma = kappa * (1.0 / 0.86 - 1.0);
  const double gamma_d_coh = kappa / 0.23 - kappa - gamma;
  std::map<std::string, std::string> v;
  if (preset == "fig2") {
    v = {{"kappa", fmt_double(kappa)}, {"gamma", "0"}, {"gamma_d", "0"},
         {"lambda_min", "0.01"}, {"lambda_max", "1000"}, {"n_lambda", "64"},
         {"n_bar_min", "0.01"}, {"n_bar_max", "1000"}, {"n_n_bar", "64"}};
  } else if (preset == "fig3" || preset == "fig4") {
    v = {{"kappa", fmt_double(kappa)}, {"gamma", fmt_double(gamma)}, {"gamma_d", fmt_double(gamma_d_coh)},
         {"pulse", "square"}, {"tau", "2"}, {"s_min", "0"}, {"s_max", "3"}};
    if (preset == "fig3") {
      v["order"] = "2";
      v["r_in"] = "12.4,2.6";
      v["s_samples"] = "61";
    } else {
      v["order"] = "3";
      v["r_in"] = "3.4,6.7,15.2";
      v["s_samples"] = "31";
    }
  } else if (preset == "fig6") {
    v = {{"kappa", fmt_double(kappa)}, {"gamma", fmt_double(gamma)}, {"gamma_d", fmt_double(10.0 * kappa)},
         {"pulse", "gaussian"}, {"tau", "20"}, {"sigma", fmt_double(20.0 / 6.0)},
         {"n_bar", "5.65,15.76"}, {"g2_samples", "81"}};
  } else {
    throw ConfigError("preset", "unknown preset '" + preset + "'");
  }
  if (units == "natural") {
    const auto& spec = command_spec(preset_commands().at(preset));
    for (auto& [key, value] : v) {
      const auto& p = find_param(spec, key);
      if (p.dimension == D::none) continue;
      const double scale = p.dimension == D::rate ? 1.0 / kappa : kappa;
      std::string out;
      for (const auto& item : split_list(value)) {
        double d = 0.0;
        parse_double(item, d);
        if (!out.empty()) out += ',';
        out += fmt_double(d * scale);
      }
      value = out;
    }
  }
  return v;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::istringstream in(text);
  CLI::ConfigINI ini;
  std::vector<CLI::ConfigItem> items;
  try {
    items = ini.from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError("config", e.what());
  }
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--" || !item.parents.empty()) {
      throw ConfigError(item.name == "++" || item.name == "--" ? item.parents.back() : item.fullname(),
                        "sections are not supported; use flat key = value lines");
    }
    std::string value;
    for (const auto& part : item.inputs) {
      if (!value.empty()) value += ',';
      value += part;
    }
    auto& slot = out[item.name];
    slot = slot.empty() ? value : slot + "," + value;
  }
  return out;
}

RunConfig build_config(std::string command, const std::map<std::string, std::string>& file_values,
                       const std::map<std::string, std::string>& flag_values) {
  if (const auto it = file_values.find("command"); it != file_values.end()) {
    if (command.empty()) command = it->second;
    if (it->second != command) {
      throw ConfigError("command", "config file is for '" + it->second + "', not '" + command + "'");
    }
  }
  if (command.empty()) throw ConfigError("command", "missing");
  const CommandSpec& spec = command_spec(command);

  RunConfig c;
  c.command = command;
  for (const auto& layer : {&file_values, &flag_values})
    for (const auto& [key, value] : *layer)
      if (is_global(key)) set_global(c, key, value);

  for (const auto& p : spec.params) c.values[p.name] = p.default_value;
  if (!c.preset.empty()) {
    if (preset_commands().at(c.preset) != command) {
      throw ConfigError("preset", "preset '" + c.preset + "' belongs to '" + preset_commands().at(c.preset) + "'");
    }
    for (const auto& [key, value] : preset_values(c.preset, c.units)) c.values[key] = value;
  }
  for (const auto& layer : {&file_values, &flag_values}) {
    for (const auto& [key, value] : *layer) {
      if (is_global(key)) continue;
      const ParamSpec& p = find_param(spec, key);
      check_value(p, value);
      c.values[key] = value;
    }
  }
  // Rates are checked here so a bad value fails before any output is written.
  for (const char* key : {"kappa", "gamma", "gamma_d"}) {
    const auto it = c.values.find(key);
    if (it == c.values.end()) continue;
    const double v = c.number(key);
    if (!std::isfinite(v) || v < 0.0) throw ConfigError(key, "must be finite and >= 0, got " + it->second);
  }
  return c;
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  out += fmt::format("command = {}\n", config.command);
  out += fmt::format("units = {}\n", config.units);
  out += fmt::format("seed = {}\n", config.seed);
  out += fmt::format("out_dir = \"{}\"\n", config.out_dir);
  out += fmt::format("threads = {}\n", config.threads);
  if (!config.preset.empty()) out += fmt::format("preset = {}\n", config.preset);
  for (const auto& p : command_spec(config.command).params) {
    const std::string& v = config.values.at(p.name);
    if (p.kind == K::number_list) {
      out += fmt::format("{} = [{}]\n", p.name, v);
    } else {
      out += fmt::format("{} = {}\n", p.name, v);
    }
  }
  return out;
}

}  // namespace superatom::cli
