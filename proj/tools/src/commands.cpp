#include "superatom_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "superatom/applications.hpp"
#include "superatom/collective.hpp"
#include "superatom/correlations.hpp"
#include "superatom/errors.hpp"
#include "superatom/master_equation.hpp"
#include "superatom/phase_diagram.hpp"
#include "superatom/rydberg_params.hpp"
#include "superatom/three_level.hpp"
#include "superatom_cli/output.hpp"

#ifndef SUPERATOM_VERSION
#define SUPERATOM_VERSION "unknown"
#endif

namespace superatom::cli {

namespace {

using nlohmann::json;

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n < 2) throw ConfigError("samples", "need at least 2");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = b;
  return g;
}

std::size_t count(const RunConfig& c, const std::string& key, long long min = 1) {
  const long long v = c.integer(key);
  if (v < min) throw ConfigError(key, fmt::format("must be >= {}", min));
  return static_cast<std::size_t>(v);
}

PhysicalRates rates_from(const RunConfig& c) {
  PhysicalRates r{c.number("kappa"), c.number("gamma"), c.number("gamma_d")};
  r.validate();
  return r;
}

double total_rate(const PhysicalRates& r) { return r.kappa + r.gamma + r.gamma_d; }

double sigma_from(const RunConfig& c) {
  const double s = c.number("sigma");
  return s > 0.0 ? s : c.number("tau") / 6.0;
}

DrivePulse pulse_from(const RunConfig& c, double r_in) {
  const auto shape = parse_pulse_shape(c.text("pulse"));
  const double phase = c.values.contains("phase") ? c.number("phase") : 0.0;
  const double t0 = c.values.contains("t_start") ? c.number("t_start") : 0.0;
  switch (shape) {
    case PulseShape::none:
      return DrivePulse::none();
    case PulseShape::square:
      return DrivePulse::square(r_in, c.number("tau"), t0, phase);
    case PulseShape::gaussian:
      return DrivePulse::gaussian(r_in, c.number("tau"), sigma_from(c), t0, phase);
    case PulseShape::sampled:
      break;
  }
  throw ConfigError("pulse", "sampled pulses cannot be given on the command line");
}

/// Pulse carrying exactly n_bar photons on average.
DrivePulse pulse_with_photons(const RunConfig& c, double n_bar) {
  if (!(n_bar > 0.0)) throw ConfigError("n_bar", "must be > 0");
  const double unit = pulse_from(c, 1.0).mean_photon_number();
  return pulse_from(c, n_bar / unit);
}

json rates_json(const PhysicalRates& r) {
  const auto b = beta_factors(r);
  return {{"kappa", r.kappa}, {"gamma", r.gamma}, {"gamma_d", r.gamma_d}, {"beta", b.beta}, {"beta_coh", b.beta_coh}};
}

void write_g2(OutputDir& out, const std::string& name, const CorrelationGrid& g) {
  CsvWriter csv(out.open(name), {"s1", "s2", "g2", "G2"});
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      csv.add(g.times[i]).add(g.times[j]).add(g.values[i * n + j]).add(g.numerators[i * n + j]);
      csv.end_row();
    }
}

void write_flux(OutputDir& out, const std::string& name, const FluxTrace& f) {
  CsvWriter csv(out.open(name), {"t", "flux_in", "flux_out", "relative_modulation", "rho_ww", "rho_dd"});
  for (std::size_t i = 0; i < f.times.size(); ++i) {
    csv.add(f.times[i]).add(f.flux_in[i]).add(f.flux_out[i]).add(f.relative_modulation[i]).add(f.rho_ww[i]).add(
        f.rho_dd[i]);
    csv.end_row();
  }
}

json cmd_check_blockade(const RunConfig& c, OutputDir& out) {
  const auto b = blockade_radius({c.number("c6"), c.number("omega_exc"), 1.0});
  const EnsembleGeometry cloud{c.number("sigma_r"), c.number("sigma_z"), 0.0, 1.0, 1.0};
  if (!(cloud.sigma_r > 0.0)) throw DomainError("sigma_r", "must be positive");
  if (!(cloud.sigma_z > 0.0)) throw DomainError("sigma_z", "must be positive");
  const json result{{"r_b", b.r_b},
                    {"v_b", b.v_b},
                    {"fully_blockaded", is_fully_blockaded(cloud, b.r_b, c.number("safety_factor"))}};
  out.write_json("result.json", result);
  return result;
}

json cmd_eliminate(const RunConfig& c, OutputDir& out) {
  const ThreeLevelParams p{c.number("omega_p"), c.number("omega_c"), c.number("delta"), c.number("delta2"),
                           c.number("gamma_e")};
  const auto eff = adiabatic_eliminate(p, c.number("validity_ratio"));
  const double period = effective_rabi_period(p);
  const double horizon = c.number("horizon") > 0.0 ? c.number("horizon") : period;
  const std::size_t n = count(c, "samples", 2);
  const auto grid = uniform_grid(0.0, horizon, n);
  const auto full = evolve_three_level(p, {}, grid);
  const auto reduced = evolve_effective(p, {{1.0, 0.0}, {0.0, 0.0}}, grid);
  CsvWriter csv(out.open("trajectory.csv"), {"t", "p_g", "p_e", "p_r", "p_g_eff", "p_r_eff"});
  for (std::size_t i = 0; i < n; ++i) {
    csv.add(grid[i]).add(std::norm(full[i].c_g)).add(std::norm(full[i].c_e)).add(std::norm(full[i].c_r));
    csv.add(std::norm(reduced[i].c_g)).add(std::norm(reduced[i].c_r));
    csv.end_row();
  }
  const double err = reduction_error(p, horizon, n);
  const json result{{"omega_eff_re", eff.omega_eff.real()}, {"omega_eff_im", eff.omega_eff.imag()},
                    {"delta_eff", eff.delta_eff},           {"gamma_eff", eff.gamma_eff},
                    {"valid", eff.valid},                   {"effective_rabi_period", period},
                    {"horizon", horizon},                   {"reduction_error", err}};
  out.write_json("result.json", result);
  return result;
}

EnsembleGeometry geometry_from(const RunConfig& c) {
  EnsembleGeometry g{c.number("sigma_r"), c.number("sigma_z"), c.number("n0"), c.number("w0"),
                     c.number("lambda_opt")};
  g.validate();
  return g;
}

json cmd_coupling(const RunConfig& c, OutputDir& out) {
  const auto geom = geometry_from(c);
  const auto rates = collective_rates(geom, c.number("gamma"), c.boolean("include_vacuum"));
  const double g_eff = effective_collective_coupling(rates, c.number("omega_c"), c.number("delta"));
  const auto flags = regime_flags(geom);
  const json result{{"n_bar", rates.n_bar},
                    {"kappa", rates.kappa},
                    {"g_col", rates.g_col},
                    {"mode_area", rates.mode_area},
                    {"gamma", rates.gamma},
                    {"forward_cone", forward_cone(geom)},
                    {"g_col_eff", g_eff},
                    {"collective_rabi", effective_collective_rabi(g_eff, c.number("photon_rate"))},
                    {"wavelength_below_waist", flags.wavelength_below_waist},
                    {"wavelength_below_sigma_z", flags.wavelength_below_sigma_z},
                    {"waist_below_sigma_r", flags.waist_below_sigma_r}};
  out.write_json("result.json", result);
  return result;
}

json cmd_emission_pattern(const RunConfig& c, OutputDir& out) {
  const auto geom = geometry_from(c);
  const auto dirs = angular_grid(count(c, "n_theta", 2), count(c, "n_phi"));
  const std::size_t atoms = count(c, "n_atoms");
  const auto pattern = averaged_emission_pattern(geom, atoms, dirs, count(c, "realizations"), c.seed, c.threads);
  CsvWriter csv(out.open("pattern.csv"), {"theta", "phi", "mean_intensity", "std_error"});
  double forward = 0.0;
  double backward = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    csv.add(dirs[i].theta).add(dirs[i].phi).add(pattern.mean_intensity[i]).add(pattern.std_error[i]);
    csv.end_row();
    if (dirs[i].theta == 0.0) forward = pattern.mean_intensity[i];
    if (dirs[i].theta == std::numbers::pi) backward = pattern.mean_intensity[i];
  }
  const json result{{"n_atoms", atoms},
                    {"realizations", pattern.realizations},
                    {"seed", pattern.seed},
                    {"forward_over_n", forward / static_cast<double>(atoms)},
                    {"backward_intensity", backward}};
  out.write_json("summary.json", result);
  return result;
}

json cmd_simulate(const RunConfig& c, OutputDir& out) {
  const auto rates = rates_from(c);
  const auto pulse = pulse_from(c, c.number("r_in"));
  const std::string initial = c.text("initial");
  if (initial != "g" && initial != "w") throw ConfigError("initial", "expected g or w");
  const auto rho0 = DensityMatrix3::pure(initial == "g" ? kG : kW);
  const double t0 = std::min(0.0, pulse.t_start());
  const double t_end =
      c.number("t_end") > 0.0 ? c.number("t_end") : std::max(pulse.t_end(), 0.0) + 10.0 / total_rate(rates);
  const auto grid = uniform_grid(t0, t_end, count(c, "samples", 2));
  EvolveOptions opts;
  opts.detuning = c.number("detuning");
  const auto traj = evolve_master(rates, pulse, rho0, grid, opts);
  const auto flux = output_flux(rates, pulse, grid, traj);
  CsvWriter csv(out.open("trace.csv"), {"t", "rho_gg", "rho_ww", "rho_dd", "re_rho_wg", "im_rho_wg", "flux_in",
                                        "flux_out", "relative_modulation"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& m = traj[i].m;
    csv.add(grid[i]).add(m(kG, kG).real()).add(m(kW, kW).real()).add(m(kD, kD).real());
    csv.add(m(kW, kG).real()).add(m(kW, kG).imag()).add(flux.flux_in[i]).add(flux.flux_out[i]);
    csv.add(flux.relative_modulation[i]);
    csv.end_row();
  }
  const json result{{"rates", rates_json(rates)},
                    {"photons_in", integrate_samples(grid, flux.flux_in)},
                    {"photons_out", integrate_samples(grid, flux.flux_out)},
                    {"pulse_photons", pulse.mean_photon_number()},
                    {"final_rho_ww", traj.back().population(kW)},
                    {"final_rho_dd", traj.back().population(kD)}};
  out.write_json("summary.json", result);
  return result;
}

json cmd_phase_diagram(const RunConfig& c, OutputDir& out) {
  const auto rates = rates_from(c);
  const auto axes = GridAxes::log_spaced(c.number("lambda_min"), c.number("lambda_max"), count(c, "n_lambda"),
                                         c.number("n_bar_min"), c.number("n_bar_max"), count(c, "n_n_bar"));
  const auto grid = sweep(axes, rates, {}, c.threads);
  std::size_t failed = 0;
  {
    CsvWriter csv(out.open("grid.csv"), {"lambda_c", "n_bar", "visibility", "raw_visibility", "t_max",
                                         "interior_maximum", "overshoot", "steady_rho_ww", "regime", "error"});
    for (const auto& p : grid.points) {
      csv.add(p.lambda_c).add(p.n_bar).add(p.visibility).add(p.raw_visibility).add(p.t_max);
      csv.add(static_cast<long long>(p.interior_maximum)).add(static_cast<long long>(p.overshoot));
      csv.add(p.steady_rho_ww).add(std::string(to_string(p.regime))).add(p.error);
      csv.end_row();
      if (!p.error.empty()) ++failed;
    }
  }
  const auto curves = crossover_curves(axes);
  const auto kink = kink_locus(grid);
  {
    CsvWriter csv(out.open("crossover.csv"), {"lambda_c", "n_critical", "n_critical_exact"});
    for (std::size_t i = 0; i < curves.lambda_c.size(); ++i) {
      csv.add(curves.lambda_c[i]).add(curves.n_critical[i]).add(curves.n_critical_exact[i]);
      csv.end_row();
    }
  }
  {
    CsvWriter csv(out.open("overdamped.csv"), {"lambda_c", "n_overdamped", "n_overdamped_printed", "n_kink"});
    for (std::size_t i = 0; i < curves.lambda_c.size(); ++i) {
      csv.add(curves.lambda_c[i]).add(curves.n_overdamped[i]).add(curves.n_overdamped_printed[i]).add(kink[i]);
      csv.end_row();
    }
  }
  const json result{{"rates", rates_json(rates)},
                    {"n_lambda", axes.lambda_c.size()},
                    {"n_n_bar", axes.n_bar.size()},
                    {"failed_points", failed}};
  out.write_json("summary.json", result);
  return result;
}

json cmd_correlations(const RunConfig& c, OutputDir& out) {
  const auto rates = rates_from(c);
  const long long order = c.integer("order");
  if (order != 2 && order != 3) throw ConfigError("order", "must be 2 or 3");
  CorrelationOptions opts;
  opts.detuning = c.number("detuning");
  opts.threads = c.threads;
  json runs = json::array();
  std::size_t index = 0;
  for (const double r_in : c.numbers("r_in")) {
    const auto pulse = pulse_from(c, r_in);
    const double s_max =
        c.number("s_max") > 0.0 ? c.number("s_max") : std::max(pulse.t_end(), 0.0) + 2.0 / total_rate(rates);
    const auto grid = uniform_grid(c.number("s_min"), s_max, count(c, "s_samples", 2));
    const auto c2 = g2(rates, pulse, grid, opts);
    const std::string tag = fmt::format("{}", index++);
    write_g2(out, "g2_" + tag + ".csv", c2);
    {
      CsvWriter csv(out.open("flux_" + tag + ".csv"), {"s", "flux"});
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.add(grid[i]).add(c2.flux[i]);
        csv.end_row();
      }
    }
    json run{{"r_in", r_in}, {"n_bar", pulse.mean_photon_number()}, {"tag", tag}};
    if (order == 3) {
      const auto c3 = g3(rates, pulse, grid, opts);
      const auto connected = connected_values(c3, c2);
      const std::size_t n = grid.size();
      {
        CsvWriter csv(out.open("g3_" + tag + ".csv"), {"s1", "s2", "s3", "g3", "g3_connected"});
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
              const std::size_t at = (i * n + j) * n + k;
              csv.add(grid[i]).add(grid[j]).add(grid[k]).add(c3.values[at]).add(connected[at]);
              csv.end_row();
            }
      }
      const double mid = 0.5 * (grid.front() + grid.back());
      const double r = c.number("jacobi_r") != 0.0 ? c.number("jacobi_r") : std::sqrt(3.0) * mid;
      const double extent = grid.back() - grid.front();
      const auto axis = uniform_grid(-extent, extent, count(c, "jacobi_samples", 2));
      const auto slice = jacobi_slice(c3, c2, r, axis, axis);
      CsvWriter csv(out.open("jacobi_" + tag + ".csv"), {"R", "eta", "zeta", "g3_connected"});
      for (std::size_t i = 0; i < slice.value.size(); ++i) {
        csv.add(slice.r[i]).add(slice.eta[i]).add(slice.zeta[i]).add(slice.value[i]);
        csv.end_row();
      }
      run["jacobi_r"] = r;
    }
    runs.push_back(run);
  }
  const json result{{"order", order}, {"rates", rates_json(rates)}, {"runs", runs}};
  out.write_json("summary.json", result);
  return result;
}

json cmd_source(const RunConfig& c, OutputDir& out) {
  const auto rates = rates_from(c);
  SourceOptions opts;
  opts.leakage = c.number("leakage");
  if (c.boolean("storage")) opts.storage_pulse = DrivePulse::square(c.number("storage_r_in"), c.number("storage_tau"));
  opts.horizon = c.number("horizon");
  opts.samples = count(c, "samples", 3);
  opts.g2_samples = count(c, "g2_samples", 2);
  opts.evolve.detuning = c.number("detuning");
  const auto run = run_source(rates, opts);
  write_flux(out, "emitted.csv", run.emitted);
  write_g2(out, "g2.csv", run.emitted_g2);
  const json result{{"rates", rates_json(rates)},
                    {"stored_rho_ww", run.stored.population(kW)},
                    {"stored_rho_dd", run.stored.population(kD)},
                    {"emitted_photons", run.emitted_photons},
                    {"retrieved_fraction_expected", run.retrieved_fraction_expected},
                    {"g2_zero_single", run.g2_zero_single},
                    {"g2_integrated_single", run.g2_integrated_single},
                    {"leakage", run.leakage},
                    {"g2_zero", run.g2_zero}};
  out.write_json("summary.json", result);
  return result;
}

json cmd_absorber(const RunConfig& c, OutputDir& out, std::size_t stages, bool compute_g2) {
  const auto rates = rates_from(c);
  const auto shape = parse_pulse_shape(c.text("pulse"));
  if (shape != PulseShape::square && shape != PulseShape::gaussian) {
    throw ConfigError("pulse", "expected square or gaussian");
  }
  SubtractorOptions opts;
  opts.tail = c.number("tail");
  opts.samples = count(c, "samples", 3);
  opts.g2_samples = count(c, "g2_samples", 2);
  opts.detection_efficiency = c.number("detection_efficiency");
  opts.compute_g2 = compute_g2;
  opts.evolve.detuning = c.number("detuning");
  json runs = json::array();
  std::size_t index = 0;
  for (const double n_bar : c.numbers("n_bar")) {
    const auto pulse = pulse_with_photons(c, n_bar);
    const auto run = run_cascade(stages, rates, pulse, opts);
    const std::string tag = fmt::format("{}", index++);
    write_flux(out, "transmitted_" + tag + ".csv", run.transmitted);
    double g2_max = std::numeric_limits<double>::quiet_NaN();
    if (compute_g2) {
      write_g2(out, "g2_" + tag + ".csv", run.output_g2);
      g2_max = *std::max_element(run.output_g2.values.begin(), run.output_g2.values.end());
    }
    {
      CsvWriter csv(out.open("ions_" + tag + ".csv"), {"n", "probability"});
      const auto& p = run.n_subtracted.probabilities();
      for (std::size_t n = 0; n < p.size(); ++n) {
        csv.add(static_cast<long long>(n)).add(p[n]);
        csv.end_row();
      }
    }
    json entry{{"tag", tag},
               {"n_bar", n_bar},
               {"peak_rate", pulse.r_in()},
               {"input_photons", run.input_photons},
               {"output_photons", run.output_photons},
               {"expected_subtracted", run.expected_subtracted},
               {"stage_probability", run.stage_probability},
               {"first_quarter_transmission", run.first_quarter_transmission},
               {"last_quarter_transmission", run.last_quarter_transmission},
               {"transmission_ratio", run.last_quarter_transmission / run.first_quarter_transmission}};
    if (compute_g2) entry["g2_max"] = g2_max;
    runs.push_back(entry);
  }
  const json result{{"rates", rates_json(rates)}, {"stages", stages}, {"runs", runs}};
  out.write_json("summary.json", result);
  return result;
}

json dispatch(const RunConfig& c, OutputDir& out) {
  const std::string& cmd = c.command;
  if (cmd == "check-blockade") return cmd_check_blockade(c, out);
  if (cmd == "eliminate") return cmd_eliminate(c, out);
  if (cmd == "coupling") return cmd_coupling(c, out);
  if (cmd == "emission-pattern") return cmd_emission_pattern(c, out);
  if (cmd == "simulate") return cmd_simulate(c, out);
  if (cmd == "phase-diagram") return cmd_phase_diagram(c, out);
  if (cmd == "correlations") return cmd_correlations(c, out);
  if (cmd == "source") return cmd_source(c, out);
  if (cmd == "subtract") return cmd_absorber(c, out, 1, true);
  if (cmd == "cascade") return cmd_absorber(c, out, count(c, "stages"), c.boolean("compute_g2"));
  throw ConfigError("command", "unknown command '" + cmd + "'");
}

}  // namespace

json run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  OutputDir out(config.out_dir);
  {
    auto cfg = out.open("config.cfg");
    cfg << serialize_config(config);
  }
  const json result = dispatch(config, out);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json config_echo = config.values;
  config_echo["command"] = config.command;
  config_echo["units"] = config.units;
  config_echo["seed"] = config.seed;
  config_echo["threads"] = config.threads;
  config_echo["preset"] = config.preset;
  const json body{{"command", config.command},
                  {"config", config_echo},
                  {"result", result},
                  {"library_version", SUPERATOM_VERSION},
                  {"wall_clock_seconds", wall}};
  write_manifest(out, body);
  json manifest = body;
  manifest["files"] = out.files();
  return manifest;
}

ErrorRecord describe_error(const std::exception& e) {
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    return {{{"error", "config"}, {"key", ce->key()}, {"message", e.what()}}, 2};
  }
  if (const auto* de = dynamic_cast<const DomainError*>(&e)) {
    return {{{"error", "domain"}, {"key", de->field()}, {"message", e.what()}}, 3};
  }
  if (const auto* ie = dynamic_cast<const IntegrationError*>(&e)) {
    return {{{"error", "integration"}, {"time", ie->time()}, {"message", e.what()}}, 4};
  }
  if (const auto* iv = dynamic_cast<const InvariantViolation*>(&e)) {
    return {{{"error", "invariant"},
             {"time", iv->time()},
             {"trace_error", iv->trace_error()},
             {"min_eigenvalue", iv->min_eigenvalue()},
             {"message", e.what()}},
            4};
  }
  if (const auto* ne = dynamic_cast<const NormalizationError*>(&e)) {
    return {{{"error", "normalization"}, {"index", ne->index()}, {"time", ne->time()}, {"message", e.what()}}, 4};
  }
  return {{{"error", "runtime"}, {"message", e.what()}}, 1};
}

}  // namespace superatom::cli
