#include "superatom/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "superatom/errors.hpp"

namespace superatom {

namespace {

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n < 2) throw DomainError("samples", "need at least 2 samples");
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  t.back() = b;
  return t;
}

/// Integral over a 2D grid sample with the trapezoid rule in each direction.
double integrate_square(std::span<const double> t, const std::vector<double>& f) {
  const std::size_t n = t.size();
  const auto w = [&](std::size_t i) {
    const double left = i > 0 ? t[i] - t[i - 1] : 0.0;
    const double right = i + 1 < n ? t[i + 1] - t[i] : 0.0;
    return 0.5 * (left + right);
  };
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += w(i) * w(j) * f[i * n + j];
  return total;
}

double window_transmission(const FluxTrace& trace, double a, double b) {
  double in = 0.0;
  double out = 0.0;
  for (std::size_t i = 1; i < trace.times.size(); ++i) {
    const double mid = 0.5 * (trace.times[i] + trace.times[i - 1]);
    if (mid < a || mid > b) continue;
    const double dt = trace.times[i] - trace.times[i - 1];
    in += 0.5 * (trace.flux_in[i] + trace.flux_in[i - 1]) * dt;
    out += 0.5 * (trace.flux_out[i] + trace.flux_out[i - 1]) * dt;
  }
  return in > 0.0 ? out / in : 0.0;
}

}  // namespace

double integrate_samples(std::span<const double> times, std::span<const double> values) {
  const std::size_t n = times.size();
  if (n != values.size()) throw std::invalid_argument("integrate_samples: length mismatch");
  if (n < 3 || n % 2 == 0) return integrate_trapezoid(times, values);
  const double h = (times.back() - times.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(times[i] - times[i - 1] - h) > 1e-9 * std::abs(h)) {
      return integrate_trapezoid(times, values);
    }
  }
  double s = values.front() + values.back();
  for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
  return s * h / 3.0;
}

double leakage_g2(double g2_single_numerator, double n1, double leakage) {
  if (!(leakage >= 0.0 && leakage <= 1.0)) throw DomainError("leakage", "must lie in [0, 1]");
  if (!(n1 > 0.0)) throw DomainError("n1", "retrieval efficiency must be > 0");
  const double mean = n1 * (1.0 + leakage);
  return ((1.0 - leakage) * g2_single_numerator + leakage * 2.0 * n1 * n1) / (mean * mean);
}

SourceRun run_source(const PhysicalRates& rates, const SourceOptions& options) {
  rates.validate();
  if (!(rates.kappa > 0.0)) throw DomainError("kappa", "retrieval needs kappa > 0");
  if (!(options.leakage >= 0.0 && options.leakage <= 1.0)) {
    throw DomainError("leakage", "must lie in [0, 1]");
  }

  SourceRun run;
  run.leakage = options.leakage;
  run.retrieval = DrivePulse::none();

  double t0 = options.t_retrieve;
  if (options.storage_pulse) {
    const auto& store = *options.storage_pulse;
    if (t0 == 0.0) t0 = store.t_end();
    const double grid[2] = {std::min(store.t_start(), t0), t0};
    const auto traj = evolve_master(rates, store, DensityMatrix3::pure(kG),
                                    std::span<const double>(grid, 2), options.evolve);
    // Herald one excitation: keep the {W, D} block.
    Matrix3c m = traj.back().m;
    m.row(kG).setZero();
    m.col(kG).setZero();
    const double excited = m.trace().real();
    if (!(excited > 0.0)) throw DomainError("storage_pulse", "stored no excitation");
    run.stored = DensityMatrix3{m / excited};
  } else {
    run.stored = DensityMatrix3::pure(kW);
  }
  check_density_matrix(run.stored, t0);
  if (run.stored.population(kG) > 1e-12) {
    throw DomainError("stored", "initial state must hold exactly one excitation");
  }

  const double total = rates.kappa + rates.gamma + rates.gamma_d;
  const double horizon = options.horizon > 0.0 ? options.horizon : 40.0 / total;
  const auto times = uniform_grid(t0, t0 + horizon, options.samples);
  const auto traj = evolve_master(rates, run.retrieval, run.stored, times, options.evolve);
  run.emitted = output_flux(rates, run.retrieval, times, traj);
  run.emitted_photons = integrate_samples(times, run.emitted.flux_out);
  run.retrieved_fraction_expected = run.stored.population(kW) * rates.kappa / total;

  const double window = std::min(horizon, options.g2_window_decays / total);
  const auto g2_times = uniform_grid(t0, t0 + window, options.g2_samples);
  CorrelationOptions corr;
  corr.rho0 = run.stored;
  corr.t0 = t0;
  corr.integrator = options.evolve.integrator;
  run.emitted_g2 = g2(rates, run.retrieval, g2_times, corr);
  run.g2_zero_single = run.emitted_g2.values.front();

  const double n1 = integrate_samples(g2_times, run.emitted_g2.flux);
  const double big_g2 = integrate_square(g2_times, run.emitted_g2.numerators);
  run.g2_integrated_single = big_g2 / (n1 * n1);
  run.g2_zero = leakage_g2(big_g2, n1, options.leakage);
  return run;
}

SubtractorRun run_cascade(std::size_t k, const PhysicalRates& rates, const DrivePulse& pulse,
                          const SubtractorOptions& options) {
  if (k == 0) throw DomainError("k", "need at least one superatom");
  rates.validate();
  if (!(options.detection_efficiency >= 0.0 && options.detection_efficiency <= 1.0)) {
    throw DomainError("detection_efficiency", "must lie in [0, 1]");
  }
  if (pulse.shape() == PulseShape::none) throw DomainError("pulse", "subtractor needs a drive");

  const double total = rates.kappa + rates.gamma + rates.gamma_d;
  const double tail = options.tail > 0.0 ? options.tail : 6.0 / std::max(total, 1e-12);
  const auto times = uniform_grid(pulse.t_start(), pulse.t_end() + tail, options.samples);

  SubtractorRun run;
  run.input = pulse;
  run.input_photons = pulse.mean_photon_number();

  DrivePulse drive = pulse;
  const double sk = std::sqrt(rates.kappa);
  for (std::size_t stage = 0; stage < k; ++stage) {
    const auto traj = evolve_master(rates, drive, DensityMatrix3::pure(kG), times, options.evolve);
    run.transmitted = output_flux(rates, drive, times, traj);
    run.stage_probability.push_back(options.detection_efficiency *
                                    std::clamp(traj.back().population(kW) + traj.back().population(kD),
                                               0.0, 1.0));
    if (stage + 1 < k) {
      std::vector<std::complex<double>> alpha_out(times.size());
      for (std::size_t i = 0; i < times.size(); ++i) {
        alpha_out[i] = drive.amplitude(times[i]) - std::complex<double>(0.0, sk) * traj[i].m(kW, kG);
      }
      drive = DrivePulse::sampled(times, std::move(alpha_out), Interpolation::linear);
    } else if (options.compute_g2) {
      const auto g2_times = uniform_grid(pulse.t_start(), pulse.t_end() + tail, options.g2_samples);
      run.output_g2 = g2(rates, drive, g2_times, {.t0 = pulse.t_start(),
                                                  .integrator = options.evolve.integrator,
                                                  .detuning = options.evolve.detuning});
    }
  }
  // The last stage sees drive in its flux_in; compare against the original pulse instead.
  for (std::size_t i = 0; i < times.size(); ++i) run.transmitted.flux_in[i] = pulse.rate(times[i]);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double in = run.transmitted.flux_in[i];
    run.transmitted.relative_modulation[i] =
        in > 0.0 ? (in - run.transmitted.flux_out[i]) / in : std::numeric_limits<double>::quiet_NaN();
  }

  run.n_subtracted = PhotonNumberDistribution::poisson_binomial(run.stage_probability);
  run.expected_subtracted = run.n_subtracted.mean();
  const double q = pulse.tau() / 4.0;
  run.first_quarter_transmission = window_transmission(run.transmitted, pulse.t_start(), pulse.t_start() + q);
  run.last_quarter_transmission = window_transmission(run.transmitted, pulse.t_end() - q, pulse.t_end());
  run.output_photons = integrate_samples(times, run.transmitted.flux_out);
  return run;
}

SubtractorRun run_subtractor(const PhysicalRates& rates, const DrivePulse& pulse,
                             const SubtractorOptions& options) {
  return run_cascade(1, rates, pulse, options);
}

}  // namespace superatom
