// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <superatom/applications.hpp>
#include <superatom/collective.hpp>
#include <superatom/correlations.hpp>
#include <superatom/master_equation.hpp>
#include <superatom/phase_diagram.hpp>
#include <superatom/photon_statistics.hpp>
#include <superatom/three_level.hpp>

#include "oracles.hpp"
#include "qjmc.hpp"

using namespace superatom;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("%s %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

const std::array<double, 5> kKappas{0.1, 1.0, 4.0, 16.0, 64.0};
const std::array<double, 5> kRates{0.1, 1.0, 5.0, 20.0, 100.0};

void ac1_ac2() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  double worst_ss = 0.0;
  for (double k : kKappas) {
    for (double r : kRates) {
      // 40 / kappa covers the slowest transient (3 kappa / 4 envelope) many times over.
      const double horizon = 40.0 / k;
      const auto grid = linspace(0.0, horizon, 801);
      const auto traj = evolve_master({k, 0.0, 0.0}, DrivePulse::square(r, 2.0 * horizon),
                                      DensityMatrix3::pure(kG), grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        worst = std::max(worst, std::abs(traj[i].population(kW) - oracle::rho22_closed_form(k, r, grid[i])));
      }
      const double target = 4.0 * k * r / (k * k + 8.0 * k * r);
      worst_ss = std::max(worst_ss, std::abs(traj.back().population(kW) - target));
    }
  }
  const double elapsed = seconds_since(start);
  report("AC1", worst < 1e-6 && elapsed < 10.0,
         fmt("max|rho_WW - rho22_closed|=%.3e over 5x5 grid, runtime %.2fs (limits 1e-6, 10s)", worst, elapsed));
  report("AC2", worst_ss < 1e-6, fmt("max|rho_WW(40/kappa) - 4kR/(k^2+8kR)|=%.3e (limit 1e-6)", worst_ss));
}

void ac3() {
  const double lambda = 0.05;
  const auto inside = [&](double n) { return visibility_at(lambda, n).interior_maximum; };
  double lo = 1.0;
  double hi = 1000.0;
  if (inside(lo) || !inside(hi)) {
    report("AC3", false, "bisection bracket does not straddle the crossover");
    return;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(lo * hi);
    (inside(mid) ? hi : lo) = mid;
  }
  const double found = hi;
  const double expected = kPi * kPi / (4.0 * lambda);
  const double rel = found / expected - 1.0;
  report("AC3", std::abs(rel) <= 0.05,
         fmt("lambda=0.05: first maximum inside pulse from N=%.4f, pi^2/(4 lambda)=%.4f, rel %+.4f (limit 5%%)",
             found, expected, rel));
}

void ac4() {
  const auto start = std::chrono::steady_clock::now();
  const auto axes = GridAxes::log_spaced(40.0, 4000.0, 64, 0.1, 1000.0, 64);
  const auto grid = sweep(axes);
  const auto kinks = kink_locus(grid);
  int worst = 0;
  int missing = 0;
  double printed_log_gap = 0.0;
  for (std::size_t i = 0; i < axes.lambda_c.size(); ++i) {
    const double lam = axes.lambda_c[i];
    // Independent sign test: 4 kappa R - (kappa/4)^2 with kappa = 1, R = N / lambda.
    int j_sign = -1;
    for (std::size_t j = 0; j < axes.n_bar.size(); ++j) {
      if (4.0 * axes.n_bar[j] / lam - 1.0 / 16.0 > 0.0) {
        j_sign = static_cast<int>(j);
        break;
      }
    }
    int j_kink = -1;
    for (std::size_t j = 0; j < axes.n_bar.size(); ++j) {
      if (axes.n_bar[j] == kinks[i]) j_kink = static_cast<int>(j);
    }
    if (j_sign < 0 || j_kink < 0) {
      ++missing;
      continue;
    }
    worst = std::max(worst, std::abs(j_kink - j_sign));
    // Printed form lambda > N / 64 puts the boundary at N = 64 lambda.
    const double printed = 64.0 * lam;
    printed_log_gap = std::log10(printed / (lam / 64.0));
  }
  const bool pass = missing == 0 && worst <= 1;
  report("AC4", pass,
         fmt("64x64 grid: max |kink cell - sign-change cell|=%d, rows without kink or sign change=%d, %.1fs; "
             "note: printed boundary N=64*lambda sits %.2f decades above the derived N=lambda/64, reported only",
             worst, missing, seconds_since(start), printed_log_gap));
}

void ac5() {
  const PhysicalRates a{1.0, 0.16279, 0.0};
  const PhysicalRates b{1.0, 0.16279, 1.0 / 0.23 - 1.0 - 0.16279};
  const double beta = beta_factors(a).beta;
  const double beta_coh = beta_factors(b).beta_coh;
  report("AC5", std::abs(beta - 0.860) <= 0.001 && std::abs(beta_coh - 0.230) <= 0.001,
         fmt("beta=%.5f (0.860+-0.001), beta_coh=%.5f (0.230+-0.001)", beta, beta_coh));
}

void ac6() {
  const auto start = std::chrono::steady_clock::now();

  // (a) no coupling: coherent input passes untouched.
  double dev_a = 0.0;
  {
    const auto pulse = DrivePulse::square(2.0, 10.0);
    const auto s = linspace(0.5, 9.5, 10);
    const auto c2 = g2({0.0, 0.0, 0.0}, pulse, s);
    const auto c3 = g3({0.0, 0.0, 0.0}, pulse, s);
    for (double v : c2.values) dev_a = std::max(dev_a, std::abs(v - 1.0));
    for (double v : c3.values) dev_a = std::max(dev_a, std::abs(v - 1.0));
  }

  // (b) stored single excitation, no drive.
  double worst_b = 0.0;
  {
    CorrelationOptions o;
    o.rho0 = DensityMatrix3::pure(kW);
    const auto s = linspace(0.0, 4.0, 21);
    const auto c2 = g2({1.0, 0.1, 0.2}, DrivePulse::none(), s, o);
    for (std::size_t i = 0; i < s.size(); ++i) worst_b = std::max(worst_b, std::abs(c2.at(i, i)));
  }

  // (c) one photon separated by 14 / kappa from two close ones.
  double worst_c = 0.0;
  {
    const std::vector<double> s{10.0, 10.5, 11.0, 25.0};
    const auto pulse = DrivePulse::square(1.0, 40.0);
    for (const PhysicalRates& r : {PhysicalRates{1.0, 0.0, 0.0}, PhysicalRates{1.0, 0.1628, 3.1850}}) {
      const auto c2 = g2(r, pulse, s);
      const auto c3 = g3(r, pulse, s);
      const auto conn = connected_values(c3, c2);
      const std::size_t n = s.size();
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) worst_c = std::max(worst_c, std::abs(conn[(i * n + j) * n + 3]));
    }
  }

  // (d) regression theorem against quantum jumps.
  double worst_sigma = 0.0;
  {
    const qjmc::Setup setup{1.0, 0.2, 0.5, 2.0, 0.0, 3.0};
    const std::array<double, 3> t{0.8, 1.6, 2.4};
    const auto mc = qjmc::estimate(setup, t, 100000, 20240611);
    const std::vector<double> s(t.begin(), t.end());
    const auto pulse = DrivePulse::square(setup.r_in, setup.t_off - setup.t_on, setup.t_on);
    const PhysicalRates r{setup.kappa, setup.gamma, setup.gamma_d};
    const auto c2 = g2(r, pulse, s);
    const auto c3 = g3(r, pulse, s);
    for (std::size_t i = 0; i < 3; ++i) {
      worst_sigma = std::max(worst_sigma, std::abs(mc.intensity[i] - c2.flux[i]) / mc.intensity_se[i]);
      for (std::size_t j = i; j < 3; ++j) {
        worst_sigma = std::max(worst_sigma, std::abs(mc.g2[i][j] - c2.numerators[i * 3 + j]) / mc.g2_se[i][j]);
      }
    }
    worst_sigma = std::max(worst_sigma, std::abs(mc.g3 - c3.numerators[(0 * 3 + 1) * 3 + 2]) / mc.g3_se);
  }

  const double elapsed = seconds_since(start);
  const bool pass = dev_a < 1e-9 && worst_b < 1e-6 && worst_c < 0.02 && worst_sigma <= 3.0 && elapsed < 300.0;
  report("AC6", pass,
         fmt("(a) max|g-1| at kappa=0: %.2e; (b) max g2(s,s): %.2e; (c) max|g_c3| separated: %.2e; "
             "(d) worst QRT-QJMC deviation %.2f sigma at 1e5 trajectories; %.1fs",
             dev_a, worst_b, worst_c, worst_sigma, elapsed));
}

void ac7() {
  const auto coherent = PhotonNumberDistribution::poisson(2.0);
  const auto sub = subtract_distribution(coherent);
  // Exact: <n> - 1 + p(0) = 1 + exp(-2).
  const double expected_mean = 1.0 + std::exp(-2.0);
  const double mean_err = std::abs(sub.mean() - expected_mean);
  const double fano = sub.fano();
  const double tv = total_variation(annihilate_distribution(coherent), coherent);
  report("AC7", std::abs(sub.mean() - 1.13534) <= 1e-5 && mean_err <= 1e-10 && fano > 1.0 && tv < 1e-10,
         fmt("subtract: mean=%.12f (exact 1+e^-2, err %.1e), Fano=%.6f; annihilate TV vs Poisson=%.1e", sub.mean(),
             mean_err, fano, tv));
}

void ac8() {
  // gamma_D = 10 kappa, Gamma from beta = 0.86, Gaussian pulse 20 kappa^-1 x 0.25 window.
  const PhysicalRates rates{1.0, 1.0 / 0.86 - 1.0, 10.0};
  const double tau = 5.0;
  SubtractorOptions opts;
  opts.samples = 801;
  opts.g2_samples = 81;
  bool pass = true;
  std::string detail;
  for (double n_bar : {5.65, 15.76}) {
    const auto unit = DrivePulse::gaussian(1.0, tau, tau / 6.0);
    const auto pulse = DrivePulse::gaussian(n_bar / unit.mean_photon_number(), tau, tau / 6.0);
    const auto run = run_subtractor(rates, pulse, opts);
    const double ratio = run.last_quarter_transmission / run.first_quarter_transmission;
    const double g2max = *std::max_element(run.output_g2.values.begin(), run.output_g2.values.end());
    const bool ok = ratio >= 1.2 && g2max > 1.05;
    pass = pass && ok;
    detail += fmt("N=%.2f: last/first quarter transmission %.3f (>=1.2), max g2 %.3f (>1.05) %s; ", n_bar, ratio,
                  g2max, ok ? "ok" : "short");
  }
  report("AC8", pass, detail);
}

void ac9() {
  const auto start = std::chrono::steady_clock::now();
  const EnsembleGeometry geom{10.0, 6.0, 0.1, 6.5, 0.78};
  const std::size_t n_atoms = 2000;
  const Direction dirs[] = {{0.0, 0.0}, {kPi, 0.0}};
  double fwd_min = std::numeric_limits<double>::infinity();
  double fwd_max = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto sample = sample_cloud(geom, n_atoms, seed);
    const auto pattern = directed_emission_pattern(sample, Eigen::Vector3d(0.0, 0.0, 2.0 * kPi / geom.lambda_opt), dirs);
    fwd_min = std::min(fwd_min, pattern[0] / static_cast<double>(n_atoms));
    fwd_max = std::max(fwd_max, pattern[0] / static_cast<double>(n_atoms));
  }
  const auto avg = averaged_emission_pattern(geom, n_atoms, dirs, 100, 1);
  const double back = avg.mean_intensity[1];
  const bool pass = fwd_min >= 0.95 && fwd_max <= 1.0 + 1e-12 && back < 2.0;
  report("AC9", pass,
         fmt("N=2000, 100 seeds: I(forward)/N in [%.6f, %.6f], disorder-averaged I(backward)=%.3f (+-%.3f); %.1fs",
             fwd_min, fwd_max, back, avg.std_error[1], seconds_since(start)));
}

void ac10() {
  const double omega_p = 1.0;
  const double omega_c = 10.0;
  std::vector<double> scaled;
  std::string detail;
  for (double m : {50.0, 100.0, 200.0, 400.0}) {
    const ThreeLevelParams p{omega_p, omega_c, m * omega_c, 0.0, 0.0};
    const double err = reduction_error(p, effective_rabi_period(p));
    scaled.push_back(err * p.delta * p.delta);
    detail += fmt("D=%g err=%.3e; ", p.delta, err);
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  report("AC10", *hi / *lo <= 2.0, detail + fmt("spread of err*D^2 = %.3f (limit 2)", *hi / *lo));
}

}  // namespace

int main() {
  ac1_ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  ac10();
  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
