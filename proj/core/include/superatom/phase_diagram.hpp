#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "superatom/master_equation.hpp"

namespace superatom {

enum class Regime { overdamped, weak_drive, rabi };

std::string_view to_string(Regime regime);

struct PhaseDiagramPoint {
  double lambda_c = 0.0;
  double n_bar = 0.0;
  /// max_{0<=t<=tau} rho_WW(t) - rho_WW(inf), clamped at 0.
  double visibility = 0.0;
  /// Same without the clamp.
  double raw_visibility = 0.0;
  /// Time of the maximum of rho_WW on [0, tau].
  double t_max = 0.0;
  bool interior_maximum = false;
  /// rho_WW rises above its driven steady state somewhere in [0, tau].
  bool overshoot = false;
  double steady_rho_ww = 0.0;
  Regime regime = Regime::weak_drive;
  /// Empty unless the point failed during a sweep.
  std::string error;
};

struct VisibilityOptions {
  /// Lower bound on the number of samples across the pulse.
  std::size_t min_samples = 400;
  /// Samples per period of the fastest rate.
  double samples_per_period = 32.0;
  std::size_t max_samples = 20000;
  /// Golden-section refinement of the discrete maximum.
  bool refine_maximum = true;
  double rabi_threshold = 0.01;
  /// rho_WW counts as overshooting once it exceeds the steady state by this fraction of it;
  /// keeps round-off in the overdamped corner from registering.
  double overshoot_tol = 1e-12;
};

/// Square pulse with kappa tau = lambda_c and R_in tau = n_bar. Rates are taken relative to
/// rates.kappa (ideal: Gamma = gamma_D = 0). Uses exact exponential propagation of
/// rho - rho_ss.
PhaseDiagramPoint visibility_at(double lambda_c, double n_bar,
                                const PhysicalRates& rates = PhysicalRates{},
                                const VisibilityOptions& options = {});

struct GridAxes {
  std::vector<double> lambda_c;
  std::vector<double> n_bar;

  static GridAxes log_spaced(double lambda_lo, double lambda_hi, std::size_t n_lambda,
                             double n_lo, double n_hi, std::size_t n_n);
  void validate() const;
};

struct PhaseDiagramGrid {
  GridAxes axes;
  PhysicalRates rates;
  /// Row-major: points[i * n_bar.size() + j] is (lambda_c[i], n_bar[j]).
  std::vector<PhaseDiagramPoint> points;

  const PhaseDiagramPoint& at(std::size_t i_lambda, std::size_t j_n) const {
    return points[i_lambda * axes.n_bar.size() + j_n];
  }
};

/// Embarrassingly parallel visibility_at over the grid; failed points carry their error.
PhaseDiagramGrid sweep(const GridAxes& axes, const PhysicalRates& rates = PhysicalRates{},
                       const VisibilityOptions& options = {}, std::size_t threads = 0);

struct CrossoverCurves {
  std::vector<double> lambda_c;
  /// pi^2 / (4 lambda), the weak-coupling crossover.
  std::vector<double> n_critical;
  /// Omega tau = pi without the weak-coupling approximation: (pi^2 + lambda^2 / 16) / (4 lambda).
  std::vector<double> n_critical_exact;
  /// Root of Omega^2(n_bar) found by bisection; equals lambda / 64.
  std::vector<double> n_overdamped;
  /// Boundary as printed alongside the analytic solution (lambda = n_bar / 64).
  std::vector<double> n_overdamped_printed;
};

CrossoverCurves crossover_curves(const GridAxes& axes);

/// Omega^2 for the square-pulse parameterization kappa = 1, tau = lambda, R = n_bar / lambda.
double omega_eff_squared_pulse(double lambda_c, double n_bar);

/// For each lambda row, the first n_bar on the grid with an overshoot (the visibility kink),
/// or NaN when none.
std::vector<double> kink_locus(const PhaseDiagramGrid& grid);

}  // namespace superatom
