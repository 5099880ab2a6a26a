#include "superatom/phase_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "superatom/errors.hpp"
#include "superatom/parallel.hpp"
#include "superatom/propagator.hpp"

namespace superatom {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::overdamped: return "overdamped";
    case Regime::weak_drive: return "weak-drive";
    case Regime::rabi: return "rabi";
  }
  return "weak-drive";
}

double omega_eff_squared_pulse(double lambda_c, double n_bar) {
  return omega_eff_squared(1.0, n_bar / lambda_c);
}

namespace {

bool spectrum_is_real(const Superop& l) {
  Eigen::ComplexEigenSolver<Superop> solver(l, false);
  const auto& ev = solver.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) > 1e-8 * scale) return false;
  }
  return true;
}

}  // namespace

PhaseDiagramPoint visibility_at(double lambda_c, double n_bar, const PhysicalRates& rates,
                                const VisibilityOptions& options) {
  if (!(lambda_c > 0.0)) throw DomainError("lambda_c", "must be > 0");
  if (!(n_bar > 0.0)) throw DomainError("n_bar", "must be > 0");
  rates.validate();
  if (!(rates.kappa > 0.0)) throw DomainError("kappa", "must be > 0");

  const double kappa = rates.kappa;
  const double tau = lambda_c / kappa;
  const double r_in = n_bar / tau;
  const std::complex<double> alpha{std::sqrt(r_in), 0.0};
  const bool ideal = rates.gamma == 0.0 && rates.gamma_d == 0.0;

  PhaseDiagramPoint point;
  point.lambda_c = lambda_c;
  point.n_bar = n_bar;

  const LindbladGenerator gen(rates);
  const Superop l = gen.superoperator(alpha);
  const VecRho ss = ideal ? [&] {
    // Closed-form stationary state of the ideal emitter.
    const double sk = std::sqrt(kappa);
    const double denom = kappa * kappa + 8.0 * kappa * r_in;
    Matrix3c m = Matrix3c::Zero();
    m(kW, kW) = 4.0 * kappa * r_in / denom;
    m(kG, kG) = 1.0 - m(kW, kW);
    m(kW, kG) = std::complex<double>(0.0, -2.0 * sk * kappa * alpha.real() / denom);
    m(kG, kW) = std::conj(m(kW, kG));
    return vectorize(m);
  }() : vectorize(steady_state(rates, alpha).m);
  point.steady_rho_ww = ss(4).real();

  // rho(t) - rho_ss evolves under exp(L t) exactly and decays to zero.
  const double fastest = gen.fastest_rate(alpha.real());
  const double dt_period = 2.0 * std::numbers::pi / (fastest * options.samples_per_period);
  std::size_t n_steps = std::max<std::size_t>(options.min_samples,
                                              static_cast<std::size_t>(std::ceil(tau / dt_period)));
  n_steps = std::min(n_steps, options.max_samples);
  const double dt = tau / static_cast<double>(n_steps);
  const Superop step = expm_superop(l, dt);

  VecRho delta = vectorize(DensityMatrix3::pure(kG).m) - ss;
  double best = delta(4).real();
  std::size_t best_k = 0;
  double prev_slope = 0.0;
  bool interior = false;
  bool overshoot = false;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    delta = step * delta;
    const double dww = delta(4).real();
    if (dww > options.overshoot_tol * point.steady_rho_ww) overshoot = true;
    if (dww > best) {
      best = dww;
      best_k = k;
    }
    const double slope = (l.row(4) * delta)(0).real();
    if (k > 1 && prev_slope > 0.0 && slope <= 0.0) interior = true;
    prev_slope = slope;
  }

  double t_best = static_cast<double>(best_k) * dt;
  if (options.refine_maximum && best_k > 0 && best_k < n_steps) {
    const VecRho delta0 = vectorize(DensityMatrix3::pure(kG).m) - ss;
    const auto f = [&](double t) { return (expm_superop(l, t) * delta0)(4).real(); };
    double a = t_best - dt;
    double b = t_best + dt;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 60 && (b - a) > 1e-14 * std::max(1.0, tau); ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = f(d);
      }
    }
    const double t_ref = 0.5 * (a + b);
    const double v_ref = f(t_ref);
    if (v_ref > best) {
      best = v_ref;
      t_best = t_ref;
    }
  }

  point.raw_visibility = best;
  point.visibility = std::max(0.0, best);
  point.t_max = t_best;
  point.interior_maximum = interior;
  point.overshoot = overshoot;

  const bool overdamped =
      ideal ? omega_eff_squared(kappa, r_in) < 0.0 : spectrum_is_real(l);
  if (point.visibility > options.rabi_threshold && interior) {
    point.regime = Regime::rabi;
  } else if (overdamped) {
    point.regime = Regime::overdamped;
  } else {
    point.regime = Regime::weak_drive;
  }
  return point;
}

GridAxes GridAxes::log_spaced(double lambda_lo, double lambda_hi, std::size_t n_lambda, double n_lo,
                              double n_hi, std::size_t n_n) {
  const auto axis = [](double lo, double hi, std::size_t n, const char* name) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError(name, "need 0 < lo < hi");
    if (n < 1) throw DomainError(name, "need at least one point");
    std::vector<double> v(n);
    if (n == 1) {
      v[0] = lo;
      return v;
    }
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo * std::exp(step * static_cast<double>(i));
    v.back() = hi;
    return v;
  };
  return {axis(lambda_lo, lambda_hi, n_lambda, "lambda_c"), axis(n_lo, n_hi, n_n, "n_bar")};
}

void GridAxes::validate() const {
  const auto check = [](const std::vector<double>& v, const char* name) {
    if (v.empty()) throw DomainError(name, "axis is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0)) throw DomainError(name, "axis values must be > 0");
      if (i > 0 && !(v[i] > v[i - 1])) throw DomainError(name, "axis not strictly increasing");
    }
  };
  check(lambda_c, "lambda_c");
  check(n_bar, "n_bar");
}

PhaseDiagramGrid sweep(const GridAxes& axes, const PhysicalRates& rates,
                       const VisibilityOptions& options, std::size_t threads) {
  axes.validate();
  rates.validate();
  PhaseDiagramGrid grid{axes, rates, {}};
  const std::size_t n_l = axes.lambda_c.size();
  const std::size_t n_n = axes.n_bar.size();
  grid.points.resize(n_l * n_n);
  parallel_for(n_l * n_n, threads, [&](std::size_t idx) {
    const double lambda_c = axes.lambda_c[idx / n_n];
    const double n_bar = axes.n_bar[idx % n_n];
    try {
      grid.points[idx] = visibility_at(lambda_c, n_bar, rates, options);
    } catch (const std::exception& e) {
      PhaseDiagramPoint failed;
      failed.lambda_c = lambda_c;
      failed.n_bar = n_bar;
      failed.visibility = std::numeric_limits<double>::quiet_NaN();
      failed.raw_visibility = failed.visibility;
      failed.error = e.what();
      grid.points[idx] = failed;
    }
  });
  return grid;
}

CrossoverCurves crossover_curves(const GridAxes& axes) {
  axes.validate();
  CrossoverCurves c;
  c.lambda_c = axes.lambda_c;
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  for (double lambda : axes.lambda_c) {
    c.n_critical.push_back(pi2 / (4.0 * lambda));
    c.n_critical_exact.push_back((pi2 + lambda * lambda / 16.0) / (4.0 * lambda));

    // Omega^2 is increasing in n_bar; bracket its sign change and bisect.
    double lo = 0.0;
    double hi = 1.0;
    while (omega_eff_squared_pulse(lambda, hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (omega_eff_squared_pulse(lambda, mid) < 0.0 ? lo : hi) = mid;
    }
    c.n_overdamped.push_back(0.5 * (lo + hi));
    c.n_overdamped_printed.push_back(64.0 * lambda);
  }
  return c;
}

std::vector<double> kink_locus(const PhaseDiagramGrid& grid) {
  std::vector<double> out;
  for (std::size_t i = 0; i < grid.axes.lambda_c.size(); ++i) {
    double found = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = 0; j < grid.axes.n_bar.size(); ++j) {
      if (grid.at(i, j).overshoot) {
        found = grid.axes.n_bar[j];
        break;
      }
    }
    out.push_back(found);
  }
  return out;
}

}  // namespace superatom
