#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "superatom/errors.hpp"

namespace superatom {

struct IntegratorOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// 0 picks |t_end - t_start| / 100.
  double initial_step = 0.0;
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-13;
  std::size_t max_steps = 100'000'000;
};

namespace detail {

template <class State>
double max_abs(const State& y) {
  return y.cwiseAbs().maxCoeff();
}

template <class State, class Rhs>
State rk4_step(Rhs& rhs, double t, const State& y, double h, double t_last) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = rhs(t + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = rhs(t_last, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("time grid is empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw std::invalid_argument("time grid is not strictly increasing at index " +
                                  std::to_string(i));
    }
  }
}

}  // namespace detail

/// Classical RK4 with step-doubling error control and local extrapolation.
///
/// Integrates dy/dt = rhs(t, y) from t_grid.front() and returns y at every grid time
/// (the first entry is y0). Steps never straddle a grid time or a breakpoint, so
/// right-hand sides with jumps (pulse edges) are integrated piecewise-smoothly. A
/// piecewise rhs should be right-continuous, e.g. a pulse on [t0, t1).
/// State must behave like an Eigen dense object.
template <class State, class Rhs>
std::vector<State> integrate(Rhs&& rhs, State y0, std::span<const double> t_grid,
                             const IntegratorOptions& options = {},
                             std::span<const double> breakpoints = {}) {
  detail::check_grid(t_grid);

  std::vector<State> out;
  out.reserve(t_grid.size());
  out.push_back(y0);
  if (t_grid.size() == 1) return out;

  double t = t_grid.front();
  State y = std::move(y0);
  double h = options.initial_step > 0.0 ? options.initial_step
                                        : (t_grid.back() - t_grid.front()) / 100.0;
  h = std::min(h, options.max_step);

  std::vector<double> stops(breakpoints.begin(), breakpoints.end());
  std::sort(stops.begin(), stops.end());
  auto next_break = std::upper_bound(stops.begin(), stops.end(), t);

  std::size_t steps = 0;
  for (std::size_t target = 1; target < t_grid.size(); ++target) {
    const double t_target = t_grid[target];
    while (t < t_target) {
      while (next_break != stops.end() && *next_break <= t) ++next_break;
      double t_stop = t_target;
      if (next_break != stops.end() && *next_break < t_stop) t_stop = *next_break;

      const double remaining = t_stop - t;
      const bool clipped = h >= remaining;
      const double step = clipped ? remaining : h;

      // A step ending on a breakpoint samples the rhs just left of it.
      const bool ends_on_break =
          clipped && next_break != stops.end() && *next_break == t_stop;
      const double t_last = ends_on_break ? std::nextafter(t_stop, t) : t + step;

      const State full = detail::rk4_step(rhs, t, y, step, t_last);
      const State half = detail::rk4_step(rhs, t, y, 0.5 * step, t + 0.5 * step);
      const State twice = detail::rk4_step(rhs, t + 0.5 * step, half, 0.5 * step, t_last);

      const double err = detail::max_abs(State(twice - full)) / 15.0;
      const double scale =
          options.abs_tol +
          options.rel_tol * std::max(detail::max_abs(y), detail::max_abs(twice));

      if (err <= scale) {
        t = clipped ? t_stop : t + step;
        y = twice + (twice - full) / 15.0;
        if (++steps > options.max_steps) throw IntegrationError(t, "step budget exhausted");
      }

      const double factor =
          err == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(scale / err, 0.2), 0.2, 4.0);
      // Only a full step is evidence for a larger h.
      if (err > scale || !clipped) h = std::min(step * factor, options.max_step);
      if (err > scale && h < options.min_step) {
        throw IntegrationError(t, "step size underflow");
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace superatom
