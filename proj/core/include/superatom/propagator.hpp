#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "superatom/master_equation.hpp"

namespace superatom {

/// Transfer superoperators T(t1, t0) of the Lindblad generator for a given pulse.
///
/// Intervals on which alpha is constant use a cached matrix exponential; elsewhere the
/// 9x9 matrix ODE dT/dt = L(t) T is integrated. Thread-safe.
class Propagator {
 public:
  Propagator(const PhysicalRates& rates, DrivePulse pulse, IntegratorOptions options = {},
             double detuning = 0.0);

  const LindbladGenerator& generator() const noexcept { return generator_; }
  const DrivePulse& pulse() const noexcept { return pulse_; }

  Superop transfer(double t0, double t1) const;
  /// T_k = transfer(grid[k], grid[k + 1]), one per grid interval.
  std::vector<Superop> transfers(std::span<const double> grid) const;

  std::size_t cache_size() const;

 private:
  LindbladGenerator generator_;
  DrivePulse pulse_;
  IntegratorOptions options_;

  Superop segment(double a, double b) const;

  using Key = std::tuple<double, double, double>;
  mutable std::mutex mutex_;
  mutable std::map<Key, Superop> cache_;
};

/// exp(L dt) for a constant generator.
Superop expm_superop(const Superop& l, double dt);

}  // namespace superatom
