#include "superatom/propagator.hpp"

#include <algorithm>

#include <unsupported/Eigen/MatrixFunctions>

namespace superatom {

Superop expm_superop(const Superop& l, double dt) {
  const Superop scaled = l * dt;
  return scaled.exp();
}

Propagator::Propagator(const PhysicalRates& rates, DrivePulse pulse, IntegratorOptions options,
                       double detuning)
    : generator_(rates, detuning), pulse_(std::move(pulse)), options_(options) {}

Superop Propagator::segment(double a, double b) const {
  if (const auto alpha = pulse_.constant_amplitude(a, b)) {
    const Key key{alpha->real(), alpha->imag(), b - a};
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    Superop t = expm_superop(generator_.superoperator(*alpha), b - a);
    std::lock_guard lock(mutex_);
    cache_.emplace(key, t);
    return t;
  }

  IntegratorOptions opts = options_;
  if (opts.initial_step <= 0.0) {
    opts.initial_step = std::min(b - a, 0.1 / generator_.fastest_rate(pulse_.max_amplitude()));
  }
  const auto rhs = [&](double t, const Superop& y) -> Superop {
    return generator_.superoperator(pulse_.amplitude(t)) * y;
  };
  const double grid[2] = {a, b};
  const double edge[1] = {b};  // so the last stage sees alpha(b^-)
  return integrate(rhs, Superop(Superop::Identity()), std::span<const double>(grid, 2), opts,
                   std::span<const double>(edge, 1))
      .back();
}

Superop Propagator::transfer(double t0, double t1) const {
  if (!(t1 >= t0)) throw std::invalid_argument("Propagator::transfer: t1 < t0");
  Superop total = Superop::Identity();
  if (t1 == t0) return total;

  std::vector<double> cuts{t0};
  for (double b : pulse_.breakpoints()) {
    if (b > t0 && b < t1) cuts.push_back(b);
  }
  cuts.push_back(t1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total = segment(cuts[i], cuts[i + 1]) * total;
  return total;
}

std::vector<Superop> Propagator::transfers(std::span<const double> grid) const {
  detail::check_grid(grid);
  std::vector<Superop> out;
  out.reserve(grid.size() > 0 ? grid.size() - 1 : 0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) out.push_back(transfer(grid[k], grid[k + 1]));
  return out;
}

std::size_t Propagator::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace superatom
