#include "superatom/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "superatom/errors.hpp"
#include "superatom/parallel.hpp"
#include "superatom/propagator.hpp"

namespace superatom {

namespace {

/// Everything both orders need: transfers, states, field maps and fluxes on the grid.
struct Regression {
  std::vector<Superop> transfer;  ///< grid[k] -> grid[k + 1]
  std::vector<VecRho> rho;
  std::vector<Superop> jump;      ///< X -> E X E^dagger at grid[k]
  std::vector<Eigen::Matrix<std::complex<double>, 1, 9>> detect;  ///< X -> Tr(E^dagger E X)
  std::vector<double> flux;
};

/// vec(A X B) = (B^T kron A) vec(X).
Superop sandwich(const Matrix3c& a, const Matrix3c& b) {
  Superop k;
  const Matrix3c bt = b.transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k.block<3, 3>(3 * i, 3 * j) = bt(i, j) * a;
  return k;
}

Regression prepare(const PhysicalRates& rates, const DrivePulse& pulse, std::span<const double> grid,
                   const CorrelationOptions& options) {
  detail::check_grid(grid);
  check_density_matrix(options.rho0, options.t0);
  if (!(grid.front() >= options.t0)) throw std::invalid_argument("time grid starts before t0");
  const Propagator prop(rates, pulse, options.integrator, options.detuning);
  const OutputFieldOperator field(rates.kappa, pulse);

  Regression r;
  r.transfer = prop.transfers(grid);
  const std::size_t n = grid.size();
  r.rho.resize(n);
  r.rho[0] = vectorize(options.rho0.m);
  if (grid.front() > options.t0) r.rho[0] = prop.transfer(options.t0, grid.front()) * r.rho[0];
  for (std::size_t k = 0; k + 1 < n; ++k) r.rho[k + 1] = r.transfer[k] * r.rho[k];

  r.jump.resize(n);
  r.detect.resize(n);
  r.flux.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix3c e = field.at(grid[k]);
    r.jump[k] = sandwich(e, e.adjoint());
    const Matrix3c n_op = e.adjoint() * e;
    // Tr(N X) = sum_ij N_ji X_ij; with column stacking X_ij sits at i + 3 j.
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) r.detect[k](i + 3 * j) = n_op(j, i);
    r.flux[k] = (r.detect[k] * r.rho[k])(0).real();
  }

  const double peak = *std::max_element(r.flux.begin(), r.flux.end());
  const double floor = peak > 0.0 ? options.flux_floor * peak : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(r.flux[k] > floor)) throw NormalizationError(k, grid[k]);
  }
  return r;
}

}  // namespace

CorrelationGrid g2(const PhysicalRates& rates, const DrivePulse& pulse, std::span<const double> s_grid,
                   const CorrelationOptions& options) {
  const Regression r = prepare(rates, pulse, s_grid, options);
  const std::size_t n = s_grid.size();
  CorrelationGrid out;
  out.order = 2;
  out.times.assign(s_grid.begin(), s_grid.end());
  out.flux = r.flux;
  out.numerators.assign(n * n, 0.0);
  out.values.assign(n * n, 0.0);

  parallel_for(n, options.threads, [&](std::size_t i) {
    VecRho lam = r.jump[i] * r.rho[i];
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) lam = r.transfer[j - 1] * lam;
      const double g = (r.detect[j] * lam)(0).real();
      out.numerators[i * n + j] = g;
      out.numerators[j * n + i] = g;
      const double v = g / (r.flux[i] * r.flux[j]);
      out.values[i * n + j] = v;
      out.values[j * n + i] = v;
    }
  });
  return out;
}

CorrelationGrid g3(const PhysicalRates& rates, const DrivePulse& pulse, std::span<const double> s_grid,
                   const CorrelationOptions& options) {
  const Regression r = prepare(rates, pulse, s_grid, options);
  const std::size_t n = s_grid.size();
  CorrelationGrid out;
  out.order = 3;
  out.times.assign(s_grid.begin(), s_grid.end());
  out.flux = r.flux;
  out.numerators.assign(n * n * n, 0.0);
  out.values.assign(n * n * n, 0.0);

  const auto index = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  parallel_for(n, options.threads, [&](std::size_t i) {
    VecRho first = r.jump[i] * r.rho[i];
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) first = r.transfer[j - 1] * first;
      VecRho second = r.jump[j] * first;
      for (std::size_t k = j; k < n; ++k) {
        if (k > j) second = r.transfer[k - 1] * second;
        const double g = (r.detect[k] * second)(0).real();
        const double v = g / (r.flux[i] * r.flux[j] * r.flux[k]);
        const std::size_t perms[6] = {index(i, j, k), index(i, k, j), index(j, i, k),
                                      index(j, k, i), index(k, i, j), index(k, j, i)};
        for (std::size_t p : perms) {
          out.numerators[p] = g;
          out.values[p] = v;
        }
      }
    }
  });
  return out;
}

JacobiCoordinates to_jacobi(double s1, double s2, double s3) {
  return {(s1 + s2 + s3) / std::sqrt(3.0), (s1 - s2) / std::numbers::sqrt2,
          std::sqrt(2.0 / 3.0) * (0.5 * (s1 + s2) - s3)};
}

std::array<double, 3> from_jacobi(const JacobiCoordinates& c) {
  const double sum = std::sqrt(3.0) * c.r;
  const double diff = std::numbers::sqrt2 * c.eta;
  const double z = std::sqrt(1.5) * c.zeta;  // (s1 + s2) / 2 - s3
  const double pair = 2.0 * (z + sum) / 3.0;  // s1 + s2
  return {(pair + diff) / 2.0, (pair - diff) / 2.0, sum - pair};
}

namespace {

void check_aligned(const CorrelationGrid& g3_grid, const CorrelationGrid& g2_grid) {
  if (g3_grid.order != 3 || g2_grid.order != 2) {
    throw std::invalid_argument("g3_connected: expected a third- and a second-order grid");
  }
  if (g3_grid.times != g2_grid.times) {
    throw std::invalid_argument("g3_connected: time grids are not aligned");
  }
}

}  // namespace

std::vector<double> connected_values(const CorrelationGrid& g3_grid, const CorrelationGrid& g2_grid) {
  check_aligned(g3_grid, g2_grid);
  const std::size_t n = g3_grid.size();
  std::vector<double> out(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        out[(i * n + j) * n + k] =
            2.0 + g3_grid.at(i, j, k) - g2_grid.at(i, j) - g2_grid.at(i, k) - g2_grid.at(j, k);
  return out;
}

JacobiSurface g3_connected(const CorrelationGrid& g3_grid, const CorrelationGrid& g2_grid) {
  const auto values = connected_values(g3_grid, g2_grid);
  const std::size_t n = g3_grid.size();
  const auto& s = g3_grid.times;
  JacobiSurface surf;
  surf.value = values;
  surf.r.reserve(values.size());
  surf.eta.reserve(values.size());
  surf.zeta.reserve(values.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto c = to_jacobi(s[i], s[j], s[k]);
        surf.r.push_back(c.r);
        surf.eta.push_back(c.eta);
        surf.zeta.push_back(c.zeta);
      }
  return surf;
}

JacobiSurface jacobi_slice(const CorrelationGrid& g3_grid, const CorrelationGrid& g2_grid, double r,
                           std::span<const double> eta_axis, std::span<const double> zeta_axis) {
  const auto values = connected_values(g3_grid, g2_grid);
  const std::size_t n = g3_grid.size();
  const auto& s = g3_grid.times;

  // Cell index and weight along one axis; false outside the grid.
  const auto locate = [&](double x, std::size_t& cell, double& w) {
    if (x < s.front() || x > s.back()) return false;
    if (n == 1) {
      cell = 0;
      w = 0.0;
      return true;
    }
    auto it = std::upper_bound(s.begin(), s.end(), x);
    cell = std::min<std::size_t>(static_cast<std::size_t>(it - s.begin()), n - 1) - 1;
    w = (x - s[cell]) / (s[cell + 1] - s[cell]);
    return true;
  };
  const auto value = [&](std::size_t a, std::size_t b, std::size_t c) {
    return values[(std::min(a, n - 1) * n + std::min(b, n - 1)) * n + std::min(c, n - 1)];
  };

  JacobiSurface surf;
  for (double eta : eta_axis)
    for (double zeta : zeta_axis) {
      const auto t = from_jacobi({r, eta, zeta});
      std::size_t c[3];
      double w[3];
      double v = std::numeric_limits<double>::quiet_NaN();
      if (locate(t[0], c[0], w[0]) && locate(t[1], c[1], w[1]) && locate(t[2], c[2], w[2])) {
        v = 0.0;
        for (int corner = 0; corner < 8; ++corner) {
          double weight = 1.0;
          std::size_t idx[3];
          for (int d = 0; d < 3; ++d) {
            const bool up = (corner >> d) & 1;
            weight *= up ? w[d] : 1.0 - w[d];
            idx[d] = c[d] + (up ? 1 : 0);
          }
          if (weight != 0.0) v += weight * value(idx[0], idx[1], idx[2]);
        }
      }
      surf.r.push_back(r);
      surf.eta.push_back(eta);
      surf.zeta.push_back(zeta);
      surf.value.push_back(v);
    }
  return surf;
}

}  // namespace superatom
