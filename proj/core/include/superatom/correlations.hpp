#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "superatom/master_equation.hpp"

namespace superatom {

/// Normalized output-field correlations on a retarded-time grid.
struct CorrelationGrid {
  int order = 2;
  std::vector<double> times;
  /// <E^dagger E>(s_i).
  std::vector<double> flux;
  /// g^(n), row-major over n^order entries, fully symmetrized.
  std::vector<double> values;
  /// Unnormalized G^(n) with the same layout.
  std::vector<double> numerators;

  std::size_t size() const noexcept { return times.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return values[(i * size() + j) * size() + k];
  }
};

struct CorrelationOptions {
  DensityMatrix3 rho0 = DensityMatrix3::pure(kG);
  /// Time rho0 refers to; the state is propagated from here to the first grid time.
  double t0 = 0.0;
  IntegratorOptions integrator{};
  double detuning = 0.0;
  /// Fluxes below this fraction of the largest flux on the grid cannot normalize.
  double flux_floor = 1e-13;
  std::size_t threads = 0;
};

/// g2(s1, s2) via the quantum regression theorem. s_grid must be strictly increasing and
/// start at or after options.t0.
CorrelationGrid g2(const PhysicalRates& rates, const DrivePulse& pulse, std::span<const double> s_grid,
                   const CorrelationOptions& options = {});

/// g3(s1, s2, s3) by nested regression over ordered triples.
CorrelationGrid g3(const PhysicalRates& rates, const DrivePulse& pulse, std::span<const double> s_grid,
                   const CorrelationOptions& options = {});

struct JacobiCoordinates {
  double r;
  double eta;
  double zeta;
};

JacobiCoordinates to_jacobi(double s1, double s2, double s3);
std::array<double, 3> from_jacobi(const JacobiCoordinates& c);

/// g_c3 = 2 + g3 - g2(s1,s2) - g2(s1,s3) - g2(s2,s3) at every grid triple.
struct JacobiSurface {
  std::vector<double> r;
  std::vector<double> eta;
  std::vector<double> zeta;
  std::vector<double> value;
};

/// Connected part on the common grid, same layout as g3.values.
std::vector<double> connected_values(const CorrelationGrid& g3_grid, const CorrelationGrid& g2_grid);

/// Connected part at every grid triple, listed with its Jacobi coordinates.
JacobiSurface g3_connected(const CorrelationGrid& g3_grid, const CorrelationGrid& g2_grid);

/// Connected part resampled on a (eta, zeta) plane at fixed R by trilinear interpolation in
/// (s1, s2, s3). Points outside the grid cube are NaN.
JacobiSurface jacobi_slice(const CorrelationGrid& g3_grid, const CorrelationGrid& g2_grid, double r,
                           std::span<const double> eta_axis, std::span<const double> zeta_axis);

}  // namespace superatom
