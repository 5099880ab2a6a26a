#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "superatom/geometry.hpp"

namespace superatom {

/// Rates of a superatom collectively coupled to the forward Gaussian mode.
struct CollectiveCoupling {
  double n_bar;      ///< mean number of atoms overlapping the mode
  double kappa;      ///< collective emission rate into the forward mode
  double g_col;      ///< 2 sqrt(kappa), bit for bit
  double gamma;      ///< single-atom free-space rate
  double mode_area;  ///< pi w0^2 / 2
};

/// sqrt(N): matrix element <W|V|G,1> in units of hbar g0.
double bright_state_enhancement(std::size_t n_atoms);

/// (2 pi)^{3/2} / 4 * w0^2 sigma_z n0, i.e. sqrt(2 pi) sigma_z A n0, for |u|^2 = exp(-2 r_perp^2 / w0^2)
/// and a cloud much wider than the beam.
double mean_overlap_atoms(const EnsembleGeometry& geom);

/// g_col = sqrt(3 N Gamma lambda^2 / (2 pi A)), kappa = g_col^2 / 4. With
/// include_vacuum_term the N + 1 factor of the golden-rule rate is kept instead of N.
CollectiveCoupling collective_rates(const EnsembleGeometry& geom, double gamma,
                                    bool include_vacuum_term = false);

/// g_col * omega_c / (2 delta): coupling after eliminating the intermediate state.
double effective_collective_coupling(const CollectiveCoupling& coupling, double omega_c, double delta);

/// g_col_eff * sqrt(R) for an impinging photon rate R.
double effective_collective_rabi(double g_col_eff, double photon_rate);

/// Half-opening angle of the collectively enhanced forward emission,
/// arcsin(lambda / (sqrt(pi) w0)). Returns kFullSphere when lambda > sqrt(pi) w0.
double forward_cone(const EnsembleGeometry& geom);
inline constexpr double kFullSphere = 3.141592653589793;

/// Microscopic forms, for identity checks: Gamma = 4 g0^2 w^3 / (3 hbar c^3) and
/// kappa = 2 pi (N [+1]) g0^2 w / (A hbar c).
double free_space_rate(double g0, double omega, double hbar, double c);
double microscopic_kappa(double n_bar, double g0, double omega, double mode_area, double hbar,
                         double c, bool include_vacuum_term = false);

struct AtomCloudSample {
  std::vector<Eigen::Vector3d> positions;
  std::uint64_t seed;
  std::uint64_t stream;
};

/// Draws positions from the Gaussian density. With fluctuate_number the atom count is
/// Poisson distributed around n_atoms (default off).
AtomCloudSample sample_cloud(const EnsembleGeometry& geom, std::size_t n_atoms, std::uint64_t seed,
                             std::uint64_t stream = 0, bool fluctuate_number = false);

struct Direction {
  double theta;  ///< polar angle from +z
  double phi;
};

/// theta in [0, pi] inclusive (n_theta points), phi in [0, 2 pi) (n_phi points).
std::vector<Direction> angular_grid(std::size_t n_theta, std::size_t n_phi);

/// I(k) = |sum_j exp(i (k0 - k) . r_j)|^2 / N with |k| = |k0|, one value per direction.
std::vector<double> directed_emission_pattern(const AtomCloudSample& sample, const Eigen::Vector3d& k0,
                                              std::span<const Direction> directions);

struct EmissionPattern {
  std::vector<Direction> directions;
  std::vector<double> mean_intensity;
  std::vector<double> std_error;
  std::size_t realizations;
  std::size_t n_atoms;
  std::uint64_t seed;
};

/// Disorder average over independent clouds; realization i uses RNG stream i.
/// k0 points along +z with |k0| = 2 pi / lambda_opt.
EmissionPattern averaged_emission_pattern(const EnsembleGeometry& geom, std::size_t n_atoms,
                                          std::span<const Direction> directions,
                                          std::size_t realizations, std::uint64_t seed,
                                          std::size_t threads = 0);

}  // namespace superatom
