#include "superatom/collective.hpp"

#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "superatom/errors.hpp"
#include "superatom/parallel.hpp"
#include "superatom/random.hpp"

namespace superatom {

namespace {
constexpr double kPi = std::numbers::pi;
}

void EnsembleGeometry::validate() const {
  if (!(sigma_r > 0.0)) throw DomainError("sigma_r", "must be positive");
  if (!(sigma_z > 0.0)) throw DomainError("sigma_z", "must be positive");
  if (!(n0 >= 0.0)) throw DomainError("n0", "must be non-negative");
  if (!(w0 > 0.0)) throw DomainError("w0", "must be positive");
  if (!(lambda_opt > 0.0)) throw DomainError("lambda_opt", "must be positive");
}

RegimeFlags regime_flags(const EnsembleGeometry& geom, double margin) {
  return {margin * geom.lambda_opt <= geom.w0, margin * geom.lambda_opt <= geom.sigma_z,
          margin * geom.w0 <= geom.sigma_r};
}

double bright_state_enhancement(std::size_t n_atoms) {
  if (n_atoms == 0) throw DomainError("n_atoms", "must be at least 1");
  return std::sqrt(static_cast<double>(n_atoms));
}

double mean_overlap_atoms(const EnsembleGeometry& geom) {
  geom.validate();
  const double n_bar = std::pow(2.0 * kPi, 1.5) / 4.0 * geom.w0 * geom.w0 * geom.sigma_z * geom.n0;
  const double area = kPi * geom.w0 * geom.w0 / 2.0;
  [[maybe_unused]] const double via_area = std::sqrt(2.0 * kPi) * geom.sigma_z * area * geom.n0;
  assert(std::abs(n_bar - via_area) <= 1e-12 * std::max(1.0, n_bar));
  return n_bar;
}

CollectiveCoupling collective_rates(const EnsembleGeometry& geom, double gamma,
                                    bool include_vacuum_term) {
  geom.validate();
  if (!(gamma > 0.0)) throw DomainError("gamma", "must be positive");

  CollectiveCoupling c{};
  c.n_bar = mean_overlap_atoms(geom);
  c.gamma = gamma;
  c.mode_area = kPi * geom.w0 * geom.w0 / 2.0;
  const double atoms = include_vacuum_term ? c.n_bar + 1.0 : c.n_bar;
  const double lambda2 = geom.lambda_opt * geom.lambda_opt;
  c.kappa = 3.0 * atoms * gamma * lambda2 / (8.0 * kPi * c.mode_area);
  c.g_col = 2.0 * std::sqrt(c.kappa);
  return c;
}

double effective_collective_coupling(const CollectiveCoupling& coupling, double omega_c, double delta) {
  if (delta == 0.0) throw DomainError("delta", "singular detuning");
  return coupling.g_col * omega_c / (2.0 * delta);
}

double effective_collective_rabi(double g_col_eff, double photon_rate) {
  if (!(photon_rate >= 0.0)) throw DomainError("photon_rate", "must be non-negative");
  return g_col_eff * std::sqrt(photon_rate);
}

double forward_cone(const EnsembleGeometry& geom) {
  geom.validate();
  const double s = geom.lambda_opt / (std::sqrt(kPi) * geom.w0);
  if (s > 1.0) return kFullSphere;
  return std::asin(s);
}

double free_space_rate(double g0, double omega, double hbar, double c) {
  return 4.0 * g0 * g0 * omega * omega * omega / (3.0 * hbar * c * c * c);
}

double microscopic_kappa(double n_bar, double g0, double omega, double mode_area, double hbar,
                         double c, bool include_vacuum_term) {
  const double atoms = include_vacuum_term ? n_bar + 1.0 : n_bar;
  return 2.0 * kPi * atoms * g0 * g0 * omega / (mode_area * hbar * c);
}

AtomCloudSample sample_cloud(const EnsembleGeometry& geom, std::size_t n_atoms, std::uint64_t seed,
                             std::uint64_t stream, bool fluctuate_number) {
  geom.validate();
  auto rng = make_stream(seed, stream);
  std::size_t count = n_atoms;
  if (fluctuate_number && n_atoms > 0) {
    count = std::poisson_distribution<std::size_t>(static_cast<double>(n_atoms))(rng);
  }

  std::normal_distribution<double> transverse(0.0, geom.sigma_r);
  std::normal_distribution<double> axial(0.0, geom.sigma_z);
  AtomCloudSample sample{{}, seed, stream};
  sample.positions.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double x = transverse(rng);
    const double y = transverse(rng);
    const double z = axial(rng);
    sample.positions.emplace_back(x, y, z);
  }
  return sample;
}

std::vector<Direction> angular_grid(std::size_t n_theta, std::size_t n_phi) {
  if (n_theta < 2) throw DomainError("n_theta", "need at least 2 polar angles");
  if (n_phi < 1) throw DomainError("n_phi", "need at least 1 azimuth");
  std::vector<Direction> grid;
  grid.reserve(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta = kPi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
    for (std::size_t j = 0; j < n_phi; ++j) {
      grid.push_back({theta, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_phi)});
    }
  }
  return grid;
}

std::vector<double> directed_emission_pattern(const AtomCloudSample& sample, const Eigen::Vector3d& k0,
                                              std::span<const Direction> directions) {
  if (sample.positions.empty()) throw DomainError("sample", "no atoms");
  const double k = k0.norm();
  const double n = static_cast<double>(sample.positions.size());

  std::vector<double> intensity;
  intensity.reserve(directions.size());
  for (const auto& d : directions) {
    const Eigen::Vector3d k_hat(std::sin(d.theta) * std::cos(d.phi),
                                std::sin(d.theta) * std::sin(d.phi), std::cos(d.theta));
    const Eigen::Vector3d dk = k0 - k * k_hat;
    std::complex<double> sum{};
    for (const auto& r : sample.positions) sum += std::polar(1.0, dk.dot(r));
    intensity.push_back(std::norm(sum) / n);
  }
  return intensity;
}

EmissionPattern averaged_emission_pattern(const EnsembleGeometry& geom, std::size_t n_atoms,
                                          std::span<const Direction> directions,
                                          std::size_t realizations, std::uint64_t seed,
                                          std::size_t threads) {
  geom.validate();
  if (realizations == 0) throw DomainError("realizations", "must be at least 1");
  if (n_atoms == 0) throw DomainError("n_atoms", "must be at least 1");

  const Eigen::Vector3d k0(0.0, 0.0, 2.0 * kPi / geom.lambda_opt);
  std::vector<std::vector<double>> per_realization(realizations);
  parallel_for(realizations, threads, [&](std::size_t i) {
    const auto sample = sample_cloud(geom, n_atoms, seed, i);
    per_realization[i] = directed_emission_pattern(sample, k0, directions);
  });

  EmissionPattern out{{directions.begin(), directions.end()},
                      std::vector<double>(directions.size(), 0.0),
                      std::vector<double>(directions.size(), 0.0),
                      realizations,
                      n_atoms,
                      seed};
  const double m = static_cast<double>(realizations);
  for (std::size_t d = 0; d < directions.size(); ++d) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& r : per_realization) {
      sum += r[d];
      sum_sq += r[d] * r[d];
    }
    const double mean = sum / m;
    out.mean_intensity[d] = mean;
    if (realizations > 1) {
      const double var = std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0));
      out.std_error[d] = std::sqrt(var / m);
    }
  }
  return out;
}

}  // namespace superatom
