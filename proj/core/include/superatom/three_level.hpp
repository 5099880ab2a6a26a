#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "superatom/integrator.hpp"

namespace superatom {

/// Ladder |g> -(omega_p)- |e> -(omega_c)- |r> in the rotating frame (hbar = 1).
struct ThreeLevelParams {
  std::complex<double> omega_p;
  std::complex<double> omega_c;
  double delta = 0.0;    ///< intermediate-state detuning
  double delta2 = 0.0;   ///< two-photon detuning
  double gamma_e = 0.0;  ///< decay rate of |e>, enters only through gamma_eff

  void validate() const;
  Eigen::Matrix3cd hamiltonian() const;
};

struct ThreeLevelState {
  std::complex<double> c_g{1.0, 0.0};
  std::complex<double> c_e{};
  std::complex<double> c_r{};

  double norm_squared() const { return std::norm(c_g) + std::norm(c_e) + std::norm(c_r); }
};

struct EffectiveTwoLevel {
  std::complex<double> omega_eff;  ///< omega_p omega_c / (4 delta), also the g-r ODE coupling
  double delta_eff;                ///< delta2 + (|omega_p|^2 - |omega_c|^2) / (4 delta)
  double gamma_eff;                ///< |admixture|^2 gamma_e
  std::complex<double> admixture;  ///< amplitude of |e> in the dressed Rydberg state
  bool valid;                      ///< |delta| >= validity_ratio * max(|omega_p|, |omega_c|)
};

/// Integrates the coherent three-level Schroedinger equation on t_grid.
std::vector<ThreeLevelState> evolve_three_level(const ThreeLevelParams& params,
                                                const ThreeLevelState& state0,
                                                std::span<const double> t_grid,
                                                const IntegratorOptions& options = {});

/// Throws DomainError("delta") for delta == 0. An invalid regime only clears `valid`.
EffectiveTwoLevel adiabatic_eliminate(const ThreeLevelParams& params, double validity_ratio = 10.0);

struct TwoLevelAmplitudes {
  std::complex<double> c_g;
  std::complex<double> c_r;
};

/// Integrates the eliminated g-r equations (light shifts on the diagonal, omega_eff off it).
std::vector<TwoLevelAmplitudes> evolve_effective(const ThreeLevelParams& params,
                                                 const TwoLevelAmplitudes& state0,
                                                 std::span<const double> t_grid,
                                                 const IntegratorOptions& options = {});

/// Period of the effective g-r oscillation, 2 pi / sqrt(delta_eff^2 + 4 |omega_eff|^2).
double effective_rabi_period(const ThreeLevelParams& params);

/// max over t in [0, horizon] of | |c_r^full|^2 - |c_r^eff|^2 | starting from |g>, with both
/// models propagated exactly in their eigenbases.
double reduction_error(const ThreeLevelParams& params, double horizon, std::size_t samples = 4001);

}  // namespace superatom
