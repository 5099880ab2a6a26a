#include "superatom/three_level.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "superatom/errors.hpp"

namespace superatom {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_nonzero_detuning(double delta) {
  if (delta == 0.0) throw DomainError("delta", "singular detuning, adiabatic elimination undefined");
}

}  // namespace

void ThreeLevelParams::validate() const {
  if (!(gamma_e >= 0.0)) throw DomainError("gamma_e", "must be non-negative");
  if (!std::isfinite(delta)) throw DomainError("delta", "must be finite");
  if (!std::isfinite(delta2)) throw DomainError("delta2", "must be finite");
}

Eigen::Matrix3cd ThreeLevelParams::hamiltonian() const {
  Eigen::Matrix3cd h;
  h << 0.0, 0.5 * omega_p, 0.0,
       0.5 * std::conj(omega_p), -delta, 0.5 * omega_c,
       0.0, 0.5 * std::conj(omega_c), -delta2;
  return h;
}

std::vector<ThreeLevelState> evolve_three_level(const ThreeLevelParams& params,
                                                const ThreeLevelState& state0,
                                                std::span<const double> t_grid,
                                                const IntegratorOptions& options) {
  params.validate();
  if (std::abs(state0.norm_squared() - 1.0) > 1e-9) {
    throw DomainError("state0", "must be normalized");
  }

  const Eigen::Matrix3cd minus_i_h = -kI * params.hamiltonian();
  auto rhs = [&](double, const Eigen::Vector3cd& c) -> Eigen::Vector3cd { return minus_i_h * c; };

  IntegratorOptions opts = options;
  if (opts.initial_step <= 0.0) {
    const double fastest = std::max({std::abs(params.delta), std::abs(params.delta2),
                                     std::abs(params.omega_p), std::abs(params.omega_c), 1e-300});
    opts.initial_step = 0.1 / fastest;
  }

  const Eigen::Vector3cd c0(state0.c_g, state0.c_e, state0.c_r);
  const auto raw = integrate(rhs, c0, t_grid, opts);

  std::vector<ThreeLevelState> out;
  out.reserve(raw.size());
  for (const auto& c : raw) out.push_back({c[0], c[1], c[2]});
  return out;
}

EffectiveTwoLevel adiabatic_eliminate(const ThreeLevelParams& params, double validity_ratio) {
  params.validate();
  require_nonzero_detuning(params.delta);

  const double four_delta = 4.0 * params.delta;
  EffectiveTwoLevel eff{};
  eff.omega_eff = params.omega_p * params.omega_c / four_delta;
  eff.delta_eff = params.delta2 + (std::norm(params.omega_p) - std::norm(params.omega_c)) / four_delta;
  eff.admixture = params.omega_c / (2.0 * params.delta);
  eff.gamma_eff = std::norm(eff.admixture) * params.gamma_e;
  eff.valid = std::abs(params.delta) >=
              validity_ratio * std::max(std::abs(params.omega_p), std::abs(params.omega_c));
  return eff;
}

std::vector<TwoLevelAmplitudes> evolve_effective(const ThreeLevelParams& params,
                                                 const TwoLevelAmplitudes& state0,
                                                 std::span<const double> t_grid,
                                                 const IntegratorOptions& options) {
  params.validate();
  require_nonzero_detuning(params.delta);

  const double four_delta = 4.0 * params.delta;
  const std::complex<double> coupling = params.omega_p * params.omega_c / four_delta;
  Eigen::Matrix2cd h;
  h << std::norm(params.omega_p) / four_delta, coupling,
       std::conj(coupling), std::norm(params.omega_c) / four_delta - params.delta2;
  const Eigen::Matrix2cd minus_i_h = -kI * h;
  auto rhs = [&](double, const Eigen::Vector2cd& c) -> Eigen::Vector2cd { return minus_i_h * c; };

  IntegratorOptions opts = options;
  if (opts.initial_step <= 0.0) {
    opts.initial_step = 0.1 / std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  }

  const auto raw = integrate(rhs, Eigen::Vector2cd(state0.c_g, state0.c_r), t_grid, opts);
  std::vector<TwoLevelAmplitudes> out;
  out.reserve(raw.size());
  for (const auto& c : raw) out.push_back({c[0], c[1]});
  return out;
}

double effective_rabi_period(const ThreeLevelParams& params) {
  const auto eff = adiabatic_eliminate(params);
  const double w = std::sqrt(eff.delta_eff * eff.delta_eff + 4.0 * std::norm(eff.omega_eff));
  if (w == 0.0) throw DomainError("omega_p", "no effective dynamics, period is infinite");
  return 2.0 * std::numbers::pi / w;
}

double reduction_error(const ThreeLevelParams& params, double horizon, std::size_t samples) {
  params.validate();
  require_nonzero_detuning(params.delta);
  if (!(horizon > 0.0)) throw DomainError("horizon", "must be positive");
  if (samples < 2) throw DomainError("samples", "need at least two samples");

  // Both Hamiltonians are constant: propagate through their eigenbases, so the result carries
  // no integrator error even when delta * horizon is large.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> full(params.hamiltonian());
  const Eigen::Vector3cd full_c0 = full.eigenvectors().adjoint() * Eigen::Vector3cd(1.0, 0.0, 0.0);

  const double four_delta = 4.0 * params.delta;
  const std::complex<double> coupling = params.omega_p * params.omega_c / four_delta;
  Eigen::Matrix2cd h;
  h << std::norm(params.omega_p) / four_delta, coupling,
       std::conj(coupling), std::norm(params.omega_c) / four_delta - params.delta2;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eff(h);
  const Eigen::Vector2cd eff_c0 = eff.eigenvectors().adjoint() * Eigen::Vector2cd(1.0, 0.0);

  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = horizon * static_cast<double>(i) / static_cast<double>(samples - 1);
    std::complex<double> r_full = 0.0;
    for (int k = 0; k < 3; ++k) {
      r_full += full.eigenvectors()(2, k) * std::exp(-kI * (full.eigenvalues()(k) * t)) * full_c0(k);
    }
    std::complex<double> r_eff = 0.0;
    for (int k = 0; k < 2; ++k) {
      r_eff += eff.eigenvectors()(1, k) * std::exp(-kI * (eff.eigenvalues()(k) * t)) * eff_c0(k);
    }
    worst = std::max(worst, std::abs(std::norm(r_full) - std::norm(r_eff)));
  }
  return worst;
}

}  // namespace superatom
