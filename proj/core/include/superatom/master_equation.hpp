#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "superatom/integrator.hpp"
#include "superatom/pulse.hpp"

namespace superatom {

/// Basis indices of the effective emitter.
enum Level : int { kG = 0, kW = 1, kD = 2 };

struct PhysicalRates {
  double kappa = 1.0;    ///< collective emission into the forward mode
  double gamma = 0.0;    ///< free-space single-atom rate
  double gamma_d = 0.0;  ///< dephasing |W> -> |D>

  void validate() const;
};

struct BetaFactors {
  double beta;      ///< kappa / (kappa + Gamma)
  double beta_coh;  ///< kappa / (kappa + Gamma + gamma_D)
};

BetaFactors beta_factors(const PhysicalRates& rates);

using Matrix3c = Eigen::Matrix3cd;
using Superop = Eigen::Matrix<std::complex<double>, 9, 9>;
using VecRho = Eigen::Matrix<std::complex<double>, 9, 1>;

/// 3x3 density matrix over (|G>, |W>, |D>).
struct DensityMatrix3 {
  Matrix3c m = Matrix3c::Zero();

  static DensityMatrix3 pure(Level level);
  static DensityMatrix3 from_matrix(const Matrix3c& m) { return {m}; }

  double population(Level level) const { return m(level, level).real(); }
  double trace_error() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
};

/// Throws InvariantViolation when |tr - 1| or -min eigenvalue exceed tol.
void check_density_matrix(const DensityMatrix3& rho, double time, double tol = 1e-9);

/// Column-stacked vec(rho) and back.
VecRho vectorize(const Matrix3c& m);
Matrix3c unvectorize(const VecRho& v);

/// sigma_GW = |G><W|.
Matrix3c sigma_gw();

/// Liouvillian of the driven emitter for a fixed drive amplitude alpha. The optional detuning
/// adds -detuning |W><W| to H0.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const PhysicalRates& rates, double detuning = 0.0);

  const PhysicalRates& rates() const noexcept { return rates_; }
  double detuning() const noexcept { return detuning_; }

  /// H0 = sqrt(kappa) (alpha* sigma + alpha sigma^dagger) - detuning |W><W|.
  Matrix3c hamiltonian(std::complex<double> alpha) const;
  /// d rho / dt.
  Matrix3c apply(std::complex<double> alpha, const Matrix3c& rho) const;
  /// Matrix of apply() acting on vectorize(rho).
  Superop superoperator(std::complex<double> alpha) const;
  /// Fastest rate present, used to pick integration steps.
  double fastest_rate(double max_alpha) const;

  /// Jump operators C_k with the dissipator sum_k D[C_k].
  const std::vector<Matrix3c>& jumps() const noexcept { return jumps_; }

 private:
  PhysicalRates rates_;
  double detuning_;
  std::vector<Matrix3c> jumps_;
  Matrix3c decay_;  ///< sum_k C_k^dagger C_k
};

struct EvolveOptions {
  IntegratorOptions integrator{};
  double detuning = 0.0;
  bool check_invariants = true;
  double invariant_tol = 1e-9;
};

/// Lindblad evolution; returns rho at every grid time.
std::vector<DensityMatrix3> evolve_master(const PhysicalRates& rates, const DrivePulse& pulse,
                                          const DensityMatrix3& rho0, std::span<const double> t_grid,
                                          const EvolveOptions& options = {});

/// Stationary state of the generator at constant drive alpha: the trace-one least-squares
/// solution of L vec(rho) = 0. With gamma_D = 0 the |D> row and column are held at zero, which
/// selects the state reached from |G> when Gamma = 0 leaves |D> decoupled.
DensityMatrix3 steady_state(const PhysicalRates& rates, std::complex<double> alpha,
                            double detuning = 0.0);

/// Omega^2 = 4 kappa R - (kappa / 4)^2.
double omega_eff_squared(double kappa, double r_in);

/// Closed-form rho_WW(t) for Gamma = gamma_D = 0 and a constant drive switched on at t = 0.
/// Negative Omega^2 continues analytically into the overdamped branch.
double analytic_rho22(double kappa, double r_in, double t);

/// 4 kappa R / (kappa^2 + 8 kappa R).
double analytic_steady_rho22(double kappa, double r_in);

/// Heaviside step with theta(0) = 1/2.
double heaviside(double x);

/// Output field E = alpha(s) 1 - i sqrt(kappa) sigma_GW at retarded time s.
class OutputFieldOperator {
 public:
  OutputFieldOperator(double kappa, DrivePulse pulse);

  double kappa() const noexcept { return kappa_; }
  const DrivePulse& pulse() const noexcept { return pulse_; }

  Matrix3c at(double s) const;
  /// Field at position x and lab time t (c = 1 by default): the emitter term carries
  /// theta(x) theta(c t - x), so it is halved at x = 0.
  Matrix3c at_position(double x, double t, double c = 1.0) const;
  /// <E^dagger E> in state rho at retarded time s.
  double flux(double s, const Matrix3c& rho) const;

 private:
  double kappa_;
  DrivePulse pulse_;
};

struct FluxTrace {
  std::vector<double> times;
  std::vector<double> flux_in;
  std::vector<double> flux_out;
  std::vector<double> rho_ww;
  std::vector<double> rho_dd;
  /// (I_in - I_out) / I_in, NaN where I_in = 0.
  std::vector<double> relative_modulation;
};

FluxTrace output_flux(const PhysicalRates& rates, const DrivePulse& pulse,
                      std::span<const double> times, std::span<const DensityMatrix3> rho_traj);

/// Trapezoid rule on a trace column.
double integrate_trapezoid(std::span<const double> times, std::span<const double> values);

}  // namespace superatom
