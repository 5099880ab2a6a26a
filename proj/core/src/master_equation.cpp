#include "superatom/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "superatom/errors.hpp"

namespace superatom {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

void PhysicalRates::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("kappa", "must be finite and >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gamma", "must be finite and >= 0");
  if (!(gamma_d >= 0.0) || !std::isfinite(gamma_d)) {
    throw DomainError("gamma_d", "must be finite and >= 0");
  }
}

BetaFactors beta_factors(const PhysicalRates& rates) {
  rates.validate();
  if (!(rates.kappa + rates.gamma > 0.0)) throw DomainError("kappa", "kappa + gamma must be > 0");
  return {rates.kappa / (rates.kappa + rates.gamma),
          rates.kappa / (rates.kappa + rates.gamma + rates.gamma_d)};
}

DensityMatrix3 DensityMatrix3::pure(Level level) {
  DensityMatrix3 rho;
  rho.m(level, level) = 1.0;
  return rho;
}

double DensityMatrix3::trace_error() const { return std::abs(m.trace() - 1.0); }

double DensityMatrix3::hermiticity_error() const { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix3::min_eigenvalue() const {
  const Matrix3c h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void check_density_matrix(const DensityMatrix3& rho, double time, double tol) {
  const double trace_error = rho.trace_error();
  const double min_eig = rho.min_eigenvalue();
  if (!(trace_error <= tol) || !(min_eig >= -tol) || !(rho.hermiticity_error() <= tol)) {
    throw InvariantViolation(time, trace_error, min_eig);
  }
}

VecRho vectorize(const Matrix3c& m) { return Eigen::Map<const VecRho>(m.data()); }

Matrix3c unvectorize(const VecRho& v) { return Eigen::Map<const Matrix3c>(v.data()); }

Matrix3c sigma_gw() {
  Matrix3c s = Matrix3c::Zero();
  s(kG, kW) = 1.0;
  return s;
}

LindbladGenerator::LindbladGenerator(const PhysicalRates& rates, double detuning)
    : rates_(rates), detuning_(detuning) {
  rates_.validate();
  if (!std::isfinite(detuning)) throw DomainError("detuning", "must be finite");

  Matrix3c c = Matrix3c::Zero();
  c(kG, kW) = std::sqrt(rates_.kappa + rates_.gamma);
  jumps_.push_back(c);
  c.setZero();
  c(kD, kW) = std::sqrt(rates_.gamma_d);
  jumps_.push_back(c);
  c.setZero();
  c(kG, kD) = std::sqrt(rates_.gamma);
  jumps_.push_back(c);

  decay_.setZero();
  for (const auto& j : jumps_) decay_ += j.adjoint() * j;
}

Matrix3c LindbladGenerator::hamiltonian(std::complex<double> alpha) const {
  Matrix3c h = Matrix3c::Zero();
  const double sk = std::sqrt(rates_.kappa);
  h(kG, kW) = sk * std::conj(alpha);
  h(kW, kG) = sk * alpha;
  h(kW, kW) = -detuning_;
  return h;
}

Matrix3c LindbladGenerator::apply(std::complex<double> alpha, const Matrix3c& rho) const {
  const Matrix3c h = hamiltonian(alpha);
  Matrix3c out = -kI * (h * rho - rho * h);
  for (const auto& j : jumps_) out += j * rho * j.adjoint();
  out -= 0.5 * (decay_ * rho + rho * decay_);
  return out;
}

Superop LindbladGenerator::superoperator(std::complex<double> alpha) const {
  // vec(A X B) = (B^T kron A) vec(X).
  const auto kron = [](const Matrix3c& a, const Matrix3c& b) {
    Superop k;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) k.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    return k;
  };
  const Matrix3c id = Matrix3c::Identity();
  const Matrix3c h = hamiltonian(alpha);
  Superop l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& j : jumps_) l += kron(j.conjugate(), j);
  l -= 0.5 * (kron(id, decay_) + kron(decay_.transpose(), id));
  return l;
}

double LindbladGenerator::fastest_rate(double max_alpha) const {
  return std::max({rates_.kappa + rates_.gamma, rates_.gamma_d,
                   2.0 * std::sqrt(rates_.kappa) * max_alpha, std::abs(detuning_), 1e-300});
}

std::vector<DensityMatrix3> evolve_master(const PhysicalRates& rates, const DrivePulse& pulse,
                                          const DensityMatrix3& rho0, std::span<const double> t_grid,
                                          const EvolveOptions& options) {
  const LindbladGenerator gen(rates, options.detuning);
  check_density_matrix(rho0, t_grid.empty() ? 0.0 : t_grid.front(), options.invariant_tol);

  IntegratorOptions opts = options.integrator;
  if (opts.initial_step <= 0.0) opts.initial_step = 0.1 / gen.fastest_rate(pulse.max_amplitude());

  const auto rhs = [&](double t, const Matrix3c& rho) -> Matrix3c {
    return gen.apply(pulse.amplitude(t), rho);
  };
  const auto breaks = pulse.breakpoints();
  const auto raw = integrate(rhs, rho0.m, t_grid, opts, breaks);

  std::vector<DensityMatrix3> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    DensityMatrix3 rho{raw[i]};
    if (options.check_invariants) check_density_matrix(rho, t_grid[i], options.invariant_tol);
    out.push_back(rho);
  }
  return out;
}

DensityMatrix3 steady_state(const PhysicalRates& rates, std::complex<double> alpha, double detuning) {
  const LindbladGenerator gen(rates, detuning);
  // Without dephasing nothing feeds |D>, so the state reached from the driven sector has an
  // empty D row and column. Pinning them keeps the answer unique when Gamma = 0 as well.
  const bool pin_dark = rates.gamma_d == 0.0;
  const int rows = 10 + (pin_dark ? 5 : 0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, 9);
  a.topRows<9>() = gen.superoperator(alpha);
  for (int i = 0; i < 3; ++i) a(9, 4 * i) = 1.0;
  if (pin_dark) {
    int row = 10;
    for (int k = 0; k < 3; ++k) {
      a(row++, 3 * kD + k) = 1.0;  // rho(k, D)
      if (k != kD) a(row++, 3 * k + kD) = 1.0;  // rho(D, k)
    }
  }
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(rows);
  b(9) = 1.0;
  const Eigen::VectorXcd v = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  Matrix3c m = unvectorize(VecRho(v));
  m = 0.5 * (m + m.adjoint());
  return {m};
}

double omega_eff_squared(double kappa, double r_in) {
  return 4.0 * kappa * r_in - (kappa / 4.0) * (kappa / 4.0);
}

double analytic_steady_rho22(double kappa, double r_in) {
  if (!(kappa > 0.0)) throw DomainError("kappa", "must be > 0");
  if (!(r_in >= 0.0)) throw DomainError("r_in", "must be >= 0");
  return 4.0 * kappa * r_in / (kappa * kappa + 8.0 * kappa * r_in);
}

double analytic_rho22(double kappa, double r_in, double t) {
  const double amplitude = analytic_steady_rho22(kappa, r_in);
  if (t <= 0.0) return 0.0;

  const std::complex<double> omega = std::sqrt(std::complex<double>(omega_eff_squared(kappa, r_in)));
  // sin(Omega t) / Omega, finite as Omega -> 0.
  std::complex<double> sinc_t;
  if (std::abs(omega) * t < 1e-4) {
    const auto x2 = omega * omega * t * t;
    sinc_t = t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  } else {
    sinc_t = std::sin(omega * t) / omega;
  }
  const std::complex<double> bracket = 3.0 * kappa / 4.0 * sinc_t + std::cos(omega * t);
  return amplitude * (1.0 - bracket.real() * std::exp(-3.0 * kappa * t / 4.0));
}

double heaviside(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return 0.0;
  return 0.5;
}

OutputFieldOperator::OutputFieldOperator(double kappa, DrivePulse pulse)
    : kappa_(kappa), pulse_(std::move(pulse)) {
  if (!(kappa >= 0.0)) throw DomainError("kappa", "must be >= 0");
}

Matrix3c OutputFieldOperator::at(double s) const {
  return pulse_.amplitude(s) * Matrix3c::Identity() - kI * std::sqrt(kappa_) * sigma_gw();
}

Matrix3c OutputFieldOperator::at_position(double x, double t, double c) const {
  const double s = t - x / c;
  return pulse_.amplitude(s) * Matrix3c::Identity() -
         kI * std::sqrt(kappa_) * heaviside(x) * heaviside(c * t - x) * sigma_gw();
}

double OutputFieldOperator::flux(double s, const Matrix3c& rho) const {
  const Matrix3c e = at(s);
  return (e.adjoint() * e * rho).trace().real();
}

FluxTrace output_flux(const PhysicalRates& rates, const DrivePulse& pulse,
                      std::span<const double> times, std::span<const DensityMatrix3> rho_traj) {
  if (times.size() != rho_traj.size()) {
    throw std::invalid_argument("output_flux: time grid and trajectory lengths differ");
  }
  rates.validate();
  const OutputFieldOperator field(rates.kappa, pulse);

  FluxTrace trace;
  trace.times.assign(times.begin(), times.end());
  const std::size_t n = times.size();
  trace.flux_in.resize(n);
  trace.flux_out.resize(n);
  trace.rho_ww.resize(n);
  trace.rho_dd.resize(n);
  trace.relative_modulation.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double in = pulse.rate(times[i]);
    const double out = field.flux(times[i], rho_traj[i].m);
    trace.flux_in[i] = in;
    trace.flux_out[i] = out;
    trace.rho_ww[i] = rho_traj[i].population(kW);
    trace.rho_dd[i] = rho_traj[i].population(kD);
    trace.relative_modulation[i] =
        in > 0.0 ? (in - out) / in : std::numeric_limits<double>::quiet_NaN();
  }
  return trace;
}

double integrate_trapezoid(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw std::invalid_argument("trapezoid: length mismatch");
  double total = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    total += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
  }
  return total;
}

}  // namespace superatom
