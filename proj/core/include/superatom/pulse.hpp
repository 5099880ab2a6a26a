#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superatom {

enum class PulseShape { none, square, gaussian, sampled };

std::string_view to_string(PulseShape shape);
PulseShape parse_pulse_shape(std::string_view name);

enum class Interpolation { hold, linear };

/// Coherent drive amplitude alpha(t), with |alpha|^2 the photon rate.
///
/// All shapes are right-continuous: a square pulse is on over [t_start, t_start + tau).
class DrivePulse {
 public:
  /// alpha = 0 everywhere.
  static DrivePulse none();
  /// |alpha|^2 = r_in on [t_start, t_start + tau).
  static DrivePulse square(double r_in, double tau, double t_start = 0.0, double phase = 0.0);
  /// |alpha|^2 = r_in exp(-(t - tc)^2 / (2 sigma^2)) with tc = t_start + tau / 2, truncated to
  /// [t_start, t_start + tau).
  static DrivePulse gaussian(double r_in, double tau, double sigma, double t_start = 0.0,
                             double phase = 0.0);
  /// alpha from samples on a strictly increasing time grid, zero outside
  /// [times.front(), times.back()).
  static DrivePulse sampled(std::vector<double> times, std::vector<std::complex<double>> values,
                            Interpolation interpolation = Interpolation::linear);

  PulseShape shape() const noexcept { return shape_; }
  double tau() const noexcept { return tau_; }
  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_start_ + tau_; }
  /// Peak photon rate (the constant rate for square pulses).
  double r_in() const noexcept { return r_in_; }
  double sigma() const noexcept { return sigma_; }
  double phase() const noexcept { return phase_; }
  const std::vector<double>& sample_times() const noexcept { return times_; }
  const std::vector<std::complex<double>>& sample_values() const noexcept { return values_; }
  Interpolation interpolation() const noexcept { return interpolation_; }

  std::complex<double> amplitude(double t) const;
  double rate(double t) const { return std::norm(amplitude(t)); }
  double max_amplitude() const;

  /// Integral of |alpha|^2 over all times.
  double mean_photon_number() const;

  /// Times where alpha or its derivative jumps.
  std::vector<double> breakpoints() const;

  /// The amplitude if alpha is constant on [a, b), otherwise nothing.
  std::optional<std::complex<double>> constant_amplitude(double a, double b) const;

  /// Copy of this pulse with alpha restricted to t < t_cut.
  DrivePulse truncated(double t_cut) const;

 private:
  PulseShape shape_ = PulseShape::none;
  double r_in_ = 0.0;
  double tau_ = 0.0;
  double t_start_ = 0.0;
  double sigma_ = 0.0;
  double phase_ = 0.0;
  double cut_ = std::numeric_limits<double>::infinity();
  std::vector<double> times_;
  std::vector<std::complex<double>> values_;
  Interpolation interpolation_ = Interpolation::linear;

  std::complex<double> raw_amplitude(double t) const;
};

}  // namespace superatom
