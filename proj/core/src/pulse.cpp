#include "superatom/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "superatom/errors.hpp"

namespace superatom {

std::string_view to_string(PulseShape shape) {
  switch (shape) {
    case PulseShape::none: return "none";
    case PulseShape::square: return "square";
    case PulseShape::gaussian: return "gaussian";
    case PulseShape::sampled: return "sampled";
  }
  return "none";
}

PulseShape parse_pulse_shape(std::string_view name) {
  if (name == "none") return PulseShape::none;
  if (name == "square") return PulseShape::square;
  if (name == "gaussian") return PulseShape::gaussian;
  if (name == "sampled") return PulseShape::sampled;
  throw DomainError("shape", "unknown pulse shape '" + std::string(name) + "'");
}

DrivePulse DrivePulse::none() { return DrivePulse{}; }

DrivePulse DrivePulse::square(double r_in, double tau, double t_start, double phase) {
  if (!(r_in >= 0.0) || !std::isfinite(r_in)) throw DomainError("r_in", "must be finite and >= 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau", "must be finite and > 0");
  if (!std::isfinite(t_start)) throw DomainError("t_start", "must be finite");
  DrivePulse p;
  p.shape_ = PulseShape::square;
  p.r_in_ = r_in;
  p.tau_ = tau;
  p.t_start_ = t_start;
  p.phase_ = phase;
  return p;
}

DrivePulse DrivePulse::gaussian(double r_in, double tau, double sigma, double t_start, double phase) {
  if (!(r_in >= 0.0) || !std::isfinite(r_in)) throw DomainError("r_in", "must be finite and >= 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau", "must be finite and > 0");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma", "must be finite and > 0");
  DrivePulse p;
  p.shape_ = PulseShape::gaussian;
  p.r_in_ = r_in;
  p.tau_ = tau;
  p.sigma_ = sigma;
  p.t_start_ = t_start;
  p.phase_ = phase;
  return p;
}

DrivePulse DrivePulse::sampled(std::vector<double> times, std::vector<std::complex<double>> values,
                               Interpolation interpolation) {
  if (times.size() < 2) throw DomainError("times", "need at least two samples");
  if (times.size() != values.size()) throw DomainError("values", "length differs from times");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw DomainError("times", "not strictly increasing");
  }
  DrivePulse p;
  p.shape_ = PulseShape::sampled;
  p.t_start_ = times.front();
  p.tau_ = times.back() - times.front();
  p.interpolation_ = interpolation;
  for (const auto& v : values) p.r_in_ = std::max(p.r_in_, std::norm(v));
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  return p;
}

std::complex<double> DrivePulse::raw_amplitude(double t) const {
  switch (shape_) {
    case PulseShape::none:
      return {};
    case PulseShape::square:
      if (t < t_start_ || t >= t_end()) return {};
      return std::polar(std::sqrt(r_in_), phase_);
    case PulseShape::gaussian: {
      if (t < t_start_ || t >= t_end()) return {};
      const double x = t - (t_start_ + 0.5 * tau_);
      return std::polar(std::sqrt(r_in_) * std::exp(-x * x / (4.0 * sigma_ * sigma_)), phase_);
    }
    case PulseShape::sampled: {
      if (t < times_.front() || t >= times_.back()) return {};
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const auto i = static_cast<std::size_t>(it - times_.begin()) - 1;
      if (interpolation_ == Interpolation::hold) return values_[i];
      const double u = (t - times_[i]) / (times_[i + 1] - times_[i]);
      return values_[i] + u * (values_[i + 1] - values_[i]);
    }
  }
  return {};
}

std::complex<double> DrivePulse::amplitude(double t) const {
  if (t >= cut_) return {};
  return raw_amplitude(t);
}

double DrivePulse::max_amplitude() const { return std::sqrt(r_in_); }

double DrivePulse::mean_photon_number() const {
  const double end = std::min(t_end(), cut_);
  switch (shape_) {
    case PulseShape::none:
      return 0.0;
    case PulseShape::square:
      if (cut_ >= t_end()) return r_in_ * tau_;
      return r_in_ * std::max(0.0, end - t_start_);
    case PulseShape::gaussian: {
      if (end <= t_start_) return 0.0;
      const double tc = t_start_ + 0.5 * tau_;
      const double s = std::numbers::sqrt2 * sigma_;
      return r_in_ * sigma_ * std::sqrt(std::numbers::pi / 2.0) *
             (std::erf((end - tc) / s) - std::erf((t_start_ - tc) / s));
    }
    case PulseShape::sampled: {
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
        const double a = times_[i];
        if (a >= end) break;
        const double b = std::min(times_[i + 1], end);
        const double full = times_[i + 1] - a;
        const auto va = values_[i];
        if (interpolation_ == Interpolation::hold) {
          total += std::norm(va) * (b - a);
          continue;
        }
        // |va + (vb - va) u|^2 integrated over u in [0, f].
        const auto d = values_[i + 1] - va;
        const double f = (b - a) / full;
        total += full * (std::norm(va) * f + std::real(std::conj(va) * d) * f * f +
                         std::norm(d) * f * f * f / 3.0);
      }
      return total;
    }
  }
  return 0.0;
}

std::vector<double> DrivePulse::breakpoints() const {
  std::vector<double> out;
  switch (shape_) {
    case PulseShape::none:
      break;
    case PulseShape::square:
    case PulseShape::gaussian:
      out = {t_start_, t_end()};
      break;
    case PulseShape::sampled:
      out = times_;
      break;
  }
  if (std::isfinite(cut_)) {
    std::erase_if(out, [&](double t) { return t > cut_; });
    out.push_back(cut_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

std::optional<std::complex<double>> DrivePulse::constant_amplitude(double a, double b) const {
  if (!(b > a)) return amplitude(a);
  // alpha is constant on [a, b) only if no breakpoint lies strictly inside.
  for (double t : breakpoints()) {
    if (t > a && t < b) return std::nullopt;
  }
  const auto va = amplitude(a);
  switch (shape_) {
    case PulseShape::none:
    case PulseShape::square:
      return va;
    case PulseShape::gaussian:
      if (a >= t_end() || b <= t_start_ || a >= cut_) return va;
      return std::nullopt;
    case PulseShape::sampled:
      if (a >= times_.back() || b <= times_.front() || a >= cut_) return va;
      if (interpolation_ == Interpolation::hold) return va;
      {
        const auto it = std::upper_bound(times_.begin(), times_.end(), a);
        const auto i = static_cast<std::size_t>(it - times_.begin()) - 1;
        if (values_[i] == values_[i + 1]) return va;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

DrivePulse DrivePulse::truncated(double t_cut) const {
  DrivePulse p = *this;
  p.cut_ = std::min(cut_, t_cut);
  return p;
}

}  // namespace superatom
