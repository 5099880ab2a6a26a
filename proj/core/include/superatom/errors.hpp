#pragma once

#include <stdexcept>
#include <string>

namespace superatom {

/// A parameter is outside its physical domain. The message names the field.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string field, const std::string& what)
      : std::domain_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The adaptive integrator could not meet its tolerance.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(double time, const std::string& what)
      : std::runtime_error(what + " at t = " + std::to_string(time)), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A density matrix left the physical set (trace or positivity) mid-run.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(double time, double trace_error, double min_eigenvalue)
      : std::runtime_error("density matrix invariant violated at t = " + std::to_string(time) +
                           " (|tr - 1| = " + std::to_string(trace_error) +
                           ", min eigenvalue = " + std::to_string(min_eigenvalue) + ")"),
        time_(time),
        trace_error_(trace_error),
        min_eigenvalue_(min_eigenvalue) {}

  double time() const noexcept { return time_; }
  double trace_error() const noexcept { return trace_error_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double time_;
  double trace_error_;
  double min_eigenvalue_;
};

/// A correlation function cannot be normalized because the flux vanishes.
class NormalizationError : public std::runtime_error {
 public:
  NormalizationError(std::size_t index, double time)
      : std::runtime_error("output flux vanishes at grid index " + std::to_string(index) +
                           " (s = " + std::to_string(time) + ")"),
        index_(index),
        time_(time) {}

  std::size_t index() const noexcept { return index_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t index_;
  double time_;
};

}  // namespace superatom
