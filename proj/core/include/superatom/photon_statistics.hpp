#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace superatom {

/// Diagonal photon-number statistics p(n), n = 0..n_max.
class PhotonNumberDistribution {
 public:
  /// Validates p(n) >= 0 and |sum p - 1| <= tol.
  explicit PhotonNumberDistribution(std::vector<double> p, double tol = 1e-12);

  /// Truncated where the remaining tail is below tail_tol, then renormalized.
  static PhotonNumberDistribution poisson(double mean, double tail_tol = 1e-16);
  static PhotonNumberDistribution thermal(double mean, double tail_tol = 1e-16);
  static PhotonNumberDistribution fock(std::size_t n);
  /// Number of successes of independent Bernoulli trials with probabilities p_j.
  static PhotonNumberDistribution poisson_binomial(std::span<const double> p);

  const std::vector<double>& probabilities() const noexcept { return p_; }
  std::size_t n_max() const noexcept { return p_.size() - 1; }
  double operator[](std::size_t n) const { return n < p_.size() ? p_[n] : 0.0; }
  /// Probability mass dropped by the cutoff when the distribution was built.
  double tail_mass() const noexcept { return tail_; }

  double mean() const;
  double variance() const;
  double fano() const;
  /// <n (n - 1)> / <n>^2.
  double g2() const;

 private:
  std::vector<double> p_;
  double tail_ = 0.0;
};

/// Ideal absorber s = sum_n |n-1><n|: p_out(0) = p(0) + p(1), p_out(n) = p(n + 1).
PhotonNumberDistribution subtract_distribution(const PhotonNumberDistribution& in);

/// Heralded annihilation: p_out(n) proportional to (n + 1) p(n + 1).
PhotonNumberDistribution annihilate_distribution(const PhotonNumberDistribution& in);

/// Half the l1 distance, padding the shorter distribution with zeros.
double total_variation(const PhotonNumberDistribution& a, const PhotonNumberDistribution& b);

}  // namespace superatom
