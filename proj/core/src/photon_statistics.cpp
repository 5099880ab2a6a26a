#include "superatom/photon_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "superatom/errors.hpp"

namespace superatom {

PhotonNumberDistribution::PhotonNumberDistribution(std::vector<double> p, double tol) : p_(std::move(p)) {
  if (p_.empty()) throw DomainError("p", "distribution is empty");
  double sum = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("p", "probabilities must be finite and >= 0");
    sum += x;
  }
  if (!(std::abs(sum - 1.0) <= tol)) throw DomainError("p", "probabilities do not sum to 1");
}

namespace {

template <class LogP>
PhotonNumberDistribution from_generator(double mean, double tail_tol, LogP&& log_p) {
  std::vector<double> p;
  double cumulative = 0.0;
  for (std::size_t n = 0;; ++n) {
    const double x = std::exp(log_p(n));
    p.push_back(x);
    cumulative += x;
    // Both series have a tail below x (1 + mean) once n > mean.
    if (static_cast<double>(n) > mean && x * (1.0 + mean) < tail_tol) break;
    if (n > 100000) throw DomainError("mean", "too large to tabulate");
  }
  for (double& x : p) x /= cumulative;
  return PhotonNumberDistribution(std::move(p));
}

}  // namespace

PhotonNumberDistribution PhotonNumberDistribution::poisson(double mean, double tail_tol) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("mean", "must be finite and >= 0");
  if (mean == 0.0) return fock(0);
  const double log_mean = std::log(mean);
  auto d = from_generator(mean, tail_tol, [&](std::size_t n) {
    const double k = static_cast<double>(n);
    return -mean + k * log_mean - std::lgamma(k + 1.0);
  });
  // Tail of the Poisson series beyond the last kept term, bounded by a geometric series.
  const double k = static_cast<double>(d.n_max() + 1);
  const double next = std::exp(-mean + k * log_mean - std::lgamma(k + 1.0));
  d.tail_ = next / std::max(1e-300, 1.0 - mean / (k + 1.0));
  return d;
}

PhotonNumberDistribution PhotonNumberDistribution::thermal(double mean, double tail_tol) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("mean", "must be finite and >= 0");
  if (mean == 0.0) return fock(0);
  const double log_ratio = std::log(mean / (1.0 + mean));
  const double log_norm = -std::log1p(mean);
  auto d = from_generator(mean, tail_tol, [&](std::size_t n) {
    return log_norm + static_cast<double>(n) * log_ratio;
  });
  d.tail_ = std::exp(static_cast<double>(d.n_max() + 1) * log_ratio);
  return d;
}

PhotonNumberDistribution PhotonNumberDistribution::fock(std::size_t n) {
  std::vector<double> p(n + 1, 0.0);
  p[n] = 1.0;
  return PhotonNumberDistribution(std::move(p));
}

PhotonNumberDistribution PhotonNumberDistribution::poisson_binomial(std::span<const double> probs) {
  std::vector<double> p{1.0};
  for (double q : probs) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("p", "Bernoulli probability outside [0, 1]");
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t n = 0; n < p.size(); ++n) {
      next[n] += (1.0 - q) * p[n];
      next[n + 1] += q * p[n];
    }
    p = std::move(next);
  }
  return PhotonNumberDistribution(std::move(p));
}

double PhotonNumberDistribution::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < p_.size(); ++n) m += static_cast<double>(n) * p_[n];
  return m;
}

double PhotonNumberDistribution::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t n = 0; n < p_.size(); ++n) {
    const double d = static_cast<double>(n) - m;
    v += d * d * p_[n];
  }
  return v;
}

double PhotonNumberDistribution::fano() const {
  const double m = mean();
  if (m == 0.0) throw DomainError("mean", "Fano factor undefined for vacuum");
  return variance() / m;
}

double PhotonNumberDistribution::g2() const {
  const double m = mean();
  if (m == 0.0) throw DomainError("mean", "g2 undefined for vacuum");
  double f = 0.0;
  for (std::size_t n = 2; n < p_.size(); ++n) {
    f += static_cast<double>(n) * static_cast<double>(n - 1) * p_[n];
  }
  return f / (m * m);
}

PhotonNumberDistribution subtract_distribution(const PhotonNumberDistribution& in) {
  const auto& p = in.probabilities();
  if (p.size() == 1) return in;
  std::vector<double> out(p.begin() + 1, p.end());
  out[0] += p[0];
  return PhotonNumberDistribution(std::move(out));
}

PhotonNumberDistribution annihilate_distribution(const PhotonNumberDistribution& in) {
  const auto& p = in.probabilities();
  const double m = in.mean();
  if (!(m > 0.0)) throw DomainError("mean", "annihilation undefined for zero mean");
  std::vector<double> out(p.size() - 1);
  for (std::size_t n = 0; n + 1 < p.size(); ++n) out[n] = static_cast<double>(n + 1) * p[n + 1] / m;
  return PhotonNumberDistribution(std::move(out));
}

double total_variation(const PhotonNumberDistribution& a, const PhotonNumberDistribution& b) {
  const std::size_t n = std::max(a.probabilities().size(), b.probabilities().size());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) d += std::abs(a[i] - b[i]);
  return 0.5 * d;
}

}  // namespace superatom
