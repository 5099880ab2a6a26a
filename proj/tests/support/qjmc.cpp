#include "qjmc.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

namespace qjmc {

namespace {

using cd = std::complex<double>;
using Vec = Eigen::Vector3cd;
using Mat = Eigen::Matrix3cd;
constexpr cd kI{0.0, 1.0};

/// exp(-i H_eff t) for a fixed non-Hermitian H_eff, by eigendecomposition when it is well
/// conditioned and by the matrix exponential otherwise.
class Evolution {
 public:
  explicit Evolution(const Mat& h_eff) : h_(h_eff) {
    Eigen::ComplexEigenSolver<Mat> es(h_eff);
    v_ = es.eigenvectors();
    lambda_ = es.eigenvalues();
    Eigen::FullPivLU<Mat> lu(v_);
    diagonal_ = lu.isInvertible() && lu.rcond() > 1e-8;
    if (diagonal_) v_inv_ = lu.inverse();
  }

  Vec apply(double t, const Vec& psi) const {
    if (t == 0.0) return psi;
    if (diagonal_) {
      Vec c = v_inv_ * psi;
      for (int k = 0; k < 3; ++k) c(k) *= std::exp(-kI * lambda_(k) * t);
      return v_ * c;
    }
    const Mat m = (-kI * t * h_).exp();
    return m * psi;
  }

 private:
  Mat h_;
  Mat v_;
  Mat v_inv_;
  Eigen::Vector3cd lambda_;
  bool diagonal_ = false;
};

struct Model {
  std::vector<Mat> jumps;
  Mat field_op_drive;  ///< E with the drive on
  Mat field_op_off;
  Evolution on;
  Evolution off;
  double t_on;
  double t_off;

  bool driven(double t) const { return t >= t_on && t < t_off; }
  const Mat& field(double t) const { return driven(t) ? field_op_drive : field_op_off; }
};

Model build(const Setup& s) {
  Mat sigma = Mat::Zero();
  sigma(0, 1) = 1.0;  // |G><W|
  Mat c1 = std::sqrt(s.kappa + s.gamma) * sigma;
  Mat c2 = Mat::Zero();
  c2(2, 1) = std::sqrt(s.gamma_d);
  Mat c3 = Mat::Zero();
  c3(0, 2) = std::sqrt(s.gamma);
  const Mat decay = c1.adjoint() * c1 + c2.adjoint() * c2 + c3.adjoint() * c3;

  const double a = std::sqrt(s.r_in);
  const Mat h_on = std::sqrt(s.kappa) * a * (sigma + sigma.adjoint());
  const Mat h_eff_on = h_on - 0.5 * kI * decay;
  const Mat h_eff_off = -0.5 * kI * decay;

  const Mat e_on = a * Mat::Identity() - kI * std::sqrt(s.kappa) * sigma;
  const Mat e_off = -kI * std::sqrt(s.kappa) * sigma;
  return {{c1, c2, c3}, e_on, e_off, Evolution(h_eff_on), Evolution(h_eff_off), s.t_on, s.t_off};
}

/// One trajectory segment: carries an unnormalized state and the jump threshold.
class Walker {
 public:
  Walker(const Model& m, Vec psi, double t, std::mt19937_64& rng)
      : m_(m), psi_(psi.normalized()), t_(t), rng_(rng) {
    draw();
  }

  /// Advances to time t_end, performing any jumps on the way.
  void advance(double t_end) {
    while (t_ < t_end) {
      double stop = t_end;
      if (t_ < m_.t_on && m_.t_on < stop) stop = m_.t_on;
      if (t_ < m_.t_off && m_.t_off < stop) stop = m_.t_off;
      const Evolution& ev = m_.driven(t_) ? m_.on : m_.off;

      const Vec end = ev.apply(stop - t_, psi_);
      if (end.squaredNorm() > threshold_) {
        psi_ = end;
        t_ = stop;
        continue;
      }
      // Bisect for the time where the norm crosses the threshold.
      double lo = 0.0;
      double hi = stop - t_;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ev.apply(mid, psi_).squaredNorm() > threshold_ ? lo : hi) = mid;
      }
      const Vec at = ev.apply(hi, psi_);
      t_ += hi;
      jump(at);
    }
  }

  /// Normalized state at the current time.
  Vec state() const { return psi_.normalized(); }
  double time() const { return t_; }

 private:
  const Model& m_;
  Vec psi_;
  double t_;
  std::mt19937_64& rng_;
  double threshold_ = 0.0;

  void draw() { threshold_ = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) * psi_.squaredNorm(); }

  void jump(const Vec& at) {
    std::array<double, 3> w{};
    double total = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      w[k] = (m_.jumps[k] * at).squaredNorm();
      total += w[k];
    }
    double u = std::uniform_real_distribution<double>(0.0, total)(rng_);
    std::size_t k = 0;
    while (k < 2 && u > w[k]) u -= w[k++];
    psi_ = (m_.jumps[k] * at).normalized();
    draw();
  }
};

/// <psi| E^dagger E |psi> for normalized psi.
double intensity(const Model& m, double t, const Vec& psi) { return (m.field(t) * psi).squaredNorm(); }

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  std::pair<double, double> mean_se(double n) const {
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
  }
};

}  // namespace

Estimate estimate(const Setup& setup, std::array<double, 3> t, std::size_t trajectories,
                  std::uint64_t seed) {
  const Model m = build(setup);
  std::mt19937_64 rng(seed);

  std::array<Accumulator, 3> acc_i;
  std::array<std::array<Accumulator, 3>, 3> acc_g2;
  Accumulator acc_g3;

  const Vec ground(1.0, 0.0, 0.0);
  for (std::size_t n = 0; n < trajectories; ++n) {
    Walker main(m, ground, 0.0, rng);
    std::array<Vec, 3> psi;
    for (int k = 0; k < 3; ++k) {
      main.advance(t[k]);
      psi[k] = main.state();
      const Vec e_psi = m.field(t[k]) * psi[k];
      acc_i[k].add(e_psi.squaredNorm());
      // <E^dagger E^dagger E E> at equal times.
      acc_g2[k][k].add((m.field(t[k]) * e_psi).squaredNorm());
    }

    // Branch A: detection at t1, then continue to t2 and t3.
    const Vec ea = m.field(t[0]) * psi[0];
    const double wa = ea.squaredNorm();
    if (wa > 0.0) {
      Walker a(m, ea, t[0], rng);
      a.advance(t[1]);
      const Vec a2 = a.state();
      acc_g2[0][1].add(wa * intensity(m, t[1], a2));

      // Branch AB: second detection at t2.
      const Vec eab = m.field(t[1]) * a2;
      const double wab = wa * eab.squaredNorm();
      if (wab > 0.0) {
        Walker ab(m, eab, t[1], rng);
        ab.advance(t[2]);
        acc_g3.add(wab * intensity(m, t[2], ab.state()));
      } else {
        acc_g3.add(0.0);
      }
      a.advance(t[2]);
      acc_g2[0][2].add(wa * intensity(m, t[2], a.state()));
    } else {
      acc_g2[0][1].add(0.0);
      acc_g2[0][2].add(0.0);
      acc_g3.add(0.0);
    }

    // Branch B: detection at t2.
    const Vec eb = m.field(t[1]) * psi[1];
    const double wb = eb.squaredNorm();
    if (wb > 0.0) {
      Walker b(m, eb, t[1], rng);
      b.advance(t[2]);
      acc_g2[1][2].add(wb * intensity(m, t[2], b.state()));
    } else {
      acc_g2[1][2].add(0.0);
    }
  }

  const double n = static_cast<double>(trajectories);
  Estimate e{};
  for (int k = 0; k < 3; ++k) std::tie(e.intensity[k], e.intensity_se[k]) = acc_i[k].mean_se(n);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) std::tie(e.g2[i][j], e.g2_se[i][j]) = acc_g2[i][j].mean_se(n);
  std::tie(e.g3, e.g3_se) = acc_g3.mean_se(n);
  return e;
}

}  // namespace qjmc
