#include "oracles.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_dec_float_50;

Blockade blockade_mp(double c6, double omega, double hbar) {
  const mp ratio = mp(c6) / (mp(hbar) * mp(omega));
  const mp r = boost::multiprecision::pow(ratio, mp(1) / mp(6));
  const mp v = mp(4) * boost::math::constants::pi<mp>() * r * r * r / mp(3);
  return {r.convert_to<double>(), v.convert_to<double>()};
}

double overlap_quadrature(double sigma_r, double sigma_z, double n0, double w0) {
  using boost::math::quadrature::gauss_kronrod;
  const auto density = [&](double x, double y, double z) {
    return n0 * std::exp(-(x * x + y * y) / (2.0 * sigma_r * sigma_r) - z * z / (2.0 * sigma_z * sigma_z));
  };
  const auto mode = [&](double x, double y) { return std::exp(-2.0 * (x * x + y * y) / (w0 * w0)); };
  // The mode confines x, y to a few w0 and the cloud confines z to a few sigma_z; the
  // truncated mass is below exp(-50).
  const double xy = 5.0 * std::min(w0, sigma_r);
  const double zz = 10.0 * sigma_z;
  return gauss_kronrod<double, 31>::integrate(
      [&](double z) {
        return gauss_kronrod<double, 31>::integrate(
            [&](double y) {
              return gauss_kronrod<double, 31>::integrate(
                  [&](double x) { return mode(x, y) * density(x, y, z); }, -xy, xy, 15, 1e-12);
            },
            -xy, xy, 15, 1e-12);
      },
      -zz, zz, 15, 1e-12);
}

double gcol_identity_residual(double n_bar, double g0, double omega, double area, double hbar, double c) {
  const mp pi = boost::math::constants::pi<mp>();
  const mp N(n_bar), G0(g0), W(omega), A(area), H(hbar), C(c);
  const mp gamma = mp(4) * G0 * G0 * W * W * W / (mp(3) * H * C * C * C);
  const mp lambda = mp(2) * pi * C / W;
  const mp g_printed = boost::multiprecision::sqrt(mp(3) * N * gamma * lambda * lambda / (mp(2) * pi * A));
  const mp kappa = mp(2) * pi * N * G0 * G0 * W / (A * H * C);
  const mp g_kappa = mp(2) * boost::multiprecision::sqrt(kappa);
  return boost::multiprecision::abs((g_printed - g_kappa) / g_kappa).convert_to<double>();
}

std::vector<CVec> rk4_fixed(const std::function<CVec(double, const CVec&)>& f, CVec y0,
                            const std::vector<double>& grid, std::size_t substeps) {
  std::vector<CVec> out{y0};
  CVec y = std::move(y0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double h = (grid[i] - grid[i - 1]) / static_cast<double>(substeps);
    double t = grid[i - 1];
    for (std::size_t s = 0; s < substeps; ++s) {
      const CVec k1 = f(t, y);
      const CVec k2 = f(t + h / 2, y + h / 2 * k1);
      const CVec k3 = f(t + h / 2, y + h / 2 * k2);
      const CVec k4 = f(t + h, y + h * k3);
      y += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
    }
    out.push_back(y);
  }
  return out;
}

std::vector<CVec> three_level_reference(std::complex<double> omega_p, std::complex<double> omega_c,
                                        double delta, double delta2, const CVec& c0,
                                        const std::vector<double>& grid, std::size_t substeps) {
  const std::complex<double> mi{0.0, -1.0};
  const auto f = [&](double, const CVec& c) {
    CVec d(3);
    d(0) = mi * (omega_p / 2.0) * c(1);
    d(1) = mi * (-delta * c(1) + 0.5 * (omega_c * c(2) + std::conj(omega_p) * c(0)));
    d(2) = mi * (-delta2 * c(2) + std::conj(omega_c) / 2.0 * c(1));
    return d;
  };
  return rk4_fixed(f, c0, grid, substeps);
}

std::vector<LindbladSample> lindblad_reference(double kappa, double gamma, double gamma_d,
                                               double r_in, double t_on, double t_off,
                                               const Eigen::Matrix3cd& rho0,
                                               const std::vector<double>& grid, std::size_t substeps) {
  const std::complex<double> i{0.0, 1.0};
  const double sk = std::sqrt(kappa);
  const double a0 = std::sqrt(r_in);
  const double total = kappa + gamma;
  // Each grid interval is split so that the drive is constant within RK steps.
  const auto f = [&](double a, const CVec& v) {
    const auto r = [&](int p, int q) { return v(3 * p + q); };
    // Coupling rate Omega = sqrt(kappa) a between G (0) and W (1), dark D (2).
    const double om = sk * a;
    CVec d(9);
    // d rho_pq/dt written out for H = om (|G><W| + |W><G|).
    d(0) = -i * om * (r(1, 0) - r(0, 1)) + total * r(1, 1) + gamma * r(2, 2);
    d(4) = -i * om * (r(0, 1) - r(1, 0)) - (total + gamma_d) * r(1, 1);
    d(8) = gamma_d * r(1, 1) - gamma * r(2, 2);
    d(1) = -i * om * (r(1, 1) - r(0, 0)) - 0.5 * (total + gamma_d) * r(0, 1);
    d(3) = -i * om * (r(0, 0) - r(1, 1)) - 0.5 * (total + gamma_d) * r(1, 0);
    d(2) = -i * om * r(1, 2) - 0.5 * gamma * r(0, 2);
    d(6) = i * om * r(2, 1) - 0.5 * gamma * r(2, 0);
    d(5) = -i * om * r(0, 2) - 0.5 * (total + gamma_d + gamma) * r(1, 2);
    d(7) = i * om * r(2, 0) - 0.5 * (total + gamma_d + gamma) * r(2, 1);
    return d;
  };

  CVec y(9);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) y(3 * p + q) = rho0(p, q);

  const auto advance = [&](double t0, double t1) {
    if (t1 <= t0) return;
    const double mid = 0.5 * (t0 + t1);
    const double a = (mid >= t_on && mid < t_off) ? a0 : 0.0;
    const double h = (t1 - t0) / static_cast<double>(substeps);
    for (std::size_t s = 0; s < substeps; ++s) {
      const CVec k1 = f(a, y);
      const CVec k2 = f(a, y + h / 2 * k1);
      const CVec k3 = f(a, y + h / 2 * k2);
      const CVec k4 = f(a, y + h * k3);
      y += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  };

  std::vector<LindbladSample> out;
  const auto record = [&](double t) {
    Eigen::Matrix3cd m;
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) m(p, q) = y(3 * p + q);
    out.push_back({t, m});
  };
  record(grid.front());
  for (std::size_t k = 1; k < grid.size(); ++k) {
    double t = grid[k - 1];
    for (double edge : {t_on, t_off}) {
      if (edge > t && edge < grid[k]) {
        advance(t, edge);
        t = edge;
      }
    }
    advance(t, grid[k]);
    record(grid[k]);
  }
  return out;
}

namespace {

mp rho22_mp(const mp& k, const mp& R, const mp& t) {
  using boost::multiprecision::cos;
  using boost::multiprecision::cosh;
  using boost::multiprecision::exp;
  using boost::multiprecision::sin;
  using boost::multiprecision::sinh;
  using boost::multiprecision::sqrt;
  const mp amp = mp(4) * k * R / (k * k + mp(8) * k * R);
  const mp w2 = mp(4) * k * R - (k / 4) * (k / 4);
  mp bracket;
  if (w2 > 0) {
    const mp w = sqrt(w2);
    bracket = mp(3) * k / (mp(4) * w) * sin(w * t) + cos(w * t);
  } else if (w2 == 0) {
    bracket = mp(3) * k / mp(4) * t + mp(1);
  } else {
    const mp w = sqrt(-w2);
    bracket = mp(3) * k / (mp(4) * w) * sinh(w * t) + cosh(w * t);
  }
  return amp * (mp(1) - bracket * exp(mp(-3) * k * t / mp(4)));
}

}  // namespace

double rho22_closed_form(double kappa, double r_in, double t) {
  if (t <= 0.0) return 0.0;
  return rho22_mp(mp(kappa), mp(r_in), mp(t)).convert_to<double>();
}

double first_rho22_maximum(double kappa, double r_in, double t_max) {
  // d rho22 / dt is proportional to exp(-3 kappa t / 4) sin(Omega t) / Omega, so the first
  // maximum is at Omega t = pi. Evaluate the derivative of the closed form numerically in
  // 50 digits and locate its first sign change instead of using that shortcut.
  const mp k(kappa), R(r_in);
  const auto rho = [&](const mp& t) { return rho22_mp(k, R, t); };
  const mp h("1e-20");
  const auto slope = [&](const mp& t) { return (rho(t + h) - rho(t - h)) / (mp(2) * h); };

  const int n = 4000;
  mp prev = slope(mp(t_max) / n);
  for (int k = 2; k <= n; ++k) {
    const mp t = mp(t_max) * k / n;
    const mp s = slope(t);
    if (prev > 0 && s <= 0) {
      mp lo = mp(t_max) * (k - 1) / n;
      mp hi = t;
      for (int it = 0; it < 80; ++it) {
        const mp mid = (lo + hi) / 2;
        (slope(mid) > 0 ? lo : hi) = mid;
      }
      return ((lo + hi) / 2).convert_to<double>();
    }
    prev = s;
  }
  return -1.0;
}

std::pair<long double, long double> moments(const std::vector<long double>& p) {
  long double m = 0.0L;
  long double m2 = 0.0L;
  for (std::size_t n = 0; n < p.size(); ++n) {
    m += static_cast<long double>(n) * p[n];
    m2 += static_cast<long double>(n) * static_cast<long double>(n) * p[n];
  }
  return {m, m2 - m * m};
}

std::vector<long double> poisson_ld(long double mean, std::size_t n_max) {
  std::vector<long double> p(n_max + 1);
  p[0] = std::exp(-mean);
  for (std::size_t n = 1; n <= n_max; ++n) p[n] = p[n - 1] * mean / static_cast<long double>(n);
  return p;
}

std::vector<long double> thermal_ld(long double mean, std::size_t n_max) {
  std::vector<long double> p(n_max + 1);
  const long double q = mean / (1.0L + mean);
  p[0] = 1.0L / (1.0L + mean);
  for (std::size_t n = 1; n <= n_max; ++n) p[n] = p[n - 1] * q;
  return p;
}

}  // namespace oracle
