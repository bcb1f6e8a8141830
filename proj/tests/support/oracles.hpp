#pragma once

// Independent reference implementations for the tests. Nothing here calls
// into qcs: products and series are evaluated naively in long double, and
// the constants were computed at 30 significant digits with mpmath.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace qcs::oracle {

using ld = long double;
using cld = std::complex<long double>;

namespace frozen {
inline constexpr double poch_inf_m1_half = 4.76846205806274345;   // (-1; 1/2)_inf
inline constexpr double poch_inf_half_half = 0.288788095086602421;  // (1/2; 1/2)_inf
inline constexpr double qexp0_half_half = 3.46274661945506361;      // E^(0)_{1/2}(1/2)
inline constexpr double qexp_half_half_one = 3.22885809624756030;   // E^(1/2)_{1/2}(1)
inline constexpr double ramanujan_0_half = 0.693147180559945309;    // n = 0 and n = 1 at q = 1/2
inline constexpr double ramanujan_2_half = 2.07944154167983593;
inline constexpr double moment_5_09 = 3.71073401257824151e-4;       // n = 5, q = 0.9
inline constexpr double norm_sq_1_half = 2.38423102903137172;       // |zeta|^2 = 1, q = 1/2
inline constexpr double weight_1_half = 0.302549338407670815;       // w(1) at q = 1/2
}  // namespace frozen

inline cld poch(cld z, ld q, int n) {
  cld p = 1;
  ld qj = 1;
  for (int j = 0; j < n; ++j, qj *= q) p *= (ld(1) - z * qj);
  return p;
}

inline cld poch_inf(cld z, ld q) {
  cld p = 1;
  ld qj = 1;
  for (int j = 0; j < 20000 && std::abs(z) * qj > 1e-22L; ++j, qj *= q) p *= (ld(1) - z * qj);
  return p;
}

// sum_n q^(mu n^2) x^n / (q;q)_n, summed until terms vanish
inline cld q_exp(ld mu, ld q, cld x) {
  cld sum = 0;
  for (int n = 0; n < 5000; ++n) {
    const cld term = std::pow(q, mu * n * n) * std::pow(x, n) / poch(q, q, n);
    sum += term;
    if (n > 10 && std::abs(term) < 1e-24L * std::abs(sum)) break;
  }
  return sum;
}

inline ld q_int(int n, ld q) { return (1 - std::pow(q, ld(n))) / (1 - q); }

inline ld ramanujan(int n, ld q) { return poch(q, q, n).real() * std::pow(q, -ld(n) * (n + 1) / 2) * -std::log(q); }

// q-closed coherent coefficients q^(n(n+1)/4) zeta^n / sqrt((q;q)_n)
inline std::vector<cld> coherent_q(cld zeta, ld q, int N) {
  std::vector<cld> c(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    c[static_cast<std::size_t>(n)] =
        std::pow(q, ld(n) * (n + 1) / 4) * std::pow(zeta, n) / std::sqrt(poch(q, q, n).real());
  }
  return c;
}

// Ordinary forced oscillator i psi' = [w n + f (e^{iwt} a+ + h.c.)] psi,
// the q -> 1 limit of the driven q-oscillator, integrated by classical RK4.
inline std::vector<std::complex<double>> forced_oscillator_rk4(int N, double omega, double f, double t_end,
                                                                int steps, int start_level) {
  using cd = std::complex<double>;
  const cd I{0.0, 1.0};
  std::vector<cd> psi(static_cast<std::size_t>(N) + 1, 0.0);
  psi[static_cast<std::size_t>(start_level)] = 1.0;
  auto rhs = [&](double t, const std::vector<cd>& y) {
    std::vector<cd> dy(y.size());
    const cd up = f * std::exp(I * omega * t);
    for (int n = 0; n <= N; ++n) {
      cd h = omega * n * y[static_cast<std::size_t>(n)];
      if (n > 0) h += up * std::sqrt(double(n)) * y[static_cast<std::size_t>(n - 1)];
      if (n < N) h += std::conj(up) * std::sqrt(double(n + 1)) * y[static_cast<std::size_t>(n + 1)];
      dy[static_cast<std::size_t>(n)] = -I * h;
    }
    return dy;
  };
  const double h = t_end / steps;
  auto axpy = [](const std::vector<cd>& y, const std::vector<cd>& k, double s) {
    std::vector<cd> r(y);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * k[i];
    return r;
  };
  double t = 0.0;
  for (int s = 0; s < steps; ++s, t += h) {
    const auto k1 = rhs(t, psi);
    const auto k2 = rhs(t + h / 2, axpy(psi, k1, h / 2));
    const auto k3 = rhs(t + h / 2, axpy(psi, k2, h / 2));
    const auto k4 = rhs(t + h, axpy(psi, k3, h));
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return psi;
}

}  // namespace qcs::oracle
