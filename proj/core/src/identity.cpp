#include "qcs/identity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qcs/errors.hpp"
#include "qcs/summation.hpp"

namespace qcs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller; one of the pair is discarded to keep the stream layout simple.
double standard_normal(std::mt19937_64& rng) {
  double u1 = 0.0;
  do {
    u1 = unit_uniform(rng);
  } while (u1 <= 0.0);
  const double u2 = unit_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// q^(n(n+1)/4) / sqrt((q;q)_n): amplitude of |n> in |zeta> per unit zeta^n.
double state_amplitude(int n, QBase q) {
  return q.pow(0.25 * n * (n + 1)) / std::sqrt(pochhammer_n(q.value(), q, n));
}

double radial_power_integrand(double t, double k, QBase q) {
  if (t == 0.0) return k == 0.0 ? 1.0 : 0.0;
  return std::pow(t, k) / pochhammer_inf(-t, q);
}

QuadratureEstimate radial_element_estimate(int n, QBase q, QuadTolerance tol) {
  const double prefactor = q.pow(0.5 * n * (n + 1)) / pochhammer_n(q.value(), q, n) / (-q.log());
  auto moment = ramanujan_moment_numeric(n, q, tol);
  moment.value *= prefactor;
  moment.abs_err *= prefactor;
  return moment;
}

}  // namespace

void MCConfig::validate() const {
  if (samples < 1000) throw InvalidParameter("Monte Carlo needs at least 1000 samples");
  if (radial_cap < 0.0 || !std::isfinite(radial_cap)) throw InvalidParameter("radial_cap must be >= 0");
}

double measure_weight(double t, const MeasureWeight& w) {
  if (!(t >= 0.0)) throw InvalidDomain("measure weight needs t = |zeta|^2 >= 0");
  return 1.0 / ((-w.q.log()) * pochhammer_inf(-t, w.q, w.tol));
}

cplx identity_element_radial(int m, int n, QBase q, QuadTolerance tol) {
  if (m < 0 || n < 0) throw InvalidParameter("matrix indices must be >= 0");
  if (m != n) return {0.0, 0.0};
  return {radial_element_estimate(n, q, tol).value, 0.0};
}

double identity_cancellation(int n, QBase q) {
  if (n < 0) throw InvalidParameter("index must be >= 0");
  // prefactor q^k / (1 - q^k) and moment factor (1 - q^k) q^-k paired per level
  // so that no partial product leaves the double range
  double value = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double one_minus = -std::expm1(k * q.log());
    value *= (q.pow(k) / one_minus) * (one_minus * q.pow(-k));
  }
  return value * (-q.log()) / (-q.log());
}

double mc_radial_cap(int m, int n, QBase q) {
  const double k = 0.5 * (m + n);
  DecayingOptions opts;
  // the cutoff search leaves g(T) T below 1e-7 of the integral
  opts.tol = {0.0, 1e-6};
  opts.peak_hint = std::max(1.0, q.pow(-k));
  const auto est = integrate_decaying([k, q](double t) { return radial_power_integrand(t, k, q); }, opts);
  return est.cutoff;
}

MCEstimate identity_element_mc(int m, int n, QBase q, const MCConfig& mc) {
  mc.validate();
  if (m < 0 || n < 0 || m > 10 || n > 10) {
    throw InvalidParameter("Monte Carlo elements are limited to 0 <= m, n <= 10");
  }
  const double cap = mc.radial_cap > 0.0 ? mc.radial_cap : mc_radial_cap(m, n, q);
  const double k = 0.5 * (m + n);
  const double s = -q.log();

  // Log-normal proposal centred on the peak of t^(k+1) / (-t;q)_inf in
  // L = log t, where d/dL log(-t;q)_inf ~ log(1 + t)/s; variance doubled
  // relative to the Laplace estimate, plus a uniform [0,1] component in t
  // to cover the t -> 0 tail.
  const double centre = std::log(std::expm1((k + 1.0) * s));
  const double laplace_var = s * (1.0 + std::exp(-centre));
  const double sigma = std::sqrt(2.0 * laplace_var);
  constexpr double kUniformShare = 0.2;

  auto proposal_density = [&](double t) {
    const double z = (std::log(t) - centre) / sigma;
    const double lognormal = std::exp(-0.5 * z * z) / (sigma * t * std::sqrt(2.0 * std::numbers::pi));
    return kUniformShare * (t <= 1.0 ? 1.0 : 0.0) + (1.0 - kUniformShare) * lognormal;
  };

  const double amp = state_amplitude(m, q) * state_amplitude(n, q);
  const double inv_log = 1.0 / s;
  const int dtheta = m - n;

  std::mt19937_64 rng(mc.seed ^ splitmix64(static_cast<std::uint64_t>(m) * 4096u + static_cast<std::uint64_t>(n)));

  CompensatedSum<double> sum_re, sum_im, sq_re, sq_im;
  for (std::uint64_t i = 0; i < mc.samples; ++i) {
    double t = 0.0;
    if (unit_uniform(rng) < kUniformShare) {
      t = unit_uniform(rng);
    } else {
      t = std::exp(centre + sigma * standard_normal(rng));
    }
    const double theta = 2.0 * std::numbers::pi * unit_uniform(rng);
    double radial = 0.0;
    if (t > 0.0 && t <= cap) {
      radial = amp * inv_log * std::pow(t, k) / pochhammer_inf(-t, q) / proposal_density(t);
    }
    const double re = radial * std::cos(dtheta * theta);
    const double im = radial * std::sin(dtheta * theta);
    sum_re += re;
    sum_im += im;
    sq_re += re * re;
    sq_im += im * im;
  }

  const double count = static_cast<double>(mc.samples);
  const double mean_re = sum_re.value() / count;
  const double mean_im = sum_im.value() / count;
  const double var_re = std::max(0.0, sq_re.value() / count - mean_re * mean_re) * count / (count - 1.0);
  const double var_im = std::max(0.0, sq_im.value() / count - mean_im * mean_im) * count / (count - 1.0);

  MCEstimate out;
  out.estimate = {mean_re, mean_im};
  out.std_error = std::sqrt((var_re + var_im) / count);
  out.radial_cap = cap;
  out.samples = mc.samples;
  if (mc.max_stderr > 0.0 && out.std_error > mc.max_stderr) {
    throw InsufficientSamples("Monte Carlo stderr " + std::to_string(out.std_error) + " exceeds bound " +
                              std::to_string(mc.max_stderr));
  }
  return out;
}

CompletenessReport completeness_report(int n_max, QBase q, QuadTolerance tol) {
  if (n_max < 0 || n_max > 12) throw InvalidParameter("completeness_report requires 0 <= n_max <= 12");
  std::vector<QuadratureEstimate> diagonal;
  diagonal.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) diagonal.push_back(radial_element_estimate(n, q, tol));

  CompletenessReport report;
  for (int m = 0; m <= n_max; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      CompletenessEntry e;
      e.m = m;
      e.n = n;
      if (m == n) {
        e.value = diagonal[static_cast<std::size_t>(n)].value;
        e.abs_err = diagonal[static_cast<std::size_t>(n)].abs_err;
        e.deviation = std::abs(e.value - 1.0);
      }
      report.max_deviation = std::max(report.max_deviation, e.deviation);
      report.entries.push_back(e);
    }
  }
  return report;
}

}  // namespace qcs
