#include "qcs/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qcs/errors.hpp"
#include "qcs/summation.hpp"

namespace qcs {

namespace {

struct Panel {
  double a;
  double b;
  double value;
  double err;
};

// Kronrod nodes at even positions coincide with the 7-point Gauss nodes.
Panel gk15(const RealIntegrand& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double k = wk[0] * f0;
  double g = wg[0] * f0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double dx = half * x[i];
    const double s = f(mid - dx) + f(mid + dx);
    k += wk[i] * s;
    if (i % 2 == 0) g += wg[i / 2] * s;
  }
  return {a, b, k * half, std::abs((k - g) * half)};
}

double summed_error(const std::vector<Panel>& panels) {
  CompensatedSum<double> s;
  for (const auto& p : panels) s += p.err;
  return s.value();
}

}  // namespace

QuadratureEstimate integrate_interval(const RealIntegrand& f, double a, double b, double target,
                                      std::size_t initial_panels, std::size_t max_panels) {
  if (!(b > a)) throw InvalidParameter("integrate_interval requires b > a");
  initial_panels = std::max<std::size_t>(initial_panels, 1);
  max_panels = std::max(max_panels, initial_panels);

  std::size_t evaluations = 0;
  auto counted = [&](double x) {
    ++evaluations;
    return f(x);
  };

  std::vector<Panel> panels;
  panels.reserve(max_panels);
  const double width = (b - a) / static_cast<double>(initial_panels);
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == initial_panels) ? b : a + width * static_cast<double>(i + 1);
    panels.push_back(gk15(counted, lo, hi));
  }

  double err = summed_error(panels);
  while (err > target && panels.size() < max_panels) {
    // worst panel; ties go to the leftmost for reproducibility
    auto worst = std::max_element(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) {
      return l.err < r.err || (l.err == r.err && l.a > r.a);
    });
    const double lo = worst->a;
    const double hi = worst->b;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // interval exhausted at machine precision
    *worst = gk15(counted, lo, mid);
    panels.push_back(gk15(counted, mid, hi));
    err = summed_error(panels);
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  CompensatedSum<double> value;
  for (const auto& p : panels) value += p.value;

  QuadratureEstimate out;
  out.value = value.value();
  out.abs_err = err;
  out.evaluations = evaluations;
  out.converged = err <= target;
  out.cutoff = b;
  return out;
}

QuadratureEstimate integrate_decaying(const RealIntegrand& g, const DecayingOptions& opts) {
  const auto& tol = opts.tol;
  if (!(tol.abs >= 0.0) || !(tol.rel >= 0.0) || (tol.abs == 0.0 && tol.rel == 0.0)) {
    throw InvalidParameter("integrate_decaying needs a positive absolute or relative tolerance");
  }
  constexpr double kMaxCutoff = 1e300;

  std::size_t evaluations = 0;
  auto eval = [&](double t) {
    const double v = g(t);
    ++evaluations;
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidDomain("integrand is non-finite or negative at t = " + std::to_string(t));
    }
    return v;
  };
  auto tail_mass = [&](double t) { return eval(t) * t; };
  // t = e^u - 1, dt = e^u du
  const RealIntegrand in_u = [&](double u) { return eval(std::expm1(u)) * std::exp(u); };

  double cutoff = opts.cutoff;
  double target = tol.abs;
  bool cutoff_ok = true;

  if (cutoff > 0.0) {
    if (tol.rel > 0.0) {
      const auto coarse = integrate_interval(in_u, 0.0, std::log1p(cutoff),
                                             std::numeric_limits<double>::infinity(), 32);
      target = std::max(tol.abs, tol.rel * std::abs(coarse.value));
    }
  } else {
    // Walk past the peak until g(T) T is well below its maximum.
    double t = std::max(1.0, opts.peak_hint);
    double m = tail_mass(t);
    double peak = m;
    while (t < kMaxCutoff) {
      const double m2 = tail_mass(2.0 * t);
      peak = std::max(peak, m2);
      t *= 2.0;
      if (m2 < m && m2 < 1e-3 * peak) break;
      m = m2;
    }
    const auto coarse = integrate_interval(in_u, 0.0, std::log1p(t),
                                           std::numeric_limits<double>::infinity(), 32);
    target = std::max(tol.abs, tol.rel * std::abs(coarse.value));

    while (t < kMaxCutoff) {
      const double mt = tail_mass(t);
      if (mt < 0.1 * target && tail_mass(2.0 * t) <= mt) break;
      t *= 2.0;
    }
    cutoff_ok = t < kMaxCutoff && target > 0.0;
    cutoff = t;
  }

  auto quad = integrate_interval(in_u, 0.0, std::log1p(cutoff), 0.9 * target, opts.initial_panels,
                                 opts.max_panels);
  const double tail = tail_mass(cutoff);

  QuadratureEstimate out;
  out.value = quad.value;
  out.abs_err = quad.abs_err + tail;
  out.evaluations = evaluations;
  out.cutoff = cutoff;
  out.converged = cutoff_ok && quad.converged && out.abs_err <= target;
  return out;
}

double ramanujan_integrand(double t, int n, QBase q, const SeriesTolerance& series) {
  if (n < 0) throw InvalidParameter("moment index must be >= 0");
  if (t < 0.0) throw InvalidDomain("Ramanujan integrand is defined for t >= 0");
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  const double numerator = std::pow(t, n);
  const double product = pochhammer_inf(-t, q, series);
  if (std::isfinite(numerator) && std::isfinite(product)) return numerator / product;
  // Far tail: work in logs, each factor 1 + t q^j > 1.
  double log_product = 0.0;
  const std::size_t terms = pochhammer_inf_terms(t, q, series.rel_tol);
  double tq = t;
  for (std::size_t j = 0; j < terms; ++j, tq *= q.value()) log_product += std::log1p(tq);
  return std::exp(n * std::log(t) - log_product);
}

QuadratureEstimate ramanujan_moment_numeric(int n, QBase q, QuadTolerance tol) {
  if (n < 0) throw InvalidParameter("moment index must be >= 0");
  DecayingOptions opts;
  opts.tol = tol;
  // The integrand peaks near t = q^-n.
  opts.peak_hint = q.pow(-static_cast<double>(n));
  return integrate_decaying([n, q](double t) { return ramanujan_integrand(t, n, q); }, opts);
}

}  // namespace qcs
