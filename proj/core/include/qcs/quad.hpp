#pragma once

// Adaptive quadrature for positive, super-polynomially decaying integrands on
// [0, inf), and the numerical Ramanujan moments built on top of it.

#include <cstddef>
#include <functional>

#include "qcs/qspecial.hpp"

namespace qcs {

struct QuadratureEstimate {
  double value = 0.0;
  /// Honest error estimate: summed Gauss/Kronrod panel differences plus the
  /// discarded tail bound g(T) T.
  double abs_err = 0.0;
  std::size_t evaluations = 0;
  /// false when the tolerance could not be met; value/abs_err are still the
  /// best available (ToleranceNotMet).
  bool converged = true;
  /// Upper cutoff T in the original variable t.
  double cutoff = 0.0;
};

/// Effective target is max(abs, rel * |I|).
struct QuadTolerance {
  double abs = 1e-10;
  double rel = 0.0;
};

struct DecayingOptions {
  QuadTolerance tol{};
  /// Where to start the cutoff search; pass the integrand peak location when
  /// it is known (q^-n for Ramanujan moments).
  double peak_hint = 1.0;
  /// Force the upper cutoff T instead of searching for it (0 = automatic).
  double cutoff = 0.0;
  std::size_t initial_panels = 16;
  std::size_t max_panels = 4096;
};

using RealIntegrand = std::function<double(double)>;

/// Integrates g over [0, inf) after substituting u = log(1 + t).
///
/// The cutoff T is the first doubling past the peak with g(T) T < target/10,
/// where target = max(tol.abs, tol.rel * I) and I is a coarse pre-estimate.
/// [0, log(1+T)] is split into uniform panels and the panel with the largest
/// Gauss-Kronrod 7/15 error is bisected until the summed error meets target.
/// Throws InvalidDomain if g returns a non-finite or negative value.
QuadratureEstimate integrate_decaying(const RealIntegrand& g, const DecayingOptions& opts = {});

/// Plain adaptive GK15 on a finite interval, used by the engine above and
/// exposed for tests.
QuadratureEstimate integrate_interval(const RealIntegrand& f, double a, double b, double target,
                                      std::size_t initial_panels = 1, std::size_t max_panels = 4096);

/// Integrand of the n-th Ramanujan moment, t^n / (-t; q)_inf.
double ramanujan_integrand(double t, int n, QBase q, const SeriesTolerance& series = {});

/// Numerical value of int_0^inf t^n / (-t; q)_inf dt.
QuadratureEstimate ramanujan_moment_numeric(int n, QBase q, QuadTolerance tol = {1e-10, 1e-10});

}  // namespace qcs
