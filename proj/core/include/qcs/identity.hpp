#pragma once

// Resolution of identity for the q-coherent states |zeta>:
//
//   int d^2 zeta / pi  w(|zeta|^2) |zeta><zeta| = 1,
//   w(t) = 1 / ((-log q) (-t; q)_inf).
//
// Two routes are provided. The radial route performs the angular integral
// analytically and reduces each diagonal element to a Ramanujan moment
// evaluated by quadrature. The Monte Carlo route samples the full complex
// plane (uniform angle, importance-sampled radius).

#include <cstdint>
#include <vector>

#include "qcs/qspecial.hpp"
#include "qcs/quad.hpp"

namespace qcs {

struct MeasureWeight {
  QBase q;
  SeriesTolerance tol{};
};

struct MCConfig {
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 42;
  /// Radial cutoff on t = |zeta|^2; 0 selects one automatically so the
  /// discarded tail carries < 1e-4 of the moment.
  double radial_cap = 0.0;
  /// When > 0, InsufficientSamples is thrown if stderr exceeds it.
  double max_stderr = 0.0;

  void validate() const;
};

struct MCEstimate {
  cplx estimate{};
  double std_error = 0.0;
  double radial_cap = 0.0;
  std::uint64_t samples = 0;
};

/// 1 / ((-log q) (-t; q)_inf), t = |zeta|^2 >= 0.
double measure_weight(double t, const MeasureWeight& w);

/// <m|I|n> via the radial reduction: 0 for m != n, otherwise
/// q^(n(n+1)/2) / (q;q)_n * moment_n / (-log q) with a numerical moment.
cplx identity_element_radial(int m, int n, QBase q, QuadTolerance tol = {1e-10, 1e-10});

/// The same diagonal element with the closed-form moment substituted; equals
/// 1 identically.
double identity_cancellation(int n, QBase q);

/// Monte Carlo estimate of <m|I|n>. Reproducible from mc.seed; the per-element
/// stream is seed ^ splitmix(m, n). Requires m, n <= 10.
MCEstimate identity_element_mc(int m, int n, QBase q, const MCConfig& mc);

/// Radial cap used by identity_element_mc when mc.radial_cap == 0.
double mc_radial_cap(int m, int n, QBase q);

struct CompletenessEntry {
  int m = 0;
  int n = 0;
  cplx value{};
  double deviation = 0.0;  // |I_mn - delta_mn|
  double abs_err = 0.0;    // propagated quadrature error
};

struct CompletenessReport {
  double max_deviation = 0.0;
  std::vector<CompletenessEntry> entries;  // row-major over 0..n_max
};

/// max_{m,n <= n_max} |I_mn - delta_mn| by the radial route; n_max <= 12.
CompletenessReport completeness_report(int n_max, QBase q, QuadTolerance tol = {1e-10, 1e-10});

}  // namespace qcs
