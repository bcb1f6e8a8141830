#pragma once

// Time evolution under the forced q-oscillator
//
//   h(t) = B+B- + f(t) (e^{i R(a1) t} B+ + e^{-i R(a1) t} B-),   hbar = 1,
//
// with spectral-convention ladders on the truncated Fock space.

#include <span>
#include <string>
#include <vector>

#include "qcs/fockrep.hpp"
#include "qcs/qspecial.hpp"

namespace qcs {

enum class DriveKind { zero, constant, gaussian_pulse, table };

/// Real drive amplitude f(t).
struct DriveProfile {
  DriveKind kind = DriveKind::zero;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  std::vector<double> sample_times;
  std::vector<double> sample_values;

  static DriveProfile zero() { return {}; }
  static DriveProfile constant(double amplitude);
  static DriveProfile gaussian_pulse(double amplitude, double center, double width);
  /// Piecewise-linear through the samples, held constant outside them.
  static DriveProfile table(std::vector<double> times, std::vector<double> values);

  void validate() const;
  double operator()(double t) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<FockVector> states;
  /// Largest |<N|psi(t)>|^2 seen at any grid time.
  double max_top_population = 0.0;
  /// Set when max_top_population exceeded 1e-6 (TruncationLeak).
  bool truncation_leak = false;
  double max_norm_drift = 0.0;
  std::size_t steps_taken = 0;
};

/// h(t) as a dense Hermitian matrix; Hermitian to the last bit by construction.
TruncatedOperator hamiltonian_t(double t, const DriveProfile& d, const ModelParams& p);

/// Integrates i dpsi/dt = h(t) psi through every point of t_grid, which must be
/// strictly monotone (a decreasing grid propagates backwards).
///
/// Each step applies exp(-i h(t + dt/2) dt), computed from the Hermitian
/// eigendecomposition, so the norm is preserved up to rounding. The step is
/// adapted by step doubling: the one-step and two-half-step results must
/// agree to step_tol. Requires ||psi0|| = 1 within 1e-12.
Trajectory propagate(const FockVector& psi0, std::span<const double> t_grid, const DriveProfile& d,
                     const ModelParams& p, double step_tol = 1e-10);

/// U(t1, t0) obtained with the same stepper applied to the identity.
TruncatedOperator evolution_operator(double t0, double t1, const DriveProfile& d, const ModelParams& p,
                                     double step_tol = 1e-10);

struct OverlapRow {
  double time = 0.0;
  cplx best_zeta{};
  /// max over the grid of |<zeta|psi>|^2 / <zeta|zeta>
  double fidelity = 0.0;
};

std::vector<OverlapRow> coherent_overlap_series(const Trajectory& traj, QBase q,
                                                std::span<const cplx> zeta_grid);

}  // namespace qcs
