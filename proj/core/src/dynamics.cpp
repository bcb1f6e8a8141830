#include "qcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qcs/coherent.hpp"
#include "qcs/errors.hpp"

namespace qcs {

namespace {

constexpr double kLeakThreshold = 1e-6;

Matrix step_unitary(double t, double h, const DriveProfile& d, const ModelParams& p) {
  const Matrix gen = hamiltonian_t(t + 0.5 * h, d, p).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gen);
  if (eig.info() != Eigen::Success) throw NonConvergent("eigendecomposition of h(t) failed");
  const Eigen::VectorXd& w = eig.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(cplx{0.0, -w(i) * h});
  const Matrix& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

// Advances the columns of `state` from t to t_end, adapting the step.
// `h` carries the step size between calls and has the sign of t_end - t.
std::size_t advance(Matrix& state, double t, double t_end, double& h, double step_tol,
                    const DriveProfile& d, const ModelParams& p) {
  std::size_t steps = 0;
  const double span = t_end - t;
  const double dir = span > 0 ? 1.0 : -1.0;
  const double min_step = std::abs(span) * 1e-12;
  while (dir * (t_end - t) > 0.0) {
    double step = dir * std::min(std::abs(h), dir * (t_end - t));
    const Matrix full = step_unitary(t, step, d, p) * state;
    const Matrix half = step_unitary(t + 0.5 * step, 0.5 * step, d, p) * (step_unitary(t, 0.5 * step, d, p) * state);
    const double err = (full - half).colwise().norm().maxCoeff();
    const double grow = err > 0.0 ? 0.9 * std::cbrt(step_tol / err) : 2.0;
    if (err <= step_tol || std::abs(step) <= min_step) {
      state = half;
      t = (std::abs(t_end - t - step) <= min_step) ? t_end : t + step;
      ++steps;
      h = dir * std::abs(step) * std::clamp(grow, 0.2, 2.0);
    } else {
      h = dir * std::abs(step) * std::clamp(grow, 0.1, 0.9);
    }
  }
  return steps;
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidParameter("time grid is empty");
  if (t_grid.size() < 2) return;
  const bool up = t_grid[1] > t_grid[0];
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const bool ok = up ? t_grid[i] > t_grid[i - 1] : t_grid[i] < t_grid[i - 1];
    if (!ok) throw InvalidParameter("time grid must be strictly monotone");
  }
}

}  // namespace

DriveProfile DriveProfile::constant(double amplitude) {
  DriveProfile d;
  d.kind = DriveKind::constant;
  d.amplitude = amplitude;
  d.validate();
  return d;
}

DriveProfile DriveProfile::gaussian_pulse(double amplitude, double center, double width) {
  DriveProfile d;
  d.kind = DriveKind::gaussian_pulse;
  d.amplitude = amplitude;
  d.center = center;
  d.width = width;
  d.validate();
  return d;
}

DriveProfile DriveProfile::table(std::vector<double> times, std::vector<double> values) {
  DriveProfile d;
  d.kind = DriveKind::table;
  d.sample_times = std::move(times);
  d.sample_values = std::move(values);
  d.validate();
  return d;
}

void DriveProfile::validate() const {
  if (!std::isfinite(amplitude) || !std::isfinite(center)) throw InvalidParameter("drive parameters must be finite");
  if (kind == DriveKind::gaussian_pulse && !(width > 0.0)) throw InvalidParameter("pulse width must be positive");
  if (kind == DriveKind::table) {
    if (sample_times.empty() || sample_times.size() != sample_values.size()) {
      throw InvalidParameter("drive table needs matching, non-empty times and values");
    }
    for (std::size_t i = 1; i < sample_times.size(); ++i) {
      if (!(sample_times[i] > sample_times[i - 1])) throw InvalidParameter("drive table times must increase");
    }
    for (double v : sample_values) {
      if (!std::isfinite(v)) throw InvalidParameter("drive table values must be finite");
    }
  }
}

double DriveProfile::operator()(double t) const {
  switch (kind) {
    case DriveKind::zero:
      return 0.0;
    case DriveKind::constant:
      return amplitude;
    case DriveKind::gaussian_pulse: {
      const double x = (t - center) / width;
      return amplitude * std::exp(-0.5 * x * x);
    }
    case DriveKind::table: {
      if (t <= sample_times.front()) return sample_values.front();
      if (t >= sample_times.back()) return sample_values.back();
      const auto hi = std::upper_bound(sample_times.begin(), sample_times.end(), t);
      const auto i = static_cast<std::size_t>(hi - sample_times.begin());
      const double w = (t - sample_times[i - 1]) / (sample_times[i] - sample_times[i - 1]);
      return (1.0 - w) * sample_values[i - 1] + w * sample_values[i];
    }
  }
  return 0.0;
}

TruncatedOperator hamiltonian_t(double t, const DriveProfile& d, const ModelParams& p) {
  const auto b = ladder_spectral(p);
  const Matrix& bp = b.raising.matrix();
  Matrix h = bp * b.lowering.matrix();
  const double f = d(t);
  if (f != 0.0) {
    const Matrix drive = (f * std::exp(cplx{0.0, r_value(1, p) * t})) * bp;
    h += drive + drive.adjoint();
  }
  // B+B- is real diagonal; clear rounding in its imaginary part
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
  return TruncatedOperator(std::move(h));
}

Trajectory propagate(const FockVector& psi0, std::span<const double> t_grid, const DriveProfile& d,
                     const ModelParams& p, double step_tol) {
  p.validate();
  d.validate();
  check_grid(t_grid);
  if (!(step_tol > 0.0)) throw InvalidParameter("step_tol must be positive");
  if (psi0.dim() != p.dim()) throw InvalidParameter("initial state dimension does not match N + 1");
  if (std::abs(psi0.norm() - 1.0) > 1e-12) throw InvalidParameter("initial state must be normalized");

  Trajectory traj;
  Matrix state = psi0.amplitudes();
  auto record = [&](double t) {
    const double top = std::norm(state(p.N, 0));
    traj.max_top_population = std::max(traj.max_top_population, top);
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(state.col(0).norm() - 1.0));
    traj.times.push_back(t);
    traj.states.emplace_back(Vector(state.col(0)));
  };

  record(t_grid[0]);
  double h = t_grid.size() > 1 ? (t_grid[1] - t_grid[0]) : 0.0;
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    traj.steps_taken += advance(state, t_grid[i - 1], t_grid[i], h, step_tol, d, p);
    record(t_grid[i]);
  }
  traj.truncation_leak = traj.max_top_population > kLeakThreshold;
  return traj;
}

TruncatedOperator evolution_operator(double t0, double t1, const DriveProfile& d, const ModelParams& p,
                                     double step_tol) {
  p.validate();
  d.validate();
  Matrix u = Matrix::Identity(p.dim(), p.dim());
  if (t1 != t0) {
    double h = t1 - t0;
    advance(u, t0, t1, h, step_tol, d, p);
  }
  return TruncatedOperator(std::move(u));
}

std::vector<OverlapRow> coherent_overlap_series(const Trajectory& traj, QBase q,
                                                std::span<const cplx> zeta_grid) {
  if (zeta_grid.empty()) throw InvalidParameter("zeta grid is empty");
  if (traj.states.empty()) return {};
  const int N = traj.states.front().dim() - 1;

  struct Probe {
    cplx zeta;
    Vector coeffs;
    double norm;
  };
  std::vector<Probe> probes;
  probes.reserve(zeta_grid.size());
  for (cplx z : zeta_grid) probes.push_back({z, coherent_coeffs_q(z, q, N).amplitudes(), norm_sq(z, q)});

  std::vector<OverlapRow> rows;
  rows.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    OverlapRow row;
    row.time = traj.times[i];
    const Vector& psi = traj.states[i].amplitudes();
    for (const auto& pr : probes) {
      const double fid = std::norm(pr.coeffs.dot(psi)) / pr.norm;  // dot conjugates the left side
      if (fid > row.fidelity) {
        row.fidelity = fid;
        row.best_zeta = pr.zeta;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qcs
