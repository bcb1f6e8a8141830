#include "cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <random>

#include "qcs/coherent.hpp"
#include "qcs/dynamics.hpp"
#include "qcs/errors.hpp"
#include "qcs/fockrep.hpp"
#include "qcs/identity.hpp"
#include "qcs/qspecial.hpp"
#include "qcs/quad.hpp"

namespace qcs::cli {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Stream {
 public:
  Stream(std::uint64_t seed, const std::string& name) : rng_(stream_seed(seed, name)) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  cplx disk(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    return std::polar(r, phi);
  }

 private:
  std::mt19937_64 rng_;
};

ModelParams model(const RunConfig& cfg) {
  ModelParams p;
  p.q = cfg.q;
  p.a1 = cfg.a1;
  p.c = cfg.c;
  p.N = cfg.trunc;
  return p;
}

double threshold(const RunConfig& cfg, double module_default) { return cfg.tol.value_or(module_default); }

// rel_err is abs_err / |reference| when the reference is nonzero, else abs_err.
// The verdict uses rel_err.
ResultRow compare(const RunConfig& cfg, std::string check, cplx value, double reference, double limit,
                  std::optional<int> m = {}, std::optional<int> n = {}) {
  ResultRow r;
  r.check = std::move(check);
  r.q = cfg.q;
  r.a1 = cfg.a1;
  r.c = cfg.c;
  r.m = m;
  r.n = n;
  r.value = value;
  r.reference = reference;
  r.abs_err = std::abs(value - reference);
  r.rel_err = reference != 0.0 ? r.abs_err / std::abs(reference) : r.abs_err;
  r.pass = r.rel_err <= limit;
  return r;
}

double max_relative_gap(const Vector& a, const Vector& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scale = std::abs(b(i));
    if (scale == 0.0) {
      worst = std::max(worst, std::abs(a(i)));
    } else {
      worst = std::max(worst, std::abs(a(i) - b(i)) / scale);
    }
  }
  return worst;
}

}  // namespace

void RunConfig::validate() const {
  (void)QBase{q};
  if (!std::isfinite(a1) || !(a1 > 0.0)) throw InvalidParameter("--a1 must be positive");
  if (!std::isfinite(c) || !(c > 0.0)) throw InvalidParameter("--c must be positive");
  if (n_max < 0 || n_max > 30) throw InvalidParameter("--n-max must lie in [0, 30]");
  if ((command == Command::completeness || command == Command::verify_all) && n_max > 12) {
    throw InvalidParameter("completeness requires --n-max <= 12");
  }
  if (trunc < 4 || trunc > 400) throw InvalidParameter("--trunc must lie in [4, 400]");
  if (tol && !(*tol > 0.0)) throw InvalidParameter("--tol must be positive");
  if (samples < 1000) throw InvalidParameter("--samples must be >= 1000");
}

std::uint64_t stream_seed(std::uint64_t seed, const std::string& name) {
  // FNV-1a over the stream name, mixed with the run seed
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ h);
}

std::vector<ResultRow> suite_special(const RunConfig& cfg) {
  const QBase q(cfg.q);
  std::vector<ResultRow> rows;

  for (int i = 0; i <= 8; ++i) {
    const double x = -0.9 + 0.225 * i;
    const cplx product = q_exp(0.0, q, x) * pochhammer_inf(cplx{x}, q);
    rows.push_back(compare(cfg, "special.euler_identity", product, 1.0, threshold(cfg, 1e-10), i));
  }

  const double z_values[] = {-1.0, 0.5};
  for (int i = 0; i < 2; ++i) {
    const auto inf = pochhammer_inf_estimate(z_values[i], q);
    const double finite = pochhammer_n(z_values[i], q, static_cast<int>(inf.terms) + 8);
    rows.push_back(compare(cfg, "special.pochhammer_limit", finite, inf.value,
                           threshold(cfg, inf.rel_err_bound + 1e-14), i));
  }

  Stream stream(cfg.seed, "special.recurrence");
  for (int i = 0; i < 5; ++i) {
    const cplx z = stream.disk(2.0);
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
      const cplx lhs = pochhammer_n(z, q, n + 1);
      const cplx rhs = pochhammer_n(z, q, n) * (1.0 - z * q.pow(n));
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
    }
    rows.push_back(compare(cfg, "special.pochhammer_recurrence", worst, 0.0, threshold(cfg, 1e-14), i));
  }

  for (int n = 0; n <= cfg.n_max; ++n) {
    const double ratio = ramanujan_closed_form(n + 1, q) / ramanujan_closed_form(n, q);
    const double expected = -std::expm1((n + 1) * q.log()) * q.pow(-(n + 1.0));
    rows.push_back(compare(cfg, "special.ramanujan_ratio", ratio, expected, threshold(cfg, 1e-14), n));
  }

  const double bound = 1.0 / (1.0 - cfg.q);
  for (int n = 0; n <= cfg.n_max; ++n) {
    auto row = compare(cfg, "special.q_int_bound", q_int(n, q), bound, 1.0, n);
    row.abs_err = std::max(0.0, q_int(n, q) - bound);
    row.rel_err = row.abs_err / bound;
    row.pass = q_int(n, q) < bound && (n == 0 || q_int(n, q) > q_int(n - 1, q));
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> suite_ramanujan(const RunConfig& cfg) {
  const QBase q(cfg.q);
  std::vector<ResultRow> rows;
  for (int n = 0; n <= cfg.n_max; ++n) {
    const auto numeric = ramanujan_moment_numeric(n, q);
    const double closed = ramanujan_closed_form(n, q);
    auto row = compare(cfg, "ramanujan", numeric.value, closed, threshold(cfg, 1e-8), n);
    if (!numeric.converged) row.pass = false;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> suite_algebra(const RunConfig& cfg) {
  const ModelParams p = model(cfg);
  p.validate();
  std::vector<ResultRow> rows;

  const auto report = commutator_residuals(p);
  for (const auto& [name, value] : report.interior) {
    rows.push_back(compare(cfg, "algebra." + name, value, 0.0, threshold(cfg, 1e-12)));
  }
  rows.push_back(compare(cfg, "algebra.top_defect", report.top_defect, report.top_defect_expected,
                         threshold(cfg, 1e-12), p.N, p.N));

  const auto b = ladder_spectral(p);
  const Matrix bpbm = b.raising.matrix() * b.lowering.matrix();
  const double r1 = r_value(1, p);
  for (int n = 0; n <= p.N; ++n) {
    // E_n - E0 = R(a1) (1 - q^n)/(1 - q), evaluated independently of q_int
    const double expected = r1 * (1.0 - std::pow(p.q, n)) / (1.0 - p.q);
    rows.push_back(compare(cfg, "algebra.spectrum", bpbm(n, n), expected, threshold(cfg, 1e-13), n, n));
  }

  const Matrix h = hamiltonian(p).matrix();
  rows.push_back(compare(cfg, "algebra.hermiticity", (h - h.adjoint()).cwiseAbs().maxCoeff(), 0.0,
                         threshold(cfg, 1e-15)));

  const Matrix right = b.lowering.matrix() * b_minus_inverse(p).matrix();
  const Matrix id = Matrix::Identity(p.dim(), p.dim());
  rows.push_back(compare(cfg, "algebra.right_inverse",
                         (right - id).topRows(p.N).cwiseAbs().maxCoeff(), 0.0, threshold(cfg, 1e-13)));
  return rows;
}

std::vector<ResultRow> suite_coherent(const RunConfig& cfg) {
  const ModelParams p = model(cfg);
  p.validate();
  const QBase q(cfg.q);
  std::vector<ResultRow> rows;

  Stream chain(cfg.seed, "coherent.chain");
  for (int i = 0; i < 20; ++i) {
    ModelParams draw = p;
    draw.q = chain.uniform(0.1, 0.9);
    draw.c = chain.uniform(0.2, 5.0);
    draw.a1 = chain.uniform(0.2, 5.0);
    const cplx z = chain.disk(1.0);
    const auto general = coherent_coeffs_general(z, FunctionalSelector::linear(), scaling_remainder(draw), draw.N);
    const auto closed = coherent_coeffs_q(zeta_from_z(z, draw), draw.qbase(), draw.N);
    auto row = compare(cfg, "coherent.chain", max_relative_gap(general.amplitudes(), closed.amplitudes()), 0.0,
                       threshold(cfg, 1e-12), i);
    row.q = draw.q;
    row.a1 = draw.a1;
    row.c = draw.c;
    rows.push_back(row);
  }

  const FunctionalSelector selectors[] = {FunctionalSelector::unit(), FunctionalSelector::linear(),
                                          FunctionalSelector::power(0.5)};
  const cplx z{0.8, 0.2};
  for (int i = 0; i < 3; ++i) {
    const CoherentSpec spec{z, selectors[i], p};
    rows.push_back(compare(cfg, "coherent.eigen", eigen_residual(spec, p.N), 0.0, threshold(cfg, 1e-12), i));
    rows.push_back(compare(cfg, "coherent.derivative", derivative_condition_residual(spec, p.N), 0.0,
                           threshold(cfg, 1e-12), i));
  }

  Stream remainders(cfg.seed, "coherent.nonscaling");
  std::vector<double> table(static_cast<std::size_t>(p.N) + 2);
  for (auto& v : table) v = remainders.uniform(0.1, 3.0);
  const RemainderSequence random_r = [&table](int k) { return table.at(static_cast<std::size_t>(k)); };
  rows.push_back(compare(cfg, "coherent.eigen_nonscaling",
                         eigen_residual(z, FunctionalSelector::linear(), random_r, p.N), 0.0,
                         threshold(cfg, 1e-12)));

  for (int i = 0; i <= 6; ++i) {
    const cplx zeta = std::polar(0.5 * i, 0.3 * i);
    const double series = norm_sq(zeta, q);
    const double closed = q_exp(0.5, q, q.pow(0.5) * std::norm(zeta)).real();
    rows.push_back(compare(cfg, "coherent.norm_series", series, closed, threshold(cfg, 1e-12), i));
    auto printed = compare(cfg, "coherent.norm_printed_argument",
                           q_exp(0.5, q, q.pow(0.25) * std::norm(zeta)).real(), series, 0.0, i);
    printed.pass.reset();
    rows.push_back(printed);
  }

  const auto spectral = ladder_spectral(p);
  const auto state = generalized_exponential_state(z, p, spectral.raising);
  const auto closed = coherent_coeffs_q(zeta_from_z(z, p), q, p.N);
  rows.push_back(compare(cfg, "coherent.generalized_exponential",
                         max_relative_gap(state.amplitudes(), closed.amplitudes()), 0.0, threshold(cfg, 1e-12)));
  return rows;
}

std::vector<ResultRow> suite_completeness(const RunConfig& cfg) {
  const QBase q(cfg.q);
  std::vector<ResultRow> rows;

  const auto report = completeness_report(cfg.n_max, q);
  for (const auto& e : report.entries) {
    rows.push_back(compare(cfg, "completeness.radial", e.value, e.m == e.n ? 1.0 : 0.0, threshold(cfg, 1e-6),
                           e.m, e.n));
  }

  for (int n = 0; n <= 30; ++n) {
    rows.push_back(
        compare(cfg, "completeness.cancellation", identity_cancellation(n, q), 1.0, threshold(cfg, 1e-13), n, n));
  }

  const std::pair<int, int> elements[] = {{0, 0}, {1, 1}, {2, 5}};
  MCConfig mc;
  mc.samples = cfg.samples;
  mc.seed = stream_seed(cfg.seed, "completeness.mc");
  for (auto [m, n] : elements) {
    const auto est = identity_element_mc(m, n, q, mc);
    const double radial = identity_element_radial(m, n, q).real();
    auto row = compare(cfg, "completeness.mc", est.estimate, radial, 0.0, m, n);
    row.pass = row.abs_err <= 3.0 * est.std_error;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> suite_evolve(const RunConfig& cfg) {
  ModelParams p = model(cfg);
  p.N = std::min(cfg.trunc, 24);
  p.validate();
  const double r1 = r_value(1, p);
  std::vector<ResultRow> rows;

  auto grid = [](double t_end, int steps) {
    std::vector<double> g(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) g[static_cast<std::size_t>(i)] = t_end * i / steps;
    return g;
  };

  {
    const auto times = grid(10.0, 100);
    const auto traj = propagate(FockVector::basis(p.dim(), 2), times, DriveProfile::zero(), p);
    double worst = 0.0;
    for (const auto& s : traj.states) worst = std::max(worst, std::abs(std::abs(s[2]) - 1.0));
    rows.push_back(compare(cfg, "evolve.stationarity", 1.0 - worst, 1.0, threshold(cfg, 1e-9), 2, 2));
  }

  {
    Vector v = Vector::Zero(p.dim());
    v(0) = v(1) = 1.0 / std::sqrt(2.0);
    const auto times = grid(10.0, 100);
    const auto traj = propagate(FockVector(v), times, DriveProfile::zero(), p);
    const Matrix h = hamiltonian(p).matrix();
    const double e0 = traj.states.front().amplitudes().dot(h * traj.states.front().amplitudes()).real();
    double worst = 0.0;
    for (const auto& s : traj.states) {
      worst = std::max(worst, std::abs(s.amplitudes().dot(h * s.amplitudes()).real() - e0));
    }
    rows.push_back(compare(cfg, "evolve.energy_stationarity", worst / r1, 0.0, threshold(cfg, 1e-9)));
  }

  {
    const auto times = grid(10.0, 1000);
    const auto traj = propagate(FockVector::basis(p.dim(), 0), times, DriveProfile::constant(0.05), p);
    rows.push_back(compare(cfg, "evolve.norm_drift", traj.max_norm_drift, 0.0, threshold(cfg, 1e-9)));
    auto leak = compare(cfg, "evolve.top_population", traj.max_top_population, 0.0, 1e-6);
    if (cfg.tol) leak.pass = traj.max_top_population <= *cfg.tol;
    rows.push_back(leak);
  }

  {
    // first order: c1(T) = -i int_0^T eps sqrt(R) e^{i (R + E1 - E0) t} dt
    const double eps = 1e-3;
    const double horizon = 0.5;
    const double omega = r1 + excitation_energy(1, p);
    const double amp = eps * std::sqrt(r1) * 2.0 * std::abs(std::sin(0.5 * omega * horizon)) / omega;
    const auto traj =
        propagate(FockVector::basis(p.dim(), 0), grid(horizon, 50), DriveProfile::constant(eps), p, 1e-13);
    rows.push_back(compare(cfg, "evolve.perturbation", std::norm(traj.states.back()[1]), amp * amp,
                           threshold(cfg, 0.05), 1, 0));
  }

  {
    const auto drive = DriveProfile::gaussian_pulse(0.2, 1.0, 0.4);
    auto times = grid(2.0, 40);
    const auto fwd = propagate(FockVector::basis(p.dim(), 0), times, drive, p, 1e-12);
    std::reverse(times.begin(), times.end());
    // renormalize: the forward leg carries ~1e-15 per step of rounding drift
    const Vector mid = fwd.states.back().amplitudes().normalized();
    const auto back = propagate(FockVector(mid), times, drive, p, 1e-12);
    const double gap = (back.states.back().amplitudes() - FockVector::basis(p.dim(), 0).amplitudes()).norm();
    rows.push_back(compare(cfg, "evolve.time_reversal", gap, 0.0, threshold(cfg, 1e-8)));
  }
  return rows;
}

std::vector<ResultRow> run_suites(const RunConfig& cfg) {
  using Suite = std::vector<ResultRow> (*)(const RunConfig&);
  std::vector<Suite> suites;
  switch (cfg.command) {
    case Command::special:
      suites = {suite_special};
      break;
    case Command::ramanujan:
      suites = {suite_ramanujan};
      break;
    case Command::algebra:
      suites = {suite_algebra};
      break;
    case Command::coherent:
      suites = {suite_coherent};
      break;
    case Command::completeness:
      suites = {suite_completeness};
      break;
    case Command::evolve:
      suites = {suite_evolve};
      break;
    case Command::verify_all:
      suites = {suite_special, suite_ramanujan, suite_algebra, suite_coherent, suite_completeness, suite_evolve};
      break;
  }

  std::vector<std::future<std::vector<ResultRow>>> pending;
  pending.reserve(suites.size());
  for (Suite s : suites) pending.push_back(std::async(std::launch::async, s, std::cref(cfg)));

  std::vector<ResultRow> rows;
  for (auto& f : pending) {
    auto part = f.get();
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  sort_rows(rows);
  return rows;
}

}  // namespace qcs::cli
