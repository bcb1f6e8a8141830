// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/run.hpp"
#include "qcs/coherent.hpp"
#include "qcs/dynamics.hpp"
#include "qcs/fockrep.hpp"
#include "qcs/identity.hpp"
#include "qcs/qspecial.hpp"
#include "qcs/quad.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qcs;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<double> grid(double t1, int steps) {
  std::vector<double> g(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) g[static_cast<std::size_t>(i)] = t1 * i / steps;
  return g;
}

Verdict ramanujan_moments() {
  double worst = 0.0;
  for (double qv : {0.3, 0.5, 0.7, 0.9}) {
    for (int n = 0; n <= 10; ++n) {
      const double ref = double(oracle::ramanujan(n, qv));
      worst = std::max(worst, std::abs(ramanujan_moment_numeric(n, QBase(qv)).value / ref - 1.0));
    }
  }
  return {worst <= 1e-8, "max rel err " + fmt_g(worst)};
}

Verdict resolution_of_identity() {
  double dev = 0.0, cancel = 0.0;
  for (double qv : {0.3, 0.5, 0.9}) dev = std::max(dev, completeness_report(8, QBase(qv)).max_deviation);
  for (double qv : {0.3, 0.5, 0.9}) {
    for (int n = 0; n <= 30; ++n) cancel = std::max(cancel, std::abs(identity_cancellation(n, QBase(qv)) - 1.0));
  }
  return {dev <= 1e-6 && cancel <= 1e-13, "max |I-delta| " + fmt_g(dev) + ", cancellation " + fmt_g(cancel)};
}

Verdict monte_carlo() {
  const QBase q(0.5);
  MCConfig mc;
  mc.samples = 1000000;
  mc.seed = 42;
  bool ok = true;
  double worst_sigma = 0.0;
  for (auto [m, n] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{2, 5}}) {
    const auto a = identity_element_mc(m, n, q, mc);
    const auto b = identity_element_mc(m, n, q, mc);
    const double gap = std::abs(a.estimate - identity_element_radial(m, n, q));
    worst_sigma = std::max(worst_sigma, gap / a.std_error);
    ok = ok && gap <= 3 * a.std_error && a.estimate == b.estimate && a.std_error == b.std_error;
  }
  return {ok, "worst |MC-radial|/stderr " + fmt_g(worst_sigma) + ", reruns identical"};
}

Verdict operator_algebra() {
  std::mt19937_64 rng(20241);
  std::uniform_real_distribution<double> uq(0.05, 0.95), ua(0.1, 10.0);
  std::uniform_int_distribution<int> un(4, 32);
  double worst = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    ModelParams p;
    p.q = uq(rng);
    p.a1 = ua(rng);
    p.c = ua(rng);
    p.N = draw == 0 ? 32 : un(rng);
    worst = std::max(worst, commutator_residuals(p).max_interior());
  }
  return {worst <= 1e-12, "50 draws, max interior residual " + fmt_g(worst)};
}

Verdict coherent_chain() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> uq(0.1, 0.9), uz(-1.0, 1.0), ua(0.2, 5.0);
  double chain = 0.0, eig = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    ModelParams p;
    p.q = uq(rng);
    p.a1 = ua(rng);
    p.c = ua(rng);
    p.N = 30;
    const cplx z{uz(rng), uz(rng)};
    const auto general = coherent_coeffs_general(z, FunctionalSelector::linear(), scaling_remainder(p), p.N);
    const auto ref = oracle::coherent_q(zeta_from_z(z, p), p.q, p.N);
    for (int n = 0; n <= p.N; ++n) {
      const cplx r(ref[static_cast<std::size_t>(n)]);
      chain = std::max(chain, std::abs(general[n] - r) / std::abs(r));
    }
    eig = std::max(eig, eigen_residual(CoherentSpec{z, FunctionalSelector::linear(), p}, p.N));
  }
  std::vector<double> table(40);
  std::uniform_real_distribution<double> ur(0.1, 3.0);
  for (auto& v : table) v = ur(rng);
  const RemainderSequence random_r = [&table](int k) { return table.at(static_cast<std::size_t>(k)); };
  eig = std::max(eig, eigen_residual({0.6, 0.3}, FunctionalSelector::linear(), random_r, 30));
  return {chain <= 1e-12 && eig <= 1e-12, "termwise " + fmt_g(chain) + ", eigen residual " + fmt_g(eig)};
}

Verdict norm_series() {
  double worst = 0.0, printed_gap = 0.0;
  for (double qv : {0.3, 0.5, 0.9}) {
    const QBase q(qv);
    for (double r = 0.0; r <= 3.0 + 1e-12; r += 0.25) {
      const double series = norm_sq(r, q);
      const double ref = double(oracle::q_exp(0.5L, qv, std::sqrt((long double)qv) * r * r).real());
      worst = std::max(worst, std::abs(series / ref - 1.0));
      const double printed = q_exp(0.5, q, std::pow(qv, 0.25) * r * r).real();
      printed_gap = std::max(printed_gap, std::abs(printed / series - 1.0));
    }
  }
  return {worst <= 1e-12,
          "max rel err " + fmt_g(worst) + " (info: printed q^(1/4) argument differs by up to " + fmt_g(printed_gap) + ")"};
}

Verdict dynamics() {
  ModelParams p;
  p.N = 24;
  const auto drift = propagate(FockVector::basis(p.dim(), 0), grid(10.0, 1000), DriveProfile::constant(0.05), p);

  double stationary = 0.0;
  const auto still = propagate(FockVector::basis(p.dim(), 3), grid(10.0, 100), DriveProfile::zero(), p);
  for (std::size_t i = 0; i < still.states.size(); ++i) {
    const cplx expected = std::exp(cplx{0.0, -excitation_energy(3, p) * still.times[i]});
    stationary = std::max(stationary, std::abs(still.states[i][3] - expected));
  }

  const double eps = 1e-3, T = 0.5;
  const auto weak =
      propagate(FockVector::basis(p.dim(), 0), grid(T, 10), DriveProfile::constant(eps), p, 1e-13);
  const double omega = r_value(1, p) + excitation_energy(1, p);
  const double amp = eps * std::sqrt(r_value(1, p)) * 2 * std::abs(std::sin(omega * T / 2)) / omega;
  const double pert = std::abs(std::norm(weak.states.back()[1]) / (amp * amp) - 1.0);

  ModelParams near_one;
  near_one.q = 1.0 - 1e-4;
  near_one.N = 30;
  const auto forced =
      propagate(FockVector::basis(near_one.dim(), 0), grid(2.0, 20), DriveProfile::constant(0.3), near_one, 1e-12);
  const auto ref = oracle::forced_oscillator_rk4(30, 1.0, 0.3, 2.0, 4000, 0);
  double limit = 0.0;
  for (int n = 0; n <= 4; ++n) limit = std::max(limit, std::abs(forced.states.back()[n] - ref[static_cast<std::size_t>(n)]));

  const bool ok = drift.max_norm_drift <= 1e-9 && stationary <= 1e-9 && pert <= 0.05 && limit <= 1e-3;
  return {ok, "norm drift " + fmt_g(drift.max_norm_drift) + ", stationarity " + fmt_g(stationary) +
                  ", perturbation " + fmt_g(pert) + ", q->1 " + fmt_g(limit)};
}

Verdict determinism() {
  auto once = [] {
    const char* argv[] = {"qcs", "verify-all", "--seed", "42"};
    std::ostringstream out, err;
    const int code = cli::run(4, argv, out, err);
    return std::pair{code, out.str()};
  };
  const auto a = once();
  const auto b = once();
  return {a.second == b.second && !a.second.empty() && a.first == 0,
          std::to_string(a.second.size()) + " bytes, exit " + std::to_string(a.first)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
    double limit_s;
  };
  const std::vector<Criterion> criteria = {
      {1, "ramanujan moments by quadrature", ramanujan_moments, 30.0},
      {2, "resolution of identity, radial route", resolution_of_identity, 0.0},
      {3, "monte carlo cross-check", monte_carlo, 0.0},
      {4, "operator algebra residuals", operator_algebra, 0.0},
      {5, "coherent-state chain and eigen property", coherent_chain, 0.0},
      {6, "norm series", norm_series, 0.0},
      {7, "dynamics", dynamics, 60.0},
      {8, "determinism of verify-all", determinism, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0.0 && secs >= c.limit_s) {
      v.pass = false;
      v.detail += ", over the " + fmt_g(c.limit_s) + " s budget";
    }
    failed += !v.pass;
    std::printf("[%s] criterion %d: %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
