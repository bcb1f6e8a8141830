#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qcs/errors.hpp"
#include "qcs/quad.hpp"
#include "support/oracles.hpp"

namespace qcs {
namespace {

TEST(IntegrateInterval, SinglePanelIntegratesPolynomialsExactly) {
  // a single GK15 panel is exact through degree 22 (Kronrod) and 13 (Gauss)
  for (int deg = 0; deg <= 13; ++deg) {
    const auto est = integrate_interval([deg](double x) { return (deg + 1) * std::pow(x, deg); }, 0.0, 1.0,
                                        1e-300, 1, 1);
    EXPECT_NEAR(est.value, 1.0, 1e-14) << deg;
  }
}

TEST(IntegrateInterval, OscillatoryIntegrandConverges) {
  const auto est = integrate_interval([](double x) { return std::cos(40.0 * x); }, 0.0, std::numbers::pi / 3, 1e-12);
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.value, std::sin(40.0 * std::numbers::pi / 3) / 40.0, 1e-12);
  EXPECT_LE(est.abs_err, 1e-12);
}

TEST(IntegrateInterval, ReportsNonConvergenceWhenPanelBudgetRunsOut) {
  const auto est = integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-15, 1, 4);
  EXPECT_FALSE(est.converged);
  EXPECT_GT(est.abs_err, 0.0);
}

TEST(IntegrateDecaying, ExponentialAndGaussian) {
  DecayingOptions opts;
  opts.tol = {1e-12, 1e-12};
  const auto e = integrate_decaying([](double t) { return std::exp(-t); }, opts);
  EXPECT_NEAR(e.value, 1.0, 1e-11);
  const auto g = integrate_decaying([](double t) { return std::exp(-t * t); }, opts);
  EXPECT_NEAR(g.value, std::sqrt(std::numbers::pi) / 2, 1e-11);
}

TEST(IntegrateDecaying, ErrorEstimateIsHonest) {
  // the reported bound must cover the true error, including the discarded tail
  for (double rate : {0.05, 0.5, 3.0}) {
    DecayingOptions opts;
    opts.tol = {1e-9, 0.0};
    const auto est = integrate_decaying([rate](double t) { return std::exp(-rate * t); }, opts);
    EXPECT_LE(std::abs(est.value - 1.0 / rate), est.abs_err + 1e-15) << rate;
    EXPECT_GT(est.cutoff, 0.0);
  }
}

TEST(IntegrateDecaying, CutoffSearchDoesNotStopBeforeALatePeak) {
  // t^8 e^{-t} peaks at t = 8; an integrand that is tiny near t = 1 must not
  // be truncated there
  DecayingOptions opts;
  opts.tol = {1e-10, 1e-12};
  const auto est = integrate_decaying([](double t) { return std::pow(t, 8) * std::exp(-t); }, opts);
  EXPECT_NEAR(est.value / 40320.0, 1.0, 1e-11);
  EXPECT_GT(est.cutoff, 16.0);
}

TEST(IntegrateDecaying, ForcedCutoffIsRespected) {
  DecayingOptions opts;
  opts.cutoff = 2.0;
  const auto est = integrate_decaying([](double t) { return std::exp(-t); }, opts);
  EXPECT_EQ(est.cutoff, 2.0);
  EXPECT_NEAR(est.value, 1.0 - std::exp(-2.0), 1e-10);
}

TEST(IntegrateDecaying, RejectsNegativeOrNonFiniteIntegrand) {
  EXPECT_THROW(integrate_decaying([](double t) { return -std::exp(-t); }), InvalidDomain);
  EXPECT_THROW(integrate_decaying([](double t) { return t > 0.5 ? NAN : 1.0; }), InvalidDomain);
}

TEST(RamanujanMoment, MatchesClosedFormAcrossGrid) {
  for (double qv : {0.3, 0.5, 0.7, 0.9}) {
    const QBase q(qv);
    for (int n = 0; n <= 10; ++n) {
      const auto est = ramanujan_moment_numeric(n, q);
      const double ref = double(oracle::ramanujan(n, qv));
      EXPECT_TRUE(est.converged);
      EXPECT_LE(std::abs(est.value / ref - 1.0), 1e-8) << qv << " " << n;
    }
  }
}

TEST(RamanujanMoment, FrozenValue) {
  EXPECT_NEAR(ramanujan_moment_numeric(5, QBase(0.9)).value / oracle::frozen::moment_5_09, 1.0, 1e-9);
}

TEST(RamanujanIntegrand, SurvivesProductOverflow) {
  // (-t; q)_inf overflows a double for large t at q near 1
  const double v = ramanujan_integrand(1e6, 3, QBase(0.99));
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GE(v, 0.0);
  EXPECT_LT(v, 1e-100);
}

}  // namespace
}  // namespace qcs
