#include <gtest/gtest.h>

#include <cmath>

#include "qcs/errors.hpp"
#include "qcs/identity.hpp"
#include "support/oracles.hpp"

namespace qcs {
namespace {

TEST(MeasureWeight, FrozenValueAndOrigin) {
  const MeasureWeight w{QBase(0.5), SeriesTolerance{1e-15, 100000}};
  EXPECT_NEAR(measure_weight(1.0, w) / oracle::frozen::weight_1_half, 1.0, 1e-13);
  EXPECT_NEAR(measure_weight(0.0, w), 1.0 / std::log(2.0), 1e-15);
  EXPECT_THROW(measure_weight(-1.0, w), InvalidDomain);
}

TEST(RadialIdentity, OffDiagonalVanishesExactly) {
  EXPECT_EQ(identity_element_radial(2, 5, QBase(0.5)), cplx(0.0));
}

TEST(RadialIdentity, DiagonalWithinTolerance) {
  for (double qv : {0.3, 0.5, 0.9}) {
    const auto rep = completeness_report(8, QBase(qv));
    EXPECT_EQ(rep.entries.size(), 81u);
    EXPECT_LE(rep.max_deviation, 1e-6) << qv;
    for (const auto& e : rep.entries) {
      EXPECT_LE(e.deviation, std::max(1e-6, 10 * e.abs_err));
    }
  }
  EXPECT_THROW(completeness_report(13, QBase(0.5)), InvalidParameter);
}

TEST(RadialIdentity, ClosedFormMomentOverflowIsReported) {
  EXPECT_THROW(ramanujan_closed_form(25, QBase(0.1)), Overflow);
}

TEST(RadialIdentity, ClosedFormCancellation) {
  for (double qv : {0.1, 0.3, 0.5, 0.9, 0.99}) {
    for (int n = 0; n <= 30; ++n) EXPECT_NEAR(identity_cancellation(n, QBase(qv)), 1.0, 1e-13) << qv << " " << n;
  }
}

TEST(MonteCarlo, ReproducibleFromSeed) {
  MCConfig mc;
  mc.samples = 20000;
  mc.seed = 17;
  const auto a = identity_element_mc(1, 1, QBase(0.5), mc);
  const auto b = identity_element_mc(1, 1, QBase(0.5), mc);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  mc.seed = 18;
  EXPECT_NE(identity_element_mc(1, 1, QBase(0.5), mc).estimate, a.estimate);
}

TEST(MonteCarlo, AgreesWithRadialRouteAtFullSampleCount) {
  MCConfig mc;
  const QBase q(0.5);
  for (auto [m, n] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{2, 5}}) {
    const auto est = identity_element_mc(m, n, q, mc);
    const cplx radial = identity_element_radial(m, n, q);
    EXPECT_LE(std::abs(est.estimate - radial), 3 * est.std_error) << m << "," << n;
    EXPECT_EQ(est.samples, mc.samples);
  }
}

TEST(MonteCarlo, ThreeSigmaCoverageOverManySeeds) {
  // the three-sigma band should hold in almost every seeded run
  const QBase q(0.5);
  const double radial = identity_element_radial(1, 1, q).real();
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MCConfig mc;
    mc.samples = 20000;
    mc.seed = seed;
    const auto est = identity_element_mc(1, 1, q, mc);
    covered += std::abs(est.estimate - radial) <= 3 * est.std_error;
  }
  EXPECT_GE(covered, 99);
}

TEST(MonteCarlo, ValidationAndStdErrorGuard) {
  MCConfig mc;
  mc.samples = 10;
  EXPECT_THROW(identity_element_mc(0, 0, QBase(0.5), mc), InvalidParameter);
  mc.samples = 1000;
  mc.max_stderr = 1e-12;
  EXPECT_THROW(identity_element_mc(0, 0, QBase(0.5), mc), InsufficientSamples);
  EXPECT_THROW(identity_element_mc(11, 0, QBase(0.5), MCConfig{}), InvalidParameter);
}

TEST(MonteCarlo, AutomaticCapGrowsWithIndex) {
  const QBase q(0.5);
  EXPECT_GT(mc_radial_cap(5, 5, q), mc_radial_cap(0, 0, q));
}

}  // namespace
}  // namespace qcs
