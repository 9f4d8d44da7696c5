#include "mvdrisk/mvd_distribution.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

using namespace mvdrisk;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(MassBetween, ZeroMeanNormalHasHalfItsMassBelowZero)
{
    const auto dist = MvdDistribution::normal(0.20);
    EXPECT_NEAR(dist.mass_between(-1.0, 0.0), 0.5, 1e-6);
}

TEST(MassBetween, DiracInsideInterval)
{
    const auto dist = MvdDistribution::dirac(-0.45);
    EXPECT_EQ(dist.mass_between(-0.5, -0.4), 1.0);
    EXPECT_EQ(dist.mass_between(-0.4, 0.0), 0.0);
    // Half-open: the point itself belongs to [m, b) but not to [a, m).
    EXPECT_EQ(dist.mass_between(-0.45, -0.40), 1.0);
    EXPECT_EQ(dist.mass_between(-0.50, -0.45), 0.0);
}

TEST(MassBetween, NormalTailAgainstTrapezoidOracle)
{
    // Trapezoid at dM = 1e-5 of the density; mpmath gives 0.0907821593926710.
    const double expected = 0.0907821593926710;
    const double brute = oracle::trapezoid([](double m) { return oracle::gaussian_density(m, 0.0, 0.30); }, -1.0,
                                           -0.40, 1e-5);
    EXPECT_NEAR(brute, expected, 1e-10);
    const auto dist = MvdDistribution::normal(0.30);
    EXPECT_NEAR(dist.mass_between(-1.0, -0.40), expected, 1e-12);
}

TEST(MassBetween, RejectsReversedInterval)
{
    const auto dist = MvdDistribution::normal(0.20);
    try {
        dist.mass_between(0.1, -0.1);
        FAIL() << "expected invalid-interval";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_interval);
    }
}

TEST(MassBetween, NothingBelowMinusOne)
{
    const auto normal = MvdDistribution::normal(0.5);
    EXPECT_EQ(normal.mass_between(-5.0, -1.0), 0.0);
    EXPECT_NEAR(normal.mass_between(-5.0, 0.0), normal.mass_between(-1.0, 0.0), 1e-15);
}

TEST(Construction, RejectsBadParameters)
{
    EXPECT_THROW(MvdDistribution::normal(0.0), Error);
    EXPECT_THROW(MvdDistribution::normal(-0.1), Error);
    EXPECT_THROW(MvdDistribution::dirac(-1.5), Error);
    EXPECT_THROW(MvdDistribution::tabulated(TabulatedMvd{-1.0, 0.0, {0.5}}), Error);
    EXPECT_THROW(MvdDistribution::tabulated(TabulatedMvd{-1.2, 0.1, {0.5}}), Error);
    EXPECT_THROW(MvdDistribution::tabulated(TabulatedMvd{-1.0, 0.1, {std::nan("")}}), Error);
    EXPECT_NO_THROW(MvdDistribution::tabulated(TabulatedMvd{-1.0, 0.1, {-0.5, 2.0}}));
}

TEST(TruncateRenormalize, NormalAtZeroHasUnitMassAbove)
{
    const auto truncated = MvdDistribution::normal(0.20).truncate_renormalize(0.0);
    EXPECT_NEAR(truncated.mass_between(0.0, kInf), 1.0, 1e-12);
    EXPECT_EQ(truncated.mass_between(-1.0, 0.0), 0.0);
}

TEST(TruncateRenormalize, DiracBelowFloorIsDegenerate)
{
    try {
        MvdDistribution::dirac(-0.45).truncate_renormalize(-0.40);
        FAIL() << "expected degenerate-truncation";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_truncation);
    }
}

TEST(TruncateRenormalize, PreservesMassRatiosAboveFloor)
{
    // (Phi(0) - Phi(-1)) / (1 - Phi(-1)); mpmath: 0.405713291327470
    const double ratio = (oracle::phi_cdf(0.0) - oracle::phi_cdf(-1.0)) / (1.0 - oracle::phi_cdf(-1.0));
    EXPECT_NEAR(ratio, 0.405713291327470, 1e-14);
    const auto truncated = MvdDistribution::normal(0.10).truncate_renormalize(-0.10);
    EXPECT_NEAR(truncated.mass_between(-0.10, 0.0), ratio, 1e-12);
}

TEST(TruncateRenormalize, DiracAboveFloorUnchanged)
{
    const auto truncated = MvdDistribution::dirac(-0.30).truncate_renormalize(-0.40);
    EXPECT_EQ(truncated.mass_between(-1.0, kInf), 1.0);
}

TEST(TruncateRenormalize, TabulatedDropsStripsBelowFloor)
{
    const auto dist = MvdDistribution::tabulated(TabulatedMvd{-1.0, 0.5, {0.25, 0.25, 0.5}});
    const auto truncated = dist.truncate_renormalize(-0.5);
    EXPECT_NEAR(truncated.mass_between(-1.0, kInf), 1.0, 1e-15);
    EXPECT_NEAR(truncated.mass_between(-0.5, 0.0), 0.25 / 0.75, 1e-15);
    EXPECT_THROW(MvdDistribution::tabulated(TabulatedMvd{-1.0, 0.5, {0.5, -0.5}}).truncate_renormalize(-0.5),
                 Error);
}

TEST(TruncateRenormalize, RepeatedTruncationComposes)
{
    const auto once = MvdDistribution::normal(0.2).truncate_renormalize(-0.3);
    const auto twice = once.truncate_renormalize(-0.1);
    const auto direct = MvdDistribution::normal(0.2).truncate_renormalize(-0.1);
    EXPECT_NEAR(twice.mass_between(-0.1, 0.2), direct.mass_between(-0.1, 0.2), 1e-14);
    EXPECT_NEAR(twice.mass_between(-1.0, kInf), 1.0, 1e-12);
}

TEST(Discretize, DiracLandsInItsOwnStripDespiteRounding)
{
    // -1 + 55 * 0.01 is -0.44999999999999996 in binary; the point still belongs to strip 55.
    const auto table = discretize(MvdDistribution::dirac(-0.45), -1.0, 0.01, 200);
    EXPECT_EQ(table.masses[55], 1.0);
    EXPECT_EQ(table.masses[54], 0.0);
}

// Properties over randomly drawn distributions and points.

namespace {

std::vector<MvdDistribution> random_distributions(std::mt19937_64& rng, int count)
{
    std::uniform_real_distribution<double> sd(0.02, 0.6);
    std::uniform_real_distribution<double> mean(-0.5, 0.5);
    std::uniform_real_distribution<double> point(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<MvdDistribution> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(MvdDistribution::normal(sd(rng), mean(rng)));
        out.push_back(MvdDistribution::dirac(point(rng)));
        TabulatedMvd table{-1.0, 0.05, {}};
        for (int s = 0; s < 50; ++s)
            table.masses.push_back(unit(rng));
        out.push_back(MvdDistribution::tabulated(table));
        out.push_back(MvdDistribution::normal(sd(rng), mean(rng)).truncate_renormalize(point(rng) * 0.5));
    }
    return out;
}

} // namespace

TEST(MassProperties, CumulativeMassIsNonDecreasing)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> point(-1.0, 2.0);
    for (const auto& dist : random_distributions(rng, 25)) {
        for (int trial = 0; trial < 40; ++trial) {
            double x = point(rng);
            double y = point(rng);
            if (x > y)
                std::swap(x, y);
            EXPECT_LE(dist.mass_between(-1.0, x), dist.mass_between(-1.0, y) + 1e-15);
        }
    }
}

TEST(MassProperties, AdditiveOverAdjacentIntervals)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> point(-1.2, 2.0);
    for (const auto& dist : random_distributions(rng, 25)) {
        for (int trial = 0; trial < 40; ++trial) {
            double p[3] = {point(rng), point(rng), point(rng)};
            std::sort(std::begin(p), std::end(p));
            const double split = dist.mass_between(p[0], p[1]) + dist.mass_between(p[1], p[2]);
            EXPECT_NEAR(split, dist.mass_between(p[0], p[2]), 1e-12);
        }
    }
}

TEST(MassProperties, TruncationIntegratesToOne)
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> sd(0.05, 0.5);
    std::uniform_real_distribution<double> floor(-1.0, 0.3);
    for (int trial = 0; trial < 200; ++trial) {
        const double f = floor(rng);
        const auto truncated = MvdDistribution::normal(sd(rng)).truncate_renormalize(f);
        EXPECT_NEAR(truncated.mass_between(f, kInf), 1.0, 1e-9);
        EXPECT_EQ(truncated.mass_between(-1.0, f), 0.0);
    }
}

TEST(MassProperties, DiscretizedNormalMatchesContinuousOnAlignedIntervals)
{
    const auto normal = MvdDistribution::normal(0.20);
    const auto table = MvdDistribution::tabulated(discretize(normal, -1.0, 0.01, 300));
    for (int a = 0; a < 300; a += 7) {
        for (int b = a; b <= 300; b += 13) {
            const double lo = -1.0 + a * 0.01;
            const double hi = -1.0 + b * 0.01;
            EXPECT_NEAR(table.mass_between(lo, hi), normal.mass_between(lo, hi), 1e-4);
        }
    }
}
