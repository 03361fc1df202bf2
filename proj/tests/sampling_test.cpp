// Copyright 2026 The twostate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>

#include "twostate/sampling.hpp"

namespace twostate {
namespace {

PointerMixture test_mixture(double g) {
    const StateVector pre{std::cos(0.3), std::sin(0.3)};
    const StateVector post{std::cos(1.2), std::sin(1.2)};
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return mixture(PrePostEnsemble(pre, post), CouplingSpec(Observable::from_hermitian(x), g, 1.0));
}

bool same_bytes(const std::vector<double> &a, const std::vector<double> &b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(CounterRng, DependsOnlyOnSeedAndCounter) {
    const CounterRng a(42);
    const CounterRng b(42);
    const CounterRng c(43);
    EXPECT_EQ(a.bits(17), b.bits(17));
    EXPECT_NE(a.bits(17), c.bits(17));
    EXPECT_NE(a.bits(17), a.bits(18));
}

TEST(CounterRng, UniformMoments) {
    const CounterRng rng(5);
    const int n = 200000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform(static_cast<std::uint64_t>(i));
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sq += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 2e-3);
}

TEST(Sample, ByteIdenticalForSameSeed) {
    const auto m = test_mixture(0.05);
    EXPECT_TRUE(same_bytes(sample(m, 5000, 9).readings, sample(m, 5000, 9).readings));
    EXPECT_FALSE(same_bytes(sample(m, 5000, 9).readings, sample(m, 5000, 10).readings));
}

TEST(Sample, IndependentOfWorkerCount) {
    const auto m = test_mixture(0.05);
    const auto one = sample(m, 10007, 3, 1);
    for (unsigned w : {2u, 3u, 8u}) {
        EXPECT_TRUE(same_bytes(one.readings, sample(m, 10007, 3, w).readings)) << w << " workers";
    }
}

TEST(Sample, PrefixStableUnderMoreTrials) {
    const auto m = test_mixture(0.05);
    const auto small = sample(m, 1000, 11);
    const auto large = sample(m, 2000, 11);
    EXPECT_EQ(std::memcmp(small.readings.data(), large.readings.data(), 1000 * sizeof(double)), 0);
}

TEST(Sample, MatchesCdfByKolmogorovSmirnov) {
    for (double g : {0.05, 1.0, 4.0}) {
        const auto m = test_mixture(g);
        const auto s = sample(m, 100000, 21);
        const double ks = ks_statistic(s.readings, [&](double q) { return m.cdf(q); });
        EXPECT_LT(ks, ks_critical_value(100000, 0.01)) << "g=" << g;
    }
}

TEST(Sample, KsDetectsWrongDistribution) {
    const auto m = test_mixture(0.05);
    const auto s = sample(m, 20000, 21);
    const double ks = ks_statistic(s.readings, [&](double q) { return m.cdf(q - 0.2); });
    EXPECT_GT(ks, ks_critical_value(20000, 0.01));
}

TEST(Estimate, WeakValueWithinThreeStandardErrors) {
    const double g = 0.05;
    const auto m = test_mixture(g);
    const auto s = sample(m, 100000, 77);
    const auto e = estimate(s, g);
    EXPECT_EQ(e.trials, 100000u);
    // The pointer mean itself is the target of the estimator.
    EXPECT_LE(std::abs(e.estimate - position_mean(m) / g), 3.0 * e.standard_error);
    EXPECT_NEAR(e.standard_error, std::sqrt(position_variance(m) / 100000.0) / g, 0.05 * e.standard_error);
}

TEST(InverseCdf, MonotoneAndInRange) {
    const auto m = test_mixture(2.0);
    const InverseCdfTable table(m);
    double prev = -1e300;
    for (int i = 0; i <= 1000; ++i) {
        const double q = table(i / 1000.0);
        EXPECT_GE(q, prev);
        prev = q;
    }
    EXPECT_GE(table(0.0), m.min_shift() - 10.0 * m.delta() - 1e-12);
    EXPECT_LE(table(1.0), m.max_shift() + 10.0 * m.delta() + 1e-12);
}

TEST(KsCritical, AsymptoticFormula) {
    EXPECT_NEAR(ks_critical_value(10000, 0.01), std::sqrt(-0.5 * std::log(0.005)) / 100.0, 1e-15);
}

}  // namespace
}  // namespace twostate
