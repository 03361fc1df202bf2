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

#include <bit>

#include "twostate/collective.hpp"
#include "twostate/errors.hpp"
#include "twostate/hardy.hpp"

namespace twostate::collective {
namespace {

// Reference values from tests/oracles/collective_oracle.py (600-digit
// arithmetic, g = 1, delta = c sqrt(N)).
struct OracleRow {
    std::size_t n;
    double c;
    double mean;
    double mode;
    double spread;
};

constexpr OracleRow kOracle[] = {
    {1, 5.0, -0.88991162347530915, -0.81805682787036414, 2.3401720802448812},
    {2, 5.0, -1.8768221297395143, -1.7834087314684278, 3.281966533984209},
    {25, 5.0, -24.859129174837837, -24.722952603684504, 11.471337267444993},
    {100, 5.0, -99.857648957761275, -99.716554773993727, 22.920473114695697},
    {400, 5.0, -399.85726999838009, -399.71485997286163, 45.829573126932076},
    {100, 2.0, -93.387485678474943, -94.488061023904644, 7.7540178553281908},
    {100, 10.0, -99.968771202104481, -99.937587144881645, 48.99050500914739},
};

const hardy::Scenario &scenario() {
    static const hardy::Scenario s = hardy::build();
    return s;
}

CollectiveSpec pair_spec(std::size_t n, double g, double delta) {
    return CollectiveSpec(scenario().ensemble(), scenario().observable("N_pair_NO_NO"), n, g, delta);
}

TEST(Collective, MatchesHighPrecisionOracle) {
    for (const auto &row : kOracle) {
        const double delta = row.c * std::sqrt(static_cast<double>(row.n));
        const auto stats = collective_pointer_stats(pair_spec(row.n, 1.0, delta));
        EXPECT_NEAR(stats.mean, row.mean, 1e-9 * std::abs(row.mean)) << "N=" << row.n << " c=" << row.c;
        EXPECT_NEAR(stats.spread, row.spread, 1e-9 * row.spread) << "N=" << row.n << " c=" << row.c;
        EXPECT_NEAR(stats.mode, row.mode, 2e-6 * delta) << "N=" << row.n << " c=" << row.c;
        EXPECT_FALSE(stats.regime_warning);
    }
}

TEST(Collective, ScalesWithCoupling) {
    const auto unit = collective_pointer_stats(pair_spec(100, 1.0, 50.0));
    const auto scaled = collective_pointer_stats(pair_spec(100, 0.01, 0.5));
    EXPECT_NEAR(scaled.mean / 0.01, unit.mean, 1e-9 * std::abs(unit.mean));
    EXPECT_NEAR(scaled.spread / 0.01, unit.spread, 1e-9 * unit.spread);
}

TEST(Collective, AcceptanceBand) {
    for (std::size_t n : {25, 100, 400}) {
        const auto spec = CollectiveSpec::with_width_ratio(scenario().ensemble(), scenario().observable("N_pair_NO_NO"),
                                                           n, 1.0, 5.0);
        const auto stats = collective_pointer_stats(spec);
        EXPECT_LE(std::abs(stats.mean + static_cast<double>(n)), std::sqrt(static_cast<double>(n)));
        EXPECT_LT(stats.mode, 0.0);
    }
}

TEST(Collective, SmallNAgreesWithDirectMixture) {
    for (std::size_t n : {1, 2, 3, 5, 8}) {
        for (double delta : {0.7, 3.0}) {
            const auto spec = pair_spec(n, 1.0, delta);
            const auto stats = collective_pointer_stats(spec);
            const auto direct = collective_mixture(spec).to_pointer_mixture();
            EXPECT_NEAR(stats.mean, position_mean(direct), 1e-9) << n;
            EXPECT_NEAR(stats.spread, std::sqrt(position_variance(direct)), 1e-9) << n;
        }
    }
}

TEST(Collective, SingleCopyIsOrdinaryPointer) {
    const auto spec = pair_spec(1, 0.4, 1.3);
    const auto direct = mixture(scenario().ensemble(), CouplingSpec(scenario().observable("N_pair_NO_NO"), 0.4, 1.3));
    EXPECT_NEAR(collective_pointer_stats(spec).mean, position_mean(direct), 1e-12);
}

TEST(Collective, CoefficientsMatchTensorProduct) {
    const auto &s = scenario();
    const Observable &obs = s.observable("N_pair_NO_NO");
    const CMatrix &p0 = obs.spectrum()[0].projector;
    const CMatrix &p1 = obs.spectrum()[1].projector;
    for (std::size_t n : {2, 3}) {
        CVector pre = s.preselected.amplitudes();
        CVector post = s.postselected.amplitudes();
        for (std::size_t i = 1; i < n; ++i) {
            pre = kron(pre, s.preselected.amplitudes());
            post = kron(post, s.postselected.amplitudes());
        }
        std::vector<Complex> brute(n + 1);
        for (unsigned bits = 0; bits < (1u << n); ++bits) {
            CMatrix p = (bits & 1u) ? p1 : p0;
            for (std::size_t i = 1; i < n; ++i) {
                p = kron(p, ((bits >> i) & 1u) ? p1 : p0);
            }
            brute[static_cast<std::size_t>(std::popcount(bits))] += post.dot(p * pre);
        }
        const auto mix = collective_mixture(pair_spec(n, 1.0, 1.0));
        ASSERT_EQ(mix.terms.size(), n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            EXPECT_LT(std::abs(mix.terms[k].coefficient() - brute[k]), 1e-10) << "N=" << n << " k=" << k;
            EXPECT_DOUBLE_EQ(mix.terms[k].shift, static_cast<double>(k));
        }
    }
}

TEST(Collective, WeakValueIsAdditive) {
    for (const auto &o : scenario().observables) {
        const CollectiveSpec spec(scenario().ensemble(), o.observable, 37, 1.0, 40.0);
        EXPECT_LT(std::abs(collective_weak_value(spec) - 37.0 * weak_value(o.observable, scenario().ensemble()).value),
                  1e-12);
    }
}

TEST(Collective, VanishingBranchGivesHalfDeltaSpread) {
    // N_plus_NO has weak value 0 with a single nonzero branch.
    const CollectiveSpec spec(scenario().ensemble(), scenario().observable("N_plus_NO"), 50, 1.0, 3.0);
    const auto stats = collective_pointer_stats(spec);
    EXPECT_NEAR(stats.spread, 1.5, 1e-10);
    EXPECT_NEAR(stats.mean, 0.0, 1e-10);
    EXPECT_NEAR(stats.mode, 0.0, 1e-5);
}

TEST(Collective, PdfNormalized) {
    const auto spec = pair_spec(100, 1.0, 50.0);
    std::vector<double> grid;
    for (int i = 0; i <= 4000; ++i) {
        grid.push_back(-400.0 + 600.0 * i / 4000.0);
    }
    const auto pdf = collective_pdf(spec, grid);
    double mass = 0.0;
    double first = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        mass += 0.5 * (pdf[i] + pdf[i - 1]) * (grid[i] - grid[i - 1]);
        first += 0.5 * (grid[i] * pdf[i] + grid[i - 1] * pdf[i - 1]) * (grid[i] - grid[i - 1]);
    }
    EXPECT_NEAR(mass, 1.0, 1e-6);
    EXPECT_NEAR(first, collective_pointer_stats(spec).mean, 1e-4);
}

TEST(Collective, SuccessProbability) {
    EXPECT_NEAR(success_probability(scenario().ensemble(), 1), 1.0 / 12.0, 1e-15);
    EXPECT_NEAR(success_probability(scenario().ensemble(), 2), 1.0 / 144.0, 1e-16);
    EXPECT_NEAR(success_log10_probability(scenario().ensemble(), 1000), -1000.0 * std::log10(12.0), 1e-9);
    EXPECT_EQ(success_probability(scenario().ensemble(), 1000), 0.0);
}

TEST(Collective, RegimeWarning) {
    EXPECT_TRUE(collective_pointer_stats(pair_spec(100, 1.0, 5.0)).regime_warning);
    EXPECT_TRUE(pair_spec(100, 1.0, 10.0).collective_regime());
}

TEST(Collective, Validation) {
    EXPECT_THROW(pair_spec(0, 1.0, 1.0), InvalidArgument);
    EXPECT_THROW(pair_spec(5, -1.0, 1.0), InvalidArgument);
    CMatrix three = CMatrix::Zero(4, 4);
    three.diagonal() << 0, 1, 2, 2;
    EXPECT_THROW(CollectiveSpec(scenario().ensemble(), Observable::from_hermitian(three), 5, 1.0, 1.0), InvalidArgument);
}

}  // namespace
}  // namespace twostate::collective
