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

#include <random>

#include "twostate/errors.hpp"
#include "twostate/prepost.hpp"

namespace twostate {
namespace {

CMatrix random_hermitian(std::mt19937_64 &rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return 0.5 * (m + m.adjoint());
}

CVector random_unit(std::mt19937_64 &rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = Complex(normal(rng), normal(rng));
    }
    return v / v.norm();
}

TEST(Ensemble, RejectsOrthogonalStates) {
    EXPECT_THROW(PrePostEnsemble(StateVector{1.0, 0.0}, StateVector{0.0, 1.0}), DegenerateEnsemble);
}

TEST(Ensemble, RejectsUnnormalizedOrMismatched) {
    EXPECT_THROW(PrePostEnsemble(StateVector{1.0, 1.0}, StateVector{1.0, 0.0}), NotNormalized);
    EXPECT_THROW(PrePostEnsemble(StateVector{1.0, 0.0}, StateVector{1.0, 0.0, 0.0}), DimensionMismatch);
}

TEST(WeakValue, DirectFormula) {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 50; ++t) {
        const CVector pre = random_unit(rng, 4);
        const CVector post = random_unit(rng, 4);
        const CMatrix a = random_hermitian(rng, 4);
        const PrePostEnsemble ens{StateVector(pre), StateVector(post)};
        const Complex expected = post.dot(a * pre) / post.dot(pre);
        EXPECT_LT(std::abs(weak_value(Observable::from_hermitian(a), ens).value - expected), 1e-10);
    }
}

TEST(WeakValue, EqualStatesGiveExpectation) {
    std::mt19937_64 rng(11);
    const CVector v = random_unit(rng, 3);
    const CMatrix a = random_hermitian(rng, 3);
    const PrePostEnsemble ens{StateVector(v), StateVector(v)};
    const Complex w = weak_value(Observable::from_hermitian(a), ens).value;
    EXPECT_NEAR(w.imag(), 0.0, 1e-12);
    EXPECT_NEAR(w.real(), v.dot(a * v).real(), 1e-12);
}

TEST(WeakValue, CanLieOutsideSpectrum) {
    // Nearly orthogonal pre and post selection amplify sigma_z far beyond +-1.
    const double eps = 0.05;
    const StateVector pre = StateVector{1.0, 1.0}.normalized();
    const StateVector post = StateVector{1.0, -(1.0 - eps)}.normalized();
    const double d[] = {1.0, -1.0};
    const PrePostEnsemble ens(pre, post);
    const Complex w = weak_value(Observable::from_diagonal(d), ens).value;
    EXPECT_NEAR(w.real(), (2.0 - eps) / eps, 1e-9);
}

TEST(WeakValue, AdditivityOverRandomTriples) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> dims(2, 6);
    int done = 0;
    while (done < 1000) {
        const Eigen::Index dim = dims(rng);
        const CVector pre = random_unit(rng, dim);
        const CVector post = random_unit(rng, dim);
        if (std::abs(post.dot(pre)) <= 1e-3) {
            continue;
        }
        const PrePostEnsemble ens{StateVector(pre), StateVector(post)};
        const CMatrix a = random_hermitian(rng, dim);
        const CMatrix b = random_hermitian(rng, dim);
        const Complex sum = weak_value(Observable::from_hermitian(a + b), ens).value;
        const Complex parts =
            weak_value(Observable::from_hermitian(a), ens).value + weak_value(Observable::from_hermitian(b), ens).value;
        ASSERT_LT(std::abs(sum - parts), 1e-10);
        ++done;
    }
}

TEST(WeakValue, ProjectorsSumToOne) {
    std::mt19937_64 rng(13);
    const PrePostEnsemble ens{StateVector(random_unit(rng, 5)), StateVector(random_unit(rng, 5))};
    const Observable a = Observable::from_hermitian(random_hermitian(rng, 5));
    Complex total{};
    for (const auto &c : a.spectrum()) {
        total += weak_value(c.projector, ens);
    }
    EXPECT_LT(std::abs(total - 1.0), 1e-12);
}

TEST(Abl, NormalizedAndNonNegative) {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 20; ++t) {
        const PrePostEnsemble ens{StateVector(random_unit(rng, 4)), StateVector(random_unit(rng, 4))};
        const auto dist = abl_probabilities(Observable::from_hermitian(random_hermitian(rng, 4)), ens);
        double total = 0.0;
        for (const auto &e : dist.entries) {
            EXPECT_GE(e.probability, 0.0);
            total += e.probability;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(Abl, MatchesBranchAmplitudes) {
    // sigma_x on a qubit: branches <Phi|P_+|Psi> and <Phi|P_-|Psi> by hand.
    const StateVector pre{std::cos(0.4), std::sin(0.4)};
    const StateVector post{std::cos(1.1), std::sin(1.1)};
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const PrePostEnsemble ens(pre, post);
    const double plus = std::pow((std::cos(1.1) + std::sin(1.1)) * (std::cos(0.4) + std::sin(0.4)) / 2.0, 2);
    const double minus = std::pow((std::cos(1.1) - std::sin(1.1)) * (std::cos(0.4) - std::sin(0.4)) / 2.0, 2);
    const auto dist = abl_probabilities(Observable::from_hermitian(x), ens);
    EXPECT_NEAR(dist.probability_of(1.0), plus / (plus + minus), 1e-12);
    EXPECT_NEAR(dist.probability_of(-1.0), minus / (plus + minus), 1e-12);
    EXPECT_EQ(dist.probability_of(0.5), 0.0);
}

TEST(Abl, AllBranchesVanishThrows) {
    // Only reachable with a degenerate threshold of zero; the ensemble check
    // normally prevents it.
    const PrePostEnsemble ens(StateVector{1.0, 0.0}, StateVector{0.0, 1.0}, -1.0);
    EXPECT_THROW(abl_probabilities(Observable::identity(2), ens), AllBranchesVanish);
}

TEST(Certainty, CertainOutcomeEqualsWeakValue) {
    const StateVector pre{1.0, 0.0, 0.0};
    const StateVector post = StateVector{1.0, 1.0, 0.0}.normalized();
    const double d[] = {2.0, 5.0, 5.0};
    const Observable a = Observable::from_diagonal(d);
    const PrePostEnsemble ens(pre, post);
    const auto certain = certainty_check(a, ens);
    ASSERT_TRUE(certain.has_value());
    EXPECT_NEAR(*certain, 2.0, 1e-12);
    EXPECT_NEAR(std::abs(weak_value(a, ens).value - *certain), 0.0, 1e-12);
}

TEST(Certainty, NoneWhenSpread) {
    const StateVector s = StateVector{1.0, 1.0}.normalized();
    const double d[] = {0.0, 1.0};
    EXPECT_FALSE(certainty_check(Observable::from_diagonal(d), PrePostEnsemble(s, s)).has_value());
}

}  // namespace
}  // namespace twostate
