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

#include <cmath>
#include <vector>

#include "twostate/errors.hpp"
#include "twostate/pointer.hpp"

namespace twostate {
namespace {

// Raw Gaussian superposition evaluated directly from the branch amplitudes.
struct RawPointer {
    std::vector<Complex> c;
    std::vector<double> s;
    double delta;

    Complex phi(double q) const {
        Complex v{};
        for (std::size_t i = 0; i < c.size(); ++i) {
            v += c[i] * std::exp(-(q - s[i]) * (q - s[i]) / (delta * delta));
        }
        return v;
    }
    Complex dphi(double q) const {
        Complex v{};
        for (std::size_t i = 0; i < c.size(); ++i) {
            v += c[i] * (-2.0 * (q - s[i]) / (delta * delta)) * std::exp(-(q - s[i]) * (q - s[i]) / (delta * delta));
        }
        return v;
    }
};

struct Moments {
    double mass;
    double mean;
    double second;
    double momentum;
};

Moments integrate(const RawPointer &p, double lo, double hi, std::size_t n = 200001) {
    const double h = (hi - lo) / static_cast<double>(n - 1);
    double mass = 0.0, first = 0.0, second = 0.0, mom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = lo + h * static_cast<double>(i);
        const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
        const Complex f = p.phi(q);
        const double d = std::norm(f);
        mass += w * d;
        first += w * q * d;
        second += w * q * q * d;
        mom += w * (std::conj(f) * p.dphi(q)).imag();
    }
    return {mass, first / mass, second / mass, mom / mass};
}

PrePostEnsemble qubit_ensemble() {
    const StateVector pre{std::cos(0.3), std::sin(0.3)};
    const StateVector post = StateVector{Complex(std::cos(1.2), 0.0), Complex(0.0, std::sin(1.2))};
    return PrePostEnsemble(pre, post);
}

Observable sigma_x() {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return Observable::from_hermitian(x);
}

RawPointer raw_for(const PrePostEnsemble &ens, const Observable &a, double g, double delta) {
    RawPointer p{{}, {}, delta};
    for (const auto &comp : a.spectrum()) {
        p.c.push_back(ens.post().amplitudes().dot(comp.projector * ens.pre().amplitudes()));
        p.s.push_back(g * comp.eigenvalue);
    }
    return p;
}

TEST(CouplingSpec, Validation) {
    EXPECT_THROW(CouplingSpec(sigma_x(), 0.0, 1.0), InvalidArgument);
    EXPECT_THROW(CouplingSpec(sigma_x(), 0.1, -1.0), InvalidArgument);
    EXPECT_THROW(CouplingSpec(sigma_x(), NAN, 1.0), InvalidArgument);
    EXPECT_TRUE(CouplingSpec(sigma_x(), 0.1, 1.0).weak_regime());
    EXPECT_FALSE(CouplingSpec(sigma_x(), 1.0, 1.0).weak_regime());
}

TEST(Mixture, ClosedFormMomentsMatchQuadrature) {
    const PrePostEnsemble ens = qubit_ensemble();
    for (double g : {0.05, 0.7, 3.0}) {
        const auto m = mixture(ens, CouplingSpec(sigma_x(), g, 1.0));
        const auto raw = integrate(raw_for(ens, sigma_x(), g, 1.0), -g - 12.0, g + 12.0);
        EXPECT_NEAR(position_mean(m), raw.mean, 1e-8) << "g=" << g;
        EXPECT_NEAR(position_variance(m), raw.second - raw.mean * raw.mean, 1e-8) << "g=" << g;
        EXPECT_NEAR(momentum_mean(m), raw.momentum, 1e-8) << "g=" << g;
    }
}

TEST(Mixture, PdfIntegratesToOne) {
    const PrePostEnsemble ens = qubit_ensemble();
    const auto m = mixture(ens, CouplingSpec(sigma_x(), 0.4, 0.8));
    std::vector<double> grid;
    for (int i = 0; i <= 20000; ++i) {
        grid.push_back(-12.0 + 24.0 * i / 20000.0);
    }
    const auto pdf = position_pdf(m, grid);
    double mass = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        mass += 0.5 * (pdf[i] + pdf[i - 1]) * (grid[i] - grid[i - 1]);
    }
    EXPECT_NEAR(mass, 1.0, 1e-6);
    EXPECT_NEAR(m.cdf(12.0) - m.cdf(-12.0), 1.0, 1e-12);
}

TEST(Mixture, PdfGridMustIncrease) {
    const auto m = mixture(qubit_ensemble(), CouplingSpec(sigma_x(), 0.4, 1.0));
    const std::vector<double> bad{0.0, 0.0, 1.0};
    EXPECT_THROW(position_pdf(m, bad), InvalidArgument);
}

TEST(Mixture, CdfMatchesIntegratedDensity) {
    const auto m = mixture(qubit_ensemble(), CouplingSpec(sigma_x(), 1.5, 1.0));
    const int n = 40000;
    const double lo = -12.0;
    double acc = 0.0;
    double prev = m.density(lo);
    for (int i = 1; i <= n; ++i) {
        const double q = lo + 24.0 * i / n;
        const double cur = m.density(q);
        acc += 0.5 * (prev + cur) * (24.0 / n);
        prev = cur;
        if (i % 5000 == 0) {
            EXPECT_NEAR(m.cdf(q), acc, 1e-7);
        }
    }
}

TEST(Mixture, WeakLimitReadsWeakValue) {
    const PrePostEnsemble ens = qubit_ensemble();
    const Complex aw = weak_value(sigma_x(), ens).value;
    const double delta = 1.0;
    for (double g : {1e-2, 1e-3}) {
        const auto m = mixture(ens, CouplingSpec(sigma_x(), g, delta));
        EXPECT_NEAR(position_mean(m) / g, aw.real(), 50.0 * g * g);
        const double factor = momentum_mean(m) * delta * delta / (g * aw.imag());
        EXPECT_NEAR(factor, kMomentumShiftFactor, 50.0 * g * g);
    }
}

TEST(Mixture, MomentumConstantFromFourierIntegral) {
    // Momentum-space density |FT phi|^2 integrated on a grid, independent of
    // the closed form.
    const PrePostEnsemble ens = qubit_ensemble();
    const double g = 1e-3;
    const double delta = 1.0;
    const RawPointer raw = raw_for(ens, sigma_x(), g, delta);
    const int nq = 1601;
    const double qh = 24.0 / (nq - 1);
    double num = 0.0;
    double den = 0.0;
    for (int ip = -400; ip <= 400; ++ip) {
        const double p = ip * 0.02;
        Complex ft{};
        for (int iq = 0; iq < nq; ++iq) {
            const double q = -12.0 + qh * iq;
            ft += raw.phi(q) * std::exp(Complex(0.0, -p * q)) * qh;
        }
        num += p * std::norm(ft);
        den += std::norm(ft);
    }
    const Complex aw = weak_value(sigma_x(), ens).value;
    EXPECT_NEAR((num / den) * delta * delta / (g * aw.imag()), 2.0, 1e-3);
}

TEST(Mixture, StrongLimitSeparatesPeaks) {
    const PrePostEnsemble ens = qubit_ensemble();
    const auto m = mixture(ens, CouplingSpec(sigma_x(), 20.0, 1.0));
    const auto dist = abl_probabilities(sigma_x(), ens);
    EXPECT_NEAR(m.cdf(-18.0) - m.cdf(-22.0), dist.probability_of(-1.0), 1e-3);
    EXPECT_NEAR(m.cdf(22.0) - m.cdf(18.0), dist.probability_of(1.0), 1e-3);
}

TEST(Mixture, SingleTermIsGaussianWithHalfDeltaSpread) {
    const StateVector s{1.0, 0.0};
    const double d[] = {3.0, -1.0};
    const auto m = mixture(PrePostEnsemble(s, s), CouplingSpec(Observable::from_diagonal(d), 0.5, 2.0));
    EXPECT_NEAR(position_mean(m), 1.5, 1e-14);
    EXPECT_NEAR(std::sqrt(position_variance(m)), 1.0, 1e-14);
    EXPECT_NEAR(momentum_mean(m), 0.0, 1e-14);
}

TEST(Mixture, KeepsVanishingBranchesAndRejectsAllZero) {
    const StateVector pre{1.0, 0.0};
    const StateVector post = StateVector{1.0, 1.0}.normalized();
    const double d[] = {0.0, 1.0};
    const auto m = mixture(PrePostEnsemble(pre, post), CouplingSpec(Observable::from_diagonal(d), 0.1, 1.0));
    EXPECT_EQ(m.terms().size(), 2u);
    EXPECT_THROW(PointerMixture({{0.0, 0.0}, {0.0, 1.0}}, 1.0), AllBranchesVanish);
}

TEST(Mixture, PeakNearMinusGForPairObservableAnalogue) {
    // Eigenvalues {0, 1} with branch amplitudes c0 = -2 c1 give weak value -1.
    const PointerMixture m({{Complex(-1.0 / std::sqrt(3.0)), 0.0}, {Complex(0.5 / std::sqrt(3.0)), 0.05}}, 1.0);
    double best_q = 0.0;
    double best = -1.0;
    for (int i = -20000; i <= 20000; ++i) {
        const double q = i * 1e-4;
        if (m.density(q) > best) {
            best = m.density(q);
            best_q = q;
        }
    }
    EXPECT_NEAR(best_q, -0.05, 0.02 * 0.05 + 1e-4);
}

}  // namespace
}  // namespace twostate
