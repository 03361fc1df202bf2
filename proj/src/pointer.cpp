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

#include "twostate/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twostate/errors.hpp"

namespace twostate {

namespace {

// Gaussian-product weight exp(-(s_i - s_j)^2 / (2 delta^2)); the common
// factor delta sqrt(pi/2) is left out of every sum and cancels in ratios.
double overlap_weight(double si, double sj, double delta) {
    const double d = (si - sj) / delta;
    return std::exp(-0.5 * d * d);
}

// sum_ij Re(conj(c_i) c_j) w_ij f(m_ij), the building block of every moment.
template <typename F>
double pair_sum(const std::vector<MixtureTerm> &terms, double delta, F &&f) {
    double total = 0.0;
    for (const auto &ti : terms) {
        for (const auto &tj : terms) {
            const double re = (std::conj(ti.coefficient) * tj.coefficient).real();
            total += re * overlap_weight(ti.shift, tj.shift, delta) * f(0.5 * (ti.shift + tj.shift));
        }
    }
    return total;
}

}  // namespace

CouplingSpec::CouplingSpec(Observable observable_, double g_, double delta_)
    : observable(std::move(observable_)), g(g_), delta(delta_) {
    if (!(std::isfinite(g) && g > 0.0)) {
        throw InvalidArgument("coupling g must be finite and positive");
    }
    if (!(std::isfinite(delta) && delta > 0.0)) {
        throw InvalidArgument("pointer width delta must be finite and positive");
    }
}

bool CouplingSpec::weak_regime() const {
    const auto values = observable.eigenvalues();
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return g * (*hi - *lo) < delta;
}

PointerMixture::PointerMixture(std::vector<MixtureTerm> terms, double delta) : delta_(delta) {
    if (!(std::isfinite(delta) && delta > 0.0)) {
        throw InvalidArgument("pointer width delta must be finite and positive");
    }
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.shift < b.shift; });
    for (auto &t : terms) {
        if (!terms_.empty() && std::abs(t.shift - terms_.back().shift) <= kEigenvalueGrouping) {
            terms_.back().coefficient += t.coefficient;
        } else {
            terms_.push_back(t);
        }
    }
    if (terms_.empty() ||
        std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.coefficient == Complex{}; })) {
        throw AllBranchesVanish("post-selected pointer wavefunction vanishes");
    }
    normalization_ = delta_ * std::sqrt(std::numbers::pi / 2.0) * pair_sum(terms_, delta_, [](double) { return 1.0; });
    if (!(normalization_ > 0.0)) {
        throw AllBranchesVanish("post-selected pointer wavefunction has zero norm");
    }
}

Complex PointerMixture::amplitude(double q) const {
    Complex out{};
    for (const auto &t : terms_) {
        const double x = (q - t.shift) / delta_;
        out += t.coefficient * std::exp(-x * x);
    }
    return out;
}

double PointerMixture::density(double q) const { return std::norm(amplitude(q)) / normalization_; }

double PointerMixture::cdf(double q) const {
    const double scale = delta_ * std::sqrt(std::numbers::pi / 2.0) / normalization_;
    const double mass = pair_sum(terms_, delta_, [&](double m) {
        return 0.5 * (1.0 + std::erf(std::numbers::sqrt2 * (q - m) / delta_));
    });
    return std::clamp(scale * mass, 0.0, 1.0);
}

double PointerMixture::min_shift() const { return terms_.front().shift; }
double PointerMixture::max_shift() const { return terms_.back().shift; }

PointerMixture mixture(const PrePostEnsemble &ens, const CouplingSpec &spec) {
    std::vector<MixtureTerm> terms;
    for (const auto &b : branch_amplitudes(spec.observable, ens)) {
        terms.push_back({b.amplitude, spec.g * b.eigenvalue});
    }
    return PointerMixture(std::move(terms), spec.delta);
}

std::vector<double> position_pdf(const PointerMixture &m, std::span<const double> q_grid) {
    for (std::size_t i = 1; i < q_grid.size(); ++i) {
        if (!(q_grid[i] > q_grid[i - 1])) {
            throw InvalidArgument("pdf grid must be strictly increasing");
        }
    }
    std::vector<double> out;
    out.reserve(q_grid.size());
    for (double q : q_grid) {
        out.push_back(m.density(q));
    }
    return out;
}

double position_mean(const PointerMixture &m) {
    const double norm = pair_sum(m.terms(), m.delta(), [](double) { return 1.0; });
    return pair_sum(m.terms(), m.delta(), [](double mid) { return mid; }) / norm;
}

double position_variance(const PointerMixture &m) {
    // Each Gaussian product exp(-2 (Q - m)^2 / delta^2) has variance delta^2 / 4.
    const double quarter = 0.25 * m.delta() * m.delta();
    const double norm = pair_sum(m.terms(), m.delta(), [](double) { return 1.0; });
    const double second = pair_sum(m.terms(), m.delta(), [&](double mid) { return mid * mid + quarter; }) / norm;
    const double mean = position_mean(m);
    return std::max(0.0, second - mean * mean);
}

double momentum_mean(const PointerMixture &m) {
    // <P> norm = -(2 / delta^2) sum_{i<j} Im(conj(c_i) c_j) w_ij (s_i - s_j)
    const auto &terms = m.terms();
    const double delta = m.delta();
    double num = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            const double im = (std::conj(terms[i].coefficient) * terms[j].coefficient).imag();
            num += im * overlap_weight(terms[i].shift, terms[j].shift, delta) * (terms[i].shift - terms[j].shift);
        }
    }
    const double norm = pair_sum(terms, delta, [](double) { return 1.0; });
    return -2.0 / (delta * delta) * num / norm;
}

}  // namespace twostate
