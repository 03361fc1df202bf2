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

#include "twostate/collective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "twostate/errors.hpp"

namespace twostate::collective {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// The momentum grid is cut where |phi~| has fallen by e^-60 from its peak.
constexpr double kMomentumCutoffLog = 60.0;
// Half-widths of margin around the pointer support in position space.
constexpr double kPositionMargin = 30.0;
constexpr std::size_t kMaxMomentumPoints = std::size_t{1} << 20;
constexpr std::size_t kModeGridPoints = 4096;
constexpr double kModeTolerance = 1e-6;  // in units of delta

struct Branches {
    double a0, a1;
    Complex alpha0, alpha1;
};

Branches branches(const CollectiveSpec &spec) {
    const auto b = branch_amplitudes(spec.observable, spec.single);
    return {b[0].eigenvalue, b[1].eigenvalue, b[0].amplitude, b[1].amplitude};
}

// n * log(z) with the 0 * log(0) = 0 convention.
Complex scaled_log(double n, Complex z) {
    if (n == 0.0) {
        return {};
    }
    if (z == Complex{}) {
        return {kNegInf, 0.0};
    }
    return n * std::log(z);
}

Complex exp_or_zero(Complex z) { return z.real() == kNegInf ? Complex{} : std::exp(z); }

// Momentum-space representation of the collective pointer, scaled so the
// largest |phi~| on the grid is 1.
class MomentumPointer {
   public:
    explicit MomentumPointer(const CollectiveSpec &spec) {
        const auto br = branches(spec);
        const double n = static_cast<double>(spec.n_pairs);
        const double g = spec.g;
        const double delta = spec.delta;
        const Complex total = br.alpha0 + br.alpha1;

        const double centre = std::abs(collective_weak_value(spec).real() * g);
        const double reach =
            std::max({std::abs(g * n * br.a0), std::abs(g * n * br.a1), centre}) + kPositionMargin * delta;
        dp_ = std::numbers::pi / (2.0 * reach);
        const double excess = n * (std::log(std::abs(br.alpha0) + std::abs(br.alpha1)) - std::log(std::abs(total)));
        const double p_max = 2.0 * std::sqrt(excess + kMomentumCutoffLog) / delta;
        const auto half = static_cast<std::size_t>(std::ceil(p_max / dp_));
        if (2 * half + 1 > kMaxMomentumPoints) {
            throw UnsupportedConfiguration("collective pointer needs more than 2^20 momentum points");
        }

        const std::size_t count = 2 * half + 1;
        p0_ = -static_cast<double>(half) * dp_;
        std::vector<Complex> log_f(count);
        std::vector<Complex> log_df(count);  // log of G~ B^(N-1)
        std::vector<Complex> d(count);
        double peak = kNegInf;
        for (std::size_t j = 0; j < count; ++j) {
            const double p = p0_ + dp_ * static_cast<double>(j);
            const Complex e0 = std::polar(1.0, -p * g * br.a0);
            const Complex e1 = std::polar(1.0, -p * g * br.a1);
            const Complex b = br.alpha0 * e0 + br.alpha1 * e1;
            d[j] = br.alpha0 * br.a0 * e0 + br.alpha1 * br.a1 * e1;
            const double gauss = -0.25 * p * p * delta * delta;
            log_f[j] = gauss + scaled_log(n, b);
            log_df[j] = gauss + scaled_log(n - 1.0, b);
            peak = std::max(peak, log_f[j].real());
        }

        f_.resize(count);
        df_.resize(count);
        double norm = 0.0;
        double first = 0.0;
        double second = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            const double p = p0_ + dp_ * static_cast<double>(j);
            f_[j] = exp_or_zero(log_f[j] - peak);
            // d/dp [G~ B^N] = -(p delta^2 / 2) G~ B^N + G~ N B^(N-1) (-i g D)
            df_[j] = -0.5 * p * delta * delta * f_[j] +
                     exp_or_zero(log_df[j] - peak) * n * Complex(0.0, -g) * d[j];
            norm += std::norm(f_[j]);
            first += (std::conj(f_[j]) * Complex(0.0, 1.0) * df_[j]).real();
            second += std::norm(df_[j]);
        }
        norm_ = norm;
        mean_ = first / norm;
        variance_ = std::max(0.0, second / norm - mean_ * mean_);
    }

    double mean() const { return mean_; }
    double variance() const { return variance_; }

    /// Normalized |phi(q)|^2 by Fourier synthesis.
    double density(double q) const {
        const Complex step = std::polar(1.0, dp_ * q);
        Complex phase = std::polar(1.0, p0_ * q);
        Complex sum{};
        for (const Complex &f : f_) {
            sum += f * phase;
            phase *= step;
        }
        return std::norm(sum) * dp_ / (2.0 * std::numbers::pi) / norm_;
    }

   private:
    double dp_ = 0.0;
    double p0_ = 0.0;
    std::vector<Complex> f_;
    std::vector<Complex> df_;
    double norm_ = 0.0;
    double mean_ = 0.0;
    double variance_ = 0.0;
};

double golden_section_max(const MomentumPointer &m, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = m.density(x1);
    double f2 = m.density(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = m.density(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = m.density(x1);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CollectiveSpec::CollectiveSpec(PrePostEnsemble single_, Observable observable_, std::size_t n_pairs_, double g_,
                               double delta_)
    : single(std::move(single_)), observable(std::move(observable_)), n_pairs(n_pairs_), g(g_), delta(delta_) {
    if (n_pairs == 0) {
        throw InvalidArgument("n_pairs must be positive");
    }
    if (!(std::isfinite(g) && g > 0.0) || !(std::isfinite(delta) && delta > 0.0)) {
        throw InvalidArgument("g and delta must be finite and positive");
    }
    if (observable.spectrum().size() != 2) {
        throw InvalidArgument("collective observable must have exactly two distinct eigenvalues");
    }
    if (observable.dim() != single.dim()) {
        throw DimensionMismatch("observable and ensemble differ in dimension");
    }
}

CollectiveSpec CollectiveSpec::with_width_ratio(PrePostEnsemble single, Observable observable, std::size_t n_pairs,
                                                double g, double c) {
    if (!(std::isfinite(c) && c > 0.0)) {
        throw InvalidArgument("width ratio c must be finite and positive");
    }
    return CollectiveSpec(std::move(single), std::move(observable), n_pairs, g,
                          c * g * std::sqrt(static_cast<double>(n_pairs)));
}

bool CollectiveSpec::collective_regime() const { return delta >= g * std::sqrt(static_cast<double>(n_pairs)); }

Complex CollectiveTerm::coefficient() const {
    return log_magnitude == kNegInf ? Complex{} : std::polar(std::exp(log_magnitude), phase);
}

PointerMixture CollectiveMixture::to_pointer_mixture() const {
    std::vector<MixtureTerm> out;
    for (const auto &t : terms) {
        out.push_back({t.coefficient(), t.shift});
    }
    return PointerMixture(std::move(out), delta);
}

CollectiveMixture collective_mixture(const CollectiveSpec &spec) {
    const auto br = branches(spec);
    if (br.alpha0 == Complex{} && br.alpha1 == Complex{}) {
        throw AllBranchesVanish("both branches of the collective observable vanish");
    }
    const std::size_t n = spec.n_pairs;
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
    CollectiveMixture out{{}, spec.delta, br.alpha0, br.alpha1};
    out.terms.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double rest = static_cast<double>(n - k);
        const Complex log_c = scaled_log(kk, br.alpha1) + scaled_log(rest, br.alpha0);
        const double binom = log_n_fact - std::lgamma(kk + 1.0) - std::lgamma(rest + 1.0);
        out.terms.push_back({k, log_c.real() == kNegInf ? kNegInf : binom + log_c.real(), log_c.imag(),
                             spec.g * (kk * br.a1 + rest * br.a0)});
    }
    return out;
}

Complex collective_weak_value(const CollectiveSpec &spec) {
    return static_cast<double>(spec.n_pairs) * weak_value(spec.observable, spec.single).value;
}

PointerStats collective_pointer_stats(const CollectiveSpec &spec) {
    const MomentumPointer m(spec);
    const auto br = branches(spec);
    const double n = static_cast<double>(spec.n_pairs);
    const double lo = std::min({spec.g * n * br.a0, m.mean()}) - 10.0 * spec.delta;
    const double hi = std::max({spec.g * n * br.a1, m.mean()}) + 10.0 * spec.delta;

    const double step = (hi - lo) / static_cast<double>(kModeGridPoints - 1);
    std::size_t best = 0;
    double best_density = -1.0;
    for (std::size_t i = 0; i < kModeGridPoints; ++i) {
        const double d = m.density(lo + step * static_cast<double>(i));
        if (d > best_density) {
            best_density = d;
            best = i;
        }
    }
    const double centre = lo + step * static_cast<double>(best);
    const double mode = golden_section_max(m, centre - step, centre + step, kModeTolerance * spec.delta);
    return {m.mean(), mode, std::sqrt(m.variance()), !spec.collective_regime()};
}

std::vector<double> collective_pdf(const CollectiveSpec &spec, std::span<const double> q_grid) {
    for (std::size_t i = 1; i < q_grid.size(); ++i) {
        if (!(q_grid[i] > q_grid[i - 1])) {
            throw InvalidArgument("pdf grid must be strictly increasing");
        }
    }
    const MomentumPointer m(spec);
    std::vector<double> out;
    out.reserve(q_grid.size());
    for (double q : q_grid) {
        out.push_back(m.density(q));
    }
    return out;
}

double success_probability(const PrePostEnsemble &single, std::size_t n_pairs) {
    return std::pow(postselection_probability(single), static_cast<double>(n_pairs));
}

double success_probability(const CollectiveSpec &spec) { return success_probability(spec.single, spec.n_pairs); }

double success_log10_probability(const PrePostEnsemble &single, std::size_t n_pairs) {
    return static_cast<double>(n_pairs) * std::log10(postselection_probability(single));
}

}  // namespace twostate::collective
