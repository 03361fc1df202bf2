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

#include "twostate/simultaneous.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "twostate/errors.hpp"

namespace twostate {

namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s *plan) const { fftw_destroy_plan(plan); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

bool all_commute(std::span<const Observable> observables) {
    for (std::size_t i = 0; i < observables.size(); ++i) {
        for (std::size_t j = i + 1; j < observables.size(); ++j) {
            if (!observables[i].commutes_with(observables[j], kEigenvalueGrouping)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> fast_path(const PrePostEnsemble &ens, std::span<const CouplingSpec> specs) {
    std::vector<Observable> observables;
    for (const auto &s : specs) {
        observables.push_back(s.observable);
    }
    const auto blocks = joint_blocks(observables);

    std::vector<Complex> coeff;
    for (const auto &b : blocks) {
        coeff.push_back(ens.post().amplitudes().dot(b.projector * ens.pre().amplitudes()));
    }

    const std::size_t k_count = specs.size();
    std::vector<double> first(k_count, 0.0);
    double norm = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (std::size_t c = 0; c < blocks.size(); ++c) {
            double w = (std::conj(coeff[b]) * coeff[c]).real();
            if (w == 0.0) {
                continue;
            }
            for (std::size_t k = 0; k < k_count; ++k) {
                const double d = specs[k].g * (blocks[b].values[k] - blocks[c].values[k]) / specs[k].delta;
                w *= std::exp(-0.5 * d * d);
            }
            norm += w;
            for (std::size_t k = 0; k < k_count; ++k) {
                first[k] += w * 0.5 * specs[k].g * (blocks[b].values[k] + blocks[c].values[k]);
            }
        }
    }
    if (!(norm > 0.0)) {
        throw AllBranchesVanish("joint post-selected pointer state vanishes");
    }
    for (double &f : first) {
        f /= norm;
    }
    return first;
}

struct Axis {
    std::vector<double> q;
    std::vector<double> p;  // FFT ordering
};

Axis make_axis(const CouplingSpec &spec, const PointerGridOptions &opts) {
    double reach = 0.0;
    for (double a : spec.observable.eigenvalues()) {
        reach = std::max(reach, std::abs(spec.g * a));
    }
    const double half = reach + opts.half_widths * spec.delta;
    const std::size_t n = opts.points;
    const double h = 2.0 * half / static_cast<double>(n);
    Axis axis;
    axis.q.resize(n);
    axis.p.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        axis.q[i] = -half + h * static_cast<double>(i);
        const auto m = static_cast<double>(i < n / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n));
        axis.p[i] = 2.0 * std::numbers::pi * m / (static_cast<double>(n) * h);
    }
    return axis;
}

// exp(-i g p A) = sum_j P_j exp(-i g p a_j) for every momentum on the axis.
std::vector<CMatrix> momentum_propagators(const CouplingSpec &spec, const Axis &axis) {
    std::vector<CMatrix> out;
    out.reserve(axis.p.size());
    for (double p : axis.p) {
        const auto d = static_cast<Eigen::Index>(spec.observable.dim());
        CMatrix u = CMatrix::Zero(d, d);
        for (const auto &c : spec.observable.spectrum()) {
            u += std::polar(1.0, -spec.g * p * c.eigenvalue) * c.projector;
        }
        out.push_back(std::move(u));
    }
    return out;
}

}  // namespace

std::vector<JointBlock> joint_blocks(std::span<const Observable> observables) {
    if (observables.empty()) {
        throw InvalidArgument("joint_blocks needs at least one observable");
    }
    if (!all_commute(observables)) {
        throw UnsupportedConfiguration("observables do not commute; no joint spectral blocks");
    }
    const auto d = static_cast<Eigen::Index>(observables.front().dim());
    std::vector<JointBlock> blocks{{CMatrix::Identity(d, d), {}}};
    for (const auto &obs : observables) {
        std::vector<JointBlock> refined;
        for (const auto &block : blocks) {
            for (const auto &c : obs.spectrum()) {
                CMatrix p = block.projector * c.projector;
                if (p.trace().real() < 0.5) {
                    continue;
                }
                auto values = block.values;
                values.push_back(c.eigenvalue);
                refined.push_back({std::move(p), std::move(values)});
            }
        }
        blocks = std::move(refined);
    }
    return blocks;
}

std::vector<double> simultaneous_on_grid(const PrePostEnsemble &ens, const CouplingSpec &first,
                                         const CouplingSpec &second, const PointerGridOptions &opts) {
    if (opts.points < 8 || opts.points > kMaxPointerGridPoints) {
        throw InvalidArgument("pointer grid must have between 8 and 256 points");
    }
    if (first.observable.dim() != ens.dim() || second.observable.dim() != ens.dim()) {
        throw DimensionMismatch("observables and ensemble differ in dimension");
    }
    const std::size_t n = opts.points;
    const std::size_t d = ens.dim();
    const Axis ax1 = make_axis(first, opts);
    const Axis ax2 = make_axis(second, opts);

    // psi[(s * n + i1) * n + i2]
    std::vector<Complex> psi(d * n * n);
    for (std::size_t s = 0; s < d; ++s) {
        const Complex amp = ens.pre()[s];
        for (std::size_t i1 = 0; i1 < n; ++i1) {
            const double x1 = ax1.q[i1] / first.delta;
            const double g1 = std::exp(-x1 * x1);
            for (std::size_t i2 = 0; i2 < n; ++i2) {
                const double x2 = ax2.q[i2] / second.delta;
                psi[(s * n + i1) * n + i2] = amp * g1 * std::exp(-x2 * x2);
            }
        }
    }

    auto *data = reinterpret_cast<fftw_complex *>(psi.data());
    const int ni = static_cast<int>(n);
    const int nn = static_cast<int>(n * n);
    // Transforms along pointer 2 (contiguous) and pointer 1 (stride n).
    fftw_iodim along2{ni, 1, 1};
    fftw_iodim loops2{static_cast<int>(d * n), ni, ni};
    fftw_iodim along1{ni, ni, ni};
    fftw_iodim loops1[2] = {{static_cast<int>(d), nn, nn}, {ni, 1, 1}};
    Plan fwd2(fftw_plan_guru_dft(1, &along2, 1, &loops2, data, data, FFTW_FORWARD, FFTW_ESTIMATE));
    Plan bwd2(fftw_plan_guru_dft(1, &along2, 1, &loops2, data, data, FFTW_BACKWARD, FFTW_ESTIMATE));
    Plan fwd1(fftw_plan_guru_dft(1, &along1, 2, loops1, data, data, FFTW_FORWARD, FFTW_ESTIMATE));
    Plan bwd1(fftw_plan_guru_dft(1, &along1, 2, loops1, data, data, FFTW_BACKWARD, FFTW_ESTIMATE));
    if (!fwd1 || !bwd1 || !fwd2 || !bwd2) {
        throw UnsupportedConfiguration("FFTW could not plan the pointer-grid transforms");
    }

    const auto de = static_cast<Eigen::Index>(d);
    CVector v(de);
    auto couple = [&](fftw_plan_s *fwd, fftw_plan_s *bwd, const std::vector<CMatrix> &u, bool axis_one) {
        fftw_execute(fwd);
        for (std::size_t a = 0; a < n; ++a) {      // momentum index on the coupled axis
            for (std::size_t b = 0; b < n; ++b) {  // position index on the other axis
                const std::size_t i1 = axis_one ? a : b;
                const std::size_t i2 = axis_one ? b : a;
                for (std::size_t s = 0; s < d; ++s) {
                    v[static_cast<Eigen::Index>(s)] = psi[(s * n + i1) * n + i2];
                }
                v = u[a] * v;
                for (std::size_t s = 0; s < d; ++s) {
                    psi[(s * n + i1) * n + i2] = v[static_cast<Eigen::Index>(s)] / static_cast<double>(n);
                }
            }
        }
        fftw_execute(bwd);
    };
    // exp(-i g1 P1 A) exp(-i g2 P2 B): the right factor acts first.
    couple(fwd2.get(), bwd2.get(), momentum_propagators(second, ax2), false);
    couple(fwd1.get(), bwd1.get(), momentum_propagators(first, ax1), true);

    double norm = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            Complex phi{};
            for (std::size_t s = 0; s < d; ++s) {
                phi += std::conj(ens.post()[s]) * psi[(s * n + i1) * n + i2];
            }
            const double rho = std::norm(phi);
            norm += rho;
            m1 += rho * ax1.q[i1];
            m2 += rho * ax2.q[i2];
        }
    }
    if (!(norm > 0.0)) {
        throw AllBranchesVanish("post-selected pointer grid state vanishes");
    }
    return {m1 / norm, m2 / norm};
}

std::vector<double> simultaneous(const PrePostEnsemble &ens, std::span<const CouplingSpec> specs,
                                 const PointerGridOptions &grid) {
    if (specs.empty()) {
        throw InvalidArgument("simultaneous measurement needs at least one coupling");
    }
    for (const auto &s : specs) {
        if (s.observable.dim() != ens.dim()) {
            throw DimensionMismatch("observable and ensemble differ in dimension");
        }
    }
    std::vector<Observable> observables;
    for (const auto &s : specs) {
        observables.push_back(s.observable);
    }
    if (all_commute(observables)) {
        return fast_path(ens, specs);
    }
    if (specs.size() == 2) {
        return simultaneous_on_grid(ens, specs[0], specs[1], grid);
    }
    throw UnsupportedConfiguration("more than two observables that do not all commute");
}

}  // namespace twostate
