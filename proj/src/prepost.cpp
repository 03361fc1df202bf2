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

#include "twostate/prepost.hpp"

#include <cmath>

#include "twostate/errors.hpp"

namespace twostate {

PrePostEnsemble::PrePostEnsemble(StateVector pre, StateVector post, double degenerate_threshold)
    : pre_(std::move(pre)), post_(std::move(post)) {
    if (pre_.dim() != post_.dim()) {
        throw DimensionMismatch("pre- and post-selected states differ in dimension");
    }
    if (!pre_.is_normalized() || !post_.is_normalized()) {
        throw NotNormalized("pre- and post-selected states must be normalized");
    }
    overlap_ = inner(post_, pre_);
    if (std::abs(overlap_) <= degenerate_threshold) {
        throw DegenerateEnsemble("|<Phi|Psi>| = " + std::to_string(std::abs(overlap_)) + " is below the threshold");
    }
}

double AblDistribution::probability_of(double eigenvalue) const {
    for (const auto &e : entries) {
        if (std::abs(e.eigenvalue - eigenvalue) <= kEigenvalueGrouping) {
            return e.probability;
        }
    }
    return 0.0;
}

std::vector<BranchAmplitude> branch_amplitudes(const Observable &a, const PrePostEnsemble &ens) {
    if (a.dim() != ens.dim()) {
        throw DimensionMismatch("observable and ensemble differ in dimension");
    }
    std::vector<BranchAmplitude> out;
    out.reserve(a.spectrum().size());
    for (const auto &c : a.spectrum()) {
        out.push_back({c.eigenvalue, ens.post().amplitudes().dot(c.projector * ens.pre().amplitudes())});
    }
    return out;
}

Complex weak_value(const CMatrix &a, const PrePostEnsemble &ens) {
    if (static_cast<std::size_t>(a.rows()) != ens.dim() || a.rows() != a.cols()) {
        throw DimensionMismatch("operator and ensemble differ in dimension");
    }
    return ens.post().amplitudes().dot(a * ens.pre().amplitudes()) / ens.overlap();
}

WeakValue weak_value(const Observable &a, const PrePostEnsemble &ens) {
    return {weak_value(a.matrix(), ens), a.name()};
}

double postselection_probability(const PrePostEnsemble &ens) { return std::norm(ens.overlap()); }

AblDistribution abl_probabilities(const Observable &a, const PrePostEnsemble &ens) {
    auto branches = branch_amplitudes(a, ens);
    double total = 0.0;
    for (const auto &b : branches) {
        total += std::norm(b.amplitude);
    }
    if (total == 0.0) {
        throw AllBranchesVanish("every branch of " + (a.name().empty() ? std::string("observable") : a.name()) +
                                " is orthogonal to the post-selection");
    }
    AblDistribution out;
    for (const auto &b : branches) {
        out.entries.push_back({b.eigenvalue, std::norm(b.amplitude) / total});
    }
    return out;
}

std::optional<double> certainty_check(const Observable &a, const PrePostEnsemble &ens) {
    for (const auto &e : abl_probabilities(a, ens).entries) {
        if (std::abs(e.probability - 1.0) <= kCertaintyTolerance) {
            return e.eigenvalue;
        }
    }
    return std::nullopt;
}

}  // namespace twostate
