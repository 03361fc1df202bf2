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

#pragma once

// Pre- and post-selected ensembles.
//
// An ensemble is the pair (|Psi>, |Phi>) of the state prepared before and
// the state found after some intermediate interaction. Its weak values are
//
//     A_w = <Phi|A|Psi> / <Phi|Psi>
//
// and the outcome statistics of a single ideal intermediate measurement of A
// conditioned on the post-selection are
//
//     p_i = |<Phi|P_i|Psi>|^2 / sum_j |<Phi|P_j|Psi>|^2.

#include <optional>
#include <string>
#include <vector>

#include "twostate/qcore.hpp"

namespace twostate {

/// Smallest |<Phi|Psi>| accepted when building an ensemble.
inline constexpr double kDegenerateOverlap = 1e-10;

class PrePostEnsemble {
   public:
    /// Both states must be normalized and of equal dimension. Throws
    /// DegenerateEnsemble when |<Phi|Psi>| <= degenerate_threshold.
    PrePostEnsemble(StateVector pre, StateVector post, double degenerate_threshold = kDegenerateOverlap);

    const StateVector &pre() const { return pre_; }
    const StateVector &post() const { return post_; }
    /// <Phi|Psi>
    Complex overlap() const { return overlap_; }
    std::size_t dim() const { return pre_.dim(); }

   private:
    StateVector pre_;
    StateVector post_;
    Complex overlap_;
};

struct WeakValue {
    Complex value;
    std::string observable;
};

struct AblEntry {
    double eigenvalue;
    double probability;
};

struct AblDistribution {
    std::vector<AblEntry> entries;  // ascending eigenvalue

    /// Probability assigned to the eigenvalue within kEigenvalueGrouping; 0
    /// for values outside the spectrum.
    double probability_of(double eigenvalue) const;
};

/// One spectral branch of A as seen by the ensemble: <Phi|P_i|Psi>.
struct BranchAmplitude {
    double eigenvalue;
    Complex amplitude;
};

std::vector<BranchAmplitude> branch_amplitudes(const Observable &a, const PrePostEnsemble &ens);

WeakValue weak_value(const Observable &a, const PrePostEnsemble &ens);
/// Same formula for an arbitrary operator (need not be Hermitian).
Complex weak_value(const CMatrix &a, const PrePostEnsemble &ens);

/// |<Phi|Psi>|^2
double postselection_probability(const PrePostEnsemble &ens);

/// Throws AllBranchesVanish when every <Phi|P_i|Psi> is zero.
AblDistribution abl_probabilities(const Observable &a, const PrePostEnsemble &ens);

/// Tolerance on "probability one" used by certainty_check.
inline constexpr double kCertaintyTolerance = 1e-10;

/// The eigenvalue an ideal intermediate measurement of A yields with
/// certainty, if there is one.
std::optional<double> certainty_check(const Observable &a, const PrePostEnsemble &ens);

}  // namespace twostate
