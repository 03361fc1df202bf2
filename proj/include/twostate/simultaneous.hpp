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

// Several pointers coupled to one pre/post-selected system.
//
// When the observables commute they share joint spectral blocks B_b on which
// observable k takes the value a_k(b). The post-selected joint pointer state
// is then sum_b <Phi|B_b|Psi> prod_k G(Q_k - g_k a_k(b)), and each marginal
// mean follows from the same Gaussian-overlap sums as a single pointer.
//
// Two non-commuting observables are handled by brute force on discretized
// pointer grids: exp(-i g1 P1 A) exp(-i g2 P2 B) is applied in momentum space
// (FFT along each pointer axis), the system is projected on |Phi>, and the
// marginal means are obtained by quadrature.

#include <cstddef>
#include <span>
#include <vector>

#include "twostate/pointer.hpp"

namespace twostate {

inline constexpr std::size_t kMaxPointerGridPoints = 256;

struct PointerGridOptions {
    std::size_t points = kMaxPointerGridPoints;  ///< per pointer axis, <= 256
    double half_widths = 10.0;                   ///< grid spans max|g a| + half_widths * delta
};

/// Joint spectral block of mutually commuting observables.
struct JointBlock {
    CMatrix projector;
    std::vector<double> values;  ///< one eigenvalue per observable
};

/// Refines the spectral projectors of commuting observables into their
/// common blocks. Throws UnsupportedConfiguration if they do not commute.
std::vector<JointBlock> joint_blocks(std::span<const Observable> observables);

/// Per-pointer position means <Q_k> (divide by g_k for the weak-value read-out).
/// Throws UnsupportedConfiguration for more than two observables that do not
/// all commute.
std::vector<double> simultaneous(const PrePostEnsemble &ens, std::span<const CouplingSpec> specs,
                                 const PointerGridOptions &grid = {});

/// The grid path on its own, for two observables whether or not they commute.
std::vector<double> simultaneous_on_grid(const PrePostEnsemble &ens, const CouplingSpec &first,
                                         const CouplingSpec &second, const PointerGridOptions &grid = {});

}  // namespace twostate
