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

// Von Neumann pointer read-out for post-selected measurements.
//
// The pointer starts in exp(-Q^2 / delta^2) (no normalization constant) and
// the impulsive coupling exp(-i g P A) shifts it by g a_i on branch i. After
// post-selecting |Phi> the pointer is left in
//
//     phi(Q) = sum_i c_i exp(-(Q - s_i)^2 / delta^2),   c_i = <Phi|P_i|Psi>,
//                                                       s_i = g a_i.
//
// Products of two such Gaussians are again Gaussian,
//
//     G_i G_j = exp(-(s_i - s_j)^2 / (2 delta^2)) exp(-2 (Q - m_ij)^2 / delta^2),
//
// with m_ij = (s_i + s_j) / 2, so every moment of |phi|^2 reduces to finite
// sums over term pairs.

#include <span>
#include <vector>

#include "twostate/prepost.hpp"

namespace twostate {

struct CouplingSpec {
    Observable observable;
    double g;      ///< integrated coupling strength
    double delta;  ///< initial pointer width

    /// Throws InvalidArgument unless g and delta are finite and positive.
    CouplingSpec(Observable observable, double g, double delta);

    /// g * max|a_i - a_j| < delta: the pointer shift stays below the pointer
    /// uncertainty.
    bool weak_regime() const;
};

struct MixtureTerm {
    Complex coefficient;
    double shift;
};

class PointerMixture {
   public:
    /// Terms with equal shift (within kEigenvalueGrouping) are merged.
    /// Throws AllBranchesVanish when the resulting wavefunction is zero.
    PointerMixture(std::vector<MixtureTerm> terms, double delta);

    const std::vector<MixtureTerm> &terms() const { return terms_; }
    double delta() const { return delta_; }
    /// Integral of |phi|^2 over the real line.
    double normalization() const { return normalization_; }

    Complex amplitude(double q) const;
    double density(double q) const;  ///< |phi(q)|^2 / normalization
    double cdf(double q) const;      ///< closed form through erf

    double min_shift() const;
    double max_shift() const;

   private:
    std::vector<MixtureTerm> terms_;
    double delta_;
    double normalization_;
};

PointerMixture mixture(const PrePostEnsemble &ens, const CouplingSpec &spec);

/// Normalized density on a strictly increasing grid.
std::vector<double> position_pdf(const PointerMixture &m, std::span<const double> q_grid);

double position_mean(const PointerMixture &m);
double position_variance(const PointerMixture &m);

/// In the weak limit <P> -> kMomentumShiftFactor * g * Im(A_w) / delta^2
/// (P = -i d/dQ, unit hbar). Measured against a numerical Fourier-integral
/// oracle in pointer_test.
inline constexpr double kMomentumShiftFactor = 2.0;

/// <P> of the post-selected pointer, in closed form.
double momentum_mean(const PointerMixture &m);

}  // namespace twostate
