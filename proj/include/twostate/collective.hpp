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

// One pointer coupled to the total A_tot = sum_k A^(k) over N independent,
// identically pre/post-selected copies.
//
// With single-copy branch amplitudes alpha_0, alpha_1 for the two
// eigenvalues a_0 < a_1, the post-selected pointer is the binomial mixture
//
//     phi(Q) = sum_k C(N,k) alpha_1^k alpha_0^(N-k) G(Q - g (k a_1 + (N-k) a_0)).
//
// The individual terms exceed phi by a factor of up to
// ((|alpha_0| + |alpha_1|) / |alpha_0 + alpha_1|)^N (3^N for the NO,NO
// pair), far beyond double precision once N reaches a few dozen. Moments
// and the density are therefore computed from the momentum representation
//
//     phi~(p) = G~(p) (alpha_0 e^{-i p g a_0} + alpha_1 e^{-i p g a_1})^N,
//
// which is the same function with no cancellation, evaluated in log-polar
// form and integrated by the trapezoid rule (spectrally accurate for this
// smooth, rapidly decaying integrand).

#include <cstddef>
#include <span>
#include <vector>

#include "twostate/pointer.hpp"

namespace twostate::collective {

struct CollectiveSpec {
    PrePostEnsemble single;
    Observable observable;  ///< per-copy observable with exactly two eigenvalues
    std::size_t n_pairs;
    double g;
    double delta;

    /// Throws InvalidArgument for n_pairs == 0, non-positive g or delta, or
    /// an observable without exactly two distinct eigenvalues.
    CollectiveSpec(PrePostEnsemble single, Observable observable, std::size_t n_pairs, double g, double delta);

    /// delta = c g sqrt(N).
    static CollectiveSpec with_width_ratio(PrePostEnsemble single, Observable observable, std::size_t n_pairs,
                                           double g, double c);

    /// delta >= g sqrt(N).
    bool collective_regime() const;
};

/// C(N,k) alpha_1^k alpha_0^(N-k) = exp(log_magnitude) e^{i phase}.
struct CollectiveTerm {
    std::size_t k;
    double log_magnitude;  ///< -inf for an exactly vanishing coefficient
    double phase;
    double shift;

    /// Underflows to 0 / overflows to inf for extreme N.
    Complex coefficient() const;
};

struct CollectiveMixture {
    std::vector<CollectiveTerm> terms;  ///< k = 0..N
    double delta;
    Complex alpha0;
    Complex alpha1;

    /// Direct Gaussian-mixture form; only meaningful while the coefficients
    /// are representable and do not cancel (small N).
    PointerMixture to_pointer_mixture() const;
};

CollectiveMixture collective_mixture(const CollectiveSpec &spec);

/// N times the single-copy weak value.
Complex collective_weak_value(const CollectiveSpec &spec);

struct PointerStats {
    double mean;
    double mode;    ///< global maximum of the density
    double spread;  ///< standard deviation of the density
    bool regime_warning;  ///< delta < g sqrt(N)
};

PointerStats collective_pointer_stats(const CollectiveSpec &spec);

/// Normalized pointer density on a strictly increasing grid.
std::vector<double> collective_pdf(const CollectiveSpec &spec, std::span<const double> q_grid);

/// |<Phi|Psi>|^(2N); underflows to 0 for large N.
double success_probability(const PrePostEnsemble &single, std::size_t n_pairs);
double success_probability(const CollectiveSpec &spec);
double success_log10_probability(const PrePostEnsemble &single, std::size_t n_pairs);

}  // namespace twostate::collective
