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

// Monte Carlo pointer readings.
//
// Readings are drawn by inverse-CDF on a fixed 4096-point grid spanning
// [min s_i - 10 delta, max s_i + 10 delta]. Uniform variates come from a
// counter-based generator: reading k of a run with seed S uses
// CounterRng{S}.uniform(k) and nothing else, so a run split across any
// number of workers reproduces the single-worker readings bit for bit.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "twostate/pointer.hpp"

namespace twostate {

/// SplitMix64 finalizer applied to (seed, counter).
class CounterRng {
   public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const;

   private:
    std::uint64_t seed_;
};

struct ReadingSample {
    std::vector<double> readings;
    std::uint64_t seed;
    std::size_t trials;
};

struct WeakEstimate {
    double estimate;        ///< mean(readings) / g
    double standard_error;  ///< sample std / sqrt(trials), in units of g
    std::size_t trials;
};

inline constexpr std::size_t kSamplingGridPoints = 4096;
inline constexpr double kSamplingGridHalfWidths = 10.0;

/// Tabulated inverse CDF of a pointer mixture.
class InverseCdfTable {
   public:
    explicit InverseCdfTable(const PointerMixture &m, std::size_t points = kSamplingGridPoints);
    double operator()(double u) const;

   private:
    std::vector<double> grid_;
    std::vector<double> cdf_;
};

/// `workers` > 1 partitions the trials into contiguous blocks evaluated on
/// separate threads; output does not depend on it.
ReadingSample sample(const PointerMixture &m, std::size_t trials, std::uint64_t seed, unsigned workers = 1);

WeakEstimate estimate(const ReadingSample &s, double g);

/// Kolmogorov-Smirnov statistic sup|F_n - F| of the readings against `cdf`.
double ks_statistic(std::span<const double> readings, const std::function<double(double)> &cdf);

/// Asymptotic one-sample KS critical value at significance `alpha`:
/// sqrt(-ln(alpha / 2) / 2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha = 0.01);

}  // namespace twostate
