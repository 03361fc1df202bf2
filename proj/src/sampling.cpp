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

#include "twostate/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "twostate/errors.hpp"

namespace twostate {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const { return splitmix64(splitmix64(seed_) ^ splitmix64(~counter)); }

double CounterRng::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

InverseCdfTable::InverseCdfTable(const PointerMixture &m, std::size_t points) {
    if (points < 2) {
        throw InvalidArgument("inverse-CDF grid needs at least two points");
    }
    const double lo = m.min_shift() - kSamplingGridHalfWidths * m.delta();
    const double hi = m.max_shift() + kSamplingGridHalfWidths * m.delta();
    const double step = (hi - lo) / static_cast<double>(points - 1);
    grid_.resize(points);
    cdf_.resize(points);
    std::vector<double> pdf(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid_[i] = lo + step * static_cast<double>(i);
        pdf[i] = m.density(grid_[i]);
    }
    cdf_[0] = 0.0;
    for (std::size_t i = 1; i < points; ++i) {
        cdf_[i] = cdf_[i - 1] + 0.5 * step * (pdf[i - 1] + pdf[i]);
    }
    const double total = cdf_.back();
    for (double &c : cdf_) {
        c /= total;
    }
}

double InverseCdfTable::operator()(double u) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) {
        return grid_.front();
    }
    if (it == cdf_.end()) {
        return grid_.back();
    }
    const auto hi = static_cast<std::size_t>(it - cdf_.begin());
    const auto lo = hi - 1;
    const double t = (u - cdf_[lo]) / (cdf_[hi] - cdf_[lo]);
    return grid_[lo] + t * (grid_[hi] - grid_[lo]);
}

ReadingSample sample(const PointerMixture &m, std::size_t trials, std::uint64_t seed, unsigned workers) {
    if (trials == 0) {
        throw InvalidArgument("trials must be at least 1");
    }
    const InverseCdfTable table(m);
    const CounterRng rng(seed);
    ReadingSample out{std::vector<double>(trials), seed, trials};

    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            out.readings[k] = table(rng.uniform(k));
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::size_t>(trials, 64))));
    if (workers == 1) {
        fill(0, trials);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        const std::size_t block = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(trials, block * w);
            const std::size_t end = std::min(trials, begin + block);
            pool.emplace_back(fill, begin, end);
        }
    }
    return out;
}

WeakEstimate estimate(const ReadingSample &s, double g) {
    if (s.readings.empty()) {
        throw InvalidArgument("cannot estimate from an empty sample");
    }
    if (!(g > 0.0)) {
        throw InvalidArgument("coupling g must be positive");
    }
    const double n = static_cast<double>(s.readings.size());
    double mean = 0.0;
    for (double r : s.readings) {
        mean += r;
    }
    mean /= n;
    double ss = 0.0;
    for (double r : s.readings) {
        ss += (r - mean) * (r - mean);
    }
    const double sd = s.readings.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return {mean / g, sd / std::sqrt(n) / g, s.readings.size()};
}

double ks_statistic(std::span<const double> readings, const std::function<double(double)> &cdf) {
    std::vector<double> sorted(readings.begin(), readings.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value(std::size_t n, double alpha) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace twostate
