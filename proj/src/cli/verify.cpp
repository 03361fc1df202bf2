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

#include "verify.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>

#include "twostate/collective.hpp"
#include "twostate/errors.hpp"
#include "twostate/hardy.hpp"
#include "twostate/sampling.hpp"
#include "twostate/simultaneous.hpp"

namespace twostate::cli {

namespace {

using Detail = std::ostringstream;

CheckOutcome outcome(std::string name, bool passed, const Detail &detail) {
    return {std::move(name), passed, detail.str()};
}

CVector random_vector(std::mt19937_64 &rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = Complex(normal(rng), normal(rng));
    }
    return v / v.norm();
}

CMatrix random_hermitian(std::mt19937_64 &rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return 0.5 * (m + m.adjoint());
}

CheckOutcome check_weak_value_table(const hardy::Scenario &s) {
    const auto table = hardy::weak_value_table(s);
    double worst = 0.0;
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        worst = std::max(worst, std::abs(table.entries[i].second - hardy::kExpectedWeakValues[i]));
    }
    Detail d;
    d << "max |A_w - expected| = " << worst;
    return outcome("hardy_weak_value_table", worst <= 1e-12, d);
}

CheckOutcome postselection(const hardy::Scenario &s) {
    const double p = postselection_probability(s.ensemble());
    Detail d;
    d << "p = " << p;
    return outcome("postselection_probability", std::abs(p - 1.0 / 12.0) <= 1e-12, d);
}

CheckOutcome abl_appendix(const hardy::Scenario &s) {
    const auto report = hardy::ideal_measurement_facts(s);
    const auto &nono = report.facts.back();
    Detail d;
    d << "N_pair_NO_NO {0: " << nono.distribution.probability_of(0.0) << ", 1: " << nono.distribution.probability_of(1.0)
      << "}";
    return outcome("abl_and_rule_a", report.consistent, d);
}

CheckOutcome check_identity_chain(const hardy::Scenario &s) {
    const auto r = hardy::identity_chain(s);
    const bool ok = r.all_identities_hold && r.max_deviation <= 1e-12 &&
                    std::abs(r.pair_nonoverlap_from_completeness + 1.0) <= 1e-12 &&
                    std::abs(r.electron_nonoverlap_bookkeeping - r.derived.at("N_minus_NO")) <= 1e-12;
    Detail d;
    d << r.identities.size() << " identities, max derived deviation " << r.max_deviation << ", completeness route "
      << r.pair_nonoverlap_from_completeness.real();
    return outcome("identity_chain", ok, d);
}

CheckOutcome additivity() {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> dims(2, 6);
    double worst = 0.0;
    int triples = 0;
    while (triples < 1000) {
        const Eigen::Index dim = dims(rng);
        const CVector pre = random_vector(rng, dim);
        const CVector post = random_vector(rng, dim);
        if (std::abs(post.dot(pre)) <= 1e-3) {
            continue;
        }
        const PrePostEnsemble ens{StateVector(pre), StateVector(post)};
        const CMatrix a = random_hermitian(rng, dim);
        const CMatrix b = random_hermitian(rng, dim);
        const Complex lhs = weak_value(Observable::from_hermitian(a + b), ens).value;
        const Complex rhs = weak_value(Observable::from_hermitian(a), ens).value +
                            weak_value(Observable::from_hermitian(b), ens).value;
        worst = std::max(worst, std::abs(lhs - rhs));
        ++triples;
    }
    Detail d;
    d << triples << " triples, max |(A+B)_w - A_w - B_w| = " << worst;
    return outcome("additivity_rule_b", worst < 1e-10, d);
}

CheckOutcome weak_limit(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    const double ratios[] = {0.1, 0.05, 0.01};
    bool ok = true;
    Detail d;
    for (const auto &o : s.observables) {
        const double aw = weak_value(o.observable, ens).value.real();
        double err[3];
        for (int i = 0; i < 3; ++i) {
            err[i] = std::abs(position_mean(mixture(ens, CouplingSpec(o.observable, ratios[i], 1.0))) / ratios[i] - aw);
        }
        bool exact = err[0] < 1e-13 && err[1] < 1e-13 && err[2] < 1e-13;
        double lo = 1e300;
        double hi = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double c = err[i] / (ratios[i] * ratios[i]);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        const bool quadratic = exact || (lo > 0.0 && hi / lo <= 2.0);
        ok = ok && quadratic && err[2] < 1e-3;
        if (!exact) {
            d << o.name << ": C in [" << lo << ", " << hi << "], err(0.01) = " << err[2] << "; ";
        }
    }
    d << "others exact";
    return outcome("weak_limit_convergence", ok, d);
}

CheckOutcome strong_limit(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    const double g = 20.0;
    const double delta = 1.0;
    const auto m = mixture(ens, CouplingSpec(s.observable("N_pair_NO_NO"), g, delta));
    const double mass0 = m.cdf(2.0 * delta) - m.cdf(-2.0 * delta);
    const double mass1 = m.cdf(g + 2.0 * delta) - m.cdf(g - 2.0 * delta);
    Detail d;
    d << "window masses " << mass0 << ", " << mass1;
    return outcome("strong_limit_reduction", std::abs(mass0 - 0.8) <= 1e-3 && std::abs(mass1 - 0.2) <= 1e-3, d);
}

CheckOutcome monte_carlo(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    constexpr std::size_t kTrials = 100000;
    constexpr std::uint64_t kSeed = 7;
    bool ok = true;
    double worst_z = 0.0;
    double worst_ks = 0.0;
    bool reproducible = true;
    for (const auto &o : s.observables) {
        const auto m = mixture(ens, CouplingSpec(o.observable, 0.05, 1.0));
        const auto a = sample(m, kTrials, kSeed);
        const auto b = sample(m, kTrials, kSeed, 4);
        reproducible = reproducible && std::memcmp(a.readings.data(), b.readings.data(), kTrials * sizeof(double)) == 0;
        const auto est = estimate(a, 0.05);
        const double z = std::abs(est.estimate - weak_value(o.observable, ens).value.real()) / est.standard_error;
        const double ks = ks_statistic(a.readings, [&](double q) { return m.cdf(q); });
        worst_z = std::max(worst_z, z);
        worst_ks = std::max(worst_ks, ks);
        ok = ok && z <= 3.0 && ks < ks_critical_value(kTrials, 0.01);
    }
    Detail d;
    d << "max |z| = " << worst_z << ", max KS = " << worst_ks << " (critical " << ks_critical_value(kTrials, 0.01)
      << "), reproducible = " << reproducible;
    return outcome("monte_carlo_estimation", ok && reproducible, d);
}

CheckOutcome simultaneous_measurement(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    const double g = 0.01;
    std::vector<CouplingSpec> specs;
    for (const auto &o : s.observables) {
        specs.emplace_back(o.observable, g, 1.0);
    }
    const auto means = simultaneous(ens, specs);
    double worst = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        worst = std::max(worst, std::abs(means[i] / g - hardy::kExpectedWeakValues[i]));
    }

    // Two non-commuting qubit projectors on the grid path.
    const StateVector pre{std::cos(0.3), std::sin(0.3)};
    const StateVector post{std::cos(1.2), std::sin(1.2)};
    const PrePostEnsemble qubit(pre, post);
    const double r = 1.0 / std::sqrt(2.0);
    const Observable a = projector(StateVector{1.0, 0.0});
    const Observable b = projector(StateVector{r, r});
    const auto grid = simultaneous_on_grid(qubit, CouplingSpec(a, g, 1.0), CouplingSpec(b, g, 1.0));
    const double aw = weak_value(a, qubit).value.real();
    const double bw = weak_value(b, qubit).value.real();
    const double rel_a = std::abs(grid[0] / g - aw) / std::abs(aw);
    const double rel_b = std::abs(grid[1] / g - bw) / std::abs(bw);
    Detail d;
    d << "eight-pointer max deviation " << worst << "; grid relative errors " << rel_a << ", " << rel_b;
    return outcome("simultaneous_measurement", worst <= 1e-2 && rel_a <= 1e-2 && rel_b <= 1e-2, d);
}

// <Phi^N| P_k |Psi^N> for the total of N copies, by explicit tensor products.
std::vector<Complex> brute_force_coefficients(const PrePostEnsemble &ens, const Observable &obs, std::size_t n) {
    const CMatrix &p0 = obs.spectrum()[0].projector;
    const CMatrix &p1 = obs.spectrum()[1].projector;
    StateVector pre = ens.pre();
    StateVector post = ens.post();
    for (std::size_t i = 1; i < n; ++i) {
        pre = tensor(pre, ens.pre());
        post = tensor(post, ens.post());
    }
    std::vector<Complex> out(n + 1);
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
        CMatrix p = (bits & 1u) ? p1 : p0;
        for (std::size_t i = 1; i < n; ++i) {
            p = kron(p, (bits >> i) & 1u ? p1 : p0);
        }
        out[static_cast<std::size_t>(std::popcount(bits))] += inner(post, twostate::apply(p, pre));
    }
    return out;
}

CheckOutcome collective_experiment(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    const Observable &obs = s.observable("N_pair_NO_NO");
    bool ok = true;
    Detail d;
    for (std::size_t n : {25, 100, 400}) {
        const auto spec = collective::CollectiveSpec::with_width_ratio(ens, obs, n, 1.0, 5.0);
        const auto stats = collective::collective_pointer_stats(spec);
        const double nn = static_cast<double>(n);
        ok = ok && std::abs(stats.mean + nn) <= std::sqrt(nn) && stats.mode < 0.0;
        d << "N=" << n << ": mean/g " << stats.mean << ", mode/g " << stats.mode << "; ";
    }
    double worst = 0.0;
    for (std::size_t n : {2, 3}) {
        const auto mix = collective::collective_mixture(collective::CollectiveSpec(ens, obs, n, 1.0, 1.0));
        const auto brute = brute_force_coefficients(ens, obs, n);
        for (std::size_t k = 0; k <= n; ++k) {
            worst = std::max(worst, std::abs(mix.terms[k].coefficient() - brute[k]));
        }
    }
    d << "tensor cross-check max deviation " << worst;
    return outcome("collective_experiment", ok && worst <= 1e-10, d);
}

CheckOutcome non_multiplicativity(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    const Complex pair = weak_value(s.observable("N_pair_NO_NO"), ens).value;
    const Complex product =
        weak_value(s.observable("N_plus_NO"), ens).value * weak_value(s.observable("N_minus_NO"), ens).value;
    Detail d;
    d << "pair " << pair.real() << " vs product " << product.real();
    const bool ok = std::abs(pair + 1.0) <= 1e-12 && std::abs(product) <= 1e-12 && pair.real() < 0.0;
    return outcome("non_multiplicativity", ok, d);
}

CheckOutcome qcore_invariants() {
    std::mt19937_64 rng(99);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix h = random_hermitian(rng, 4);
        const Observable a = Observable::from_hermitian(h);
        CMatrix rebuilt = CMatrix::Zero(4, 4);
        for (const auto &c : a.spectrum()) {
            rebuilt += c.eigenvalue * c.projector;
        }
        worst = std::max(worst, (rebuilt - h).cwiseAbs().maxCoeff());

        const StateVector x(random_vector(rng, 2));
        const StateVector y(random_vector(rng, 3));
        const StateVector z(random_vector(rng, 2));
        worst = std::max(worst, (tensor(tensor(x, y), z).amplitudes() - tensor(x, tensor(y, z)).amplitudes())
                                    .cwiseAbs()
                                    .maxCoeff());

        const StateVector u(random_vector(rng, 4));
        const StateVector v(random_vector(rng, 4));
        const CMatrix m = random_hermitian(rng, 4) + Complex(0, 1) * random_hermitian(rng, 4);
        worst = std::max(worst, std::abs(inner(u, twostate::apply(m, v)) - std::conj(inner(v, twostate::apply(CMatrix(m.adjoint()), u)))));
    }
    Detail d;
    d << "max residual " << worst;
    return outcome("qcore_invariants", worst <= 1e-12, d);
}

CheckOutcome detector_invariants(const hardy::Scenario &s) {
    const auto with = hardy::detector_statistics(s, true);
    const auto without = hardy::detector_statistics(s, false);
    const bool ok = std::abs(with.total() - 1.0) <= 1e-12 && std::abs(with.annihilation - 0.25) <= 1e-12 &&
                    std::abs(with.dp_dm_given_no_annihilation - 1.0 / 12.0) <= 1e-12 && std::abs(without.dp_dm) <= 1e-12 &&
                    std::abs(without.total() - 1.0) <= 1e-12;
    Detail d;
    d << "P(D+D- | no annihilation) = " << with.dp_dm_given_no_annihilation << ", without interaction "
      << without.dp_dm;
    return outcome("detector_statistics", ok, d);
}

CheckOutcome pointer_invariants(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    double worst_norm = 0.0;
    double worst_mean = 0.0;
    double worst_p = 0.0;
    for (const auto &o : s.observables) {
        for (double g : {0.05, 1.0, 5.0}) {
            const auto m = mixture(ens, CouplingSpec(o.observable, g, 1.0));
            const double lo = -(m.max_shift() + 8.0);
            const double hi = m.max_shift() + 8.0;
            const std::size_t n = 20001;
            const double h = (hi - lo) / static_cast<double>(n - 1);
            double mass = 0.0;
            double first = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double q = lo + h * static_cast<double>(i);
                const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
                mass += w * m.density(q);
                first += w * q * m.density(q);
            }
            worst_norm = std::max(worst_norm, std::abs(mass - 1.0));
            worst_mean = std::max(worst_mean, std::abs(first / mass - position_mean(m)));
            worst_p = std::max(worst_p, std::abs(momentum_mean(m)));
        }
    }
    Detail d;
    d << "pdf mass error " << worst_norm << ", closed-form vs quadrature mean " << worst_mean << ", max |<P>| "
      << worst_p;
    return outcome("pointer_invariants", worst_norm <= 1e-6 && worst_mean <= 1e-8 && worst_p <= 1e-10, d);
}

CheckOutcome projector_completeness(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    double worst = 0.0;
    for (const auto &o : s.observables) {
        Complex total{};
        for (const auto &c : o.observable.spectrum()) {
            total += weak_value(c.projector, ens);
        }
        worst = std::max(worst, std::abs(total - 1.0));
    }
    Detail d;
    d << "max |sum_i (P_i)_w - 1| = " << worst;
    return outcome("projector_weak_values_sum_to_one", worst <= 1e-12, d);
}

CheckOutcome collective_consistency(const hardy::Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    double worst = 0.0;
    for (const auto &o : s.observables) {
        const Complex single = weak_value(o.observable, ens).value;
        for (std::size_t n : {1, 7, 100}) {
            const collective::CollectiveSpec spec(ens, o.observable, n, 1.0, 5.0 * std::sqrt(static_cast<double>(n)));
            worst = std::max(worst, std::abs(collective::collective_weak_value(spec) - static_cast<double>(n) * single));
        }
    }
    const double p2 = collective::success_probability(ens, 2);
    Detail d;
    d << "max |(A_tot)_w - N A_w| = " << worst << ", success probability N=2 " << p2;
    return outcome("collective_additivity", worst <= 1e-12 && std::abs(p2 - 1.0 / 144.0) <= 1e-15, d);
}

}  // namespace

std::vector<CheckOutcome> run_verification() {
    const hardy::Scenario s = hardy::build();
    std::vector<std::function<CheckOutcome()>> checks = {
        [&] { return check_weak_value_table(s); },
        [&] { return postselection(s); },
        [&] { return abl_appendix(s); },
        [&] { return check_identity_chain(s); },
        [] { return additivity(); },
        [&] { return weak_limit(s); },
        [&] { return strong_limit(s); },
        [&] { return monte_carlo(s); },
        [&] { return simultaneous_measurement(s); },
        [&] { return collective_experiment(s); },
        [&] { return non_multiplicativity(s); },
        [] { return qcore_invariants(); },
        [&] { return detector_invariants(s); },
        [&] { return pointer_invariants(s); },
        [&] { return projector_completeness(s); },
        [&] { return collective_consistency(s); },
    };
    std::vector<CheckOutcome> out;
    for (const auto &check : checks) {
        try {
            out.push_back(check());
        } catch (const std::exception &e) {
            out.push_back({"exception", false, e.what()});
        }
    }
    return out;
}

}  // namespace twostate::cli
