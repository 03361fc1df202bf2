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

#include "twostate/hardy.hpp"

#include <cmath>
#include <limits>

#include "twostate/errors.hpp"

namespace twostate::hardy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

StateVector arm_state(const std::string &particle, Complex no, Complex o) {
    CVector amps(2);
    amps << no, o;
    return StateVector(amps, {BasisLabel{{{particle, "NO"}}}, BasisLabel{{{particle, "O"}}}}).normalized();
}

Observable arm_projector(const std::string &particle, bool overlapping) {
    return projector(overlapping ? arm_state(particle, 0.0, 1.0) : arm_state(particle, 1.0, 0.0));
}

double max_abs(const CMatrix &m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

BasisLabel arm_label(std::string_view positron_arm, std::string_view electron_arm) {
    return BasisLabel{{{"p", std::string(positron_arm)}, {"e", std::string(electron_arm)}}};
}

std::vector<BasisLabel> arm_basis() {
    return {arm_label("NO", "NO"), arm_label("NO", "O"), arm_label("O", "NO"), arm_label("O", "O")};
}

std::string observable_names() {
    std::string out;
    for (auto name : kObservableNames) {
        if (!out.empty()) {
            out += ", ";
        }
        out += name;
    }
    return out;
}

const Observable &Scenario::observable(std::string_view name) const {
    for (const auto &o : observables) {
        if (o.name == name) {
            return o.observable;
        }
    }
    throw InvalidArgument("unknown observable '" + std::string(name) + "'; valid names: " + observable_names());
}

Scenario build() {
    const double r = 1.0 / std::sqrt(2.0);
    StateVector initial = tensor(arm_state("p", r, r), arm_state("e", r, r));

    CVector surviving = initial.amplitudes();
    surviving[static_cast<Eigen::Index>(initial.index_of(arm_label("O", "O")))] = 0.0;
    StateVector preselected = StateVector(surviving, initial.basis()).normalized();

    // D+ and D- both click; overall sign of each factor is irrelevant.
    StateVector postselected = tensor(arm_state("p", r, -r), arm_state("e", r, -r));

    const Observable id = Observable::identity(2);
    const Observable p_no = arm_projector("p", false);
    const Observable p_o = arm_projector("p", true);
    const Observable e_no = arm_projector("e", false);
    const Observable e_o = arm_projector("e", true);

    std::vector<NamedObservable> obs;
    auto add = [&](std::string_view name, const Observable &o) {
        obs.push_back({std::string(name), o.renamed(std::string(name))});
    };
    add("N_minus_O", op_tensor(id, e_o));
    add("N_plus_O", op_tensor(p_o, id));
    add("N_minus_NO", op_tensor(id, e_no));
    add("N_plus_NO", op_tensor(p_no, id));
    add("N_pair_O_O", op_tensor(p_o, e_o));
    add("N_pair_O_NO", op_tensor(p_o, e_no));
    add("N_pair_NO_O", op_tensor(p_no, e_o));
    add("N_pair_NO_NO", op_tensor(p_no, e_no));

    return Scenario{std::move(initial), std::move(preselected), std::move(postselected), std::move(obs)};
}

Complex WeakValueTable::at(std::string_view name) const {
    for (const auto &[n, v] : entries) {
        if (n == name) {
            return v;
        }
    }
    throw InvalidArgument("unknown observable '" + std::string(name) + "'; valid names: " + observable_names());
}

WeakValueTable weak_value_table(const Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    WeakValueTable table;
    for (const auto &o : s.observables) {
        table.entries.emplace_back(o.name, weak_value(o.observable, ens).value);
    }
    return table;
}

IdentityChainReport identity_chain(const Scenario &s) {
    const CMatrix one = CMatrix::Identity(4, 4);
    auto m = [&](std::string_view name) -> const CMatrix & { return s.observable(name).matrix(); };

    IdentityChainReport report{};
    auto check = [&](std::string text, const CMatrix &lhs, const CMatrix &rhs) {
        const double residual = max_abs(lhs - rhs);
        report.identities.push_back({std::move(text), residual, residual <= kExactTolerance});
    };
    check("N_minus_O + N_minus_NO = 1", m("N_minus_O") + m("N_minus_NO"), one);
    check("N_plus_O + N_plus_NO = 1", m("N_plus_O") + m("N_plus_NO"), one);
    check("N_minus_O = N_pair_O_O + N_pair_NO_O", m("N_minus_O"), m("N_pair_O_O") + m("N_pair_NO_O"));
    check("N_plus_O = N_pair_O_O + N_pair_O_NO", m("N_plus_O"), m("N_pair_O_O") + m("N_pair_O_NO"));
    check("N_pair_O_O + N_pair_NO_O + N_pair_O_NO + N_pair_NO_NO = 1",
          m("N_pair_O_O") + m("N_pair_NO_O") + m("N_pair_O_NO") + m("N_pair_NO_NO"), one);
    check("N_minus_NO = N_pair_O_NO + N_pair_NO_NO", m("N_minus_NO"), m("N_pair_O_NO") + m("N_pair_NO_NO"));
    check("N_plus_NO = N_pair_NO_O + N_pair_NO_NO", m("N_plus_NO"), m("N_pair_NO_O") + m("N_pair_NO_NO"));
    for (const char *pos : {"O", "NO"}) {
        for (const char *ele : {"O", "NO"}) {
            const std::string pair = std::string("N_pair_") + pos + "_" + ele;
            check(pair + " = N_plus_" + pos + " N_minus_" + ele, m(pair),
                  m(std::string("N_plus_") + pos) * m(std::string("N_minus_") + ele));
        }
    }
    report.all_identities_hold = true;
    for (const auto &c : report.identities) {
        report.all_identities_hold = report.all_identities_hold && c.holds;
    }

    const PrePostEnsemble ens = s.ensemble();
    auto certain = [&](std::string_view name) { return certainty_check(s.observable(name), ens).value_or(kNaN); };
    const double minus_o = certain("N_minus_O");
    const double plus_o = certain("N_plus_O");
    const double pair_oo = certain("N_pair_O_O");
    report.certain_inputs = {minus_o, plus_o, pair_oo};

    // Additivity applied to the identities above, nothing else.
    const double minus_no = 1.0 - minus_o;
    const double plus_no = 1.0 - plus_o;
    const double pair_no_o = minus_o - pair_oo;
    const double pair_o_no = plus_o - pair_oo;
    const double pair_no_no = 1.0 - pair_oo - pair_no_o - pair_o_no;
    report.derived.entries = {
        {"N_minus_O", minus_o},      {"N_plus_O", plus_o},        {"N_minus_NO", minus_no},
        {"N_plus_NO", plus_no},      {"N_pair_O_O", pair_oo},     {"N_pair_O_NO", pair_o_no},
        {"N_pair_NO_O", pair_no_o},  {"N_pair_NO_NO", pair_no_no},
    };
    report.electron_nonoverlap_bookkeeping = pair_o_no + pair_no_no;

    // Second route: every certain value straight from ideal measurements,
    // then the four-term completeness relation for the one uncertain pair.
    report.pair_nonoverlap_from_completeness =
        1.0 - certain("N_pair_O_O") - certain("N_pair_NO_O") - certain("N_pair_O_NO");

    const WeakValueTable direct = weak_value_table(s);
    report.max_deviation = 0.0;
    for (std::size_t i = 0; i < direct.entries.size(); ++i) {
        const double dev = std::abs(direct.entries[i].second - report.derived.entries[i].second);
        report.max_deviation = std::isnan(dev) ? kNaN : std::max(report.max_deviation, dev);
    }
    return report;
}

DetectorStatistics detector_statistics(const Scenario &s, bool annihilation) {
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector c_p = arm_state("p", r, r);
    const StateVector d_p = arm_state("p", -r, r);
    const StateVector c_e = arm_state("e", r, r);
    const StateVector d_e = arm_state("e", -r, r);

    const std::size_t oo = s.initial.index_of(arm_label("O", "O"));
    CVector branch = s.initial.amplitudes();
    DetectorStatistics out{};
    if (annihilation) {
        out.annihilation = std::norm(s.initial[oo]);
        branch[static_cast<Eigen::Index>(oo)] = 0.0;
    }
    const StateVector surviving(branch, s.initial.basis());
    auto click = [&](const StateVector &positron, const StateVector &electron) {
        return std::norm(inner(tensor(positron, electron), surviving));
    };
    out.cp_cm = click(c_p, c_e);
    out.cp_dm = click(c_p, d_e);
    out.dp_cm = click(d_p, c_e);
    out.dp_dm = click(d_p, d_e);
    out.dp_dm_given_no_annihilation = out.dp_dm / (1.0 - out.annihilation);
    return out;
}

IdealMeasurementReport ideal_measurement_facts(const Scenario &s) {
    const PrePostEnsemble ens = s.ensemble();
    IdealMeasurementReport report;
    report.consistent = true;
    for (const auto &o : s.observables) {
        IdealMeasurementFact fact{o.name, abl_probabilities(o.observable, ens), certainty_check(o.observable, ens),
                                  weak_value(o.observable, ens).value};
        if (o.name == "N_pair_NO_NO") {
            report.consistent = report.consistent && !fact.certain_value &&
                                std::abs(fact.distribution.probability_of(0.0) - 0.8) <= kExactTolerance &&
                                std::abs(fact.distribution.probability_of(1.0) - 0.2) <= kExactTolerance;
        } else {
            report.consistent = report.consistent && fact.certain_value.has_value() &&
                                std::abs(fact.weak_value - *fact.certain_value) <= kCertaintyTolerance;
        }
        report.facts.push_back(std::move(fact));
    }
    return report;
}

}  // namespace twostate::hardy
