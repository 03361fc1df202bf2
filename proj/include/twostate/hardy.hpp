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

// Double Mach-Zehnder set-up: one positron (p) and one electron (e),
// each either in the arm where the two interferometers overlap (O) or in
// its own non-overlapping arm (NO). The 4-dim arm basis is ordered
// (positron arm, electron arm) with NO before O:
//
//     p:NO,e:NO   p:NO,e:O   p:O,e:NO   p:O,e:O
//
// Pair operators follow N_pair_X_Y = N^+_X N^-_Y (positron in X, electron
// in Y).

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twostate/prepost.hpp"

namespace twostate::hardy {

inline constexpr std::array<std::string_view, 8> kObservableNames = {
    "N_minus_O",   "N_plus_O",    "N_minus_NO",  "N_plus_NO",
    "N_pair_O_O", "N_pair_O_NO", "N_pair_NO_O", "N_pair_NO_NO",
};

/// (N^-_O, N^+_O, N^-_NO, N^+_NO, pair O,O, pair O,NO, pair NO,O, pair NO,NO)
inline constexpr std::array<double, 8> kExpectedWeakValues = {1, 1, 0, 0, 0, 1, 1, -1};

struct NamedObservable {
    std::string name;
    Observable observable;
};

struct Scenario {
    StateVector initial;       ///< both particles split, before any annihilation
    StateVector preselected;   ///< initial with the O,O branch projected out
    StateVector postselected;  ///< both dark detectors D+ and D- click
    std::vector<NamedObservable> observables;  ///< kObservableNames order

    PrePostEnsemble ensemble() const { return PrePostEnsemble(preselected, postselected); }
    /// Throws InvalidArgument listing the valid names for an unknown name.
    const Observable &observable(std::string_view name) const;
};

Scenario build();

/// Arm basis label, e.g. arm_label("NO", "O") for positron NO, electron O.
BasisLabel arm_label(std::string_view positron_arm, std::string_view electron_arm);
std::vector<BasisLabel> arm_basis();

/// Comma-separated list of the valid observable names.
std::string observable_names();

struct WeakValueTable {
    std::vector<std::pair<std::string, Complex>> entries;  ///< kObservableNames order

    Complex at(std::string_view name) const;
};

WeakValueTable weak_value_table(const Scenario &s);

struct IdentityCheck {
    std::string identity;
    double residual;  ///< max |entry| of lhs - rhs
    bool holds;
};

struct IdentityChainReport {
    std::vector<IdentityCheck> identities;
    /// The three certain inputs (N^-_O, N^+_O, pair O,O) from ideal measurements.
    std::array<double, 3> certain_inputs;
    /// Table re-derived by additivity from the three inputs alone.
    WeakValueTable derived;
    /// N_pair_NO_NO from the four-term completeness relation, using the seven
    /// certain values an ideal measurement would find.
    Complex pair_nonoverlap_from_completeness;
    /// Electron count in the non-overlapping arm, N_pair_O_NO + N_pair_NO_NO.
    Complex electron_nonoverlap_bookkeeping;
    /// Largest |derived - direct| over the eight entries.
    double max_deviation;
    bool all_identities_hold;
};

IdentityChainReport identity_chain(const Scenario &s);

struct DetectorStatistics {
    double annihilation;
    double cp_cm;  ///< C+ and C- click
    double cp_dm;
    double dp_cm;
    double dp_dm;
    double dp_dm_given_no_annihilation;

    double total() const { return annihilation + cp_cm + cp_dm + dp_cm + dp_dm; }
};

/// With `annihilation` false the O,O branch is not removed and the detectors
/// see the undisturbed interferometers.
DetectorStatistics detector_statistics(const Scenario &s, bool annihilation = true);

struct IdealMeasurementFact {
    std::string observable;
    AblDistribution distribution;
    std::optional<double> certain_value;
    Complex weak_value;
};

struct IdealMeasurementReport {
    std::vector<IdealMeasurementFact> facts;
    /// Seven certainties plus {0: 4/5, 1: 1/5} for N_pair_NO_NO, each certain
    /// value equal to its weak value.
    bool consistent;
};

IdealMeasurementReport ideal_measurement_facts(const Scenario &s);

}  // namespace twostate::hardy
