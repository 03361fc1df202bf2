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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twostate/collective.hpp"
#include "twostate/errors.hpp"
#include "twostate/hardy.hpp"
#include "twostate/sampling.hpp"
#include "twostate/simultaneous.hpp"
#include "verify.hpp"

namespace twostate::cli {

namespace {

StateVector arm_state(const std::vector<Complex> &amps, const char *flag) {
    if (amps.size() != 4) {
        throw ConfigError(std::string(flag) + " needs 4 amplitudes over (p:NO,e:NO  p:NO,e:O  p:O,e:NO  p:O,e:O)");
    }
    CVector v(4);
    for (std::size_t i = 0; i < 4; ++i) {
        v[static_cast<Eigen::Index>(i)] = amps[i];
    }
    if (v.norm() == 0.0) {
        throw ConfigError(std::string(flag) + " is the zero vector");
    }
    return StateVector(v, hardy::arm_basis()).normalized();
}

PrePostEnsemble ensemble_for(const RunConfig &cfg, const hardy::Scenario &s) {
    const StateVector pre = cfg.pre ? arm_state(*cfg.pre, "--pre") : s.preselected;
    const StateVector post = cfg.post ? arm_state(*cfg.post, "--post") : s.postselected;
    return PrePostEnsemble(pre, post);
}

std::vector<std::string> selected(const RunConfig &cfg) {
    if (!cfg.observables.empty()) {
        return cfg.observables;
    }
    return {hardy::kObservableNames.begin(), hardy::kObservableNames.end()};
}

Json inputs_json(const RunConfig &cfg) {
    Json in = Json::object();
    auto amps = [](const std::vector<Complex> &v) {
        Json a = Json::array();
        for (auto z : v) {
            a.push_back(complex_json(z));
        }
        return a;
    };
    switch (cfg.command) {
        case Command::WeakMeasure:
            in["g"] = cfg.g;
            in["delta"] = cfg.delta;
            in["trials"] = cfg.trials;
            in["seed"] = *cfg.seed;
            in["workers"] = cfg.workers;
            break;
        case Command::Simultaneous:
            in["g"] = cfg.g;
            in["delta"] = cfg.delta;
            break;
        case Command::Collective:
            in["g"] = cfg.g;
            in["n_pairs"] = cfg.n_pairs;
            if (cfg.width_ratio) {
                in["c"] = *cfg.width_ratio;
            } else if (cfg.delta_given) {
                in["delta"] = cfg.delta;
            } else {
                in["c"] = 5.0;
            }
            break;
        default:
            break;
    }
    if (cfg.command != Command::DetectorStats && cfg.command != Command::Verify) {
        Json names = Json::array();
        for (const auto &n : selected(cfg)) {
            names.push_back(n);
        }
        if (cfg.command == Command::Collective) {
            in["observable"] = cfg.observables.empty() ? "N_pair_NO_NO" : cfg.observables.front();
        } else {
            in["observables"] = names;
        }
        if (cfg.pre) {
            in["pre"] = amps(*cfg.pre);
        }
        if (cfg.post) {
            in["post"] = amps(*cfg.post);
        }
    }
    if (cfg.pdf_grid > 0) {
        in["pdf_grid"] = cfg.pdf_grid;
    }
    in["format"] = cfg.format == Format::Json ? "json" : "csv";
    return in;
}

std::string regime_warning(const std::string &name, const CouplingSpec &spec) {
    std::ostringstream msg;
    const auto values = spec.observable.eigenvalues();
    const double span = values.back() - values.front();
    msg << "weak regime violated for " << name << ": g*(a_max - a_min) = " << spec.g * span
        << " is not below delta = " << spec.delta;
    return msg.str();
}

Json hardy_table(const RunConfig &cfg, const hardy::Scenario &s) {
    const PrePostEnsemble ens = ensemble_for(cfg, s);
    Json values = Json::object();
    for (const auto &name : selected(cfg)) {
        values[name] = complex_json(weak_value(s.observable(name), ens).value);
    }
    Json r = Json::object();
    r["weak_values"] = values;
    r["overlap"] = complex_json(ens.overlap());
    r["p_postselect"] = postselection_probability(ens);
    return r;
}

Json detector_stats(const hardy::Scenario &s) {
    auto table = [](const hardy::DetectorStatistics &d) {
        Json t = Json::object();
        t["annihilation"] = d.annihilation;
        t["Cp_Cm"] = d.cp_cm;
        t["Cp_Dm"] = d.cp_dm;
        t["Dp_Cm"] = d.dp_cm;
        t["Dp_Dm"] = d.dp_dm;
        t["Dp_Dm_given_no_annihilation"] = d.dp_dm_given_no_annihilation;
        t["total"] = d.total();
        return t;
    };
    Json r = Json::object();
    r["with_annihilation"] = table(hardy::detector_statistics(s, true));
    r["no_interaction"] = table(hardy::detector_statistics(s, false));
    return r;
}

Json abl(const RunConfig &cfg, const hardy::Scenario &s) {
    const PrePostEnsemble ens = ensemble_for(cfg, s);
    Json r = Json::object();
    for (const auto &name : selected(cfg)) {
        const Observable &obs = s.observable(name);
        Json dist = Json::array();
        for (const auto &e : abl_probabilities(obs, ens).entries) {
            Json entry = Json::object();
            entry["eigenvalue"] = e.eigenvalue;
            entry["probability"] = e.probability;
            dist.push_back(entry);
        }
        Json item = Json::object();
        item["distribution"] = dist;
        const auto certain = certainty_check(obs, ens);
        item["certain_value"] = certain ? Json(*certain) : Json(nullptr);
        item["weak_value"] = complex_json(weak_value(obs, ens).value);
        r[name] = item;
    }
    return r;
}

Json pdf_table(const std::vector<std::pair<std::string, PointerMixture>> &mixtures, std::size_t points) {
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (const auto &[name, m] : mixtures) {
        const double a = m.min_shift() - 8.0 * m.delta();
        const double b = m.max_shift() + 8.0 * m.delta();
        lo = first ? a : std::min(lo, a);
        hi = first ? b : std::max(hi, b);
        first = false;
    }
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    Json pdf = Json::object();
    pdf["q"] = grid;
    for (const auto &[name, m] : mixtures) {
        pdf[name] = position_pdf(m, grid);
    }
    return pdf;
}

Json weak_measure(const RunConfig &cfg, const hardy::Scenario &s, Json &warnings) {
    const PrePostEnsemble ens = ensemble_for(cfg, s);
    Json r = Json::object();
    std::vector<std::pair<std::string, PointerMixture>> mixtures;
    for (const auto &name : selected(cfg)) {
        const CouplingSpec spec(s.observable(name), cfg.g, cfg.delta);
        if (!spec.weak_regime()) {
            warnings.push_back(regime_warning(name, spec));
        }
        const PointerMixture m = mixture(ens, spec);
        const ReadingSample readings = sample(m, cfg.trials, *cfg.seed, cfg.workers);
        const WeakEstimate est = estimate(readings, cfg.g);
        const Complex aw = weak_value(spec.observable, ens).value;
        const double ks = ks_statistic(readings.readings, [&](double q) { return m.cdf(q); });

        Json item = Json::object();
        item["estimate"] = est.estimate;
        item["stderr"] = est.standard_error;
        item["trials"] = est.trials;
        item["weak_value"] = complex_json(aw);
        item["pointer_mean_over_g"] = position_mean(m) / cfg.g;
        item["within_3_stderr"] = std::abs(est.estimate - aw.real()) <= 3.0 * est.standard_error;
        item["ks_statistic"] = ks;
        item["ks_critical_1pct"] = ks_critical_value(readings.readings.size(), 0.01);
        r[name] = item;
        mixtures.emplace_back(name, m);
    }
    if (cfg.pdf_grid > 0) {
        r["pdf"] = pdf_table(mixtures, cfg.pdf_grid);
    }
    return r;
}

Json simultaneous_cmd(const RunConfig &cfg, const hardy::Scenario &s, Json &warnings) {
    const PrePostEnsemble ens = ensemble_for(cfg, s);
    const auto names = selected(cfg);
    std::vector<CouplingSpec> specs;
    std::vector<Observable> observables;
    for (const auto &name : names) {
        specs.emplace_back(s.observable(name), cfg.g, cfg.delta);
        observables.push_back(s.observable(name));
        if (!specs.back().weak_regime()) {
            warnings.push_back(regime_warning(name, specs.back()));
        }
    }
    bool commuting = true;
    for (std::size_t i = 0; i < observables.size(); ++i) {
        for (std::size_t j = i + 1; j < observables.size(); ++j) {
            commuting = commuting && observables[i].commutes_with(observables[j], kEigenvalueGrouping);
        }
    }
    const auto means = simultaneous(ens, specs);
    Json over_g = Json::object();
    Json values = Json::object();
    for (std::size_t i = 0; i < names.size(); ++i) {
        over_g[names[i]] = means[i] / cfg.g;
        values[names[i]] = complex_json(weak_value(specs[i].observable, ens).value);
    }
    Json r = Json::object();
    r["path"] = commuting ? "joint-blocks" : "grid";
    r["means_over_g"] = over_g;
    r["weak_values"] = values;
    return r;
}

Json collective_cmd(const RunConfig &cfg, const hardy::Scenario &s, Json &warnings) {
    const PrePostEnsemble ens = ensemble_for(cfg, s);
    const std::string name = cfg.observables.empty() ? "N_pair_NO_NO" : cfg.observables.front();
    const double n = static_cast<double>(cfg.n_pairs);
    double delta = cfg.delta;
    if (cfg.width_ratio) {
        delta = *cfg.width_ratio * cfg.g * std::sqrt(n);
    } else if (!cfg.delta_given) {
        delta = 5.0 * cfg.g * std::sqrt(n);
    }
    const collective::CollectiveSpec spec(ens, s.observable(name), cfg.n_pairs, cfg.g, delta);
    const auto stats = collective::collective_pointer_stats(spec);
    if (stats.regime_warning) {
        std::ostringstream msg;
        msg << "collective regime violated: delta = " << delta << " is below g sqrt(N) = " << cfg.g * std::sqrt(n);
        warnings.push_back(msg.str());
    }
    Json r = Json::object();
    r["observable"] = name;
    r["n_pairs"] = cfg.n_pairs;
    r["delta"] = delta;
    r["weak_value"] = complex_json(collective::collective_weak_value(spec));
    r["mean_over_g"] = stats.mean / cfg.g;
    r["mode_over_g"] = stats.mode / cfg.g;
    r["spread_over_g"] = stats.spread / cfg.g;
    r["success_probability"] = collective::success_probability(spec);
    r["success_log10_probability"] = collective::success_log10_probability(ens, cfg.n_pairs);
    if (cfg.pdf_grid > 0) {
        const double centre = stats.mean;
        const double half = 6.0 * std::max(stats.spread, delta / 2.0);
        std::vector<double> grid(cfg.pdf_grid);
        for (std::size_t i = 0; i < cfg.pdf_grid; ++i) {
            grid[i] = cfg.pdf_grid == 1 ? centre
                                        : centre - half + 2.0 * half * static_cast<double>(i) /
                                                              static_cast<double>(cfg.pdf_grid - 1);
        }
        Json pdf = Json::object();
        pdf["q"] = grid;
        pdf[name] = collective::collective_pdf(spec, grid);
        r["pdf"] = pdf;
    }
    return r;
}

Json verify_cmd(bool &all_passed) {
    Json r = Json::object();
    all_passed = true;
    for (const auto &c : run_verification()) {
        Json item = Json::object();
        item["passed"] = c.passed;
        item["detail"] = c.detail;
        r[c.name] = item;
        all_passed = all_passed && c.passed;
    }
    r["all_passed"] = all_passed;
    return r;
}

void error_line(std::ostream &err, const char *category, const std::string &kind, const std::string &message) {
    Json e = Json::object();
    e["error"] = category;
    e["kind"] = kind;
    e["message"] = message;
    err << e.dump() << '\n';
}

}  // namespace

Json execute(const RunConfig &cfg) {
    const auto start = std::chrono::steady_clock::now();
    const hardy::Scenario s = hardy::build();
    Json warnings = Json::array();
    Json results;
    bool verified = true;
    switch (cfg.command) {
        case Command::HardyTable:
            results = hardy_table(cfg, s);
            break;
        case Command::DetectorStats:
            results = detector_stats(s);
            break;
        case Command::Abl:
            results = abl(cfg, s);
            break;
        case Command::WeakMeasure:
            results = weak_measure(cfg, s, warnings);
            break;
        case Command::Simultaneous:
            results = simultaneous_cmd(cfg, s, warnings);
            break;
        case Command::Collective:
            results = collective_cmd(cfg, s, warnings);
            break;
        case Command::Verify:
            results = verify_cmd(verified);
            break;
    }
    Json doc = Json::object();
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command_name(cfg.command);
    doc["inputs"] = inputs_json(cfg);
    doc["results"] = results;
    doc["warnings"] = warnings;
    if (cfg.timing) {
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
        doc["timing_ms"] = elapsed.count();
    }
    return doc;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    try {
        ParseOutcome parsed = parse_args(argc, argv);
        if (!parsed.config) {
            out << parsed.message;
            return parsed.exit_code;
        }
        cfg = *parsed.config;
        const Json doc = execute(cfg);
        const std::string text = cfg.format == Format::Json ? to_json_text(doc) : to_csv_text(doc);
        if (cfg.output_path) {
            std::ofstream file(*cfg.output_path, std::ios::binary);
            if (!file) {
                error_line(err, "config", "OutputPath", "cannot open " + *cfg.output_path);
                return kExitConfigError;
            }
            file << text;
        } else {
            out << text;
        }
        if (cfg.command == Command::Verify && !doc["results"]["all_passed"].get<bool>()) {
            return kExitVerifyFailed;
        }
        return kExitOk;
    } catch (const ConfigError &e) {
        error_line(err, "config", "ConfigError", e.what());
        return kExitConfigError;
    } catch (const InvalidArgument &e) {
        // Library argument checks reached through user-supplied parameters.
        error_line(err, "config", e.kind(), e.what());
        return kExitConfigError;
    } catch (const Error &e) {
        error_line(err, "computation", e.kind(), e.what());
        return kExitComputationError;
    }
}

}  // namespace twostate::cli
