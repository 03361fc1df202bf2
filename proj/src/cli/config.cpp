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

#include "config.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <sstream>

#include "twostate/hardy.hpp"

namespace twostate::cli {

namespace {

double parse_double(const std::string &text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw ConfigError("not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw ConfigError("not a number: '" + text + "'");
    }
    return v;
}

void require_positive(const char *name, double v) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw ConfigError(std::string(name) + " must be a finite positive number");
    }
}

}  // namespace

std::string command_name(Command c) {
    switch (c) {
        case Command::HardyTable:
            return "hardy-table";
        case Command::DetectorStats:
            return "detector-stats";
        case Command::Abl:
            return "abl";
        case Command::WeakMeasure:
            return "weak-measure";
        case Command::Simultaneous:
            return "simultaneous";
        case Command::Collective:
            return "collective";
        case Command::Verify:
            return "verify";
    }
    return "unknown";
}

std::vector<Complex> parse_amplitudes(const std::string &text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) {
            throw ConfigError("empty amplitude in '" + text + "'");
        }
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            out.emplace_back(parse_double(item), 0.0);
        } else {
            out.emplace_back(parse_double(item.substr(0, colon)), parse_double(item.substr(colon + 1)));
        }
    }
    if (out.empty()) {
        throw ConfigError("no amplitudes given");
    }
    return out;
}

ParseOutcome parse_args(int argc, const char *const *argv) {
    CLI::App app{"Weak values and pointer simulations for pre- and post-selected systems", "twostate"};
    app.set_config("--config", "", "Flat key = value configuration file; command-line flags take precedence");
    app.allow_config_extras(false);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    std::string pre_text;
    std::string post_text;
    std::string output_path;
    std::uint64_t seed = 0;
    double c = 0.0;

    app.add_option("--g", cfg.g, "Integrated coupling strength g")->capture_default_str();
    auto *delta_opt = app.add_option("--delta", cfg.delta, "Initial pointer width")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Monte Carlo trials per observable")->capture_default_str();
    auto *seed_opt = app.add_option("--seed", seed, "Seed for the counter-based generator (required for weak-measure)");
    app.add_option("--n-pairs", cfg.n_pairs, "Number of pairs in the collective experiment")->capture_default_str();
    auto *c_opt = app.add_option("--c", c, "Collective pointer width ratio: delta = c g sqrt(n-pairs)");
    app.add_option("--observable", cfg.observables, "Observable name (repeatable); default all eight")
        ->take_all()
        ->delimiter(',');
    auto *out_opt = app.add_option("--output-path", output_path, "Write the result here instead of stdout");
    app.add_option("--format", format, "json or csv")->capture_default_str();
    app.add_option("--workers", cfg.workers, "Threads for Monte Carlo sampling")->capture_default_str();
    auto *pre_opt = app.add_option("--pre", pre_text, "Pre-selected amplitudes over the arm basis, re or re:im");
    auto *post_opt = app.add_option("--post", post_text, "Post-selected amplitudes over the arm basis");
    app.add_option("--pdf-grid", cfg.pdf_grid, "Also emit the pointer density on this many grid points");
    app.add_flag("--timing", cfg.timing, "Include wall-clock timing in the result document");

    const std::vector<std::pair<Command, const char *>> commands = {
        {Command::HardyTable, "Weak values of the eight occupation operators"},
        {Command::DetectorStats, "Detector click statistics of the double interferometer"},
        {Command::Abl, "Ideal intermediate-measurement probabilities"},
        {Command::WeakMeasure, "Monte Carlo weak measurement of each observable"},
        {Command::Simultaneous, "Joint weak measurement of several observables"},
        {Command::Collective, "Collective measurement over n-pairs pairs"},
        {Command::Verify, "Run the full invariant suite"},
    };
    std::vector<std::pair<Command, CLI::App *>> subs;
    for (const auto &[cmd, help] : commands) {
        auto *sub = app.add_subcommand(command_name(cmd), help);
        sub->fallthrough();
        subs.emplace_back(cmd, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        return {std::nullopt, 0, app.help()};
    } catch (const CLI::CallForAllHelp &) {
        return {std::nullopt, 0, app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError &e) {
        throw ConfigError(e.what());
    }

    for (const auto &[cmd, sub] : subs) {
        if (sub->parsed()) {
            cfg.command = cmd;
        }
    }
    if (format == "json") {
        cfg.format = Format::Json;
    } else if (format == "csv") {
        cfg.format = Format::Csv;
    } else {
        throw ConfigError("--format must be json or csv, got '" + format + "'");
    }
    require_positive("--g", cfg.g);
    require_positive("--delta", cfg.delta);
    cfg.delta_given = delta_opt->count() > 0;
    if (cfg.trials == 0) {
        throw ConfigError("--trials must be positive");
    }
    if (cfg.n_pairs == 0) {
        throw ConfigError("--n-pairs must be positive");
    }
    if (cfg.workers == 0) {
        throw ConfigError("--workers must be positive");
    }
    if (c_opt->count() > 0) {
        require_positive("--c", c);
        cfg.width_ratio = c;
    }
    if (seed_opt->count() > 0) {
        cfg.seed = seed;
    }
    if (out_opt->count() > 0) {
        cfg.output_path = output_path;
    }
    if (pre_opt->count() > 0) {
        cfg.pre = parse_amplitudes(pre_text);
    }
    if (post_opt->count() > 0) {
        cfg.post = parse_amplitudes(post_text);
    }
    for (const auto &name : cfg.observables) {
        bool known = false;
        for (auto valid : hardy::kObservableNames) {
            known = known || name == valid;
        }
        if (!known) {
            throw ConfigError("unknown observable '" + name + "'; valid names: " + hardy::observable_names());
        }
    }
    if (cfg.command == Command::WeakMeasure && !cfg.seed) {
        throw ConfigError("weak-measure requires --seed");
    }
    if (cfg.command == Command::Collective && cfg.observables.size() > 1) {
        throw ConfigError("collective takes a single --observable");
    }
    return {cfg, 0, {}};
}

}  // namespace twostate::cli
