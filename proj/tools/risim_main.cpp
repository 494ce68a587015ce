// SPDX-License-Identifier: Apache-2.0
//
// risim - link-level simulation of RIS-assisted downlink MIMO systems
// Copyright (C) 2026 The risim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// risim command line: run a sweep, run the self-checks, or print the resolved scenario.

#include "risim/checks.hpp"
#include "risim/harness.hpp"
#include "risim/kernels.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdio>
#include <fstream>
#include <iostream>

namespace
{
    struct ScenarioArgs
    {
        std::string config_path;
        std::string preset = "default";
        std::vector<std::string> overrides;
        std::uint64_t seed = 0;
        long trials = 0;
    };

    void add_scenario_options(CLI::App *app, ScenarioArgs &args)
    {
        app->add_option("--config", args.config_path, "INI scenario file, applied on top of the preset")->check(CLI::ExistingFile);
        app->add_option("--preset", args.preset, "Base scenario: default (desk scale) or paper")
            ->check(CLI::IsMember({"default", "desk", "paper"}));
        app->add_option("--set", args.overrides, "Override one key, e.g. --set sweep.q=64,256");
        app->add_option("--seed", args.seed, "Master seed");
        app->add_option("--trials", args.trials, "Trials per sweep point")->check(CLI::PositiveNumber);
    }

    risim::ScenarioConfig resolve(const ScenarioArgs &args, CLI::App *app)
    {
        risim::ScenarioConfig cfg = risim::preset_scenario(args.preset);
        if (!args.config_path.empty())
            cfg = risim::load_scenario(args.config_path, cfg);
        for (const auto &o : args.overrides)
        {
            const auto dot = o.find('.'), eq = o.find('=');
            if (dot == std::string::npos || eq == std::string::npos || dot > eq)
                throw risim::ConfigError("--set expects section.key=value, got '" + o + "'.");
            cfg = risim::parse_scenario("[" + o.substr(0, dot) + "]\n" + o.substr(dot + 1) + "\n", cfg);
        }
        if (app->count("--seed"))
            cfg.sweep.seed = args.seed;
        if (app->count("--trials"))
            cfg.sweep.trials = args.trials;
        cfg.validate();
        return cfg;
    }

    std::string raw_path_for(const std::string &out)
    {
        const auto dot = out.rfind('.');
        const auto slash = out.rfind('/');
        if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
            return out + "_raw";
        return out.substr(0, dot) + "_raw" + out.substr(dot);
    }

    void write_file(const std::string &path, const std::function<void(std::ostream &)> &body)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot write '" + path + "'.");
        body(f);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"risim: link-level simulation of RIS-assisted downlink MIMO systems"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP threads (default: OMP_NUM_THREADS or all cores)")->check(CLI::NonNegativeNumber);

    ScenarioArgs run_args;
    std::string run_out;
    bool run_raw = false, quiet = false;
    auto *run = app.add_subcommand("run", "Run the Monte Carlo sweep and write the aggregate CSV");
    add_scenario_options(run, run_args);
    run->add_option("--out", run_out, "Aggregate CSV path (default: stdout)");
    run->add_flag("--raw", run_raw, "Also write the per-trial CSV next to --out as <name>_raw.csv");
    run->add_flag("-q,--quiet", quiet, "No progress lines on stderr");

    risim::CheckOptions check_opts;
    std::string check_out;
    auto *check = app.add_subcommand("check", "Run the covariance, tile-search and precoder self-checks");
    check->add_option("--seed", check_opts.seed, "Seed of the random instances");
    check->add_option("--trials", check_opts.draws, "Channel draws of the covariance estimate")->check(CLI::PositiveNumber);
    check->add_option("--paths", check_opts.n_paths, "Paths in the isotropic sum")->check(CLI::PositiveNumber);
    check->add_option("--out", check_out, "Also write the report to this file");

    ScenarioArgs scn_args;
    std::string scn_out;
    auto *scenario = app.add_subcommand("scenario", "Print the fully resolved scenario as INI");
    add_scenario_options(scenario, scn_args);
    scenario->add_option("--out", scn_out, "Write to this file instead of stdout");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0)
        omp_set_num_threads(threads);
#endif

    try
    {
        if (*run)
        {
            if (run_raw && run_out.empty())
                throw risim::ConfigError("--raw needs --out so the per-trial CSV has a place to go.");
            const auto cfg = resolve(run_args, run);
            if (!quiet)
                std::fprintf(stderr, "risim: %zu points x %ld trials, %d thread(s)\n",
                             cfg.sweep.q.size() * cfg.sweep.n_ue.size() * cfg.sweep.models.size(), cfg.sweep.trials,
                             risim::kernels::max_threads());
            risim::ProgressFn progress;
            if (!quiet)
                progress = [](const risim::AggregateRow &r)
                {
                    std::fprintf(stderr, "  %-20s Q=%-5ld N_UE=%d  P_tx = %8.3f dBm  feasible %.3f\n",
                                 std::string(risim::model_name(r.model)).c_str(), long(r.q), r.n_ue, r.mean_ptx_dbm,
                                 r.feasible_frac);
                };
            const auto result = risim::run_sweep(cfg, progress);
            if (run_out.empty())
                risim::write_aggregate_csv(std::cout, result.rows);
            else
                write_file(run_out, [&](std::ostream &o) { risim::write_aggregate_csv(o, result.rows); });
            if (run_raw)
                write_file(raw_path_for(run_out), [&](std::ostream &o) { risim::write_raw_csv(o, result.raw); });
            return 0;
        }
        if (*check)
        {
            const auto outcomes = risim::run_checks(check_opts);
            std::string report;
            bool all = true;
            for (const auto &o : outcomes)
            {
                char line[512];
                std::snprintf(line, sizeof(line), "%s %-18s %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", o.name.c_str(),
                              o.detail.c_str(), o.seconds);
                report += line;
                all = all && o.passed;
            }
            std::cout << report;
            if (!check_out.empty())
                write_file(check_out, [&](std::ostream &o) { o << report; });
            return all ? 0 : 1;
        }
        if (*scenario)
        {
            const std::string text = risim::dump_scenario(resolve(scn_args, scenario));
            if (scn_out.empty())
                std::cout << text;
            else
                write_file(scn_out, [&](std::ostream &o) { o << text; });
            return 0;
        }
    }
    catch (const risim::ConfigError &e)
    {
        std::fprintf(stderr, "risim: configuration error: %s\n", e.what());
        return 2;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "risim: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
