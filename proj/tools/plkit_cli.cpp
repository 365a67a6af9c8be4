// SPDX-License-Identifier: Apache-2.0
//
// plkit: CI/ABG path-loss model fitting and prediction toolkit
// Copyright (C) 2026 plkit contributors
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
//
// Command-line surface. Every subcommand is a thin composition of library
// calls: read, run, serialize. No numeric logic lives here.
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error,
// 3 degenerate-fit error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "plkit/dataset_io.hpp"
#include "plkit/estimation.hpp"
#include "plkit/experiments.hpp"
#include "plkit/json_io.hpp"
#include "plkit/numfmt.hpp"
#include "plkit/synth.hpp"

namespace
{

// Command-line values that fail their own parse (e.g. --params) count as
// usage errors, not data errors.
struct usage_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct CommonOptions
{
    std::string input;
    std::string output = "-";
    std::string format = "csv";
    bool quiet = false;
    int jobs = 1;
};

void emit(const std::string &path, const std::string &content)
{
    if (path == "-")
        std::cout << content;
    else
        plkit::write_file(path, content);
}

void emit_warnings(const plkit::FigureTable &table, bool quiet)
{
    if (quiet)
        return;
    for (const std::string &w : table.warnings)
        std::cerr << "warning: " << w << "\n";
}

struct LoadedDataset
{
    std::vector<plkit::Sample> samples;
    std::string digest;
};

LoadedDataset load_dataset(const std::string &path)
{
    const std::string bytes = plkit::read_file(path);
    return {plkit::parse_dataset(bytes), plkit::digest_hex(bytes)};
}

void stamp_input(plkit::FigureTable &table, const std::string &path, const std::string &digest)
{
    table.metadata.insert(table.metadata.begin(),
                          {{"input", path}, {"input_digest", digest}});
}

std::string render_table(const plkit::FigureTable &table, const std::string &format)
{
    return format == "json" ? plkit::figure_table_to_json(table)
                            : plkit::figure_table_to_csv(table);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"plkit: fit close-in (CI) and alpha-beta-gamma (ABG) path-loss models and "
                 "evaluate their prediction error across distance, frequency and environment "
                 "splits"};
    app.require_subcommand(1);

    const auto add_common = [](CLI::App *cmd, CommonOptions &opts, bool with_format,
                               bool with_jobs) {
        cmd->add_option("--input", opts.input, "Input dataset CSV")->required();
        cmd->add_option("--output", opts.output, "Output path, '-' for stdout (default)");
        if (with_format)
            cmd->add_option("--format", opts.format, "Output format")
                ->check(CLI::IsMember({"csv", "json"}));
        if (with_jobs)
            cmd->add_option("--jobs", opts.jobs, "Worker threads for sweep rows")
                ->check(CLI::PositiveNumber);
        cmd->add_flag("--quiet", opts.quiet, "Suppress warnings on stderr");
    };

    // fit
    CommonOptions fit_opts;
    std::string fit_model;
    auto *cmd_fit = app.add_subcommand("fit", "Fit a model, print FitResult as JSON");
    cmd_fit->add_option("--model", fit_model, "Model kind")
        ->required()
        ->check(CLI::IsMember({"ci", "abg"}));
    add_common(cmd_fit, fit_opts, false, false);

    // eval
    CommonOptions eval_opts;
    std::string eval_params;
    auto *cmd_eval = app.add_subcommand("eval", "Evaluate fixed parameters, print ResidualStats "
                                                "as JSON");
    cmd_eval->add_option("--params", eval_params,
                         "Inline JSON model: {\"n\":...} or {\"alpha\":...,\"beta\":...,"
                         "\"gamma\":...}")
        ->required();
    add_common(cmd_eval, eval_opts, false, false);

    // filter
    CommonOptions filter_opts;
    auto *cmd_filter =
        app.add_subcommand("filter", "Apply the 100 dB relative dynamic-range filter");
    add_common(cmd_filter, filter_opts, false, false);

    // sweep-distance
    CommonOptions sweep_opts;
    std::string sweep_mode;
    std::vector<double> sweep_grid;
    double sweep_d_max = plkit::default_d_max_m;
    double sweep_d_min = plkit::default_d_min_m;
    auto *cmd_sweep = app.add_subcommand("sweep-distance", "Distance-prediction sweep over a "
                                                           "delta_d grid");
    cmd_sweep->add_option("--mode", sweep_mode, "Prediction set near or far from the TX")
        ->required()
        ->check(CLI::IsMember({"near", "far"}));
    cmd_sweep->add_option("--grid", sweep_grid, "delta_d grid in m (default 0,50,...,700)")
        ->delimiter(',');
    cmd_sweep->add_option("--d-max", sweep_d_max, "Near-mode prediction boundary in m");
    cmd_sweep->add_option("--d-min", sweep_d_min, "Far-mode prediction boundary in m");
    add_common(cmd_sweep, sweep_opts, true, true);

    // loo-frequency
    CommonOptions loo_opts;
    std::vector<double> loo_bands = plkit::default_band_list();
    auto *cmd_loo = app.add_subcommand("loo-frequency", "Leave-one-band-out frequency "
                                                        "prediction");
    cmd_loo->add_option("--bands", loo_bands, "Band centers in GHz")->delimiter(',');
    add_common(cmd_loo, loo_opts, true, true);

    // cross-env
    CommonOptions cross_opts;
    plkit::CrossEnvOptions cross;
    auto *cmd_cross = app.add_subcommand("cross-env", "Cross-environment prediction");
    cmd_cross->add_option("--measurement-env", cross.measurement_environment,
                          "Environment fitted on")
        ->required();
    cmd_cross->add_option("--prediction-env", cross.prediction_environment,
                          "Environment predicted on")
        ->required();
    cmd_cross->add_option("--bands", cross.bands, "Band centers in GHz")->delimiter(',');
    add_common(cmd_cross, cross_opts, true, true);

    // generate
    std::string gen_spec_path;
    std::string gen_output = "-";
    bool gen_quiet = false;
    auto *cmd_gen = app.add_subcommand("generate", "Generate a synthetic dataset from a "
                                                   "GeneratorSpec JSON file");
    cmd_gen->add_option("--spec", gen_spec_path, "GeneratorSpec JSON file")->required();
    cmd_gen->add_option("--output", gen_output, "Output path, '-' for stdout (default)");
    cmd_gen->add_flag("--quiet", gen_quiet, "Suppress warnings on stderr");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    try
    {
        if (app.got_subcommand(cmd_fit))
        {
            const auto data = load_dataset(fit_opts.input);
            const plkit::FitResult result =
                plkit::fit(plkit::model_kind_from_string(fit_model), data.samples);
            emit(fit_opts.output, plkit::fit_result_to_json(result));
        }
        else if (app.got_subcommand(cmd_eval))
        {
            plkit::AnyModel model = plkit::CiModel{};
            try
            {
                model = plkit::model_from_json(eval_params);
            }
            catch (const plkit::validation_error &e)
            {
                throw usage_error(std::string("--params: ") + e.what());
            }
            const auto data = load_dataset(eval_opts.input);
            emit(eval_opts.output,
                 plkit::residual_stats_to_json(plkit::evaluate(model, data.samples)));
        }
        else if (app.got_subcommand(cmd_filter))
        {
            const auto data = load_dataset(filter_opts.input);
            emit(filter_opts.output, plkit::dataset_to_csv(plkit::dynamic_range_filter(data.samples)));
        }
        else if (app.got_subcommand(cmd_sweep))
        {
            const auto data = load_dataset(sweep_opts.input);
            plkit::DistanceSweepOptions options;
            options.mode =
                sweep_mode == "near" ? plkit::DistanceMode::near : plkit::DistanceMode::far;
            if (!sweep_grid.empty())
                options.delta_grid = sweep_grid;
            options.d_max = sweep_d_max;
            options.d_min = sweep_d_min;
            options.jobs = sweep_opts.jobs;
            plkit::FigureTable table = plkit::run_distance_sweep(data.samples, options);
            stamp_input(table, sweep_opts.input, data.digest);
            emit_warnings(table, sweep_opts.quiet);
            emit(sweep_opts.output, render_table(table, sweep_opts.format));
        }
        else if (app.got_subcommand(cmd_loo))
        {
            const auto data = load_dataset(loo_opts.input);
            plkit::FigureTable table =
                plkit::run_frequency_loo(data.samples, loo_bands, loo_opts.jobs);
            stamp_input(table, loo_opts.input, data.digest);
            emit_warnings(table, loo_opts.quiet);
            emit(loo_opts.output, render_table(table, loo_opts.format));
        }
        else if (app.got_subcommand(cmd_cross))
        {
            const auto data = load_dataset(cross_opts.input);
            cross.jobs = cross_opts.jobs;
            plkit::FigureTable table = plkit::run_environment_cross(data.samples, cross);
            stamp_input(table, cross_opts.input, data.digest);
            emit_warnings(table, cross_opts.quiet);
            emit(cross_opts.output, render_table(table, cross_opts.format));
        }
        else if (app.got_subcommand(cmd_gen))
        {
            const plkit::GeneratorSpec spec =
                plkit::parse_generator_spec(plkit::read_file(gen_spec_path));
            emit(gen_output, plkit::dataset_to_csv(plkit::generate(spec)));
        }
        return 0;
    }
    catch (const usage_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const plkit::degenerate_fit_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
