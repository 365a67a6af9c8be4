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

#include "plkit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "plkit/numfmt.hpp"

namespace plkit
{

std::vector<double> default_delta_grid()
{
    std::vector<double> grid;
    for (int d = 0; d <= 700; d += 50)
        grid.push_back(static_cast<double>(d));
    return grid;
}

std::vector<double> default_band_list()
{
    return {2.0, 5.6, 10.0, 18.0, 28.0, 39.3, 73.5};
}

std::vector<Sample> dynamic_range_filter(std::span<const Sample> samples)
{
    std::vector<Sample> kept;
    for (const Sample &s : samples)
        if (s.path_loss_db - fspl_1m(s.frequency_ghz) < 100.0)
            kept.push_back(s);
    return kept;
}

namespace
{

struct BandKey
{
    double value = 0.0; // band center if merged, else the frequency itself
    std::string label;
};

BandKey band_key(double frequency_ghz, std::span<const double> bands)
{
    if (!std::isfinite(frequency_ghz) || frequency_ghz <= 0.0)
        throw validation_error("group_band: frequency must be finite and > 0");
    double best_rel = std::numeric_limits<double>::infinity();
    double best_band = 0.0;
    for (double b : bands)
    {
        if (!(b > 0.0) || !std::isfinite(b))
            throw validation_error("group_band: band centers must be finite and > 0");
        const double rel = std::abs(frequency_ghz - b) / b;
        if (rel < best_rel)
        {
            best_rel = rel;
            best_band = b;
        }
    }
    if (best_rel <= band_merge_tolerance)
        return {best_band, fmt_double(best_band)};
    return {frequency_ghz, fmt_double(frequency_ghz)};
}

void require_nlos_only(std::span<const Sample> samples, const char *who)
{
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (samples[i].link_state == LinkState::los)
            throw validation_error(std::string(who) + ": sample " + std::to_string(i + 1) +
                                   " is LOS; the prediction protocols take NLOS data only");
}

} // namespace

std::string group_band(double frequency_ghz, std::span<const double> bands)
{
    return band_key(frequency_ghz, bands).label;
}

SplitSpec SplitSpec::distance_near(double delta_d, double d_max)
{
    SplitSpec spec;
    spec.kind = SplitKind::distance_near;
    spec.delta_d = delta_d;
    spec.d_max = d_max;
    return spec;
}

SplitSpec SplitSpec::distance_far(double delta_d, double d_min)
{
    SplitSpec spec;
    spec.kind = SplitKind::distance_far;
    spec.delta_d = delta_d;
    spec.d_min = d_min;
    return spec;
}

SplitSpec SplitSpec::frequency_loo(std::string held_out_band, std::vector<double> bands)
{
    SplitSpec spec;
    spec.kind = SplitKind::frequency_loo;
    spec.held_out_band = std::move(held_out_band);
    spec.bands = std::move(bands);
    return spec;
}

SplitSpec SplitSpec::environment_cross(std::string measurement_env, std::string prediction_env)
{
    SplitSpec spec;
    spec.kind = SplitKind::environment_cross;
    spec.measurement_environment = std::move(measurement_env);
    spec.prediction_environment = std::move(prediction_env);
    return spec;
}

std::string SplitSpec::describe() const
{
    switch (kind)
    {
    case SplitKind::distance_near:
        return "distance_near(d_max=" + fmt_double(d_max) + ", delta_d=" + fmt_double(delta_d) + ")";
    case SplitKind::distance_far:
        return "distance_far(d_min=" + fmt_double(d_min) + ", delta_d=" + fmt_double(delta_d) + ")";
    case SplitKind::frequency_loo:
        return "frequency_loo(held_out_band=" + held_out_band + ")";
    case SplitKind::environment_cross:
        return "environment_cross(measurement=" + measurement_environment +
               ", prediction=" + prediction_environment + ")";
    }
    return "unknown";
}

SplitResult split(std::span<const Sample> samples, const SplitSpec &spec)
{
    require_nlos_only(samples, "split");

    SplitResult result;
    result.spec = spec;

    switch (spec.kind)
    {
    case SplitKind::distance_near:
    {
        if (!(spec.delta_d >= 0.0) || !(spec.d_max > 0.0))
            throw validation_error("split: distance_near requires d_max > 0 and delta_d >= 0");
        for (const Sample &s : samples)
        {
            if (s.distance_m <= spec.d_max)
                result.prediction.push_back(s);
            else if (s.distance_m > spec.d_max + spec.delta_d)
                result.measurement.push_back(s);
            // the gap (d_max, d_max + delta_d] lands in neither set
        }
        break;
    }
    case SplitKind::distance_far:
    {
        if (!(spec.delta_d >= 0.0) || !(spec.d_min > 0.0))
            throw validation_error("split: distance_far requires d_min > 0 and delta_d >= 0");
        for (const Sample &s : samples)
        {
            if (s.distance_m >= spec.d_min)
                result.prediction.push_back(s);
            else if (s.distance_m < spec.d_min - spec.delta_d)
                result.measurement.push_back(s);
        }
        break;
    }
    case SplitKind::frequency_loo:
    {
        if (spec.held_out_band.empty())
            throw validation_error("split: frequency_loo requires a held-out band label");
        for (const Sample &s : samples)
        {
            if (group_band(s.frequency_ghz, spec.bands) == spec.held_out_band)
                result.prediction.push_back(s);
            else
                result.measurement.push_back(s);
        }
        break;
    }
    case SplitKind::environment_cross:
    {
        if (spec.measurement_environment.empty() || spec.prediction_environment.empty())
            throw validation_error("split: environment_cross requires both environment labels");
        if (spec.measurement_environment == spec.prediction_environment)
            throw validation_error(
                "split: environment_cross requires distinct environments (got '" +
                spec.measurement_environment + "' twice); use run_environment_cross for self-cross");
        for (const Sample &s : samples)
        {
            if (s.environment == spec.measurement_environment)
                result.measurement.push_back(s);
            else if (s.environment == spec.prediction_environment)
                result.prediction.push_back(s);
        }
        break;
    }
    }

    if (result.measurement.empty())
        throw empty_partition_error(PartitionSide::measurement,
                                    "split " + spec.describe() + ": empty measurement set");
    if (result.prediction.empty())
        throw empty_partition_error(PartitionSide::prediction,
                                    "split " + spec.describe() + ": empty prediction set");
    return result;
}

// ---------------------------------------------------------------------------
// FigureTable serialization

namespace
{

const char *figure_csv_header = "sweep_key,ci_sf_std,abg_sf_std,ci_n,abg_alpha,abg_beta,"
                                "abg_gamma,measurement_count,prediction_count,"
                                "ci_sf_std_meas,abg_sf_std_meas";

std::string csv_cell(const std::optional<double> &value)
{
    return value ? fmt_sig6(*value) : std::string("NA");
}

} // namespace

std::string figure_table_to_csv(const FigureTable &table)
{
    std::string out;
    for (const auto &[key, value] : table.metadata)
        out += "# " + key + "=" + value + "\n";
    for (const std::string &w : table.warnings)
        out += "# warning=" + w + "\n";
    out += figure_csv_header;
    out += '\n';
    for (const FigureRow &row : table.rows)
    {
        out += row.sweep_key;
        out += ',' + fmt_sig6(row.ci_sf_std);
        out += ',' + csv_cell(row.abg ? std::optional(row.abg->sf_std) : std::nullopt);
        out += ',' + fmt_sig6(row.ci_n);
        out += ',' + csv_cell(row.abg ? std::optional(row.abg->alpha) : std::nullopt);
        out += ',' + csv_cell(row.abg ? std::optional(row.abg->beta) : std::nullopt);
        out += ',' + csv_cell(row.abg ? std::optional(row.abg->gamma) : std::nullopt);
        out += ',' + std::to_string(row.measurement_count);
        out += ',' + std::to_string(row.prediction_count);
        out += ',' + fmt_sig6(row.ci_sf_std_meas);
        out += ',' + csv_cell(row.abg ? std::optional(row.abg->sf_std_meas) : std::nullopt);
        out += '\n';
    }
    return out;
}

std::string figure_table_to_json(const FigureTable &table)
{
    using nlohmann::ordered_json;
    ordered_json meta;
    for (const auto &[key, value] : table.metadata)
        meta[key] = value;
    meta["warnings"] = table.warnings;

    ordered_json rows = ordered_json::array();
    for (const FigureRow &row : table.rows)
    {
        ordered_json r;
        r["sweep_key"] = row.sweep_key;
        r["ci_sf_std"] = row.ci_sf_std;
        r["abg_sf_std"] = row.abg ? ordered_json(row.abg->sf_std) : ordered_json(nullptr);
        r["ci_n"] = row.ci_n;
        r["abg_alpha"] = row.abg ? ordered_json(row.abg->alpha) : ordered_json(nullptr);
        r["abg_beta"] = row.abg ? ordered_json(row.abg->beta) : ordered_json(nullptr);
        r["abg_gamma"] = row.abg ? ordered_json(row.abg->gamma) : ordered_json(nullptr);
        r["measurement_count"] = row.measurement_count;
        r["prediction_count"] = row.prediction_count;
        r["ci_sf_std_meas"] = row.ci_sf_std_meas;
        r["abg_sf_std_meas"] =
            row.abg ? ordered_json(row.abg->sf_std_meas) : ordered_json(nullptr);
        rows.push_back(std::move(r));
    }

    ordered_json doc;
    doc["meta"] = std::move(meta);
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Sweep runners

namespace
{

// Runs body(i) for i in [0, n) on up to `jobs` workers. Each slot depends
// only on its own index, so the result is schedule-independent; exceptions
// are captured per slot and rethrown by the caller in slot order.
void parallel_for_index(std::size_t n, int jobs,
                        const std::function<void(std::size_t)> &body,
                        std::vector<std::exception_ptr> &errors)
{
    errors.assign(n, nullptr);
    const auto run_slot = [&](std::size_t i) {
        try
        {
            body(i);
        }
        catch (...)
        {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(n, jobs > 1 ? static_cast<std::size_t>(jobs) : 1);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            run_slot(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                run_slot(i);
        });
    for (std::thread &t : pool)
        t.join();
}

struct SweepCell
{
    std::optional<FigureRow> row;
    std::vector<Sample> prediction;  // for the fixed-prediction-set assertion
    bool empty_measurement = false;
    std::string abg_warning;
};

// Fit both models on the measurement set, evaluate on the prediction set.
// A degenerate ABG design downgrades to a CI-only row.
SweepCell make_cell(const SplitResult &sr, std::string sweep_key)
{
    SweepCell cell;
    FigureRow row;
    row.sweep_key = std::move(sweep_key);
    row.measurement_count = sr.measurement.size();
    row.prediction_count = sr.prediction.size();

    const FitResult ci = fit_ci(sr.measurement);
    row.ci_n = std::get<CiModel>(ci.model).ple;
    row.ci_sf_std_meas = ci.stats.sf_std;
    row.ci_sf_std = evaluate(ci.model, sr.prediction).sf_std;

    try
    {
        const FitResult abg = fit_abg(sr.measurement);
        const auto &m = std::get<AbgModel>(abg.model);
        AbgRowValues cells;
        cells.alpha = m.alpha;
        cells.beta = m.beta;
        cells.gamma = m.gamma;
        cells.sf_std_meas = abg.stats.sf_std;
        cells.sf_std = evaluate(abg.model, sr.prediction).sf_std;
        row.abg = cells;
    }
    catch (const degenerate_fit_error &e)
    {
        cell.abg_warning = "abg unavailable at sweep_key=" + row.sweep_key + ": " + e.what();
    }

    cell.row = std::move(row);
    return cell;
}

std::string join_doubles(std::span<const double> values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (i)
            out += ',';
        out += fmt_double(values[i]);
    }
    return out;
}

} // namespace

FigureTable run_distance_sweep(std::span<const Sample> samples, const DistanceSweepOptions &options)
{
    const auto &grid = options.delta_grid;
    if (grid.empty())
        throw validation_error("run_distance_sweep: empty delta_d grid");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (!(grid[i] >= 0.0) || !std::isfinite(grid[i]))
            throw validation_error("run_distance_sweep: delta_d values must be finite and >= 0");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw validation_error("run_distance_sweep: delta_d grid must be strictly ascending");
    }

    const bool near = options.mode == DistanceMode::near;
    std::vector<SweepCell> cells(grid.size());
    std::vector<std::exception_ptr> errors;
    parallel_for_index(
        grid.size(), options.jobs,
        [&](std::size_t i) {
            const SplitSpec spec = near ? SplitSpec::distance_near(grid[i], options.d_max)
                                        : SplitSpec::distance_far(grid[i], options.d_min);
            try
            {
                SplitResult sr = split(samples, spec);
                cells[i] = make_cell(sr, fmt_double(grid[i]));
                cells[i].prediction = std::move(sr.prediction);
            }
            catch (const empty_partition_error &e)
            {
                if (e.side() != PartitionSide::measurement)
                    throw;
                cells[i].empty_measurement = true;
            }
        },
        errors);

    FigureTable table;
    table.metadata.emplace_back("kind", "distance_sweep");
    table.metadata.emplace_back("mode", near ? "near" : "far");
    if (near)
        table.metadata.emplace_back("d_max", fmt_double(options.d_max));
    else
        table.metadata.emplace_back("d_min", fmt_double(options.d_min));
    table.metadata.emplace_back("delta_grid", join_doubles(grid));

    // Assemble strictly in grid order; the measurement set shrinks with
    // delta_d, so everything past the first empty one is empty as well.
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        if (cells[i].empty_measurement)
        {
            table.warnings.push_back("measurement set empty at delta_d=" + fmt_double(grid[i]) +
                                     "; sweep truncated");
            break;
        }
        if (i > 0 && !(cells[i].prediction == cells[0].prediction))
            throw std::logic_error("run_distance_sweep: prediction set changed across delta_d");
        if (!cells[i].abg_warning.empty())
            table.warnings.push_back(cells[i].abg_warning);
        table.rows.push_back(std::move(*cells[i].row));
    }
    return table;
}

FigureTable run_frequency_loo(std::span<const Sample> samples, std::span<const double> bands,
                              int jobs)
{
    require_nlos_only(samples, "run_frequency_loo");

    // Bands actually present after grouping, ascending by band value.
    std::map<double, std::string> present;
    for (const Sample &s : samples)
    {
        const BandKey key = band_key(s.frequency_ghz, bands);
        present.emplace(key.value, key.label);
    }
    if (present.size() < 2)
        throw validation_error("run_frequency_loo: needs at least 2 bands after grouping, got " +
                               std::to_string(present.size()));

    std::vector<std::string> labels;
    for (const auto &[value, label] : present)
        labels.push_back(label);

    const std::vector<double> band_list(bands.begin(), bands.end());
    std::vector<SweepCell> cells(labels.size());
    std::vector<std::exception_ptr> errors;
    parallel_for_index(
        labels.size(), jobs,
        [&](std::size_t i) {
            const SplitResult sr =
                split(samples, SplitSpec::frequency_loo(labels[i], band_list));
            cells[i] = make_cell(sr, labels[i]);
        },
        errors);

    FigureTable table;
    table.metadata.emplace_back("kind", "frequency_loo");
    table.metadata.emplace_back("bands", join_doubles(band_list));
    for (std::size_t i = 0; i < labels.size(); ++i)
    {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        if (!cells[i].abg_warning.empty())
            table.warnings.push_back(cells[i].abg_warning);
        table.rows.push_back(std::move(*cells[i].row));
    }
    return table;
}

FigureTable run_environment_cross(std::span<const Sample> samples, const CrossEnvOptions &options)
{
    require_nlos_only(samples, "run_environment_cross");
    if (options.measurement_environment.empty() || options.prediction_environment.empty())
        throw validation_error("run_environment_cross: both environment labels are required");

    const SplitSpec spec = SplitSpec::environment_cross(options.measurement_environment,
                                                        options.prediction_environment);

    std::vector<Sample> measurement;
    std::vector<Sample> prediction;
    if (options.measurement_environment == options.prediction_environment)
    {
        // Self-cross sanity mode: both roles are played by the same data.
        for (const Sample &s : samples)
            if (s.environment == options.measurement_environment)
                measurement.push_back(s);
        prediction = measurement;
        if (measurement.empty())
            throw empty_partition_error(PartitionSide::measurement,
                                        "split " + spec.describe() + ": empty measurement set");
    }
    else
    {
        SplitResult sr = split(samples, spec);
        measurement = std::move(sr.measurement);
        prediction = std::move(sr.prediction);
    }

    const FitResult ci = fit_ci(measurement);
    std::optional<FitResult> abg;
    std::string abg_warning;
    try
    {
        abg = fit_abg(measurement);
    }
    catch (const degenerate_fit_error &e)
    {
        abg_warning = std::string("abg unavailable for measurement environment ") +
                      options.measurement_environment + ": " + e.what();
    }

    FigureTable table;
    table.metadata.emplace_back("kind", "environment_cross");
    table.metadata.emplace_back("measurement_environment", options.measurement_environment);
    table.metadata.emplace_back("prediction_environment", options.prediction_environment);
    table.metadata.emplace_back("bands", join_doubles(options.bands));
    table.metadata.emplace_back("measurement_ci_sf_std", fmt_sig6(ci.stats.sf_std));
    table.metadata.emplace_back("measurement_abg_sf_std",
                                abg ? fmt_sig6(abg->stats.sf_std) : std::string("NA"));
    if (!abg_warning.empty())
        table.warnings.push_back(abg_warning);

    // Bands present in the prediction environment, ascending.
    std::map<double, std::string> pred_bands;
    for (const Sample &s : prediction)
    {
        const BandKey key = band_key(s.frequency_ghz, options.bands);
        pred_bands.emplace(key.value, key.label);
    }

    struct Group
    {
        std::string label;
        std::vector<Sample> members;
    };
    std::vector<Group> groups;
    for (const auto &[value, label] : pred_bands)
        for (TxHeightClass height : {TxHeightClass::low, TxHeightClass::high})
        {
            Group group;
            group.label = options.prediction_environment + "_" + label + "GHz_" +
                          (height == TxHeightClass::low ? "lowTX" : "highTX");
            for (const Sample &s : prediction)
                if (s.tx_height_class == height &&
                    band_key(s.frequency_ghz, options.bands).label == label)
                    group.members.push_back(s);
            if (group.members.empty())
                table.warnings.push_back("prediction group " + group.label + " is empty; skipped");
            else
                groups.push_back(std::move(group));
        }

    std::vector<FigureRow> rows(groups.size());
    std::vector<std::exception_ptr> errors;
    parallel_for_index(
        groups.size(), options.jobs,
        [&](std::size_t i) {
            FigureRow row;
            row.sweep_key = groups[i].label;
            row.measurement_count = measurement.size();
            row.prediction_count = groups[i].members.size();
            row.ci_n = std::get<CiModel>(ci.model).ple;
            row.ci_sf_std_meas = ci.stats.sf_std;
            row.ci_sf_std = evaluate(ci.model, groups[i].members).sf_std;
            if (abg)
            {
                const auto &m = std::get<AbgModel>(abg->model);
                AbgRowValues cells;
                cells.alpha = m.alpha;
                cells.beta = m.beta;
                cells.gamma = m.gamma;
                cells.sf_std_meas = abg->stats.sf_std;
                cells.sf_std = evaluate(abg->model, groups[i].members).sf_std;
                row.abg = cells;
            }
            rows[i] = std::move(row);
        },
        errors);

    for (std::size_t i = 0; i < groups.size(); ++i)
    {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        table.rows.push_back(std::move(rows[i]));
    }
    return table;
}

} // namespace plkit
