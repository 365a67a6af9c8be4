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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plkit/estimation.hpp"
#include "plkit/sample.hpp"

namespace plkit
{

inline constexpr double default_d_max_m = 200.0;
inline constexpr double default_d_min_m = 900.0;

// Frequencies within this relative distance of a configured band center are
// merged into that band (covers 10/10.25 and 28/28.5 GHz without merging
// 2 and 5.6 GHz).
inline constexpr double band_merge_tolerance = 0.05;

// {0, 50, ..., 700} m.
std::vector<double> default_delta_grid();

// {2, 5.6, 10, 18, 28, 39.3, 73.5} GHz.
std::vector<double> default_band_list();

// Keeps exactly the samples with PL - fspl_1m(f) < 100 dB (strict), the
// relative dynamic-range criterion of real measurement equipment. Order
// preserved; empty output is legal.
std::vector<Sample> dynamic_range_filter(std::span<const Sample> samples);

// Band label for a frequency: the nearest configured band center when within
// band_merge_tolerance relative distance, otherwise the frequency itself.
// Labels are shortest decimal strings ("10", "5.6").
std::string group_band(double frequency_ghz, std::span<const double> bands);

enum class SplitKind
{
    distance_near,
    distance_far,
    frequency_loo,
    environment_cross
};

// Declarative description of one measurement/prediction partition. Build via
// the factories; only the fields relevant to `kind` are meaningful.
struct SplitSpec
{
    SplitKind kind = SplitKind::distance_near;
    double d_max = default_d_max_m; // distance_near
    double d_min = default_d_min_m; // distance_far
    double delta_d = 0.0;           // distance kinds, >= 0
    std::string held_out_band;      // frequency_loo
    std::vector<double> bands;      // frequency_loo band list
    std::string measurement_environment; // environment_cross
    std::string prediction_environment;  // environment_cross

    static SplitSpec distance_near(double delta_d, double d_max = default_d_max_m);
    static SplitSpec distance_far(double delta_d, double d_min = default_d_min_m);
    static SplitSpec frequency_loo(std::string held_out_band, std::vector<double> bands);
    static SplitSpec environment_cross(std::string measurement_env, std::string prediction_env);

    std::string describe() const;
};

struct SplitResult
{
    std::vector<Sample> measurement;
    std::vector<Sample> prediction;
    SplitSpec spec;
};

// Materializes a partition. Input must be NLOS-only (validation_error
// otherwise). Distance kinds leave the gap (d_max, d_max + delta_d] resp.
// [d_min - delta_d, d_min) in neither set. An empty side raises
// empty_partition_error naming the spec.
//
// environment_cross requires distinct environment labels here so the two
// sets stay disjoint; run_environment_cross additionally supports the
// self-cross sanity mode.
SplitResult split(std::span<const Sample> samples, const SplitSpec &spec);

struct AbgRowValues
{
    double sf_std = 0.0; // prediction set
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double sf_std_meas = 0.0; // measurement set
};

// One sweep point. `abg` is empty when the measurement design cannot fit the
// ABG model (e.g. a single-frequency measurement set); such rows still carry
// the CI results and serialize the ABG cells as NA/null.
struct FigureRow
{
    std::string sweep_key; // delta_d in m, band label, or group label
    double ci_sf_std = 0.0; // prediction set
    double ci_n = 0.0;
    double ci_sf_std_meas = 0.0; // measurement set
    std::optional<AbgRowValues> abg;
    std::size_t measurement_count = 0;
    std::size_t prediction_count = 0;
};

// Long-form sweep output, the unit of CLI emission. Metadata key/value pairs
// and warning records form the CSV preamble and the JSON "meta" section.
struct FigureTable
{
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> warnings;
    std::vector<FigureRow> rows;
};

std::string figure_table_to_csv(const FigureTable &table);
std::string figure_table_to_json(const FigureTable &table);

enum class DistanceMode
{
    near,
    far
};

struct DistanceSweepOptions
{
    DistanceMode mode = DistanceMode::near;
    std::vector<double> delta_grid = default_delta_grid(); // strictly ascending, >= 0
    double d_max = default_d_max_m;
    double d_min = default_d_min_m;
    int jobs = 1;
};

// One row per delta_d: split, fit both models on the measurement set,
// evaluate both on the (fixed) prediction set. A delta_d with an empty
// measurement set ends the sweep there with a partial table and a warning
// record. Rows may be computed in parallel (jobs > 1); emission order always
// equals grid order and the output is byte-identical to a serial run.
FigureTable run_distance_sweep(std::span<const Sample> samples, const DistanceSweepOptions &options);

// Leave-one-band-out: one row per band present after grouping, fitting on
// the other bands and predicting on the held-out one. Requires >= 2 bands.
FigureTable run_frequency_loo(std::span<const Sample> samples, std::span<const double> bands,
                              int jobs = 1);

struct CrossEnvOptions
{
    std::string measurement_environment;
    std::string prediction_environment;
    std::vector<double> bands = default_band_list();
    int jobs = 1;
};

// Fits both models on the full measurement environment (the measurement-set
// SF std pair lands in the metadata), then emits one row per
// (band x TX-height-class) group of the prediction environment. Empty groups
// are skipped with a warning record.
FigureTable run_environment_cross(std::span<const Sample> samples, const CrossEnvOptions &options);

} // namespace plkit
