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

#include "plkit/estimation.hpp"

#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace plkit
{

namespace
{

// Relative pivot threshold for declaring the 3x3 normal equations singular.
constexpr double pivot_tolerance = 1e-9;

ResidualStats stats_from_residuals(double sum_r, double sum_r2, double max_abs, std::size_t n)
{
    ResidualStats stats;
    stats.count = n;
    stats.sf_std = std::sqrt(sum_r2 / static_cast<double>(n));
    stats.mean_error = sum_r / static_cast<double>(n);
    stats.max_abs_error = max_abs;
    // RMS dominates the mean up to rounding; anything else is broken numerics
    if (!(stats.sf_std + 1e-9 >= std::abs(stats.mean_error)))
        throw std::logic_error("residual stats: RMS smaller than |mean|");
    return stats;
}

// Solves A x = b (3x3, augmented in place) by Gaussian elimination with
// partial pivoting. Throws degenerate_fit_error naming `column_names[k]`
// when the pivot of elimination step k vanishes relative to the largest
// entry of A.
std::array<double, 3> solve_3x3(std::array<std::array<double, 4>, 3> m,
                                const std::array<const char *, 3> &column_names)
{
    double max_entry = 0.0;
    for (const auto &row : m)
        for (int j = 0; j < 3; ++j)
            max_entry = std::max(max_entry, std::abs(row[j]));

    for (int k = 0; k < 3; ++k)
    {
        int pivot_row = k;
        for (int i = k + 1; i < 3; ++i)
            if (std::abs(m[i][k]) > std::abs(m[pivot_row][k]))
                pivot_row = i;
        if (std::abs(m[pivot_row][k]) < pivot_tolerance * max_entry)
            throw degenerate_fit_error(
                std::string("fit_abg: design matrix is rank deficient; the ") + column_names[k] +
                " column is linearly dependent on the others");
        std::swap(m[k], m[pivot_row]);
        for (int i = k + 1; i < 3; ++i)
        {
            const double factor = m[i][k] / m[k][k];
            for (int j = k; j < 4; ++j)
                m[i][j] -= factor * m[k][j];
        }
    }

    std::array<double, 3> x{};
    for (int k = 2; k >= 0; --k)
    {
        double acc = m[k][3];
        for (int j = k + 1; j < 3; ++j)
            acc -= m[k][j] * x[j];
        x[k] = acc / m[k][k];
    }
    return x;
}

} // namespace

FitResult fit_ci(std::span<const Sample> samples)
{
    if (samples.empty())
        throw validation_error("fit_ci: empty sample set");

    // a_i = PL_i - fspl_1m(f_i), b_i = 10 log10(d_i); n = sum(a b) / sum(b^2)
    double sum_ab = 0.0;
    double sum_b2 = 0.0;
    for (const Sample &s : samples)
    {
        const double a = s.path_loss_db - fspl_1m(s.frequency_ghz);
        const double b = 10.0 * std::log10(s.distance_m);
        sum_ab += a * b;
        sum_b2 += b * b;
    }
    if (sum_b2 == 0.0)
        throw degenerate_fit_error(
            "fit_ci: every distance equals the 1 m reference; the path-loss exponent is unidentifiable");

    const CiModel model{sum_ab / sum_b2};
    FitResult result{model, evaluate(model, samples), samples.size()};
    return result;
}

FitResult fit_abg(std::span<const Sample> samples)
{
    if (samples.empty())
        throw validation_error("fit_abg: empty sample set");
    if (samples.size() < 3)
        throw degenerate_fit_error("fit_abg: needs at least 3 samples, got " +
                                   std::to_string(samples.size()) +
                                   " (three-parameter design cannot reach rank 3)");

    std::set<double> distinct_d;
    std::set<double> distinct_f;
    for (const Sample &s : samples)
    {
        distinct_d.insert(s.distance_m);
        distinct_f.insert(s.frequency_ghz);
    }
    if (distinct_d.size() < 2)
        throw degenerate_fit_error(
            "fit_abg: distance column is constant (single distance across all samples)");
    if (distinct_f.size() < 2)
        throw degenerate_fit_error(
            "fit_abg: frequency column is constant (single frequency across all samples)");

    // Normal equations G'G theta = G'y with rows (x_i, 1, z_i).
    const double n = static_cast<double>(samples.size());
    double sxx = 0, sx = 0, sxz = 0, szz = 0, sz = 0;
    double sxy = 0, sy = 0, szy = 0;
    for (const Sample &s : samples)
    {
        const double x = 10.0 * std::log10(s.distance_m);
        const double z = 10.0 * std::log10(s.frequency_ghz);
        const double y = s.path_loss_db;
        sxx += x * x;
        sx += x;
        sxz += x * z;
        szz += z * z;
        sz += z;
        sxy += x * y;
        sy += y;
        szy += z * y;
    }

    const std::array<std::array<double, 4>, 3> normal{{
        {sxx, sx, sxz, sxy},
        {sx, n, sz, sy},
        {sxz, sz, szz, szy},
    }};
    const auto theta =
        solve_3x3(normal, {"distance (10 log10 d)", "intercept", "frequency (10 log10 f)"});

    const AbgModel model{theta[0], theta[1], theta[2]};
    FitResult result{model, evaluate(model, samples), samples.size()};
    return result;
}

FitResult fit(ModelKind kind, std::span<const Sample> samples)
{
    return kind == ModelKind::ci ? fit_ci(samples) : fit_abg(samples);
}

ResidualStats evaluate(const AnyModel &model, std::span<const Sample> samples)
{
    if (samples.empty())
        throw validation_error("evaluate: empty sample set");

    double sum_r = 0.0;
    double sum_r2 = 0.0;
    double max_abs = 0.0;
    for (const Sample &s : samples)
    {
        const double r = s.path_loss_db - path_loss(model, s.frequency_ghz, s.distance_m);
        sum_r += r;
        sum_r2 += r * r;
        max_abs = std::max(max_abs, std::abs(r));
    }
    return stats_from_residuals(sum_r, sum_r2, max_abs, samples.size());
}

ResidualStats evaluate(const CiModel &model, std::span<const Sample> samples)
{
    return evaluate(AnyModel{model}, samples);
}

ResidualStats evaluate(const AbgModel &model, std::span<const Sample> samples)
{
    return evaluate(AnyModel{model}, samples);
}

} // namespace plkit
