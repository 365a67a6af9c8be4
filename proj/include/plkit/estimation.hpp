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

#include <cstddef>
#include <span>

#include "plkit/models.hpp"
#include "plkit/sample.hpp"

namespace plkit
{

// Residual statistics of a model over a sample set. sf_std is the RMS
// residual with no mean removal and an N divisor: the shadow-fading standard
// deviation convention used throughout. mean_error is reported alongside so
// prediction bias stays visible.
struct ResidualStats
{
    double sf_std = 0.0;
    double mean_error = 0.0;
    double max_abs_error = 0.0;
    std::size_t count = 0;
};

struct FitResult
{
    AnyModel model;
    ResidualStats stats; // on the set that produced the fit
    std::size_t sample_count = 0;
};

// Least-squares PLE minimizing the SF standard deviation. With
// a_i = PL_i - fspl_1m(f_i) and b_i = 10*log10(d_i), the unique minimizer is
// n = sum(a_i*b_i) / sum(b_i^2).
//
// Defined for a single sample (exact fit) as long as some d_i != 1 m; all
// distances exactly 1 m leave the exponent unidentifiable.
FitResult fit_ci(std::span<const Sample> samples);

// Ordinary least squares on PL_i ~ alpha*x_i + beta + gamma*z_i with
// x_i = 10*log10(d_i), z_i = 10*log10(f_i / 1 GHz), solved through the 3x3
// normal equations by direct elimination with partial pivoting. Requires a
// rank-3 design: at least 3 samples, at least 2 distinct distances and 2
// distinct frequencies, and no affine dependence between the x and z
// columns. Throws degenerate_fit_error naming the collinear column.
FitResult fit_abg(std::span<const Sample> samples);

FitResult fit(ModelKind kind, std::span<const Sample> samples);

// Residuals r_i = PL_i - model(f_i, d_i) over an arbitrary sample set.
ResidualStats evaluate(const CiModel &model, std::span<const Sample> samples);
ResidualStats evaluate(const AbgModel &model, std::span<const Sample> samples);
ResidualStats evaluate(const AnyModel &model, std::span<const Sample> samples);

} // namespace plkit
