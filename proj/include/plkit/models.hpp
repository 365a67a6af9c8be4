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

#include <variant>

#include "plkit/errors.hpp"

namespace plkit
{

namespace constants
{
// Fixed at compile time, never configurable. A three-significant-figure c
// would shift the 1 m free-space anchor by < 0.01 dB.
inline constexpr double speed_of_light_m_s = 299'792'458.0;
inline constexpr double reference_distance_m = 1.0;
inline constexpr double reference_frequency_ghz = 1.0;
} // namespace constants

// Close-in free-space reference distance model: a single path-loss exponent
// on top of the physical 1 m free-space anchor.
struct CiModel
{
    double ple = 2.0;

    bool operator==(const CiModel &) const = default;
};

// Alpha-beta-gamma model: floating intercept, separate distance and
// frequency slopes, no physical anchor.
struct AbgModel
{
    double alpha = 2.0; // distance slope
    double beta = 0.0;  // offset, dB
    double gamma = 2.0; // frequency slope

    bool operator==(const AbgModel &) const = default;
};

enum class ModelKind
{
    ci,
    abg
};

using AnyModel = std::variant<CiModel, AbgModel>;

ModelKind kind_of(const AnyModel &model);
std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view text);

// Free-space path loss at the 1 m reference distance, 20*log10(4*pi*f/c).
// Throws validation_error for non-positive or non-finite frequency.
double fspl_1m(double frequency_ghz);

// Deterministic mean path loss of each model. Shadow fading is never
// sampled here; it lives in the generator noise and in residual statistics.
double ci_path_loss(const CiModel &model, double frequency_ghz, double distance_m);
double abg_path_loss(const AbgModel &model, double frequency_ghz, double distance_m);
double path_loss(const AnyModel &model, double frequency_ghz, double distance_m);

// The CI model is the ABG family member (alpha = n, beta = fspl_1m(1 GHz),
// gamma = 2); the returned model evaluates identically for all (f, d).
AbgModel ci_as_abg(const CiModel &model);

} // namespace plkit
