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

#include "plkit/models.hpp"

#include <cmath>
#include <numbers>

#include "plkit/numfmt.hpp"

namespace plkit
{

namespace
{

void require_positive_finite(double value, const char *name)
{
    if (!std::isfinite(value) || value <= 0.0)
        throw validation_error(std::string(name) + " must be finite and > 0, got " + fmt_double(value));
}

} // namespace

ModelKind kind_of(const AnyModel &model)
{
    return std::holds_alternative<CiModel>(model) ? ModelKind::ci : ModelKind::abg;
}

std::string to_string(ModelKind kind)
{
    return kind == ModelKind::ci ? "ci" : "abg";
}

ModelKind model_kind_from_string(std::string_view text)
{
    if (text == "ci")
        return ModelKind::ci;
    if (text == "abg")
        return ModelKind::abg;
    throw validation_error("model kind must be 'ci' or 'abg', got '" + std::string(text) + "'");
}

double fspl_1m(double frequency_ghz)
{
    require_positive_finite(frequency_ghz, "frequency_ghz");
    const double f_hz = frequency_ghz * 1e9;
    return 20.0 * std::log10(4.0 * std::numbers::pi * f_hz / constants::speed_of_light_m_s);
}

double ci_path_loss(const CiModel &model, double frequency_ghz, double distance_m)
{
    require_positive_finite(distance_m, "distance_m");
    return fspl_1m(frequency_ghz) +
           10.0 * model.ple * std::log10(distance_m / constants::reference_distance_m);
}

double abg_path_loss(const AbgModel &model, double frequency_ghz, double distance_m)
{
    require_positive_finite(frequency_ghz, "frequency_ghz");
    require_positive_finite(distance_m, "distance_m");
    return 10.0 * model.alpha * std::log10(distance_m / constants::reference_distance_m) +
           model.beta +
           10.0 * model.gamma * std::log10(frequency_ghz / constants::reference_frequency_ghz);
}

double path_loss(const AnyModel &model, double frequency_ghz, double distance_m)
{
    if (const auto *ci = std::get_if<CiModel>(&model))
        return ci_path_loss(*ci, frequency_ghz, distance_m);
    return abg_path_loss(std::get<AbgModel>(model), frequency_ghz, distance_m);
}

AbgModel ci_as_abg(const CiModel &model)
{
    return AbgModel{model.ple, fspl_1m(constants::reference_frequency_ghz), 2.0};
}

} // namespace plkit
