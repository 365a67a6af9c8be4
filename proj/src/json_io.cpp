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

#include "plkit/json_io.hpp"

#include "json.hpp"

namespace plkit
{

namespace
{

using nlohmann::ordered_json;

ordered_json model_json(const AnyModel &model)
{
    ordered_json j;
    if (const auto *ci = std::get_if<CiModel>(&model))
    {
        j["kind"] = "ci";
        j["n"] = ci->ple;
    }
    else
    {
        const auto &abg = std::get<AbgModel>(model);
        j["kind"] = "abg";
        j["alpha"] = abg.alpha;
        j["beta"] = abg.beta;
        j["gamma"] = abg.gamma;
    }
    return j;
}

ordered_json stats_json(const ResidualStats &stats)
{
    ordered_json j;
    j["sf_std"] = stats.sf_std;
    j["mean_error"] = stats.mean_error;
    j["max_abs_error"] = stats.max_abs_error;
    j["count"] = stats.count;
    return j;
}

} // namespace

std::string model_to_json(const AnyModel &model)
{
    return model_json(model).dump(2) + "\n";
}

std::string residual_stats_to_json(const ResidualStats &stats)
{
    return stats_json(stats).dump(2) + "\n";
}

std::string fit_result_to_json(const FitResult &result)
{
    ordered_json j;
    j["model"] = model_json(result.model);
    j["stats"] = stats_json(result.stats);
    j["sample_count"] = result.sample_count;
    return j.dump(2) + "\n";
}

AnyModel model_from_json(const std::string &json_text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw validation_error(std::string("model parameters: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw validation_error("model parameters: expected a JSON object");

    const auto number = [&j](const char *key) {
        if (!j.contains(key) || !j[key].is_number())
            throw validation_error(std::string("model parameters: missing or non-numeric '") +
                                   key + "'");
        return j[key].get<double>();
    };

    // An optional "kind" is tolerated (and checked) so the model object
    // printed by `fit` feeds straight into `eval --params`.
    const std::size_t extra = j.contains("kind") ? 1 : 0;
    if (j.contains("kind") && !j["kind"].is_string())
        throw validation_error("model parameters: 'kind' must be a string");

    if (j.contains("n"))
    {
        if (j.size() != 1 + extra)
            throw validation_error("model parameters: a CI model takes exactly {\"n\": ...}");
        if (extra && j["kind"].get<std::string>() != "ci")
            throw validation_error("model parameters: 'n' belongs to kind 'ci'");
        return CiModel{number("n")};
    }
    if (j.contains("alpha") || j.contains("beta") || j.contains("gamma"))
    {
        if (j.size() != 3 + extra)
            throw validation_error(
                "model parameters: an ABG model takes exactly {\"alpha\", \"beta\", \"gamma\"}");
        if (extra && j["kind"].get<std::string>() != "abg")
            throw validation_error("model parameters: alpha/beta/gamma belong to kind 'abg'");
        return AbgModel{number("alpha"), number("beta"), number("gamma")};
    }
    throw validation_error(
        "model parameters: expected {\"n\": ...} or {\"alpha\", \"beta\", \"gamma\"}");
}

} // namespace plkit
