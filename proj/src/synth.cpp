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

#include "plkit/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "json.hpp"

#include "plkit/numfmt.hpp"

namespace plkit
{

double SeededRng::uniform01()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::normal(double sigma)
{
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log1p(-u1)); // ln(1 - u1), u1 < 1
    return sigma * r * std::cos(2.0 * std::numbers::pi * u2);
}

namespace
{

void validate_spec(const GeneratorSpec &spec)
{
    if (!(spec.sf_sigma >= 0.0) || !std::isfinite(spec.sf_sigma))
        throw validation_error("generator spec: sf_sigma must be finite and >= 0");
    if (spec.frequencies.empty())
        throw validation_error("generator spec: frequencies must be non-empty");
    for (double f : spec.frequencies)
        if (!std::isfinite(f) || f <= 0.0)
            throw validation_error("generator spec: frequencies must be finite and > 0");
    if (!std::isfinite(spec.d_lo) || !std::isfinite(spec.d_hi) || spec.d_lo <= 0.0 ||
        spec.d_lo >= spec.d_hi)
        throw validation_error("generator spec: distance_range must satisfy 0 < d_lo < d_hi");
    if (spec.count < 1)
        throw validation_error("generator spec: count must be >= 1");
    if (spec.environment.empty())
        throw validation_error("generator spec: environment label must be non-empty");
}

} // namespace

std::vector<Sample> generate(const GeneratorSpec &spec)
{
    validate_spec(spec);

    SeededRng rng(spec.seed);
    std::vector<Sample> samples;
    samples.reserve(spec.frequencies.size() * spec.count);

    const double log_lo = std::log(spec.d_lo);
    const double log_hi = std::log(spec.d_hi);

    // Draw order is part of the contract: frequencies in listed order, and
    // per sample the distance uniform before the shadow-fading normal.
    for (double f : spec.frequencies)
    {
        for (std::size_t i = 0; i < spec.count; ++i)
        {
            const double d = std::exp(log_lo + rng.uniform01() * (log_hi - log_lo));
            const double noise = rng.normal(spec.sf_sigma);
            Sample s;
            s.frequency_ghz = f;
            s.distance_m = d;
            s.path_loss_db = path_loss(spec.truth, f, d) + noise;
            s.environment = spec.environment;
            s.tx_height_class = spec.tx_height_class;
            s.link_state = LinkState::nlos;
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

namespace
{

using nlohmann::ordered_json;

ordered_json truth_to_json(const AnyModel &truth)
{
    ordered_json j;
    if (const auto *ci = std::get_if<CiModel>(&truth))
    {
        j["kind"] = "ci";
        j["n"] = ci->ple;
    }
    else
    {
        const auto &abg = std::get<AbgModel>(truth);
        j["kind"] = "abg";
        j["alpha"] = abg.alpha;
        j["beta"] = abg.beta;
        j["gamma"] = abg.gamma;
    }
    return j;
}

double require_number(const nlohmann::json &j, const std::string &key)
{
    if (!j.contains(key) || !j[key].is_number())
        throw validation_error("generator spec: missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

AnyModel truth_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw validation_error("generator spec: truth must be an object with a 'kind' field");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "ci")
    {
        if (j.size() != 2)
            throw validation_error("generator spec: ci truth takes exactly the fields kind, n");
        return CiModel{require_number(j, "n")};
    }
    if (kind == "abg")
    {
        if (j.size() != 4)
            throw validation_error(
                "generator spec: abg truth takes exactly the fields kind, alpha, beta, gamma");
        return AbgModel{require_number(j, "alpha"), require_number(j, "beta"),
                        require_number(j, "gamma")};
    }
    throw validation_error("generator spec: truth kind must be 'ci' or 'abg', got '" + kind + "'");
}

} // namespace

std::string generator_spec_to_json(const GeneratorSpec &spec)
{
    ordered_json j;
    j["truth"] = truth_to_json(spec.truth);
    j["sf_sigma"] = spec.sf_sigma;
    j["frequencies"] = spec.frequencies;
    j["distance_range"] = {spec.d_lo, spec.d_hi};
    j["count"] = spec.count;
    j["seed"] = spec.seed;
    j["environment"] = spec.environment;
    j["tx_height_class"] = to_string(spec.tx_height_class);
    return j.dump(2) + "\n";
}

GeneratorSpec parse_generator_spec(const std::string &json_text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw validation_error(std::string("generator spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw validation_error("generator spec: document must be a JSON object");

    static const char *expected[] = {"truth",  "sf_sigma", "frequencies",    "distance_range",
                                     "count",  "seed",     "environment",    "tx_height_class"};
    for (const auto &[key, value] : j.items())
    {
        bool known = false;
        for (const char *name : expected)
            known = known || key == name;
        if (!known)
            throw validation_error("generator spec: unknown field '" + key + "'");
    }
    for (const char *name : expected)
        if (!j.contains(name))
            throw validation_error("generator spec: missing field '" + std::string(name) + "'");

    GeneratorSpec spec;
    spec.truth = truth_from_json(j["truth"]);
    spec.sf_sigma = require_number(j, "sf_sigma");
    if (!j["frequencies"].is_array())
        throw validation_error("generator spec: frequencies must be an array of GHz values");
    spec.frequencies = j["frequencies"].get<std::vector<double>>();
    if (!j["distance_range"].is_array() || j["distance_range"].size() != 2)
        throw validation_error("generator spec: distance_range must be [d_lo, d_hi]");
    spec.d_lo = j["distance_range"][0].get<double>();
    spec.d_hi = j["distance_range"][1].get<double>();
    if (!j["count"].is_number_unsigned())
        throw validation_error("generator spec: count must be a non-negative integer");
    spec.count = j["count"].get<std::size_t>();
    if (!j["seed"].is_number_unsigned())
        throw validation_error("generator spec: seed must be a non-negative integer");
    spec.seed = j["seed"].get<std::uint64_t>();
    if (!j["environment"].is_string())
        throw validation_error("generator spec: environment must be a string");
    spec.environment = j["environment"].get<std::string>();
    if (!j["tx_height_class"].is_string())
        throw validation_error("generator spec: tx_height_class must be 'low' or 'high'");
    spec.tx_height_class = tx_height_class_from_string(j["tx_height_class"].get<std::string>());

    validate_spec(spec);
    return spec;
}

GeneratorSpec aalborg_like()
{
    GeneratorSpec spec;
    spec.truth = CiModel{2.67};
    spec.sf_sigma = 8.9;
    spec.frequencies = {2.0, 10.0, 18.0, 28.0};
    spec.d_lo = 10.0;
    spec.d_hi = 1200.0;
    spec.count = 2500;
    spec.seed = 1001;
    spec.environment = "aalborg";
    spec.tx_height_class = TxHeightClass::low;
    return spec;
}

GeneratorSpec madrid_like()
{
    GeneratorSpec spec;
    spec.truth = AbgModel{2.62, 34.90, 1.90};
    spec.sf_sigma = 8.6;
    spec.frequencies = {2.0, 5.6, 10.25, 28.5, 39.3, 73.5};
    spec.d_lo = 10.0;
    spec.d_hi = 1200.0;
    spec.count = 2000;
    spec.seed = 2002;
    spec.environment = "madrid";
    spec.tx_height_class = TxHeightClass::high;
    return spec;
}

namespace
{

std::vector<double> axis_points(const GridAxis &axis, const char *name)
{
    if (!(axis.step > 0.0) || !std::isfinite(axis.step))
        throw validation_error(std::string("grid_fit: ") + name + " step must be finite and > 0");
    if (!(axis.lo < axis.hi))
        throw validation_error(std::string("grid_fit: ") + name + " box must satisfy lo < hi");
    // lo + k*step for every k with lo + k*step <= hi (slack for rounding)
    const auto count = static_cast<std::size_t>((axis.hi - axis.lo) / axis.step + 1e-6) + 1;
    std::vector<double> points(count);
    for (std::size_t k = 0; k < count; ++k)
        points[k] = axis.lo + static_cast<double>(k) * axis.step;
    return points;
}

[[noreturn]] void throw_edge_hit(const char *name)
{
    throw grid_edge_error(std::string("grid_fit: argmin lies on the ") + name +
                          " box edge; widen that axis and rerun");
}

} // namespace

GridFitResult grid_fit(std::span<const Sample> samples, ModelKind kind, const GridSpec &grid)
{
    if (samples.empty())
        throw validation_error("grid_fit: empty sample set");

    const std::size_t n = samples.size();
    std::vector<double> x(n), z(n), pl(n), anchor(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        x[i] = 10.0 * std::log10(samples[i].distance_m);
        z[i] = 10.0 * std::log10(samples[i].frequency_ghz);
        pl[i] = samples[i].path_loss_db;
        anchor[i] = fspl_1m(samples[i].frequency_ghz);
    }

    if (kind == ModelKind::ci)
    {
        if (grid.axes.size() != 1)
            throw validation_error("grid_fit: ci grid takes exactly one axis (n)");
        const auto ns = axis_points(grid.axes[0], "n");

        double best = std::numeric_limits<double>::infinity();
        std::size_t best_k = 0;
        for (std::size_t k = 0; k < ns.size(); ++k)
        {
            double sum_r2 = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double r = pl[i] - anchor[i] - ns[k] * x[i];
                sum_r2 += r * r;
            }
            if (sum_r2 < best)
            {
                best = sum_r2;
                best_k = k;
            }
        }
        if (best_k == 0 || best_k + 1 == ns.size())
            throw_edge_hit("n");
        return {{ns[best_k]}, std::sqrt(best / static_cast<double>(n))};
    }

    if (grid.axes.size() != 3)
        throw validation_error("grid_fit: abg grid takes exactly three axes (alpha, beta, gamma)");
    const auto alphas = axis_points(grid.axes[0], "alpha");
    const auto betas = axis_points(grid.axes[1], "beta");
    const auto gammas = axis_points(grid.axes[2], "gamma");

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0, best_g = 0;
    // Ascending scan with strict improvement keeps the lexicographically
    // smallest tuple on ties.
    for (std::size_t a = 0; a < alphas.size(); ++a)
        for (std::size_t b = 0; b < betas.size(); ++b)
            for (std::size_t g = 0; g < gammas.size(); ++g)
            {
                double sum_r2 = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                {
                    const double r = pl[i] - alphas[a] * x[i] - betas[b] - gammas[g] * z[i];
                    sum_r2 += r * r;
                }
                if (sum_r2 < best)
                {
                    best = sum_r2;
                    best_a = a;
                    best_b = b;
                    best_g = g;
                }
            }
    if (best_a == 0 || best_a + 1 == alphas.size())
        throw_edge_hit("alpha");
    if (best_b == 0 || best_b + 1 == betas.size())
        throw_edge_hit("beta");
    if (best_g == 0 || best_g + 1 == gammas.size())
        throw_edge_hit("gamma");
    return {{alphas[best_a], betas[best_b], gammas[best_g]},
            std::sqrt(best / static_cast<double>(n))};
}

} // namespace plkit
