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

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "plkit/models.hpp"
#include "plkit/sample.hpp"

namespace plkit
{

// Deterministic random stream for dataset synthesis. The engine is
// std::mt19937_64, whose algorithm is fixed by the standard, and the
// real-valued transforms are explicit:
//   uniform01: (engine() >> 11) * 2^-53, in [0, 1)
//   normal:    Box-Muller, r = sqrt(-2 ln(1 - u1)), phi = 2 pi u2,
//              two uniforms consumed per draw
// so identical seeds reproduce the same stream everywhere. Implementation-
// defined std::*_distribution adapters are deliberately not used.
class SeededRng
{
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01();
    double normal(double sigma);

  private:
    std::mt19937_64 engine_;
};

// Ground-truth recipe for one synthetic sample set: `count` samples per
// frequency, distances log-uniform in [d_lo, d_hi], PL = truth(f, d) plus
// i.i.d. zero-mean Gaussian shadow fading of sf_sigma dB.
struct GeneratorSpec
{
    AnyModel truth = CiModel{2.0};
    double sf_sigma = 0.0;          // dB, >= 0
    std::vector<double> frequencies; // GHz
    double d_lo = 1.0;              // m, 0 < d_lo < d_hi
    double d_hi = 1000.0;
    std::size_t count = 1;          // samples per frequency
    std::uint64_t seed = 0;
    std::string environment = "synthetic";
    TxHeightClass tx_height_class = TxHeightClass::low;

    bool operator==(const GeneratorSpec &) const = default;
};

// Pure function of the spec (including the seed); all samples come out NLOS.
std::vector<Sample> generate(const GeneratorSpec &spec);

// JSON round-trip for GeneratorSpec. Field names match the struct; the
// distance range serializes as "distance_range": [d_lo, d_hi]. Unknown or
// missing fields raise validation_error naming the field.
GeneratorSpec parse_generator_spec(const std::string &json_text);
std::string generator_spec_to_json(const GeneratorSpec &spec);

// Preset recipes standing in for the unavailable campaign data. Parameters
// are synthetic: distinct truths per environment so cross-environment
// experiments show nonzero transfer error.
GeneratorSpec aalborg_like();
GeneratorSpec madrid_like();

struct GridAxis
{
    double lo = 0.0;
    double hi = 0.0; // lo < hi
    double step = 0.0; // > 0
};

// One axis for a CI grid (n), three for an ABG grid (alpha, beta, gamma).
struct GridSpec
{
    std::vector<GridAxis> axes;
};

struct GridFitResult
{
    std::vector<double> params;
    double sf_std = 0.0;
};

// Brute-force fitting oracle: evaluates the RMS residual at every grid point
// by direct summation and returns the argmin, ties broken by the
// lexicographically smallest parameter tuple. An argmin on a box edge raises
// grid_edge_error instructing the caller to widen that axis. Independent of
// the closed-form path in estimation by construction.
GridFitResult grid_fit(std::span<const Sample> samples, ModelKind kind, const GridSpec &grid);

} // namespace plkit
