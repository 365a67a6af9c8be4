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

#include <string>

#include "plkit/estimation.hpp"
#include "plkit/models.hpp"

namespace plkit
{

// JSON renderings used by the CLI; numbers carry full precision.
std::string model_to_json(const AnyModel &model);
std::string residual_stats_to_json(const ResidualStats &stats);
std::string fit_result_to_json(const FitResult &result);

// Inline parameter object for `eval --params`: {"n": ...} selects the CI
// model, {"alpha": ..., "beta": ..., "gamma": ...} the ABG model.
AnyModel model_from_json(const std::string &json_text);

} // namespace plkit
