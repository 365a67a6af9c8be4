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
#include <string_view>

#include "plkit/errors.hpp"

namespace plkit
{

enum class TxHeightClass
{
    low,
    high
};

enum class LinkState
{
    los,
    nlos
};

std::string to_string(TxHeightClass h);
std::string to_string(LinkState s);
TxHeightClass tx_height_class_from_string(std::string_view text);
LinkState link_state_from_string(std::string_view text);

// One path-loss observation. Frequencies are carried in GHz so the 1 GHz
// reference term of the ABG model and the band labels stay exact; the
// conversion from Hz happens once, at ingestion.
//
// Whether distance_m is a 2-D ground distance or a 3-D TX-RX distance is up
// to the dataset producer; the toolkit treats it as opaque.
struct Sample
{
    double frequency_ghz = 0.0; // > 0
    double distance_m = 0.0;    // > 0
    double path_loss_db = 0.0;  // finite
    std::string environment;    // non-empty label, e.g. "aalborg"
    TxHeightClass tx_height_class = TxHeightClass::low;
    LinkState link_state = LinkState::nlos;

    bool operator==(const Sample &) const = default;
};

// Throws validation_error naming the offending field. Called at ingestion;
// everything downstream may assume a valid sample.
void validate(const Sample &s);

} // namespace plkit
