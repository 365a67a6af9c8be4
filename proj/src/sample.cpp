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

#include "plkit/sample.hpp"

#include <cmath>

namespace plkit
{

std::string to_string(TxHeightClass h)
{
    return h == TxHeightClass::low ? "low" : "high";
}

std::string to_string(LinkState s)
{
    return s == LinkState::los ? "LOS" : "NLOS";
}

TxHeightClass tx_height_class_from_string(std::string_view text)
{
    if (text == "low")
        return TxHeightClass::low;
    if (text == "high")
        return TxHeightClass::high;
    throw validation_error("tx_height_class must be 'low' or 'high', got '" + std::string(text) + "'");
}

LinkState link_state_from_string(std::string_view text)
{
    if (text == "LOS")
        return LinkState::los;
    if (text == "NLOS")
        return LinkState::nlos;
    throw validation_error("link_state must be 'LOS' or 'NLOS', got '" + std::string(text) + "'");
}

void validate(const Sample &s)
{
    if (!std::isfinite(s.frequency_ghz) || s.frequency_ghz <= 0.0)
        throw validation_error("frequency_ghz must be finite and > 0");
    if (!std::isfinite(s.distance_m) || s.distance_m <= 0.0)
        throw validation_error("distance_m must be finite and > 0");
    if (!std::isfinite(s.path_loss_db))
        throw validation_error("path_loss_db must be finite");
    if (s.environment.empty())
        throw validation_error("environment label must be non-empty");
}

} // namespace plkit
