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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plkit/sample.hpp"

namespace plkit
{

// Dataset files are UTF-8 CSV: comma separator, '.' decimal point, '\n'
// line endings, and exactly this header.
inline constexpr std::string_view dataset_header =
    "environment,tx_height_class,frequency_ghz,distance_m,path_loss_db,link_state";

// Returns samples in file order. Every row is validated against the Sample
// invariants; errors name the 1-based file line (the header is line 1) and
// the offending field. A file with a valid header but no data rows is an
// error.
std::vector<Sample> parse_dataset(std::istream &in);
std::vector<Sample> parse_dataset(const std::string &text);
std::vector<Sample> parse_dataset_file(const std::string &path);

// Numbers are written with full round-trip precision, so
// parse_dataset(dataset_to_csv(s)) == s exactly.
std::string dataset_to_csv(std::span<const Sample> samples);
void write_dataset(std::ostream &out, std::span<const Sample> samples);
void write_dataset_file(const std::string &path, std::span<const Sample> samples);

// FNV-1a 64-bit digest, hex-encoded; used to stamp figure tables with the
// identity of their input file.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

} // namespace plkit
