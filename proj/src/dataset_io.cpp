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

#include "plkit/dataset_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "plkit/numfmt.hpp"

namespace plkit
{

namespace
{

constexpr std::array<std::string_view, 6> column_names = {
    "environment", "tx_height_class", "frequency_ghz", "distance_m", "path_loss_db", "link_state"};

[[noreturn]] void row_error(std::size_t line, std::string_view field, const std::string &detail)
{
    throw validation_error("dataset line " + std::to_string(line) + ", field '" +
                           std::string(field) + "': " + detail);
}

double parse_decimal(std::string_view text, std::size_t line, std::string_view field)
{
    double value = 0.0;
    const char *begin = text.data();
    const char *end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        row_error(line, field, "not a decimal number: '" + std::string(text) + "'");
    if (!std::isfinite(value))
        row_error(line, field, "must be finite");
    return value;
}

std::vector<std::string_view> split_fields(std::string_view row)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true)
    {
        const std::size_t comma = row.find(',', start);
        if (comma == std::string_view::npos)
        {
            fields.push_back(row.substr(start));
            return fields;
        }
        fields.push_back(row.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view strip_cr(std::string_view line)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    return line;
}

} // namespace

std::vector<Sample> parse_dataset(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line))
        throw validation_error("dataset: empty input, expected header '" +
                               std::string(dataset_header) + "'");
    if (strip_cr(line) != dataset_header)
        throw validation_error("dataset: malformed header: expected '" +
                               std::string(dataset_header) + "', found '" + line + "'");

    std::vector<Sample> samples;
    std::size_t line_no = 1; // header
    while (std::getline(in, line))
    {
        ++line_no;
        const std::string_view row = strip_cr(line);
        if (row.empty())
            continue;

        const auto fields = split_fields(row);
        if (fields.size() != column_names.size())
            throw validation_error("dataset line " + std::to_string(line_no) + ": expected " +
                                   std::to_string(column_names.size()) + " fields, found " +
                                   std::to_string(fields.size()));

        Sample s;
        if (fields[0].empty())
            row_error(line_no, column_names[0], "label must be non-empty");
        s.environment = std::string(fields[0]);
        try
        {
            s.tx_height_class = tx_height_class_from_string(fields[1]);
        }
        catch (const validation_error &e)
        {
            row_error(line_no, column_names[1], e.what());
        }
        s.frequency_ghz = parse_decimal(fields[2], line_no, column_names[2]);
        if (s.frequency_ghz <= 0.0)
            row_error(line_no, column_names[2], "must be > 0");
        s.distance_m = parse_decimal(fields[3], line_no, column_names[3]);
        if (s.distance_m <= 0.0)
            row_error(line_no, column_names[3], "must be > 0");
        s.path_loss_db = parse_decimal(fields[4], line_no, column_names[4]);
        try
        {
            s.link_state = link_state_from_string(fields[5]);
        }
        catch (const validation_error &e)
        {
            row_error(line_no, column_names[5], e.what());
        }
        samples.push_back(std::move(s));
    }
    if (samples.empty())
        throw validation_error("dataset: no data rows after the header");
    return samples;
}

std::vector<Sample> parse_dataset(const std::string &text)
{
    std::istringstream in(text);
    return parse_dataset(in);
}

std::vector<Sample> parse_dataset_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw validation_error("cannot open dataset file '" + path + "'");
    return parse_dataset(in);
}

std::string dataset_to_csv(std::span<const Sample> samples)
{
    std::string out(dataset_header);
    out += '\n';
    for (const Sample &s : samples)
    {
        if (s.environment.find(',') != std::string::npos ||
            s.environment.find('\n') != std::string::npos)
            throw validation_error("dataset: environment label '" + s.environment +
                                   "' contains a separator character");
        out += s.environment;
        out += ',' + to_string(s.tx_height_class);
        out += ',' + fmt_double(s.frequency_ghz);
        out += ',' + fmt_double(s.distance_m);
        out += ',' + fmt_double(s.path_loss_db);
        out += ',' + to_string(s.link_state);
        out += '\n';
    }
    return out;
}

void write_dataset(std::ostream &out, std::span<const Sample> samples)
{
    out << dataset_to_csv(samples);
}

void write_dataset_file(const std::string &path, std::span<const Sample> samples)
{
    write_file(path, dataset_to_csv(samples));
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes)
    {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string digest_hex(std::string_view bytes)
{
    static const char digits[] = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i)
    {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw validation_error("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw validation_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw validation_error("failed writing '" + path + "'");
}

} // namespace plkit
