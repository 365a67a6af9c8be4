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
//
// End-to-end tests of the plkit binary. Every subcommand's output is checked
// against direct library calls; the CLI itself must add nothing numeric.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

#include "plkit/dataset_io.hpp"
#include "plkit/estimation.hpp"
#include "plkit/experiments.hpp"
#include "plkit/numfmt.hpp"
#include "plkit/synth.hpp"
#include "test_support.hpp"

using namespace plkit;

namespace
{

struct CliResult
{
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string &args, bool keep_stderr = false)
{
    const std::string cmd =
        std::string(PLKIT_CLI_PATH) + " " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
        result.out.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// Scratch directory shared by the whole test binary.
std::filesystem::path scratch_dir()
{
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("plkit_cli_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string fixture_dataset_path()
{
    // The two-sample fixture: n = 2.4, sf_std = sqrt(10).
    const std::vector<Sample> samples = {
        test::make_sample(1.0, 10.0, fspl_1m(1.0) + 20.0),
        test::make_sample(1.0, 100.0, fspl_1m(1.0) + 50.0)};
    const auto path = scratch_dir() / "ci_fixture.csv";
    write_dataset_file(path.string(), samples);
    return path.string();
}

std::string preset_dataset_path(const GeneratorSpec &spec, const std::string &name)
{
    const auto path = scratch_dir() / name;
    write_dataset_file(path.string(), generate(spec));
    return path.string();
}

} // namespace

TEST_CASE("fit --model ci reproduces the fixture end to end")
{
    const auto result = run_cli("fit --model ci --input " + fixture_dataset_path());
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    CHECK(j["model"]["kind"] == "ci");
    CHECK(std::abs(j["model"]["n"].get<double>() - 2.4) < 1e-9);
    CHECK(std::abs(j["stats"]["sf_std"].get<double>() - std::sqrt(10.0)) < 1e-9);
    CHECK(j["sample_count"] == 2);
}

TEST_CASE("fit --model abg matches the library fit")
{
    GeneratorSpec spec = aalborg_like();
    spec.count = 200;
    const std::string path = preset_dataset_path(spec, "abg_fit.csv");

    const auto result = run_cli("fit --model abg --input " + path);
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);

    const FitResult direct = fit_abg(parse_dataset_file(path));
    const auto &m = std::get<AbgModel>(direct.model);
    CHECK(j["model"]["alpha"].get<double>() == m.alpha);
    CHECK(j["model"]["beta"].get<double>() == m.beta);
    CHECK(j["model"]["gamma"].get<double>() == m.gamma);
    CHECK(j["stats"]["sf_std"].get<double>() == direct.stats.sf_std);
}

TEST_CASE("eval --params accepts both inline model forms")
{
    const std::string path = fixture_dataset_path();

    const auto ci = run_cli("eval --params '{\"n\": 2.4}' --input " + path);
    REQUIRE(ci.exit_code == 0);
    const auto jci = nlohmann::json::parse(ci.out);
    CHECK(std::abs(jci["sf_std"].get<double>() - std::sqrt(10.0)) < 1e-9);
    CHECK(std::abs(jci["mean_error"].get<double>() - (-1.0)) < 1e-9);

    const auto abg = run_cli(
        "eval --params '{\"alpha\": 2, \"beta\": 32.4478, \"gamma\": 2}' --input " + path);
    REQUIRE(abg.exit_code == 0);
    const auto jabg = nlohmann::json::parse(abg.out);
    const ResidualStats direct =
        evaluate(AbgModel{2.0, 32.4478, 2.0}, parse_dataset_file(path));
    CHECK(jabg["sf_std"].get<double>() == direct.sf_std);

    // malformed inline JSON is a usage error
    CHECK(run_cli("eval --params '{broken' --input " + path).exit_code == 1);
    CHECK(run_cli("eval --params '{\"zeta\": 1}' --input " + path).exit_code == 1);
}

TEST_CASE("filter writes the filtered dataset")
{
    std::vector<Sample> samples = {
        test::make_sample(1.0, 50.0, 132.4),   // excess 99.95: kept
        test::make_sample(1.0, 60.0, 132.4478) // excess 100.0: dropped
    };
    const auto in_path = scratch_dir() / "filter_in.csv";
    const auto out_path = scratch_dir() / "filter_out.csv";
    write_dataset_file(in_path.string(), samples);

    const auto result = run_cli("filter --input " + in_path.string() + " --output " +
                                out_path.string());
    REQUIRE(result.exit_code == 0);
    const auto kept = parse_dataset_file(out_path.string());
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].distance_m == 50.0);
}

TEST_CASE("generate is deterministic byte for byte")
{
    const auto spec_path = scratch_dir() / "spec.json";
    write_file(spec_path.string(), generator_spec_to_json(aalborg_like()));

    const auto a = run_cli("generate --spec " + spec_path.string());
    const auto b = run_cli("generate --spec " + spec_path.string());
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    // and equals the library path
    CHECK(a.out == dataset_to_csv(generate(aalborg_like())));
}

TEST_CASE("sweep-distance emits the grid as the first column")
{
    GeneratorSpec spec = aalborg_like();
    spec.count = 400;
    const std::string path = preset_dataset_path(spec, "sweep_in.csv");

    const auto result = run_cli("sweep-distance --mode near --input " + path);
    REQUIRE(result.exit_code == 0);

    std::vector<std::string> keys;
    std::istringstream lines(result.out);
    std::string line;
    bool past_header = false;
    while (std::getline(lines, line))
    {
        if (line.rfind("# ", 0) == 0)
            continue;
        if (!past_header)
        {
            past_header = true;
            CHECK(line.rfind("sweep_key,", 0) == 0);
            continue;
        }
        keys.push_back(line.substr(0, line.find(',')));
    }
    std::vector<std::string> expected;
    for (double g : default_delta_grid())
        expected.push_back(fmt_double(g));
    CHECK(keys == expected);

    // byte-for-byte: the subcommand is exactly parse + run + stamp + render
    FigureTable direct = run_distance_sweep(parse_dataset_file(path), DistanceSweepOptions{});
    direct.metadata.insert(direct.metadata.begin(),
                           {{"input", path}, {"input_digest", digest_hex(read_file(path))}});
    CHECK(result.out == figure_table_to_csv(direct));
}

TEST_CASE("sweep-distance CSV and JSON agree at 6 significant digits")
{
    GeneratorSpec spec = aalborg_like();
    spec.count = 300;
    const std::string path = preset_dataset_path(spec, "fmt_in.csv");
    const std::string args = "sweep-distance --mode near --grid 0,100,200 --input " + path;

    const auto csv = run_cli(args);
    const auto json = run_cli(args + " --format json");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(json.exit_code == 0);

    const auto doc = nlohmann::json::parse(json.out);
    std::vector<std::string> csv_rows;
    std::istringstream lines(csv.out);
    std::string line;
    while (std::getline(lines, line))
        if (line.rfind("#", 0) != 0 && line.rfind("sweep_key", 0) != 0)
            csv_rows.push_back(line);

    REQUIRE(doc["rows"].size() == csv_rows.size());
    const char *numeric[] = {"ci_sf_std", "abg_sf_std", "ci_n",           "abg_alpha",
                             "abg_beta",  "abg_gamma",  "ci_sf_std_meas", "abg_sf_std_meas"};
    for (std::size_t i = 0; i < csv_rows.size(); ++i)
    {
        for (const char *key : numeric)
        {
            REQUIRE(doc["rows"][i].contains(key));
            const std::string cell = fmt_sig6(doc["rows"][i][key].get<double>());
            CHECK(csv_rows[i].find(cell) != std::string::npos);
        }
    }
}

TEST_CASE("loo-frequency and cross-env run end to end")
{
    std::vector<Sample> mixed;
    GeneratorSpec a = aalborg_like();
    a.count = 250;
    for (Sample &s : generate(a))
        mixed.push_back(std::move(s));
    GeneratorSpec m = madrid_like();
    m.count = 150;
    for (Sample &s : generate(m))
        mixed.push_back(std::move(s));
    const auto path = scratch_dir() / "mixed.csv";
    write_dataset_file(path.string(), mixed);

    const auto loo = run_cli("loo-frequency --input " + path.string() + " --format json");
    REQUIRE(loo.exit_code == 0);
    const auto jloo = nlohmann::json::parse(loo.out);
    CHECK(jloo["rows"].size() == 7); // bands 2,5.6,10,18,28,39.3,73.5

    const auto cross = run_cli("cross-env --measurement-env aalborg --prediction-env madrid "
                               "--input " +
                               path.string() + " --format json --quiet");
    REQUIRE(cross.exit_code == 0);
    const auto jcross = nlohmann::json::parse(cross.out);
    CHECK(jcross["meta"].contains("measurement_ci_sf_std"));
    CHECK(jcross["rows"].size() == 6); // madrid bands, highTX only
    for (const auto &row : jcross["rows"])
        CHECK(row["sweep_key"].get<std::string>().find("madrid_") == 0);
}

TEST_CASE("exit codes follow the table")
{
    const std::string fixture = fixture_dataset_path();

    SUBCASE("usage errors return 1")
    {
        CHECK(run_cli("fit --model ci").exit_code == 1);           // missing --input
        CHECK(run_cli("fit --model nope --input x.csv").exit_code == 1);
        CHECK(run_cli("no-such-subcommand").exit_code == 1);
        CHECK(run_cli("sweep-distance --mode sideways --input x.csv").exit_code == 1);
    }

    SUBCASE("data and validation errors return 2")
    {
        CHECK(run_cli("fit --model ci --input /nonexistent.csv").exit_code == 2);

        const auto bad = scratch_dir() / "bad.csv";
        write_file(bad.string(), std::string(dataset_header) + "\nx,low,2,0,90,NLOS\n");
        const auto result = run_cli("fit --model ci --input " + bad.string(), true);
        CHECK(result.exit_code == 2);
        CHECK(result.out.find("line 2") != std::string::npos);
        CHECK(result.out.find("distance_m") != std::string::npos);

        // LOS rows make the sweep preconditions fail
        auto with_los = parse_dataset_file(fixture);
        with_los[0].link_state = LinkState::los;
        const auto los_path = scratch_dir() / "los.csv";
        write_dataset_file(los_path.string(), with_los);
        CHECK(run_cli("sweep-distance --mode near --input " + los_path.string()).exit_code == 2);
    }

    SUBCASE("degenerate fits return 3")
    {
        // single frequency: ABG rank deficient
        CHECK(run_cli("fit --model abg --input " + fixture).exit_code == 3);

        std::vector<Sample> at_anchor = {test::make_sample(1.0, 1.0, 40.0),
                                         test::make_sample(2.0, 1.0, 44.0)};
        const auto anchor_path = scratch_dir() / "anchor.csv";
        write_dataset_file(anchor_path.string(), at_anchor);
        CHECK(run_cli("fit --model ci --input " + anchor_path.string()).exit_code == 3);
    }

    SUBCASE("help returns 0")
    {
        CHECK(run_cli("--help").exit_code == 0);
        CHECK(run_cli("fit --help").exit_code == 0);
    }
}

TEST_CASE("--quiet suppresses warnings on stderr")
{
    // 3-point dataset: the single-sample measurement set leaves ABG unavailable
    const std::vector<Sample> samples = {test::make_sample(10.0, 50.0, 100.0),
                                         test::make_sample(10.0, 150.0, 110.0),
                                         test::make_sample(10.0, 400.0, 120.0)};
    const auto path = scratch_dir() / "warn.csv";
    write_dataset_file(path.string(), samples);
    const std::string args = "sweep-distance --mode near --grid 0 --input " + path.string() +
                             " --output /dev/null";

    const auto loud = run_cli(args, true);
    REQUIRE(loud.exit_code == 0);
    CHECK(loud.out.find("warning: abg unavailable") != std::string::npos);

    const auto quiet = run_cli(args + " --quiet", true);
    REQUIRE(quiet.exit_code == 0);
    CHECK(quiet.out.empty());
}

TEST_CASE("figure tables carry the input digest")
{
    GeneratorSpec spec = aalborg_like();
    spec.count = 100;
    const std::string path = preset_dataset_path(spec, "digest_in.csv");
    const auto result = run_cli("sweep-distance --mode near --grid 0,50 --input " + path);
    REQUIRE(result.exit_code == 0);
    const std::string expected = digest_hex(read_file(path));
    CHECK(result.out.find("# input_digest=" + expected) != std::string::npos);
}
