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

#include <cmath>
#include <random>

#include "doctest.h"

#include "plkit/estimation.hpp"
#include "plkit/models.hpp"
#include "test_support.hpp"

using namespace plkit;
using test::make_sample;

namespace
{

// The two-sample fixture: f = 1 GHz, excess-over-anchor a = [20, 50] at
// b = 10 log10(d) = [10, 20]. Closed form gives n = 1200/500 = 2.4 with
// residuals [-4, +2].
std::vector<Sample> ci_fixture()
{
    return {make_sample(1.0, 10.0, fspl_1m(1.0) + 20.0),
            make_sample(1.0, 100.0, fspl_1m(1.0) + 50.0)};
}

} // namespace

TEST_CASE("fit_ci hand fixtures")
{
    SUBCASE("interpolating fixture: a = [30, 60] gives n = 3 exactly")
    {
        const std::vector<Sample> samples = {make_sample(1.0, 10.0, fspl_1m(1.0) + 30.0),
                                             make_sample(1.0, 100.0, fspl_1m(1.0) + 60.0)};
        const FitResult fit = fit_ci(samples);
        CHECK(std::get<CiModel>(fit.model).ple == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(fit.stats.sf_std < 1e-9);
        CHECK(fit.sample_count == 2);
        CHECK(fit.stats.count == 2);
    }

    SUBCASE("overdetermined fixture: n = 2.4, sf_std = sqrt(10)")
    {
        const FitResult fit = fit_ci(ci_fixture());
        CHECK(std::get<CiModel>(fit.model).ple == doctest::Approx(2.4).epsilon(1e-12));
        CHECK(fit.stats.sf_std == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
        CHECK(fit.stats.mean_error == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(fit.stats.max_abs_error == doctest::Approx(4.0).epsilon(1e-9));
    }

    SUBCASE("single sample away from 1 m is an exact fit")
    {
        const std::vector<Sample> one = {make_sample(2.0, 400.0, 120.0)};
        const FitResult fit = fit_ci(one);
        CHECK(fit.stats.sf_std < 1e-9);
        CHECK(fit.sample_count == 1);
    }
}

TEST_CASE("fit_ci error paths")
{
    CHECK_THROWS_AS(fit_ci(std::vector<Sample>{}), validation_error);
    // All distances at the 1 m reference: the log-distance column is zero.
    const std::vector<Sample> degenerate = {make_sample(1.0, 1.0, 40.0),
                                            make_sample(2.0, 1.0, 45.0)};
    CHECK_THROWS_AS(fit_ci(degenerate), degenerate_fit_error);
}

TEST_CASE("noiseless generation is recovered exactly")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 10; ++k)
    {
        const CiModel ci_truth{0.5 + 4.0 * unit(rng)};
        const AbgModel abg_truth{1.0 + 3.0 * unit(rng), 10.0 + 60.0 * unit(rng),
                                 1.0 + 2.0 * unit(rng)};
        std::vector<Sample> ci_data;
        std::vector<Sample> abg_data;
        for (double f : {2.0, 10.0, 28.0})
            for (double d : {7.0, 33.0, 150.0, 890.0})
            {
                ci_data.push_back(make_sample(f, d, ci_path_loss(ci_truth, f, d)));
                abg_data.push_back(make_sample(f, d, abg_path_loss(abg_truth, f, d)));
            }

        const FitResult ci_fit = fit_ci(ci_data);
        CHECK(std::get<CiModel>(ci_fit.model).ple ==
              doctest::Approx(ci_truth.ple).epsilon(1e-12));
        CHECK(ci_fit.stats.sf_std < 1e-9);

        const FitResult abg_fit = fit_abg(abg_data);
        const auto &m = std::get<AbgModel>(abg_fit.model);
        CHECK(m.alpha == doctest::Approx(abg_truth.alpha).epsilon(1e-9));
        CHECK(m.beta == doctest::Approx(abg_truth.beta).epsilon(1e-9));
        CHECK(m.gamma == doctest::Approx(abg_truth.gamma).epsilon(1e-9));
        CHECK(abg_fit.stats.sf_std < 1e-9);
    }
}

TEST_CASE("fit_abg degenerate designs name the collinear column")
{
    const auto sample_at = [](double f, double d) { return make_sample(f, d, 100.0); };

    SUBCASE("fewer than 3 samples")
    {
        const std::vector<Sample> two = {sample_at(2, 10), sample_at(10, 20)};
        CHECK_THROWS_AS(fit_abg(two), degenerate_fit_error);
        CHECK_THROWS_AS(fit_abg(std::vector<Sample>{}), validation_error);
    }
    SUBCASE("single frequency")
    {
        const std::vector<Sample> data = {sample_at(10, 5), sample_at(10, 50), sample_at(10, 500)};
        CHECK_THROWS_WITH_AS(fit_abg(data),
                             "fit_abg: frequency column is constant (single frequency across "
                             "all samples)",
                             degenerate_fit_error);
    }
    SUBCASE("single distance")
    {
        const std::vector<Sample> data = {sample_at(2, 50), sample_at(10, 50), sample_at(28, 50)};
        CHECK_THROWS_WITH_AS(fit_abg(data),
                             "fit_abg: distance column is constant (single distance across all "
                             "samples)",
                             degenerate_fit_error);
    }
    SUBCASE("affine dependence between log-distance and log-frequency")
    {
        // d = f for every sample: x = z exactly, rank 2 despite two distinct
        // values in each column.
        const std::vector<Sample> data = {sample_at(2, 2), sample_at(10, 10), sample_at(28, 28),
                                          sample_at(50, 50)};
        CHECK_THROWS_AS(fit_abg(data), degenerate_fit_error);
    }
}

TEST_CASE("evaluate hand values")
{
    const std::vector<Sample> data = ci_fixture();

    SUBCASE("exact model: zero residuals")
    {
        const CiModel exact{3.0};
        const std::vector<Sample> noiseless = {
            make_sample(1.0, 10.0, ci_path_loss(exact, 1.0, 10.0)),
            make_sample(1.0, 100.0, ci_path_loss(exact, 1.0, 100.0))};
        const ResidualStats stats = evaluate(exact, noiseless);
        CHECK(stats.sf_std == 0.0);
        CHECK(stats.mean_error == 0.0);
        CHECK(stats.max_abs_error == 0.0);
    }

    SUBCASE("residuals [-4, +2]")
    {
        const ResidualStats stats = evaluate(CiModel{2.4}, data);
        CHECK(stats.sf_std == doctest::Approx(3.16228).epsilon(1e-6));
        CHECK(stats.mean_error == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(stats.count == 2);
    }

    SUBCASE("residuals [+3, -3]: RMS without mean subtraction")
    {
        const CiModel m{2.0};
        const std::vector<Sample> sym = {
            make_sample(1.0, 10.0, ci_path_loss(m, 1.0, 10.0) + 3.0),
            make_sample(1.0, 100.0, ci_path_loss(m, 1.0, 100.0) - 3.0)};
        const ResidualStats stats = evaluate(m, sym);
        CHECK(stats.sf_std == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(stats.mean_error == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(stats.max_abs_error == doctest::Approx(3.0).epsilon(1e-12));
    }

    SUBCASE("empty input")
    {
        CHECK_THROWS_AS(evaluate(CiModel{2.0}, std::vector<Sample>{}), validation_error);
    }
}

TEST_CASE("nested-model dominance over randomized datasets")
{
    for (std::uint32_t seed = 0; seed < 50; ++seed)
    {
        const auto ds = test::random_dataset(seed);
        const double ci_sf = fit_ci(ds.samples).stats.sf_std;
        const double abg_sf = fit_abg(ds.samples).stats.sf_std;
        CHECK(abg_sf <= ci_sf + 1e-9);
    }
}

TEST_CASE("normal-equation optimality: perturbing any parameter never helps")
{
    const double eps = 1e-3;
    for (std::uint32_t seed = 100; seed < 120; ++seed)
    {
        const auto ds = test::random_dataset(seed);

        const FitResult ci = fit_ci(ds.samples);
        const double n_hat = std::get<CiModel>(ci.model).ple;
        for (double delta : {-eps, eps})
            CHECK(evaluate(CiModel{n_hat + delta}, ds.samples).sf_std >=
                  ci.stats.sf_std - 1e-12);

        const FitResult abg = fit_abg(ds.samples);
        const AbgModel m = std::get<AbgModel>(abg.model);
        for (double delta : {-eps, eps})
        {
            CHECK(evaluate(AbgModel{m.alpha + delta, m.beta, m.gamma}, ds.samples).sf_std >=
                  abg.stats.sf_std - 1e-12);
            CHECK(evaluate(AbgModel{m.alpha, m.beta + delta, m.gamma}, ds.samples).sf_std >=
                  abg.stats.sf_std - 1e-12);
            CHECK(evaluate(AbgModel{m.alpha, m.beta, m.gamma + delta}, ds.samples).sf_std >=
                  abg.stats.sf_std - 1e-12);
        }
    }
}

TEST_CASE("first-order conditions on the measurement set")
{
    for (std::uint32_t seed = 200; seed < 220; ++seed)
    {
        const auto ds = test::random_dataset(seed, 300);

        // ABG: the intercept column absorbs the mean.
        const FitResult abg = fit_abg(ds.samples);
        CHECK(std::abs(abg.stats.mean_error) < 1e-9);

        // CI: the single normal equation sum(b * (a - n b)) = 0.
        const FitResult ci = fit_ci(ds.samples);
        const double n_hat = std::get<CiModel>(ci.model).ple;
        double gradient = 0.0;
        for (const Sample &s : ds.samples)
        {
            const double a = s.path_loss_db - fspl_1m(s.frequency_ghz);
            const double b = 10.0 * std::log10(s.distance_m);
            gradient += b * (a - n_hat * b);
        }
        CHECK(std::abs(gradient) / std::max(1.0, static_cast<double>(ds.samples.size())) < 1e-9);
    }
}

TEST_CASE("adding a constant offset shifts beta exactly and n by the design ratio")
{
    for (std::uint32_t seed = 300; seed < 310; ++seed)
    {
        auto ds = test::random_dataset(seed, 80);
        const double k = 7.25;

        const FitResult abg_before = fit_abg(ds.samples);
        const FitResult ci_before = fit_ci(ds.samples);

        double sum_b = 0.0;
        double sum_b2 = 0.0;
        for (const Sample &s : ds.samples)
        {
            const double b = 10.0 * std::log10(s.distance_m);
            sum_b += b;
            sum_b2 += b * b;
        }

        for (Sample &s : ds.samples)
            s.path_loss_db += k;

        const AbgModel before = std::get<AbgModel>(abg_before.model);
        const AbgModel after = std::get<AbgModel>(fit_abg(ds.samples).model);
        CHECK(after.alpha == doctest::Approx(before.alpha).epsilon(1e-9));
        CHECK(after.beta - before.beta == doctest::Approx(k).epsilon(1e-9));
        CHECK(after.gamma == doctest::Approx(before.gamma).epsilon(1e-9));

        const double n_before = std::get<CiModel>(ci_before.model).ple;
        const double n_after = std::get<CiModel>(fit_ci(ds.samples).model).ple;
        CHECK(n_after - n_before == doctest::Approx(k * sum_b / sum_b2).epsilon(1e-9));
    }
}

TEST_CASE("RMS dominates the absolute mean")
{
    for (std::uint32_t seed = 400; seed < 430; ++seed)
    {
        const auto ds = test::random_dataset(seed, 50);
        const ResidualStats stats = evaluate(AnyModel{CiModel{2.0}}, ds.samples);
        CHECK(stats.sf_std >= std::abs(stats.mean_error) - 1e-12);
        CHECK(stats.max_abs_error >= stats.sf_std - 1e-12);
    }
}
