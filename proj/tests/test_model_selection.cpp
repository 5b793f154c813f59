// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/dataset.hpp"
#include "fpsvm/error.hpp"
#include "fpsvm/model_selection.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace fpsvm;

namespace {

const Dataset& small_data()
{
    static const Dataset data = synth_generate(41, 400);
    return data;
}

GridCell cell(double c, double gamma, double mean)
{
    GridCell g;
    g.c = c;
    g.gamma = gamma;
    g.mean_accuracy = mean;
    return g;
}

std::size_t line_count(const std::string& text)
{
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

} // namespace

TEST_SUITE("model_selection")
{
    TEST_CASE("selection takes the best mean, then smaller C, then smaller gamma")
    {
        CHECK(select_cell({cell(1, 1, 0.5), cell(1, 10, 0.9), cell(10, 1, 0.7)}) == 1);
        CHECK(select_cell({cell(10, 1, 0.9), cell(1, 10, 0.9)}) == 1);
        CHECK(select_cell({cell(1, 10, 0.9), cell(1, 1, 0.9)}) == 1);
        CHECK(select_cell({cell(1, 1, 0.9), cell(1, 10, 0.9)}) == 0);
        CHECK_THROWS_AS((void)select_cell({}), Error);
    }

    TEST_CASE("grid validation")
    {
        GridSpec g;
        g.validate();
        g.c_values = {};
        CHECK_THROWS_AS(g.validate(), Error);
        g = GridSpec{};
        g.gamma_values = {1.0, 1.0};
        CHECK_THROWS_AS(g.validate(), Error);
        g = GridSpec{};
        g.c_values = {-1.0};
        CHECK_THROWS_AS(g.validate(), Error);
        g = GridSpec{};
        g.folds = 1;
        CHECK_THROWS_AS(g.validate(), Error);
    }

    TEST_CASE("cross validation scores every fold")
    {
        TrainConfig cfg;
        cfg.c = 100.0;
        cfg.kernel = KernelParams(1.0);
        const auto acc = cross_validate(small_data(), LabelScheme(SchemeId::Test3), cfg, 4, 3);
        REQUIRE(acc.size() == 4);
        for (const double a : acc) {
            CHECK(a > 0.7);
            CHECK(a <= 1.0);
        }
        CHECK(cross_validate(small_data(), LabelScheme(SchemeId::Test3), cfg, 4, 3, 3) == acc);
    }

    TEST_CASE("single-cell grid selects that cell")
    {
        GridSpec g;
        g.c_values = {10.0};
        g.gamma_values = {1.0};
        const auto r = grid_search(small_data(), LabelScheme(SchemeId::Test1), g);
        REQUIRE(r.cells.size() == 1);
        CHECK(r.selected == 0);
        CHECK(r.best().c == 10.0);
        CHECK(r.best().fold_accuracy.size() == 5);
    }

    TEST_CASE("grid csv layout and determinism")
    {
        GridSpec g;
        g.c_values = {1.0, 100.0};
        g.gamma_values = {0.1, 1.0, 10.0};
        g.folds = 3;
        const auto a = grid_search(small_data(), LabelScheme(SchemeId::Test2), g, 1);
        const auto b = grid_search(small_data(), LabelScheme(SchemeId::Test2), g, 4);
        const auto csv = grid_csv(a);
        CHECK(csv == grid_csv(b));
        CHECK(line_count(csv) == 1 + 6 * 3 + 6);
        CHECK(csv.rfind("c,gamma,fold,accuracy\n", 0) == 0);

        // Cells are C-major and the selected one has the top mean.
        CHECK(a.cells[1].c == 1.0);
        CHECK(a.cells[1].gamma == 1.0);
        CHECK(a.cells[3].c == 100.0);
        for (const auto& c : a.cells) {
            CHECK(c.mean_accuracy <= a.best().mean_accuracy);
        }
    }

    TEST_CASE("separable data scores at least 0.99 on every fold")
    {
        const auto data = fixture::separable(19, 3000);
        TrainConfig cfg;
        cfg.c = 1000.0;
        cfg.kernel = KernelParams(1.0);
        for (const auto id : {SchemeId::Test1, SchemeId::Test3}) {
            const auto acc = cross_validate(data, LabelScheme(id), cfg, 5, 7);
            for (const double a : acc) {
                CHECK(a >= 0.99);
            }
        }
    }

    TEST_CASE("non-converging cells score zero and are flagged")
    {
        GridSpec g;
        g.c_values = {1000.0};
        g.gamma_values = {1.0};
        g.folds = 2;
        g.kkt_tolerance = 1e-300;
        const auto r = grid_search(small_data(), LabelScheme(SchemeId::Test3), g);
        CHECK(r.cells[0].failed);
        CHECK(r.cells[0].mean_accuracy == 0.0);
        CHECK_FALSE(r.cells[0].failures.empty());
        CHECK(grid_csv(r).find(",mean*,") != std::string::npos);
    }

    TEST_CASE("folds need enough samples per class")
    {
        GridSpec g;
        g.c_values = {1.0};
        g.gamma_values = {1.0};
        g.folds = 200;
        CHECK_THROWS_AS((void)grid_search(small_data(), LabelScheme(SchemeId::Test1), g), Error);
    }
}
