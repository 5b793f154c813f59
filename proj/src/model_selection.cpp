// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/model_selection.hpp"

#include "fpsvm/error.hpp"
#include "fpsvm/metrics.hpp"
#include "fpsvm/multiclass.hpp"
#include "parallel.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace fpsvm {

namespace {

void check_axis(const std::vector<double>& values, const char* name)
{
    if (values.empty()) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " grid is empty");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || !(values[i] > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, std::string(name) + " grid values must be positive");
        }
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, std::string(name) + " grid must be strictly increasing");
        }
    }
}

struct FoldPlan {
    std::vector<std::size_t> fold_of;
    std::size_t folds;
};

FoldPlan plan_folds(const Dataset& train, const LabelScheme& scheme, std::size_t folds, std::uint64_t seed)
{
    const auto labels = relabel(train.samples(), scheme);
    return {stratified_folds(labels, scheme.class_count(), folds, seed, scheme.classes()), folds};
}

double score_fold(const Dataset& train, const LabelScheme& scheme, const TrainConfig& config, const FoldPlan& plan,
                  std::size_t fold)
{
    std::vector<std::size_t> fit_rows;
    std::vector<std::size_t> held_rows;
    for (std::size_t i = 0; i < train.size(); ++i) {
        (plan.fold_of[i] == fold ? held_rows : fit_rows).push_back(i);
    }
    const auto fit = train.subset(fit_rows, train.source() + ":cv-fit");
    const auto model = train_ovo(fit, scheme, config);
    std::size_t hits = 0;
    for (const auto i : held_rows) {
        hits += predict(model, train[i]) == scheme.class_name(train[i].label) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(held_rows.size());
}

} // namespace

void GridSpec::validate() const
{
    check_axis(c_values, "C");
    check_axis(gamma_values, "gamma");
    if (folds < 2) {
        throw Error(ErrorCode::InvalidArgument, "cross-validation needs at least 2 folds");
    }
}

std::vector<double> cross_validate(const Dataset& train, const LabelScheme& scheme, const TrainConfig& config,
                                   std::size_t folds, std::uint64_t seed, unsigned jobs)
{
    config.validate();
    const auto plan = plan_folds(train, scheme, folds, seed);
    std::vector<double> acc(folds, 0.0);
    detail::parallel_for(folds, jobs, [&](std::size_t f) { acc[f] = score_fold(train, scheme, config, plan, f); });
    return acc;
}

std::size_t select_cell(const std::vector<GridCell>& cells)
{
    if (cells.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no grid cells to select from");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < cells.size(); ++k) {
        const auto& a = cells[k];
        const auto& b = cells[best];
        if (a.mean_accuracy > b.mean_accuracy ||
            (a.mean_accuracy == b.mean_accuracy && (a.c < b.c || (a.c == b.c && a.gamma < b.gamma)))) {
            best = k;
        }
    }
    return best;
}

GridResult grid_search(const Dataset& train, const LabelScheme& scheme, const GridSpec& grid, unsigned jobs)
{
    grid.validate();
    const auto plan = plan_folds(train, scheme, grid.folds, grid.seed);

    GridResult result;
    for (const double c : grid.c_values) {
        for (const double g : grid.gamma_values) {
            GridCell cell;
            cell.c = c;
            cell.gamma = g;
            cell.fold_accuracy.assign(grid.folds, 0.0);
            result.cells.push_back(std::move(cell));
        }
    }

    // One task per (cell, fold); each writes only its own slot.
    const std::size_t tasks = result.cells.size() * grid.folds;
    std::vector<std::string> failure(tasks);
    detail::parallel_for(tasks, jobs, [&](std::size_t t) {
        auto& cell = result.cells[t / grid.folds];
        const std::size_t fold = t % grid.folds;
        TrainConfig config;
        config.c = cell.c;
        config.kernel = KernelParams(cell.gamma);
        config.kkt_tolerance = grid.kkt_tolerance;
        try {
            cell.fold_accuracy[fold] = score_fold(train, scheme, config, plan, fold);
        } catch (const ConvergenceError& e) {
            cell.fold_accuracy[fold] = 0.0;
            failure[t] = "fold " + std::to_string(fold) + ": " + e.what();
        }
    });

    for (std::size_t k = 0; k < result.cells.size(); ++k) {
        auto& cell = result.cells[k];
        cell.mean_accuracy = std::accumulate(cell.fold_accuracy.begin(), cell.fold_accuracy.end(), 0.0) /
                             static_cast<double>(grid.folds);
        for (std::size_t f = 0; f < grid.folds; ++f) {
            if (!failure[k * grid.folds + f].empty()) {
                cell.failed = true;
                cell.failures.push_back(failure[k * grid.folds + f]);
            }
        }
    }
    result.selected = select_cell(result.cells);
    result.selection_rule = "max mean " + std::to_string(grid.folds) +
                            "-fold stratified CV accuracy; ties to smaller C, then smaller gamma";
    return result;
}

std::string grid_csv(const GridResult& result)
{
    std::ostringstream out;
    out << "c,gamma,fold,accuracy\n";
    for (const auto& cell : result.cells) {
        const auto prefix = format_double(cell.c) + "," + format_double(cell.gamma) + ",";
        for (std::size_t f = 0; f < cell.fold_accuracy.size(); ++f) {
            out << prefix << f << ',' << format_double(cell.fold_accuracy[f]) << '\n';
        }
    }
    for (const auto& cell : result.cells) {
        out << format_double(cell.c) << ',' << format_double(cell.gamma) << ',' << (cell.failed ? "mean*" : "mean")
            << ',' << format_double(cell.mean_accuracy) << '\n';
    }
    return out.str();
}

} // namespace fpsvm
