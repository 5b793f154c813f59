// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include "fpsvm/dataset.hpp"
#include "fpsvm/svm_binary.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fpsvm {

struct GridSpec {
    std::vector<double> c_values{0.1, 1, 10, 100, 1000, 10000};
    std::vector<double> gamma_values{0.01, 0.1, 1, 10, 100};
    std::size_t folds = 5;
    std::uint64_t seed = 0;
    double kkt_tolerance = 1e-3;

    /// Lists non-empty, strictly increasing and positive; folds >= 2.
    void validate() const;
};

struct GridCell {
    double c = 0.0;
    double gamma = 0.0;
    std::vector<double> fold_accuracy;
    double mean_accuracy = 0.0;
    /// Some fold failed to converge; that fold scored 0.
    bool failed = false;
    std::vector<std::string> failures;
};

struct GridResult {
    /// C-major: cell (ci, gi) is at ci * gamma_values.size() + gi.
    std::vector<GridCell> cells;
    std::size_t selected = 0;
    std::string selection_rule;

    [[nodiscard]] const GridCell& best() const { return cells.at(selected); }
};

/// Accuracy per stratified fold (stratified on scheme classes). Each fold is
/// scored by an OvO model trained on the remaining folds.
[[nodiscard]] std::vector<double> cross_validate(const Dataset& train, const LabelScheme& scheme,
                                                 const TrainConfig& config, std::size_t folds, std::uint64_t seed,
                                                 unsigned jobs = 1);

/// Every (C, gamma) cell of the grid; selects the highest mean CV accuracy,
/// ties to smaller C, then smaller gamma. Cells run on up to `jobs` threads.
[[nodiscard]] GridResult grid_search(const Dataset& train, const LabelScheme& scheme, const GridSpec& grid,
                                     unsigned jobs = 1);

/// Index of the best cell under the selection rule. Exposed for testing.
[[nodiscard]] std::size_t select_cell(const std::vector<GridCell>& cells);

/// c,gamma,fold,accuracy with one row per fold and a "mean" row per cell.
[[nodiscard]] std::string grid_csv(const GridResult& result);

} // namespace fpsvm
