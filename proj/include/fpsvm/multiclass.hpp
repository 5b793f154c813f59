// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include "fpsvm/dataset.hpp"
#include "fpsvm/svm_binary.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fpsvm {

/// One-vs-one ensemble over the classes of a label scheme.
///
/// pairs holds one model per (i, j), i < j, ordered (0,1), (0,2), ..., (k-2,k-1).
/// Class i is the positive side of pair (i, j).
struct OvoModel {
    LabelScheme scheme{SchemeId::Test1};
    std::vector<std::string> classes;
    StandardScaler scaler{FeatureVector{}, FeatureVector{1, 1, 1, 1, 1, 1, 1, 1, 1}};
    double c = 1.0;
    double gamma = 1.0;
    std::vector<BinarySvmModel> pairs;

    [[nodiscard]] std::size_t pair_index(std::size_t i, std::size_t j) const noexcept;

    /// Throws Error(InvalidArgument) if the pair layout or class names are inconsistent.
    void validate() const;
};

/// Votes and summed winning margins per class for one prediction.
struct VoteTally {
    std::vector<std::size_t> votes;
    std::vector<double> margins;
    std::size_t winner = 0;
};

/// Trains one binary model per class pair on the standardized samples of
/// those two classes. Pairs run on up to `jobs` threads; results do not
/// depend on the thread count.
[[nodiscard]] OvoModel train_ovo(const Dataset& train, const LabelScheme& scheme, const TrainConfig& config,
                                 unsigned jobs = 1);

/// Voting on already standardized features.
[[nodiscard]] VoteTally tally_standardized(const OvoModel& model, std::span<const double> z);

[[nodiscard]] VoteTally tally(const OvoModel& model, const FlowSample& sample);

/// Index into model.classes of the predicted class.
[[nodiscard]] std::size_t predict_index(const OvoModel& model, const FlowSample& sample);

[[nodiscard]] std::string predict(const OvoModel& model, const FlowSample& sample);

[[nodiscard]] std::vector<std::string> predict_batch(const OvoModel& model, std::span<const FlowSample> samples);

} // namespace fpsvm
