// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include "fpsvm/dataset.hpp"
#include "fpsvm/kernel.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fpsvm {

struct TrainConfig {
    double c = 1.0;
    KernelParams kernel{1.0};
    /// Stop once the maximal violating pair gap falls to this value.
    double kkt_tolerance = 1e-3;
    /// Iterations allowed without a new minimum of the KKT violation; 0 means 10 * n.
    std::size_t max_passes = 0;
    std::size_t dense_kernel_cap = kDefaultDenseKernelCap;

    /// Throws Error(InvalidArgument) unless c > 0 and kkt_tolerance > 0.
    void validate() const;
};

/// Soft-margin binary classifier: f(x) = sum_k coef_k K(sv_k, x) + bias.
/// Positive decision values select positive_class.
struct BinarySvmModel {
    FeatureMatrix support_vectors;
    std::vector<double> coefficients;  // alpha_k * y_k, nonzero
    double bias = 0.0;
    TrainConfig config;
    std::string positive_class;
    std::string negative_class;
};

/// Everything the solver knows at exit, for inspection and tests.
struct BinaryTrainResult {
    BinarySvmModel model;
    std::vector<double> alpha;  // one per training row, in [0, C]
    double dual_objective = 0.0;
    double max_violation = 0.0;
    std::size_t iterations = 0;
    /// Smallest dual-objective increase over all accepted pair updates.
    double min_step_gain = 0.0;
};

/// SMO on the C-SVC dual with maximal-violating-pair selection.
///
/// labels must be +1/-1 with both signs present. Throws ConvergenceError
/// when max_passes iterations pass without improving the KKT violation.
[[nodiscard]] BinaryTrainResult solve_binary(const FeatureMatrix& features, std::span<const int> labels,
                                             const TrainConfig& config);

[[nodiscard]] BinarySvmModel train_binary(const FeatureMatrix& features, std::span<const int> labels,
                                          const TrainConfig& config, std::string positive_class = "+1",
                                          std::string negative_class = "-1");

[[nodiscard]] double decision_value(const BinarySvmModel& model, std::span<const double> x) noexcept;

} // namespace fpsvm
