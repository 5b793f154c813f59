// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include "fpsvm/dataset.hpp"

#include <cstddef>
#include <list>
#include <span>
#include <unordered_map>
#include <vector>

namespace fpsvm {

/// Gaussian RBF parameters: K(x, y) = exp(-gamma * |x - y|^2).
class KernelParams {
public:
    explicit KernelParams(double gamma);

    [[nodiscard]] double gamma() const noexcept { return gamma_; }

    friend bool operator==(const KernelParams&, const KernelParams&) = default;

private:
    double gamma_;
};

/// Squared Euclidean distance as a sum of squared differences.
[[nodiscard]] inline double squared_distance(std::span<const double> x, std::span<const double> y) noexcept
{
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

/// Kernel value without input validation, for inner loops over trusted rows.
[[nodiscard]] double rbf_unchecked(const KernelParams& params, std::span<const double> x,
                                   std::span<const double> y) noexcept;

/// Validated kernel evaluation. Throws on length mismatch or non-finite input.
[[nodiscard]] double rbf(const KernelParams& params, std::span<const double> x, std::span<const double> y);

/// Dense symmetric n x n Gram matrix.
class KernelMatrix {
public:
    KernelMatrix() = default;
    explicit KernelMatrix(std::size_t n)
        : n_(n)
        , values_(n * n, 0.0)
    {
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * n_ + j]; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

[[nodiscard]] KernelMatrix gram(const KernelParams& params, const FeatureMatrix& features);

/// Default largest row count for which the full Gram matrix is materialized.
inline constexpr std::size_t kDefaultDenseKernelCap = 8192;

/// Kernel rows for the solver: the whole Gram matrix when n <= dense_cap,
/// otherwise a least-recently-used cache of computed rows.
///
/// Not thread-safe. Each solve owns its cache.
class KernelCache {
public:
    KernelCache(const KernelParams& params, const FeatureMatrix& features,
                std::size_t dense_cap = kDefaultDenseKernelCap, std::size_t lru_rows = 0);

    [[nodiscard]] std::size_t size() const noexcept { return features_.rows(); }
    [[nodiscard]] bool dense() const noexcept { return dense_; }

    /// Row i of the Gram matrix. In LRU mode the span stays valid until the row
    /// is evicted; the two most recently requested rows are always resident.
    [[nodiscard]] std::span<const double> row(std::size_t i);

    [[nodiscard]] double diagonal(std::size_t) const noexcept { return 1.0; }

    [[nodiscard]] std::size_t misses() const noexcept { return misses_; }

private:
    void compute_row(std::size_t i, std::span<double> out) const;

    KernelParams params_;
    const FeatureMatrix& features_;
    bool dense_;
    KernelMatrix full_;

    std::size_t capacity_ = 0;
    std::list<std::size_t> recency_;
    struct Slot {
        std::vector<double> values;
        std::list<std::size_t>::iterator position;
    };
    std::unordered_map<std::size_t, Slot> rows_;
    std::size_t misses_ = 0;
};

} // namespace fpsvm
