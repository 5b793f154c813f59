// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/kernel.hpp"

#include "fpsvm/error.hpp"

#include <algorithm>
#include <cmath>

namespace fpsvm {

KernelParams::KernelParams(double gamma)
    : gamma_(gamma)
{
    if (!std::isfinite(gamma) || !(gamma > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "kernel gamma must be positive and finite");
    }
}

double rbf_unchecked(const KernelParams& params, std::span<const double> x, std::span<const double> y) noexcept
{
    return std::exp(-params.gamma() * squared_distance(x, y));
}

double rbf(const KernelParams& params, std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw Error(ErrorCode::InvalidArgument, "kernel arguments differ in length");
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(x.begin(), x.end(), finite) || !std::all_of(y.begin(), y.end(), finite)) {
        throw Error(ErrorCode::InvalidArgument, "kernel arguments must be finite");
    }
    return rbf_unchecked(params, x, y);
}

KernelMatrix gram(const KernelParams& params, const FeatureMatrix& features)
{
    const std::size_t n = features.rows();
    KernelMatrix k(n);
    for (std::size_t i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        const auto xi = features.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = rbf_unchecked(params, xi, features.row(j));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

KernelCache::KernelCache(const KernelParams& params, const FeatureMatrix& features, std::size_t dense_cap,
                         std::size_t lru_rows)
    : params_(params)
    , features_(features)
    , dense_(features.rows() <= dense_cap)
{
    if (dense_) {
        full_ = gram(params_, features_);
    } else {
        capacity_ = std::max<std::size_t>(2, lru_rows == 0 ? dense_cap : lru_rows);
    }
}

void KernelCache::compute_row(std::size_t i, std::span<double> out) const
{
    const auto xi = features_.row(i);
    for (std::size_t j = 0; j < features_.rows(); ++j) {
        out[j] = j == i ? 1.0 : rbf_unchecked(params_, xi, features_.row(j));
    }
}

std::span<const double> KernelCache::row(std::size_t i)
{
    if (dense_) {
        return full_.row(i);
    }
    if (auto it = rows_.find(i); it != rows_.end()) {
        recency_.splice(recency_.begin(), recency_, it->second.position);
        return it->second.values;
    }
    ++misses_;
    std::vector<double> values;
    if (rows_.size() >= capacity_) {
        const auto victim = recency_.back();
        recency_.pop_back();
        auto node = rows_.extract(victim);
        values = std::move(node.mapped().values);
    }
    values.resize(features_.rows());
    compute_row(i, values);
    recency_.push_front(i);
    auto& slot = rows_[i];
    slot.values = std::move(values);
    slot.position = recency_.begin();
    return slot.values;
}

} // namespace fpsvm
