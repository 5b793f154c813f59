// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include "fpsvm/dataset.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fixture {

// Synthetic samples relabeled by the region map, keeping only those whose
// label holds a given number of decades away along both velocity axes.
// The result is separable with a margin.
inline fpsvm::Dataset separable(std::uint64_t seed, std::size_t n, double gap_decades = 0.1)
{
    const auto raw = fpsvm::synth_generate(seed, n);
    const double f = std::pow(10.0, gap_decades);
    const std::pair<double, double> shifts[] = {{f, 1.0}, {1.0 / f, 1.0}, {1.0, f}, {1.0, 1.0 / f}};
    std::vector<fpsvm::FlowSample> kept;
    for (auto s : raw.samples()) {
        const auto own = fpsvm::synth_region(s.vsl, s.vsg, s.angle, s.diameter);
        bool edge = false;
        for (const auto& [a, b] : shifts) {
            edge = edge || fpsvm::synth_region(s.vsl * a, s.vsg * b, s.angle, s.diameter) != own;
        }
        if (!edge) {
            s.label = own;
            kept.push_back(s);
        }
    }
    return fpsvm::Dataset(std::move(kept), "separable:seed=" + std::to_string(seed));
}

} // namespace fixture
