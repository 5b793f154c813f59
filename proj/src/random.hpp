// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

// Portable sampling on top of mt19937_64. The standard distributions are
// implementation-defined, so seeded outputs would differ between toolchains.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace fpsvm::detail {

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& engine, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(engine);
}

/// Unbiased integer in [0, bound) by rejection.
inline std::size_t uniform_index(Engine& engine, std::size_t bound)
{
    const std::uint64_t n = bound;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = 0;
    do {
        x = engine();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
}

template <typename T>
void shuffle(std::span<T> items, Engine& engine)
{
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = uniform_index(engine, i);
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace fpsvm::detail
