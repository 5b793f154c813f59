// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

// Surrogate flow-pattern database.
//
// Points are drawn log-uniformly in superficial velocity, uniformly over a
// fixed set of inclinations, and over two pipe diameters with air-water
// properties tied to each test loop. Labels come from a piecewise flow map
// over (log10 vsl, log10 vsg, angle, diameter). Class quotas follow the
// reference mix and are filled by rejection sampling, so every label is
// still the map's verdict. Afterwards 3% of all samples, taken from a thin
// band around region boundaries, are flipped to the neighbouring class.

#include "fpsvm/dataset.hpp"

#include "fpsvm/error.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fpsvm {

namespace {

constexpr double kVslMin = 0.01;
constexpr double kVslMax = 6.0;
constexpr double kVsgMin = 0.05;
constexpr double kVsgMax = 40.0;

constexpr double kSmallPipe = 0.0254;
constexpr double kLargePipe = 0.0508;

constexpr std::array<double, 19> kAngles{-90, -80, -70, -60, -50, -40, -30, -20, -10, 0,
                                         10,  20,  30,  40,  50,  60,  70,  80,  90};

// Reference class mix, indexed by FlowPattern (DB, SS, SW, A, I, B).
constexpr std::array<double, kPatternCount> kMix{492, 113, 686, 833, 2312, 104};

constexpr std::size_t kMinPerClass = 10;
constexpr double kFlipFraction = 0.03;
// Half-width of the boundary band, in decades of superficial velocity.
constexpr double kBandHalfWidth = 0.03;

struct Fluids {
    double visc_l;
    double visc_g;
    double dens_l;
    double dens_g;
    double surface_tension;
};

// Air-water at each loop's operating temperature and pressure.
constexpr Fluids kSmallLoop{1.002e-3, 1.81e-5, 998.2, 1.20, 0.0728};
constexpr Fluids kLargeLoop{0.890e-3, 1.85e-5, 997.0, 2.35, 0.0720};

FlowPattern region_log(double u, double v, double angle, double diameter)
{
    if (u > 0.2) {
        return FlowPattern::DB;
    }
    if (v > 1.0) {
        return FlowPattern::A;
    }
    if (angle >= 60.0 && diameter > 0.04 && v < std::log10(0.3 + 0.3 * std::pow(10.0, u))) {
        return FlowPattern::B;
    }
    if (angle <= 0.0 && u < -1.0 + 0.6 * (-angle) / 90.0) {
        return v > -0.4 ? FlowPattern::SW : FlowPattern::SS;
    }
    return FlowPattern::I;
}

std::array<std::size_t, kPatternCount> quotas(std::size_t n)
{
    // kMinPerClass each, then the remainder apportioned by largest remainder.
    std::array<std::size_t, kPatternCount> q{};
    q.fill(kMinPerClass);
    const std::size_t rest = n - kMinPerClass * kPatternCount;
    const double total = std::accumulate(kMix.begin(), kMix.end(), 0.0);
    std::array<double, kPatternCount> remainder{};
    std::size_t given = 0;
    for (std::size_t c = 0; c < kPatternCount; ++c) {
        const double share = static_cast<double>(rest) * kMix[c] / total;
        const auto whole = static_cast<std::size_t>(std::floor(share));
        q[c] += whole;
        given += whole;
        remainder[c] = share - static_cast<double>(whole);
    }
    std::array<std::size_t, kPatternCount> order{};
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; given < rest; ++k, ++given) {
        ++q[order[k % kPatternCount]];
    }
    return q;
}

struct Draw {
    double u;
    double v;
    double angle;
    double diameter;
};

Draw draw_point(detail::Engine& engine)
{
    Draw d{};
    d.u = detail::uniform(engine, std::log10(kVslMin), std::log10(kVslMax));
    d.v = detail::uniform(engine, std::log10(kVsgMin), std::log10(kVsgMax));
    d.angle = kAngles[detail::uniform_index(engine, kAngles.size())];
    d.diameter = detail::uniform_index(engine, 2) == 0 ? kSmallPipe : kLargePipe;
    return d;
}

FlowSample make_sample(const Draw& d, FlowPattern label)
{
    const Fluids& f = d.diameter == kSmallPipe ? kSmallLoop : kLargeLoop;
    FlowSample s;
    s.vsl = std::pow(10.0, d.u);
    s.vsg = std::pow(10.0, d.v);
    s.visc_l = f.visc_l;
    s.visc_g = f.visc_g;
    s.dens_l = f.dens_l;
    s.dens_g = f.dens_g;
    s.surface_tension = f.surface_tension;
    s.angle = d.angle;
    s.diameter = d.diameter;
    s.label = label;
    return s;
}

// Distinct classes found a band half-width away along each velocity axis.
std::vector<FlowPattern> neighbour_classes(const Draw& d, FlowPattern own)
{
    constexpr std::array<std::array<double, 2>, 4> steps{{
        {kBandHalfWidth, 0.0}, {-kBandHalfWidth, 0.0}, {0.0, kBandHalfWidth}, {0.0, -kBandHalfWidth}}};
    std::vector<FlowPattern> out;
    for (const auto& [du, dv] : steps) {
        const auto other = region_log(d.u + du, d.v + dv, d.angle, d.diameter);
        if (other != own && std::find(out.begin(), out.end(), other) == out.end()) {
            out.push_back(other);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

FlowPattern synth_region(double vsl, double vsg, double angle_deg, double diameter)
{
    return region_log(std::log10(vsl), std::log10(vsg), angle_deg, diameter);
}

Dataset synth_generate(std::uint64_t seed, std::size_t n)
{
    if (n < kSynthMinSamples) {
        throw Error(ErrorCode::InvalidArgument, "synthetic dataset needs at least " +
                                                    std::to_string(kSynthMinSamples) + " samples, got " +
                                                    std::to_string(n));
    }
    detail::Engine engine(seed);
    const auto quota = quotas(n);

    std::vector<Draw> draws;
    std::vector<FlowPattern> labels;
    draws.reserve(n);
    labels.reserve(n);
    for (std::size_t c = 0; c < kPatternCount; ++c) {
        const auto target = kAllPatterns[c];
        for (std::size_t got = 0; got < quota[c];) {
            const auto d = draw_point(engine);
            if (region_log(d.u, d.v, d.angle, d.diameter) == target) {
                draws.push_back(d);
                labels.push_back(target);
                ++got;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    detail::shuffle(std::span<std::size_t>(order), engine);

    std::vector<std::size_t> band;
    for (const auto i : order) {
        if (!neighbour_classes(draws[i], labels[i]).empty()) {
            band.push_back(i);
        }
    }
    detail::shuffle(std::span<std::size_t>(band), engine);
    const auto flips = std::min(band.size(), static_cast<std::size_t>(std::llround(kFlipFraction * static_cast<double>(n))));
    for (std::size_t k = 0; k < flips; ++k) {
        const auto i = band[k];
        const auto options = neighbour_classes(draws[i], labels[i]);
        labels[i] = options[detail::uniform_index(engine, options.size())];
    }

    std::vector<FlowSample> samples;
    samples.reserve(n);
    for (const auto i : order) {
        samples.push_back(make_sample(draws[i], labels[i]));
    }
    return Dataset(std::move(samples), "synth:seed=" + std::to_string(seed) + ",n=" + std::to_string(n));
}

} // namespace fpsvm
