// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpsvm {

// ---------------------------------------------------------------------------
// Flow patterns
// ---------------------------------------------------------------------------

/// Base flow-pattern classes, in the order used by every report.
enum class FlowPattern : std::uint8_t { DB, SS, SW, A, I, B };

inline constexpr std::size_t kPatternCount = 6;

inline constexpr std::array<FlowPattern, kPatternCount> kAllPatterns{
    FlowPattern::DB, FlowPattern::SS, FlowPattern::SW,
    FlowPattern::A,  FlowPattern::I,  FlowPattern::B,
};

[[nodiscard]] std::string_view to_string(FlowPattern pattern) noexcept;
[[nodiscard]] std::optional<FlowPattern> parse_flow_pattern(std::string_view token) noexcept;

// ---------------------------------------------------------------------------
// Samples
// ---------------------------------------------------------------------------

inline constexpr std::size_t kFeatureCount = 9;

using FeatureVector = std::array<double, kFeatureCount>;

/// Column names of the CSV schema, feature columns first, label last.
inline constexpr std::array<std::string_view, kFeatureCount + 1> kCsvColumns{
    "vsl_m_s",      "vsg_m_s",      "visc_l_pa_s",         "visc_g_pa_s", "dens_l_kg_m3",
    "dens_g_kg_m3", "surface_tension_n_m", "angle_deg",    "diameter_m",  "label",
};

/// One observation. All quantities are SI except the inclination angle (degrees).
struct FlowSample {
    double vsl = 0.0;
    double vsg = 0.0;
    double visc_l = 0.0;
    double visc_g = 0.0;
    double dens_l = 0.0;
    double dens_g = 0.0;
    double surface_tension = 0.0;
    double angle = 0.0;
    double diameter = 0.0;
    FlowPattern label = FlowPattern::I;

    [[nodiscard]] FeatureVector features() const noexcept
    {
        return {vsl, vsg, visc_l, visc_g, dens_l, dens_g, surface_tension, angle, diameter};
    }

    [[nodiscard]] static FlowSample from_features(const FeatureVector& f, FlowPattern label) noexcept
    {
        return {f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7], f[8], label};
    }

    friend bool operator==(const FlowSample&, const FlowSample&) = default;
};

/// Reason the sample violates the physical invariants, or nullopt when valid.
[[nodiscard]] std::optional<std::string> check_sample(const FlowSample& sample);

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

/// Immutable, validated collection of samples.
///
/// Construction enforces: non-empty, every sample physically valid, and at
/// least two distinct labels.
class Dataset {
public:
    Dataset(std::vector<FlowSample> samples, std::string source);

    [[nodiscard]] std::span<const FlowSample> samples() const noexcept { return samples_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] const FlowSample& operator[](std::size_t i) const { return samples_[i]; }
    [[nodiscard]] const std::string& source() const noexcept { return source_; }

    /// Number of samples per base pattern, indexed by FlowPattern value.
    [[nodiscard]] std::array<std::size_t, kPatternCount> pattern_counts() const noexcept;

    /// Subset in the given index order; the result must itself be a valid Dataset.
    [[nodiscard]] Dataset subset(std::span<const std::size_t> indices, std::string source) const;

private:
    std::vector<FlowSample> samples_;
    std::string source_;
};

[[nodiscard]] Dataset load_csv(const std::filesystem::path& path);
[[nodiscard]] Dataset parse_csv(std::string_view text, std::string source);
[[nodiscard]] std::string to_csv(std::span<const FlowSample> samples);
void save_csv(const Dataset& data, const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly the same double.
[[nodiscard]] std::string format_double(double value);

// ---------------------------------------------------------------------------
// Label schemes
// ---------------------------------------------------------------------------

enum class SchemeId : std::uint8_t { Test1, Test2, Test3 };

/// Total, surjective map from base patterns onto a scheme's class list.
class LabelScheme {
public:
    explicit LabelScheme(SchemeId id) noexcept : id_(id) {}

    [[nodiscard]] SchemeId id() const noexcept { return id_; }
    [[nodiscard]] std::string_view name() const noexcept;

    /// Class names in report order.
    [[nodiscard]] std::span<const std::string_view> classes() const noexcept;
    [[nodiscard]] std::size_t class_count() const noexcept { return classes().size(); }

    [[nodiscard]] std::size_t class_of(FlowPattern pattern) const noexcept;
    [[nodiscard]] std::string_view class_name(FlowPattern pattern) const noexcept
    {
        return classes()[class_of(pattern)];
    }

    /// Index of a class name within classes(), or nullopt.
    [[nodiscard]] std::optional<std::size_t> find_class(std::string_view name) const noexcept;

    [[nodiscard]] static std::optional<LabelScheme> parse(std::string_view text) noexcept;

    friend bool operator==(const LabelScheme&, const LabelScheme&) = default;

private:
    SchemeId id_;
};

/// Scheme class index for every sample, in dataset order.
[[nodiscard]] std::vector<std::size_t> relabel(std::span<const FlowSample> samples,
                                               const LabelScheme& scheme);

/// Scheme class names for every sample, in dataset order.
[[nodiscard]] std::vector<std::string> relabel_names(std::span<const FlowSample> samples,
                                                     const LabelScheme& scheme);

// ---------------------------------------------------------------------------
// Standardization
// ---------------------------------------------------------------------------

/// Row-major dense matrix of standardized features.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows)
        , cols_(cols)
        , values_(rows * cols, 0.0)
    {
    }
    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept
    {
        return {values_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<double> row(std::size_t i) noexcept
    {
        return {values_.data() + i * cols_, cols_};
    }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept
    {
        return values_[i * cols_ + j];
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Copy of the selected rows, in the given order.
    [[nodiscard]] FeatureMatrix select_rows(std::span<const std::size_t> indices) const;

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Per-feature population mean and deviation. Deviations are always > 0.
class StandardScaler {
public:
    StandardScaler(FeatureVector means, FeatureVector deviations);

    [[nodiscard]] static StandardScaler fit(std::span<const FlowSample> train);

    [[nodiscard]] const FeatureVector& means() const noexcept { return means_; }
    [[nodiscard]] const FeatureVector& deviations() const noexcept { return deviations_; }

    [[nodiscard]] FeatureVector transform(const FeatureVector& x) const noexcept;
    [[nodiscard]] FeatureVector inverse(const FeatureVector& z) const noexcept;

    [[nodiscard]] FeatureMatrix apply(std::span<const FlowSample> data) const;

    friend bool operator==(const StandardScaler&, const StandardScaler&) = default;

private:
    FeatureVector means_;
    FeatureVector deviations_;
};

[[nodiscard]] inline StandardScaler fit_scaler(const Dataset& train)
{
    return StandardScaler::fit(train.samples());
}

[[nodiscard]] inline FeatureMatrix apply_scaler(const StandardScaler& scaler, const Dataset& data)
{
    return scaler.apply(data.samples());
}

// ---------------------------------------------------------------------------
// Splitting and synthesis
// ---------------------------------------------------------------------------

/// Stratified on base patterns: per class, round(count * test_fraction) samples
/// clamped to [1, count - 1] go to the test side. Both sides keep input order.
[[nodiscard]] std::pair<Dataset, Dataset> stratified_split(const Dataset& data, double test_fraction,
                                                           std::uint64_t seed);

/// Index form of stratified_split over arbitrary class ids.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};
[[nodiscard]] SplitIndices stratified_split_indices(std::span<const std::size_t> classes,
                                                    std::size_t class_count, double test_fraction,
                                                    std::uint64_t seed);

/// Fold id in [0, folds) for every element; each class is dealt round-robin
/// over the folds after a seeded shuffle.
[[nodiscard]] std::vector<std::size_t> stratified_folds(std::span<const std::size_t> classes,
                                                        std::size_t class_count, std::size_t folds,
                                                        std::uint64_t seed,
                                                        std::span<const std::string_view> class_names = {});

inline constexpr std::size_t kSynthMinSamples = 60;

/// Deterministic surrogate flow-pattern database. See synth.cpp for the map.
[[nodiscard]] Dataset synth_generate(std::uint64_t seed, std::size_t n);

/// Noise-free class of a point of the synthetic flow map.
[[nodiscard]] FlowPattern synth_region(double vsl, double vsg, double angle_deg, double diameter);

} // namespace fpsvm
