// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fpsvm {

/// counts(r, c) = samples of true class r predicted as class c.
class ConfusionMatrix {
public:
    ConfusionMatrix(std::vector<std::string> classes, std::vector<std::size_t> counts);
    explicit ConfusionMatrix(std::vector<std::string> classes);

    [[nodiscard]] const std::vector<std::string>& classes() const noexcept { return classes_; }
    [[nodiscard]] std::size_t size() const noexcept { return classes_.size(); }
    [[nodiscard]] std::size_t operator()(std::size_t r, std::size_t c) const noexcept
    {
        return counts_[r * classes_.size() + c];
    }
    [[nodiscard]] std::size_t& operator()(std::size_t r, std::size_t c) noexcept
    {
        return counts_[r * classes_.size() + c];
    }

    [[nodiscard]] std::size_t row_sum(std::size_t r) const noexcept;
    [[nodiscard]] std::size_t column_sum(std::size_t c) const noexcept;
    [[nodiscard]] std::size_t trace() const noexcept;
    [[nodiscard]] std::size_t total() const noexcept;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::vector<std::string> classes_;
    std::vector<std::size_t> counts_;
};

[[nodiscard]] ConfusionMatrix confusion(std::span<const std::string> truth, std::span<const std::string> predicted,
                                        std::vector<std::string> classes);

struct ClassMetrics {
    std::string name;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
};

struct AveragedMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Per-class precision/recall/F1 with support-weighted ("Avg/Total") and macro averages.
struct ClassReport {
    std::vector<ClassMetrics> classes;
    AveragedMetrics weighted;
    AveragedMetrics macro;
    std::size_t total_support = 0;
    double accuracy = 0.0;
    /// One entry per zero denominator met (class never predicted or never present).
    std::vector<std::string> warnings;
};

/// Throws Error(InvalidArgument) for an all-zero matrix.
[[nodiscard]] ClassReport report(const ConfusionMatrix& cm);

/// Fraction of exact matches. Throws on length mismatch or empty input.
[[nodiscard]] double accuracy(std::span<const std::string> truth, std::span<const std::string> predicted);

/// Two-decimal table in the usual precision/recall/F1/support layout.
[[nodiscard]] std::string render_text(const ClassReport& report, std::string_view title = "Flow Pattern");
/// class,precision,recall,f1,support (full precision), plus an avg/total row.
[[nodiscard]] std::string render_csv(const ClassReport& report);

[[nodiscard]] std::string render_confusion_text(const ConfusionMatrix& cm, std::string_view title = "Flow Pattern");
/// Header row and first column carry the class names.
[[nodiscard]] std::string render_confusion_csv(const ConfusionMatrix& cm);
/// Inverse of render_confusion_csv.
[[nodiscard]] ConfusionMatrix parse_confusion_csv(std::string_view text);

/// Formats a ratio the way the tables print it, e.g. 0.9268 -> "0.93".
[[nodiscard]] std::string format_ratio(double value);

} // namespace fpsvm
