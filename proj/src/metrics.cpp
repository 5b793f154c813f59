// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/metrics.hpp"

#include "fpsvm/dataset.hpp"
#include "fpsvm/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace fpsvm {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes, std::vector<std::size_t> counts)
    : classes_(std::move(classes))
    , counts_(std::move(counts))
{
    if (counts_.size() != classes_.size() * classes_.size()) {
        throw Error(ErrorCode::InvalidArgument, "confusion counts do not form a square matrix over the classes");
    }
    auto sorted = classes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::InvalidArgument, "confusion matrix class names must be unique");
    }
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : ConfusionMatrix(classes, std::vector<std::size_t>(classes.size() * classes.size(), 0))
{
}

std::size_t ConfusionMatrix::row_sum(std::size_t r) const noexcept
{
    std::size_t s = 0;
    for (std::size_t c = 0; c < size(); ++c) {
        s += (*this)(r, c);
    }
    return s;
}

std::size_t ConfusionMatrix::column_sum(std::size_t c) const noexcept
{
    std::size_t s = 0;
    for (std::size_t r = 0; r < size(); ++r) {
        s += (*this)(r, c);
    }
    return s;
}

std::size_t ConfusionMatrix::trace() const noexcept
{
    std::size_t s = 0;
    for (std::size_t r = 0; r < size(); ++r) {
        s += (*this)(r, r);
    }
    return s;
}

std::size_t ConfusionMatrix::total() const noexcept
{
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

ConfusionMatrix confusion(std::span<const std::string> truth, std::span<const std::string> predicted,
                          std::vector<std::string> classes)
{
    if (truth.size() != predicted.size()) {
        throw Error(ErrorCode::InvalidArgument, "true and predicted label lists differ in length");
    }
    ConfusionMatrix cm(std::move(classes));
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < cm.size(); ++i) {
        index.emplace(cm.classes()[i], i);
    }
    const auto lookup = [&](const std::string& label, const char* side) {
        const auto it = index.find(label);
        if (it == index.end()) {
            throw Error(ErrorCode::Label, std::string(side) + " label \"" + label + "\" is not in the class list");
        }
        return it->second;
    };
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++cm(lookup(truth[i], "true"), lookup(predicted[i], "predicted"));
    }
    return cm;
}

ClassReport report(const ConfusionMatrix& cm)
{
    const std::size_t total = cm.total();
    if (total == 0) {
        throw Error(ErrorCode::InvalidArgument, "confusion matrix is empty; nothing was scored");
    }
    ClassReport rep;
    rep.total_support = total;
    rep.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
    const auto k = static_cast<double>(cm.size());
    for (std::size_t c = 0; c < cm.size(); ++c) {
        ClassMetrics m;
        m.name = cm.classes()[c];
        m.support = cm.row_sum(c);
        const auto hit = static_cast<double>(cm(c, c));
        const std::size_t predicted = cm.column_sum(c);
        if (predicted > 0) {
            m.precision = hit / static_cast<double>(predicted);
        } else {
            rep.warnings.push_back("precision of " + m.name + " is undefined (never predicted); reported as 0");
        }
        if (m.support > 0) {
            m.recall = hit / static_cast<double>(m.support);
        } else {
            rep.warnings.push_back("recall of " + m.name + " is undefined (no true samples); reported as 0");
        }
        const double denom = m.precision + m.recall;
        m.f1 = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;

        const double w = static_cast<double>(m.support) / static_cast<double>(total);
        rep.weighted.precision += w * m.precision;
        rep.weighted.recall += w * m.recall;
        rep.weighted.f1 += w * m.f1;
        rep.macro.precision += m.precision / k;
        rep.macro.recall += m.recall / k;
        rep.macro.f1 += m.f1 / k;
        rep.classes.push_back(std::move(m));
    }
    return rep;
}

double accuracy(std::span<const std::string> truth, std::span<const std::string> predicted)
{
    if (truth.size() != predicted.size()) {
        throw Error(ErrorCode::InvalidArgument, "true and predicted label lists differ in length");
    }
    if (truth.empty()) {
        throw Error(ErrorCode::InvalidArgument, "accuracy of an empty label list is undefined");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        hits += truth[i] == predicted[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::string format_ratio(double value)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", value);
    return buf.data();
}

std::string render_text(const ClassReport& rep, std::string_view title)
{
    std::size_t width = std::max<std::size_t>(title.size(), 11);
    for (const auto& m : rep.classes) {
        width = std::max(width, m.name.size());
    }
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << title << std::right << std::setw(11) << "Precision"
        << std::setw(9) << "Recall" << std::setw(9) << "F1" << std::setw(10) << "Support" << '\n';
    const auto line = [&](const std::string& name, double p, double r, double f, std::size_t s) {
        out << std::left << std::setw(static_cast<int>(width)) << name << std::right << std::setw(11)
            << format_ratio(p) << std::setw(9) << format_ratio(r) << std::setw(9) << format_ratio(f) << std::setw(10)
            << s << '\n';
    };
    for (const auto& m : rep.classes) {
        line(m.name, m.precision, m.recall, m.f1, m.support);
    }
    line("Avg / Total", rep.weighted.precision, rep.weighted.recall, rep.weighted.f1, rep.total_support);
    out << '\n' << "Accuracy " << format_ratio(rep.accuracy) << " (" << format_double(rep.accuracy) << ")\n";
    for (const auto& w : rep.warnings) {
        out << "warning: " << w << '\n';
    }
    return out.str();
}

std::string render_csv(const ClassReport& rep)
{
    std::ostringstream out;
    out << "class,precision,recall,f1,support\n";
    for (const auto& m : rep.classes) {
        out << m.name << ',' << format_double(m.precision) << ',' << format_double(m.recall) << ','
            << format_double(m.f1) << ',' << m.support << '\n';
    }
    out << "avg/total," << format_double(rep.weighted.precision) << ',' << format_double(rep.weighted.recall) << ','
        << format_double(rep.weighted.f1) << ',' << rep.total_support << '\n';
    return out.str();
}

std::string render_confusion_text(const ConfusionMatrix& cm, std::string_view title)
{
    std::size_t width = title.size();
    std::size_t cell = 6;
    for (const auto& name : cm.classes()) {
        width = std::max(width, name.size());
        cell = std::max(cell, name.size() + 2);
    }
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << title << std::right;
    for (const auto& name : cm.classes()) {
        out << std::setw(static_cast<int>(cell)) << name;
    }
    out << '\n';
    for (std::size_t r = 0; r < cm.size(); ++r) {
        out << std::left << std::setw(static_cast<int>(width)) << cm.classes()[r] << std::right;
        for (std::size_t c = 0; c < cm.size(); ++c) {
            out << std::setw(static_cast<int>(cell)) << cm(r, c);
        }
        out << '\n';
    }
    return out.str();
}

std::string render_confusion_csv(const ConfusionMatrix& cm)
{
    std::ostringstream out;
    out << "true\\predicted";
    for (const auto& name : cm.classes()) {
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t r = 0; r < cm.size(); ++r) {
        out << cm.classes()[r];
        for (std::size_t c = 0; c < cm.size(); ++c) {
            out << ',' << cm(r, c);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string> csv_cells(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        auto cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
            cell.remove_suffix(1);
        }
        while (!cell.empty() && cell.front() == ' ') {
            cell.remove_prefix(1);
        }
        out.emplace_back(cell);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

} // namespace

ConfusionMatrix parse_confusion_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        const auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.find_first_not_of(" \r\t") == std::string_view::npos) {
            continue;
        }
        rows.push_back(csv_cells(line));
    }
    if (rows.size() < 3) {
        throw Error(ErrorCode::Parse, "confusion CSV needs a header row and at least two class rows");
    }
    std::vector<std::string> classes(rows[0].begin() + 1, rows[0].end());
    const std::size_t k = classes.size();
    if (rows.size() != k + 1) {
        throw Error(ErrorCode::Parse, "confusion CSV has " + std::to_string(rows.size() - 1) + " rows for " +
                                          std::to_string(k) + " classes");
    }
    std::vector<std::size_t> counts;
    counts.reserve(k * k);
    for (std::size_t r = 0; r < k; ++r) {
        const auto& row = rows[r + 1];
        if (row.size() != k + 1 || row[0] != classes[r]) {
            throw Error(ErrorCode::Parse, "confusion CSV row " + std::to_string(r + 1) +
                                              " must start with class " + classes[r] + " and have " +
                                              std::to_string(k) + " counts");
        }
        for (std::size_t c = 1; c <= k; ++c) {
            std::size_t v = 0;
            const auto& cell = row[c];
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size()) {
                throw Error(ErrorCode::Parse, "confusion CSV cell \"" + cell + "\" is not a count");
            }
            counts.push_back(v);
        }
    }
    return ConfusionMatrix(std::move(classes), std::move(counts));
}

} // namespace fpsvm
