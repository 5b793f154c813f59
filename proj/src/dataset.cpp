// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/dataset.hpp"

#include "fpsvm/error.hpp"
#include "random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fpsvm {

namespace {

constexpr std::array<std::string_view, kPatternCount> kPatternNames{"DB", "SS", "SW", "A", "I", "B"};

constexpr std::array<std::string_view, 6> kTest1Classes{"DB", "SS", "SW", "A", "I", "B"};
constexpr std::array<std::string_view, 5> kTest2Classes{"DB", "ST", "A", "I", "B"};
constexpr std::array<std::string_view, 3> kTest3Classes{"Dispersed", "Segregated", "Intermittent"};

// Indexed by FlowPattern: DB, SS, SW, A, I, B.
constexpr std::array<std::size_t, kPatternCount> kTest2Map{0, 1, 1, 2, 3, 4};
constexpr std::array<std::size_t, kPatternCount> kTest3Map{0, 1, 1, 1, 2, 0};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) {
            out += ", ";
        }
        out += item;
    }
    return out;
}

void check_header(const std::vector<std::string_view>& header)
{
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    for (const auto column : kCsvColumns) {
        if (std::find(header.begin(), header.end(), column) == header.end()) {
            missing.emplace_back(column);
        }
    }
    for (const auto column : header) {
        if (std::find(kCsvColumns.begin(), kCsvColumns.end(), column) == kCsvColumns.end()) {
            extra.emplace_back(column);
        }
    }
    if (!missing.empty() || !extra.empty()) {
        std::string message = "CSV header does not match the schema;";
        if (!missing.empty()) {
            message += " missing columns: " + join(missing) + ";";
        }
        if (!extra.empty()) {
            message += " unexpected columns: " + join(extra) + ";";
        }
        throw Error(ErrorCode::Schema, message);
    }
    if (header.size() != kCsvColumns.size() ||
        !std::equal(header.begin(), header.end(), kCsvColumns.begin())) {
        throw Error(ErrorCode::Schema, "CSV header columns are out of order or duplicated");
    }
}

std::string row_prefix(std::size_t row, std::size_t line)
{
    return "row " + std::to_string(row) + " (line " + std::to_string(line) + "): ";
}

} // namespace

std::string_view to_string(FlowPattern pattern) noexcept
{
    return kPatternNames[static_cast<std::size_t>(pattern)];
}

std::optional<FlowPattern> parse_flow_pattern(std::string_view token) noexcept
{
    for (std::size_t i = 0; i < kPatternCount; ++i) {
        if (kPatternNames[i] == token) {
            return kAllPatterns[i];
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_sample(const FlowSample& s)
{
    const auto f = s.features();
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        if (!std::isfinite(f[j])) {
            return std::string(kCsvColumns[j]) + " is not finite";
        }
    }
    if (!(s.vsl > 0.0)) return std::string("vsl_m_s must be > 0");
    if (!(s.vsg > 0.0)) return std::string("vsg_m_s must be > 0");
    if (!(s.visc_l > 0.0)) return std::string("visc_l_pa_s must be > 0");
    if (!(s.visc_g > 0.0)) return std::string("visc_g_pa_s must be > 0");
    if (!(s.dens_g > 0.0)) return std::string("dens_g_kg_m3 must be > 0");
    if (!(s.dens_l > s.dens_g)) return std::string("dens_l_kg_m3 must exceed dens_g_kg_m3");
    if (!(s.surface_tension > 0.0)) return std::string("surface_tension_n_m must be > 0");
    if (!(s.diameter > 0.0)) return std::string("diameter_m must be > 0");
    if (s.angle < -90.0 || s.angle > 90.0) return std::string("angle_deg must lie in [-90, 90]");
    if (static_cast<std::size_t>(s.label) >= kPatternCount) return std::string("label out of range");
    return std::nullopt;
}

// ---------------------------------------------------------------------------

Dataset::Dataset(std::vector<FlowSample> samples, std::string source)
    : samples_(std::move(samples))
    , source_(std::move(source))
{
    if (samples_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "dataset is empty");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (auto why = check_sample(samples_[i])) {
            throw Error(ErrorCode::InvalidArgument, "sample " + std::to_string(i) + ": " + *why);
        }
    }
    const auto counts = pattern_counts();
    if (std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) < 2) {
        throw Error(ErrorCode::InvalidArgument, "dataset needs at least two distinct labels");
    }
}

std::array<std::size_t, kPatternCount> Dataset::pattern_counts() const noexcept
{
    std::array<std::size_t, kPatternCount> counts{};
    for (const auto& s : samples_) {
        ++counts[static_cast<std::size_t>(s.label)];
    }
    return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> indices, std::string source) const
{
    std::vector<FlowSample> out;
    out.reserve(indices.size());
    for (const auto i : indices) {
        out.push_back(samples_.at(i));
    }
    return Dataset(std::move(out), std::move(source));
}

// ---------------------------------------------------------------------------

std::string format_double(double value)
{
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

Dataset parse_csv(std::string_view text, std::string source)
{
    std::vector<FlowSample> samples;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        const auto line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (!have_header) {
            check_header(fields);
            have_header = true;
            continue;
        }
        const std::size_t row = samples.size() + 1;
        if (fields.size() != kCsvColumns.size()) {
            throw Error(ErrorCode::Parse, row_prefix(row, line_no) + "expected " +
                                              std::to_string(kCsvColumns.size()) + " fields, found " +
                                              std::to_string(fields.size()));
        }
        FeatureVector f{};
        for (std::size_t j = 0; j < kFeatureCount; ++j) {
            const auto field = fields[j];
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), f[j]);
            if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(f[j])) {
                throw Error(ErrorCode::Parse, row_prefix(row, line_no) + "column " +
                                                  std::string(kCsvColumns[j]) +
                                                  " is not a finite number: \"" + std::string(field) + "\"");
            }
        }
        const auto label = parse_flow_pattern(fields[kFeatureCount]);
        if (!label) {
            throw Error(ErrorCode::Label, row_prefix(row, line_no) + "unknown flow-pattern label \"" +
                                              std::string(fields[kFeatureCount]) + "\"");
        }
        auto sample = FlowSample::from_features(f, *label);
        if (auto why = check_sample(sample)) {
            throw Error(ErrorCode::Parse, row_prefix(row, line_no) + *why);
        }
        samples.push_back(sample);
    }
    if (!have_header) {
        throw Error(ErrorCode::Schema, "CSV input has no header row");
    }
    return Dataset(std::move(samples), std::move(source));
}

Dataset load_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open data file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_csv(buffer.str(), path.string());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::string to_csv(std::span<const FlowSample> samples)
{
    std::string out;
    for (std::size_t j = 0; j < kCsvColumns.size(); ++j) {
        if (j > 0) {
            out += ',';
        }
        out += kCsvColumns[j];
    }
    out += '\n';
    for (const auto& s : samples) {
        for (const double v : s.features()) {
            out += format_double(v);
            out += ',';
        }
        out += to_string(s.label);
        out += '\n';
    }
    return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write data file " + path.string());
    }
    out << to_csv(data.samples());
    if (!out.flush()) {
        throw Error(ErrorCode::Io, "failed writing data file " + path.string());
    }
}

// ---------------------------------------------------------------------------

std::string_view LabelScheme::name() const noexcept
{
    switch (id_) {
    case SchemeId::Test1: return "test1";
    case SchemeId::Test2: return "test2";
    case SchemeId::Test3: return "test3";
    }
    return "test1";
}

std::span<const std::string_view> LabelScheme::classes() const noexcept
{
    switch (id_) {
    case SchemeId::Test1: return kTest1Classes;
    case SchemeId::Test2: return kTest2Classes;
    case SchemeId::Test3: return kTest3Classes;
    }
    return kTest1Classes;
}

std::size_t LabelScheme::class_of(FlowPattern pattern) const noexcept
{
    const auto p = static_cast<std::size_t>(pattern);
    switch (id_) {
    case SchemeId::Test1: return p;
    case SchemeId::Test2: return kTest2Map[p];
    case SchemeId::Test3: return kTest3Map[p];
    }
    return p;
}

std::optional<std::size_t> LabelScheme::find_class(std::string_view name) const noexcept
{
    const auto cls = classes();
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (cls[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<LabelScheme> LabelScheme::parse(std::string_view text) noexcept
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "test1") return LabelScheme(SchemeId::Test1);
    if (lower == "test2") return LabelScheme(SchemeId::Test2);
    if (lower == "test3") return LabelScheme(SchemeId::Test3);
    return std::nullopt;
}

std::vector<std::size_t> relabel(std::span<const FlowSample> samples, const LabelScheme& scheme)
{
    std::vector<std::size_t> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        out.push_back(scheme.class_of(s.label));
    }
    return out;
}

std::vector<std::string> relabel_names(std::span<const FlowSample> samples, const LabelScheme& scheme)
{
    std::vector<std::string> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        out.emplace_back(scheme.class_name(s.label));
    }
    return out;
}

// ---------------------------------------------------------------------------

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows)
    , cols_(cols)
    , values_(std::move(values))
{
    if (values_.size() != rows_ * cols_) {
        throw Error(ErrorCode::InvalidArgument, "feature matrix size does not match its shape");
    }
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> indices) const
{
    FeatureMatrix out(indices.size(), cols_);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto src = row(indices[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

StandardScaler::StandardScaler(FeatureVector means, FeatureVector deviations)
    : means_(means)
    , deviations_(deviations)
{
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        if (!std::isfinite(means_[j]) || !std::isfinite(deviations_[j]) || !(deviations_[j] > 0.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "scaler statistics for " + std::string(kCsvColumns[j]) + " are invalid");
        }
    }
}

StandardScaler StandardScaler::fit(std::span<const FlowSample> train)
{
    if (train.empty()) {
        throw Error(ErrorCode::InvalidArgument, "cannot fit a scaler on an empty dataset");
    }
    const auto n = static_cast<double>(train.size());
    FeatureVector means{};
    FeatureVector deviations{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        double lo = train.front().features()[j];
        double hi = lo;
        double sum = 0.0;
        for (const auto& s : train) {
            const double v = s.features()[j];
            sum += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo == hi) {
            // Constant column: standardizes to zero everywhere.
            means[j] = lo;
            deviations[j] = 1.0;
            continue;
        }
        // Corrected two-pass: the residual sum refines the mean.
        double mean = sum / n;
        double residual = 0.0;
        for (const auto& s : train) {
            residual += s.features()[j] - mean;
        }
        mean += residual / n;
        double ss = 0.0;
        for (const auto& s : train) {
            const double d = s.features()[j] - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / n);
        means[j] = mean;
        deviations[j] = sd > 0.0 ? sd : 1.0;
    }
    return StandardScaler(means, deviations);
}

FeatureVector StandardScaler::transform(const FeatureVector& x) const noexcept
{
    FeatureVector z{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        z[j] = (x[j] - means_[j]) / deviations_[j];
    }
    return z;
}

FeatureVector StandardScaler::inverse(const FeatureVector& z) const noexcept
{
    FeatureVector x{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        x[j] = z[j] * deviations_[j] + means_[j];
    }
    return x;
}

FeatureMatrix StandardScaler::apply(std::span<const FlowSample> data) const
{
    FeatureMatrix out(data.size(), kFeatureCount);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto z = transform(data[i].features());
        std::copy(z.begin(), z.end(), out.row(i).begin());
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string class_label(std::span<const std::string_view> names, std::size_t c)
{
    if (c < names.size()) {
        return std::string(names[c]);
    }
    return "#" + std::to_string(c);
}

std::vector<std::vector<std::size_t>> group_by_class(std::span<const std::size_t> classes,
                                                     std::size_t class_count)
{
    std::vector<std::vector<std::size_t>> groups(class_count);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] >= class_count) {
            throw Error(ErrorCode::InvalidArgument, "class id out of range");
        }
        groups[classes[i]].push_back(i);
    }
    return groups;
}

SplitIndices split_impl(std::span<const std::size_t> classes, std::size_t class_count,
                        double test_fraction, std::uint64_t seed,
                        std::span<const std::string_view> names)
{
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "test fraction must lie strictly between 0 and 1");
    }
    auto groups = group_by_class(classes, class_count);
    for (std::size_t c = 0; c < class_count; ++c) {
        if (groups[c].size() == 1) {
            throw Error(ErrorCode::InvalidArgument, "class " + class_label(names, c) +
                                                        " has fewer than 2 samples; cannot split");
        }
    }
    detail::Engine engine(seed);
    SplitIndices out;
    for (auto& group : groups) {
        if (group.empty()) {
            continue;
        }
        const auto count = static_cast<double>(group.size());
        auto take = static_cast<std::size_t>(std::llround(count * test_fraction));
        take = std::clamp<std::size_t>(take, 1, group.size() - 1);
        detail::shuffle(std::span<std::size_t>(group), engine);
        out.test.insert(out.test.end(), group.begin(), group.begin() + static_cast<std::ptrdiff_t>(take));
        out.train.insert(out.train.end(), group.begin() + static_cast<std::ptrdiff_t>(take), group.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

} // namespace

SplitIndices stratified_split_indices(std::span<const std::size_t> classes, std::size_t class_count,
                                      double test_fraction, std::uint64_t seed)
{
    return split_impl(classes, class_count, test_fraction, seed, {});
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& data, double test_fraction, std::uint64_t seed)
{
    std::vector<std::size_t> classes;
    classes.reserve(data.size());
    for (const auto& s : data.samples()) {
        classes.push_back(static_cast<std::size_t>(s.label));
    }
    const auto idx = split_impl(classes, kPatternCount, test_fraction, seed, kPatternNames);
    const auto tag = data.source() + "#seed=" + std::to_string(seed);
    return {data.subset(idx.train, tag + ":train"), data.subset(idx.test, tag + ":test")};
}

std::vector<std::size_t> stratified_folds(std::span<const std::size_t> classes, std::size_t class_count,
                                          std::size_t folds, std::uint64_t seed,
                                          std::span<const std::string_view> class_names)
{
    if (folds < 2) {
        throw Error(ErrorCode::InvalidArgument, "need at least 2 folds");
    }
    auto groups = group_by_class(classes, class_count);
    for (std::size_t c = 0; c < class_count; ++c) {
        if (!groups[c].empty() && groups[c].size() < folds) {
            throw Error(ErrorCode::InvalidArgument,
                        "class " + class_label(class_names, c) + " has " + std::to_string(groups[c].size()) +
                            " samples, fewer than " + std::to_string(folds) + " folds");
        }
    }
    detail::Engine engine(seed);
    std::vector<std::size_t> fold_of(classes.size(), 0);
    std::size_t next = 0;
    for (auto& group : groups) {
        detail::shuffle(std::span<std::size_t>(group), engine);
        for (const auto i : group) {
            fold_of[i] = next;
            next = (next + 1) % folds;
        }
    }
    return fold_of;
}

} // namespace fpsvm
