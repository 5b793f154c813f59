// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/model_file.hpp"

#include "fpsvm/error.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace fpsvm {

namespace {

constexpr std::string_view kMagic = "fpsvm-model";
constexpr std::string_view kChecksumKey = "checksum crc32 ";

std::uint32_t crc_of(std::string_view bytes)
{
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in bounded chunks.
    constexpr std::size_t kChunk = 1u << 30;
    for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
        const auto len = static_cast<uInt>(std::min(kChunk, bytes.size() - off));
        crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off), len);
    }
    return static_cast<std::uint32_t>(crc);
}

std::string hex32(std::uint32_t v)
{
    std::array<char, 9> buf{};
    std::snprintf(buf.data(), buf.size(), "%08x", v);
    return buf.data();
}

[[noreturn]] void corrupt(const std::string& what)
{
    throw Error(ErrorCode::CorruptModel, "corrupt model file: " + what);
}

/// Whitespace tokenizer over the checksummed body, tracking line numbers.
class Reader {
public:
    explicit Reader(std::string_view body) : body_(body) {}

    std::vector<std::string_view> line()
    {
        while (pos_ < body_.size()) {
            auto eol = body_.find('\n', pos_);
            if (eol == std::string_view::npos) {
                eol = body_.size();
            }
            const auto text = body_.substr(pos_, eol - pos_);
            pos_ = eol + 1;
            ++line_no_;
            std::vector<std::string_view> tokens;
            std::size_t i = 0;
            while (i < text.size()) {
                while (i < text.size() && (text[i] == ' ' || text[i] == '\r' || text[i] == '\t')) {
                    ++i;
                }
                const std::size_t start = i;
                while (i < text.size() && text[i] != ' ' && text[i] != '\r' && text[i] != '\t') {
                    ++i;
                }
                if (i > start) {
                    tokens.push_back(text.substr(start, i - start));
                }
            }
            if (!tokens.empty()) {
                return tokens;
            }
        }
        corrupt("unexpected end of model data");
    }

    std::vector<std::string_view> expect(std::string_view key, std::size_t values)
    {
        auto t = line();
        if (t.front() != key || (values != kAny && t.size() != values + 1)) {
            corrupt("line " + std::to_string(line_no_) + ": expected \"" + std::string(key) + "\"");
        }
        return t;
    }

    [[nodiscard]] bool done() const
    {
        return body_.find_first_not_of(" \r\t\n", pos_) == std::string_view::npos;
    }

    [[nodiscard]] std::size_t line_no() const { return line_no_; }

    static constexpr std::size_t kAny = static_cast<std::size_t>(-1);

private:
    std::string_view body_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

double to_real(std::string_view token)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
        corrupt("bad number \"" + std::string(token) + "\"");
    }
    return v;
}

std::size_t to_count(std::string_view token)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        corrupt("bad count \"" + std::string(token) + "\"");
    }
    return v;
}

FeatureVector read_vector(Reader& in, std::string_view key)
{
    const auto t = in.expect(key, kFeatureCount + 1);
    if (to_count(t[1]) != kFeatureCount) {
        corrupt(std::string(key) + " must hold " + std::to_string(kFeatureCount) + " values");
    }
    FeatureVector v{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        v[j] = to_real(t[j + 2]);
    }
    return v;
}

void write_vector(std::ostringstream& out, std::string_view key, const FeatureVector& v)
{
    out << key << ' ' << kFeatureCount;
    for (const double x : v) {
        out << ' ' << format_double(x);
    }
    out << '\n';
}

} // namespace

std::string serialize_model(const OvoModel& model)
{
    model.validate();
    std::ostringstream out;
    out << kMagic << ' ' << kModelFormatVersion << '\n';
    out << "scheme " << model.scheme.name() << '\n';
    out << "classes " << model.classes.size();
    for (const auto& name : model.classes) {
        out << ' ' << name;
    }
    out << '\n';
    out << "c " << format_double(model.c) << '\n';
    out << "gamma " << format_double(model.gamma) << '\n';
    const double tol = model.pairs.empty() ? 1e-3 : model.pairs.front().config.kkt_tolerance;
    out << "kkt_tolerance " << format_double(tol) << '\n';
    write_vector(out, "scaler_mean", model.scaler.means());
    write_vector(out, "scaler_deviation", model.scaler.deviations());
    out << "pairs " << model.pairs.size() << '\n';
    for (const auto& pair : model.pairs) {
        out << "pair " << pair.positive_class << ' ' << pair.negative_class << '\n';
        out << "bias " << format_double(pair.bias) << '\n';
        out << "support_vectors " << pair.coefficients.size() << '\n';
        for (std::size_t k = 0; k < pair.coefficients.size(); ++k) {
            out << format_double(pair.coefficients[k]);
            for (const double x : pair.support_vectors.row(k)) {
                out << ' ' << format_double(x);
            }
            out << '\n';
        }
        out << "end_pair\n";
    }
    std::string body = out.str();
    body += kChecksumKey;
    body += hex32(crc_of(std::string_view(body).substr(0, body.size() - kChecksumKey.size())));
    body += '\n';
    return body;
}

OvoModel deserialize_model(std::string_view text)
{
    // Checksum line is the last non-empty line.
    auto end = text.find_last_not_of(" \r\t\n");
    if (end == std::string_view::npos) {
        corrupt("file is empty");
    }
    const auto start = text.rfind('\n', end);
    const auto body_len = start == std::string_view::npos ? 0 : start + 1;
    auto last = text.substr(body_len, end + 1 - body_len);
    if (last.substr(0, kChecksumKey.size()) != kChecksumKey) {
        corrupt("checksum line missing (file truncated?)");
    }
    const auto stored = last.substr(kChecksumKey.size());
    const auto body = text.substr(0, body_len);
    if (stored != hex32(crc_of(body))) {
        corrupt("checksum mismatch (stored " + std::string(stored) + ", computed " + hex32(crc_of(body)) + ")");
    }

    Reader in(body);
    const auto head = in.expect(kMagic, 1);
    if (to_count(head[1]) != static_cast<std::size_t>(kModelFormatVersion)) {
        throw Error(ErrorCode::CorruptModel,
                    "unsupported model format version " + std::string(head[1]) + " (this build reads version " +
                        std::to_string(kModelFormatVersion) + ")");
    }
    const auto scheme = LabelScheme::parse(in.expect("scheme", 1)[1]);
    if (!scheme) {
        corrupt("unknown scheme");
    }

    OvoModel model;
    model.scheme = *scheme;
    const auto cls = in.expect("classes", Reader::kAny);
    if (cls.size() < 2 || to_count(cls[1]) != cls.size() - 2) {
        corrupt("class list length does not match its count");
    }
    for (std::size_t i = 2; i < cls.size(); ++i) {
        model.classes.emplace_back(cls[i]);
    }
    model.c = to_real(in.expect("c", 1)[1]);
    model.gamma = to_real(in.expect("gamma", 1)[1]);
    const double tol = to_real(in.expect("kkt_tolerance", 1)[1]);

    TrainConfig config;
    try {
        config.c = model.c;
        config.kernel = KernelParams(model.gamma);
        config.kkt_tolerance = tol;
        config.validate();
        const auto means = read_vector(in, "scaler_mean");
        const auto devs = read_vector(in, "scaler_deviation");
        model.scaler = StandardScaler(means, devs);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CorruptModel) {
            throw;
        }
        corrupt(e.what());
    }

    const std::size_t pair_count = to_count(in.expect("pairs", 1)[1]);
    for (std::size_t p = 0; p < pair_count; ++p) {
        BinarySvmModel pair;
        const auto names = in.expect("pair", 2);
        pair.positive_class = std::string(names[1]);
        pair.negative_class = std::string(names[2]);
        pair.bias = to_real(in.expect("bias", 1)[1]);
        pair.config = config;
        const std::size_t sv = to_count(in.expect("support_vectors", 1)[1]);
        std::vector<double> rows;
        rows.reserve(sv * kFeatureCount);
        for (std::size_t k = 0; k < sv; ++k) {
            const auto t = in.line();
            if (t.size() != kFeatureCount + 1) {
                corrupt("line " + std::to_string(in.line_no()) + ": support vector needs " +
                        std::to_string(kFeatureCount + 1) + " values");
            }
            const double coef = to_real(t[0]);
            if (!(std::fabs(coef) > 0.0) || std::fabs(coef) > model.c * (1.0 + 1e-12)) {
                corrupt("line " + std::to_string(in.line_no()) + ": dual coefficient outside (0, C]");
            }
            pair.coefficients.push_back(coef);
            for (std::size_t j = 1; j < t.size(); ++j) {
                rows.push_back(to_real(t[j]));
            }
        }
        pair.support_vectors = FeatureMatrix(sv, kFeatureCount, std::move(rows));
        in.expect("end_pair", 0);
        model.pairs.push_back(std::move(pair));
    }
    if (!in.done()) {
        corrupt("trailing data after the last pair");
    }
    try {
        model.validate();
    } catch (const Error& e) {
        corrupt(e.what());
    }
    return model;
}

void save_model(const OvoModel& model, const std::filesystem::path& path)
{
    const auto text = serialize_model(model);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw Error(ErrorCode::Io, "cannot write model file " + path.string());
    }
}

OvoModel load_model(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open model file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return deserialize_model(buffer.str());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

} // namespace fpsvm
