// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/multiclass.hpp"

#include "fpsvm/error.hpp"
#include "parallel.hpp"

#include <cmath>

namespace fpsvm {

std::size_t OvoModel::pair_index(std::size_t i, std::size_t j) const noexcept
{
    // Row-major position of (i, j) in the strict upper triangle.
    const std::size_t k = classes.size();
    return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

void OvoModel::validate() const
{
    const std::size_t k = classes.size();
    if (k < 2) {
        throw Error(ErrorCode::InvalidArgument, "model needs at least two classes");
    }
    if (pairs.size() != k * (k - 1) / 2) {
        throw Error(ErrorCode::InvalidArgument, "model has " + std::to_string(pairs.size()) +
                                                    " pair models, expected " + std::to_string(k * (k - 1) / 2));
    }
    for (const auto& name : classes) {
        if (!scheme.find_class(name)) {
            throw Error(ErrorCode::InvalidArgument,
                        "class " + name + " is not part of scheme " + std::string(scheme.name()));
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto& m = pairs[pair_index(i, j)];
            if (m.positive_class != classes[i] || m.negative_class != classes[j]) {
                throw Error(ErrorCode::InvalidArgument, "pair model " + m.positive_class + "/" + m.negative_class +
                                                            " is out of place; expected " + classes[i] + "/" +
                                                            classes[j]);
            }
            if (m.support_vectors.rows() != m.coefficients.size() ||
                (m.support_vectors.rows() > 0 && m.support_vectors.cols() != kFeatureCount)) {
                throw Error(ErrorCode::InvalidArgument, "pair model " + classes[i] + "/" + classes[j] +
                                                            " has inconsistent support vectors");
            }
        }
    }
}

OvoModel train_ovo(const Dataset& train, const LabelScheme& scheme, const TrainConfig& config, unsigned jobs)
{
    config.validate();
    const auto labels = relabel(train.samples(), scheme);
    const auto names = scheme.classes();

    std::vector<std::size_t> counts(names.size(), 0);
    for (const auto l : labels) {
        ++counts[l];
    }
    // Scheme class index -> model class index, for classes present in train.
    std::vector<std::size_t> present;
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (counts[c] == 0) {
            continue;
        }
        if (counts[c] < 2) {
            throw Error(ErrorCode::InvalidArgument,
                        "class " + std::string(names[c]) + " has only 1 training sample under " +
                            std::string(scheme.name()));
        }
        present.push_back(c);
    }
    if (present.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "training data has fewer than two classes under " +
                                                    std::string(scheme.name()));
    }

    OvoModel model;
    model.scheme = scheme;
    for (const auto c : present) {
        model.classes.emplace_back(names[c]);
    }
    model.scaler = StandardScaler::fit(train.samples());
    model.c = config.c;
    model.gamma = config.kernel.gamma();
    const auto z = model.scaler.apply(train.samples());

    const std::size_t k = present.size();
    std::vector<std::pair<std::size_t, std::size_t>> jobs_list;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            jobs_list.emplace_back(i, j);
        }
    }
    model.pairs.resize(jobs_list.size());

    detail::parallel_for(jobs_list.size(), jobs, [&](std::size_t p) {
        const auto [i, j] = jobs_list[p];
        std::vector<std::size_t> rows;
        std::vector<int> y;
        for (std::size_t t = 0; t < labels.size(); ++t) {
            if (labels[t] == present[i]) {
                rows.push_back(t);
                y.push_back(1);
            } else if (labels[t] == present[j]) {
                rows.push_back(t);
                y.push_back(-1);
            }
        }
        const auto sub = z.select_rows(rows);
        try {
            model.pairs[model.pair_index(i, j)] =
                train_binary(sub, y, config, model.classes[i], model.classes[j]);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("class pair " + model.classes[i] + " vs " + model.classes[j] + ": " + e.what(),
                                   e.violation());
        }
    });
    return model;
}

VoteTally tally_standardized(const OvoModel& model, std::span<const double> z)
{
    const std::size_t k = model.classes.size();
    VoteTally t;
    t.votes.assign(k, 0);
    t.margins.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double f = decision_value(model.pairs[model.pair_index(i, j)], z);
            const std::size_t w = f > 0.0 ? i : j;
            ++t.votes[w];
            t.margins[w] += std::fabs(f);
        }
    }
    t.winner = 0;
    for (std::size_t c = 1; c < k; ++c) {
        if (t.votes[c] > t.votes[t.winner] ||
            (t.votes[c] == t.votes[t.winner] && t.margins[c] > t.margins[t.winner])) {
            t.winner = c;
        }
    }
    return t;
}

VoteTally tally(const OvoModel& model, const FlowSample& sample)
{
    const auto z = model.scaler.transform(sample.features());
    return tally_standardized(model, z);
}

std::size_t predict_index(const OvoModel& model, const FlowSample& sample)
{
    return tally(model, sample).winner;
}

std::string predict(const OvoModel& model, const FlowSample& sample)
{
    return model.classes[predict_index(model, sample)];
}

std::vector<std::string> predict_batch(const OvoModel& model, std::span<const FlowSample> samples)
{
    std::vector<std::string> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        out.push_back(predict(model, s));
    }
    return out;
}

} // namespace fpsvm
