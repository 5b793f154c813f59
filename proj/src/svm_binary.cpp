// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/svm_binary.hpp"

#include "fpsvm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fpsvm {

namespace {

// Curvature floor for pairs of (near-)identical points. The objective is then
// linear along the pair direction and the step runs to the box boundary.
constexpr double kMinCurvature = 1e-12;

// A step counts as progress when it raises the dual objective by more than
// this fraction of its magnitude.
constexpr double kProgressGain = 1e-12;

// Hard ceiling on total iterations, independent of progress.
std::size_t iteration_cap(std::size_t n)
{
    return std::max<std::size_t>(10'000'000, 100 * n);
}

struct Selection {
    std::size_t up = 0;    // from I_up, maximizes -y G
    std::size_t low = 0;   // from I_low, minimizes -y G
    double violation = 0.0;
    bool found = false;
};

bool in_up(int y, double a, double c) { return y > 0 ? a < c : a > 0.0; }
bool in_low(int y, double a, double c) { return y > 0 ? a > 0.0 : a < c; }

Selection select_pair(std::span<const int> y, std::span<const double> alpha, std::span<const double> grad,
                      double c)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    double best_up = -inf;
    double best_low = inf;
    Selection s;
    bool have_up = false;
    bool have_low = false;
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double v = -static_cast<double>(y[t]) * grad[t];
        if (in_up(y[t], alpha[t], c) && v > best_up) {
            best_up = v;
            s.up = t;
            have_up = true;
        }
        if (in_low(y[t], alpha[t], c) && v < best_low) {
            best_low = v;
            s.low = t;
            have_low = true;
        }
    }
    s.found = have_up && have_low;
    s.violation = s.found ? best_up - best_low : 0.0;
    return s;
}

double compute_bias(std::span<const int> y, std::span<const double> alpha, std::span<const double> grad,
                    double c)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double lower = -inf;
    double upper = inf;
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double v = -static_cast<double>(y[t]) * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < c) {
            free_sum += v;
            ++free_count;
        } else if (in_up(y[t], alpha[t], c)) {
            lower = std::max(lower, v);
        } else {
            upper = std::min(upper, v);
        }
    }
    if (free_count > 0) {
        return free_sum / static_cast<double>(free_count);
    }
    if (std::isinf(lower)) {
        return upper;
    }
    if (std::isinf(upper)) {
        return lower;
    }
    return 0.5 * (lower + upper);
}

void check_inputs(const FeatureMatrix& features, std::span<const int> labels, const TrainConfig& config)
{
    config.validate();
    if (features.rows() != labels.size()) {
        throw Error(ErrorCode::InvalidArgument, "feature rows and labels differ in count");
    }
    if (features.rows() < 2) {
        throw Error(ErrorCode::InvalidArgument, "binary training needs at least two samples");
    }
    bool pos = false;
    bool neg = false;
    for (const int y : labels) {
        if (y == 1) {
            pos = true;
        } else if (y == -1) {
            neg = true;
        } else {
            throw Error(ErrorCode::InvalidArgument, "binary labels must be +1 or -1");
        }
    }
    if (!pos || !neg) {
        throw Error(ErrorCode::InvalidArgument, "binary training needs both classes present");
    }
    for (const double v : features.values()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "training features must be finite");
        }
    }
}

} // namespace

void TrainConfig::validate() const
{
    if (!std::isfinite(c) || !(c > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "C must be positive and finite");
    }
    if (!std::isfinite(kkt_tolerance) || !(kkt_tolerance > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "KKT tolerance must be positive and finite");
    }
}

BinaryTrainResult solve_binary(const FeatureMatrix& features, std::span<const int> labels,
                               const TrainConfig& config)
{
    check_inputs(features, labels, config);
    const std::size_t n = features.rows();
    const double c = config.c;
    const std::size_t max_stall = config.max_passes > 0 ? config.max_passes : 10 * n;

    KernelCache kernel(config.kernel, features, config.dense_kernel_cap);

    // grad = Q alpha - 1 with Q_ij = y_i y_j K_ij.
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);
    double min_gain = std::numeric_limits<double>::infinity();
    double objective = 0.0;
    std::size_t stall = 0;
    const std::size_t cap = iteration_cap(n);
    std::size_t iterations = 0;
    double violation = 0.0;

    while (true) {
        const auto sel = select_pair(labels, alpha, grad, c);
        violation = sel.violation;
        if (!sel.found || violation <= config.kkt_tolerance) {
            break;
        }
        if (stall > max_stall || iterations >= cap) {
            std::ostringstream msg;
            msg << "SMO did not converge: KKT violation " << violation << " after " << iterations
                << " iterations (tolerance " << config.kkt_tolerance << ")";
            throw ConvergenceError(msg.str(), violation);
        }

        const std::size_t i = sel.up;
        const std::size_t j = sel.low;
        const auto ki = kernel.row(i);
        const auto kj = kernel.row(j);
        const int yi = labels[i];
        const int yj = labels[j];
        const double old_i = alpha[i];
        const double old_j = alpha[j];
        double ai = old_i;
        double aj = old_j;
        const double curvature = std::max(ki[i] + kj[j] - 2.0 * ki[j], kMinCurvature);

        // Two-variable analytic step, clipped to the box.
        if (yi != yj) {
            const double delta = (-grad[i] - grad[j]) / curvature;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c) {
                    ai = c;
                    aj = c - diff;
                }
            } else if (aj > c) {
                aj = c;
                ai = c + diff;
            }
        } else {
            const double delta = (grad[i] - grad[j]) / curvature;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c) {
                if (ai > c) {
                    ai = c;
                    aj = sum - c;
                }
            } else if (aj < 0.0) {
                aj = 0.0;
                ai = sum;
            }
            if (sum > c) {
                if (aj > c) {
                    aj = c;
                    ai = sum - c;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = sum;
            }
        }
        alpha[i] = ai;
        alpha[j] = aj;

        const double di = ai - old_i;
        const double dj = aj - old_j;
        const double qij = static_cast<double>(yi * yj) * ki[j];
        const double change = grad[i] * di + grad[j] * dj +
                              0.5 * (ki[i] * di * di + kj[j] * dj * dj) + qij * di * dj;
        min_gain = std::min(min_gain, -change);
        objective -= change;
        stall = -change > kProgressGain * std::max(1.0, std::fabs(objective)) ? 0 : stall + 1;

        const double si = static_cast<double>(yi) * di;
        const double sj = static_cast<double>(yj) * dj;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += static_cast<double>(labels[t]) * (ki[t] * si + kj[t] * sj);
        }
        ++iterations;
    }

    BinaryTrainResult result;
    result.iterations = iterations;
    result.max_violation = violation;
    result.min_step_gain = iterations > 0 ? min_gain : 0.0;

    // Recomputed from the final gradient rather than the running sum.
    double dual = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        dual += alpha[t] - 0.5 * alpha[t] * (grad[t] + 1.0);
    }
    result.dual_objective = dual;

    auto& model = result.model;
    model.bias = compute_bias(labels, alpha, grad, c);
    model.config = config;
    model.positive_class = "+1";
    model.negative_class = "-1";
    std::vector<std::size_t> support;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) {
            support.push_back(t);
            model.coefficients.push_back(alpha[t] * static_cast<double>(labels[t]));
        }
    }
    model.support_vectors = features.select_rows(support);
    result.alpha = std::move(alpha);
    return result;
}

BinarySvmModel train_binary(const FeatureMatrix& features, std::span<const int> labels, const TrainConfig& config,
                            std::string positive_class, std::string negative_class)
{
    auto model = solve_binary(features, labels, config).model;
    model.positive_class = std::move(positive_class);
    model.negative_class = std::move(negative_class);
    return model;
}

double decision_value(const BinarySvmModel& model, std::span<const double> x) noexcept
{
    double f = model.bias;
    for (std::size_t k = 0; k < model.coefficients.size(); ++k) {
        f += model.coefficients[k] * rbf_unchecked(model.config.kernel, model.support_vectors.row(k), x);
    }
    return f;
}

} // namespace fpsvm
