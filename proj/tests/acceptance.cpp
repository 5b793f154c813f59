// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "fpsvm/dataset.hpp"
#include "fpsvm/error.hpp"
#include "fpsvm/kernel.hpp"
#include "fpsvm/metrics.hpp"
#include "fpsvm/model_file.hpp"
#include "fpsvm/model_selection.hpp"
#include "fpsvm/multiclass.hpp"
#include "fpsvm/svm_binary.hpp"

#include "oracles.hpp"
#include "reference_matrices.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace fpsvm;

namespace {

// Pinned tolerances.
constexpr double kObjectiveTolerance = 1e-6;
constexpr double kKktTolerance = 1e-3;
// SMO stopping tolerance for the oracle comparison; 1e-3 leaves up to ~5e-6 of objective on the table.
constexpr double kOracleSolverTolerance = 1e-6;
constexpr double kClosedFormTolerance = 1e-8;
constexpr double kSixClassFloor = 0.93;
constexpr double kThreeClassFloor = 0.95;
constexpr double kReplicationSeconds = 300.0;
constexpr double kSolverSeconds = 10.0;
constexpr double kScalerMeanBound = 1e-12;
constexpr double kScalerVarianceBound = 1e-9;
constexpr double kPsdFloor = -1e-9;
constexpr std::size_t kPsdRows = 20;
constexpr double kRecallIdentityBound = 1e-12;

constexpr std::uint64_t kSynthSeed = 7;
constexpr std::size_t kSynthSize = 5676;
constexpr double kTestFraction = 0.2;
constexpr std::uint64_t kSplitSeed = 7;
constexpr double kGamma = 10.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report_line(int id, const std::string& name, const std::function<Outcome()>& body)
{
    const auto start = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds_since(start));
    std::cout << (out.pass ? "PASS" : "FAIL") << "  " << id << ". " << name << " [" << timing << "] "
              << out.detail << std::endl;
    if (!out.pass) {
        ++failures;
    }
}

std::string fmt(double v, int digits = 4)
{
    std::ostringstream s;
    s.precision(digits);
    s << std::fixed << v;
    return s.str();
}

std::string sci(double v)
{
    std::ostringstream s;
    s.precision(2);
    s << std::scientific << v;
    return s.str();
}

ConfusionMatrix matrix_of(const reference::Case& c)
{
    std::vector<std::size_t> flat;
    for (const auto& row : c.counts) {
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return ConfusionMatrix(c.classes, flat);
}

TrainConfig config(double c, double gamma)
{
    TrainConfig cfg;
    cfg.c = c;
    cfg.kernel = KernelParams(gamma);
    return cfg;
}

// Shared end-to-end state for criteria 4 to 7.
struct Replication {
    Dataset train;
    Dataset test;
    OvoModel six;
    OvoModel three;
    double seconds = 0.0;
};

Replication build_replication()
{
    const auto start = Clock::now();
    auto [train, test] = stratified_split(synth_generate(kSynthSeed, kSynthSize), kTestFraction, kSplitSeed);
    auto six = train_ovo(train, LabelScheme(SchemeId::Test1), config(100.0, kGamma), 1);
    auto three = train_ovo(train, LabelScheme(SchemeId::Test3), config(1000.0, kGamma), 1);
    return {std::move(train), std::move(test), std::move(six), std::move(three), seconds_since(start)};
}

Replication& replication()
{
    static Replication r = build_replication();
    return r;
}

Outcome criterion_metrics()
{
    std::vector<std::string> mismatches;
    for (const auto& c : {reference::six_class_train(), reference::six_class_test()}) {
        const auto rep = report(matrix_of(c));
        auto expect = [&](const std::string& what, const std::string& got, const std::string& want) {
            if (got != want) {
                mismatches.push_back(c.label + " " + what + ": " + got + " != " + want);
            }
        };
        for (std::size_t i = 0; i < rep.classes.size(); ++i) {
            const auto& m = rep.classes[i];
            const auto& w = c.rows[i];
            expect(w.name + " precision", format_ratio(m.precision), w.precision);
            expect(w.name + " recall", format_ratio(m.recall), w.recall);
            expect(w.name + " f1", format_ratio(m.f1), w.f1);
            expect(w.name + " support", std::to_string(m.support), std::to_string(w.support));
        }
        const auto& avg = c.rows.back();
        expect("avg precision", format_ratio(rep.weighted.precision), avg.precision);
        expect("avg recall", format_ratio(rep.weighted.recall), avg.recall);
        expect("avg f1", format_ratio(rep.weighted.f1), avg.f1);
        expect("total support", std::to_string(rep.total_support), std::to_string(avg.support));
        const auto text = render_text(rep);
        if (text.find("Accuracy " + c.accuracy + " (") == std::string::npos) {
            mismatches.push_back(c.label + " accuracy line");
        }
    }
    const auto three = reference::three_class_test();
    const auto text = render_text(report(matrix_of(three)));
    if (text.find("Accuracy " + three.accuracy + " (") == std::string::npos) {
        mismatches.push_back(three.label + " accuracy line");
    }
    if (!mismatches.empty()) {
        return {false, mismatches.front() + " (+" + std::to_string(mismatches.size() - 1) + " more)"};
    }
    return {true, "all per-class, average and accuracy strings match; accuracies 0.99 / 0.95 / 0.97"};
}

Outcome criterion_solver()
{
    const auto start = Clock::now();
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> normal;
    double worst_objective = 0.0;
    double worst_default = 0.0;
    double worst_kkt = 0.0;
    double worst_balance = 0.0;
    bool box_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial) % 7;
        std::vector<double> v(n * 3);
        for (auto& x : v) {
            x = normal(rng);
        }
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
        }
        y[0] = 1;
        y[1] = -1;
        const double c = (trial / 2) % 2 == 0 ? 1.0 : 100.0;
        const double gamma = trial % 2 == 0 ? 0.5 : 10.0;
        const FeatureMatrix x(n, 3, v);
        auto cfg = config(c, gamma);
        const auto loose = solve_binary(x, y, cfg);
        cfg.kkt_tolerance = kOracleSolverTolerance;
        const auto r = solve_binary(x, y, cfg);

        oracle::Points pts;
        for (std::size_t i = 0; i < n; ++i) {
            pts.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(3 * i),
                             v.begin() + static_cast<std::ptrdiff_t>(3 * i + 3));
        }
        const auto k = oracle::gram(pts, gamma);
        const auto ref = oracle::brute_force_qp(k, y, c);
        worst_objective = std::max(worst_objective, std::fabs(r.dual_objective - ref.objective));
        worst_default = std::max(worst_default, std::fabs(loose.dual_objective - ref.objective));
        worst_kkt = std::max(worst_kkt, oracle::kkt_gap(k, y, r.alpha, c));
        double balance = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            box_ok = box_ok && r.alpha[i] >= 0.0 && r.alpha[i] <= c;
            balance += y[i] * r.alpha[i];
        }
        worst_balance = std::max(worst_balance, std::fabs(balance));
    }
    const double elapsed = seconds_since(start);
    const bool pass = worst_objective <= kObjectiveTolerance && worst_kkt <= kKktTolerance && box_ok &&
                      worst_balance <= 1e-9 && elapsed < kSolverSeconds;
    return {pass, "max |dual - oracle| " + sci(worst_objective) + ", max KKT gap " +
                      sci(worst_kkt) + ", box " + (box_ok ? "ok" : "violated") + ", max |y'a| " +
                      sci(worst_balance) + ", max |dual - oracle| at tol 1e-3 " +
                      sci(worst_default)};
}

Outcome criterion_closed_form()
{
    double worst_alpha = 0.0;
    double worst_bias = 0.0;
    for (const double gamma : {0.1, 0.5, 1.0, 10.0}) {
        for (const double c : {0.5, 1.0, 10.0, 1000.0}) {
            const FeatureMatrix x(2, 2, {0.0, 0.0, 0.6, 0.8});
            const std::vector<int> y{1, -1};
            const double k = std::exp(-gamma);
            auto cfg = config(c, gamma);
        const auto loose = solve_binary(x, y, cfg);
        cfg.kkt_tolerance = kOracleSolverTolerance;
        const auto r = solve_binary(x, y, cfg);
            const double want = std::min(c, 1.0 / (1.0 - k));
            worst_alpha = std::max({worst_alpha, std::fabs(r.alpha[0] - want), std::fabs(r.alpha[1] - want)});
            worst_bias = std::max(worst_bias, std::fabs(r.model.bias));
        }
    }
    const bool pass = worst_alpha <= kClosedFormTolerance && worst_bias <= kClosedFormTolerance;
    return {pass, "16 (C, gamma) cases; max |alpha - min(C, 1/(1-k))| " + sci(worst_alpha) +
                      ", max |b| " + sci(worst_bias)};
}

// Number of test samples whose six-class prediction lands in the right
// three-class group.
std::size_t merged_correct(const Replication& rep, const std::vector<std::string>& six_pred)
{
    const LabelScheme t1(SchemeId::Test1);
    const LabelScheme t3(SchemeId::Test3);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < rep.test.size(); ++i) {
        const auto pattern = kAllPatterns[*t1.find_class(six_pred[i])];
        ok += t3.class_of(pattern) == t3.class_of(rep.test[i].label) ? 1 : 0;
    }
    return ok;
}

// Correct counts of the reference held-out matrices: six-class merged into
// three groups, and the directly trained three-class model.
std::pair<double, double> reference_merged_and_three()
{
    const LabelScheme t1(SchemeId::Test1);
    const LabelScheme t3(SchemeId::Test3);
    const auto six = reference::six_class_test();
    double merged = 0.0;
    double total = 0.0;
    for (std::size_t r = 0; r < six.classes.size(); ++r) {
        const auto truth = kAllPatterns[*t1.find_class(six.classes[r])];
        for (std::size_t c = 0; c < six.classes.size(); ++c) {
            const auto pred = kAllPatterns[*t1.find_class(six.classes[c])];
            const auto v = static_cast<double>(six.counts[r][c]);
            total += v;
            merged += t3.class_of(truth) == t3.class_of(pred) ? v : 0.0;
        }
    }
    const auto three = reference::three_class_test();
    double hits = 0.0;
    double all = 0.0;
    for (std::size_t r = 0; r < three.counts.size(); ++r) {
        for (std::size_t c = 0; c < three.counts[r].size(); ++c) {
            all += static_cast<double>(three.counts[r][c]);
            hits += r == c ? static_cast<double>(three.counts[r][c]) : 0.0;
        }
    }
    return {merged / total, hits / all};
}

Outcome criterion_replication()
{
    auto& rep = replication();
    const auto test = rep.test.samples();
    const auto six_pred = predict_batch(rep.six, test);
    const auto three_pred = predict_batch(rep.three, test);
    const auto six_truth = relabel_names(test, LabelScheme(SchemeId::Test1));
    const auto three_truth = relabel_names(test, LabelScheme(SchemeId::Test3));
    std::size_t six_ok = 0;
    std::size_t three_ok = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        six_ok += six_pred[i] == six_truth[i] ? 1 : 0;
        three_ok += three_pred[i] == three_truth[i] ? 1 : 0;
    }
    const std::size_t merged_ok = merged_correct(rep, six_pred);
    const double n = static_cast<double>(test.size());
    const double six = static_cast<double>(six_ok) / n;
    const double three = static_cast<double>(three_ok) / n;
    const double merged = static_cast<double>(merged_ok) / n;
    // Merging can only turn errors into hits, never the reverse, so the
    // three-group view of the run is at least as accurate as six classes.
    const bool identity = merged_ok >= six_ok;
    const bool ordering = three_ok >= six_ok;
    // Shown for reference only: a directly trained three-class model need not
    // beat merged six-class predictions, and the reference matrices do not.
    const auto [ref_merged, ref_three] = reference_merged_and_three();
    const bool pass = six >= kSixClassFloor && three >= kThreeClassFloor && ordering && identity &&
                      rep.seconds < kReplicationSeconds;
    return {pass, "n_test " + std::to_string(test.size()) + "; six-class " + fmt(six) + " (>= " +
                      fmt(kSixClassFloor, 2) + "), three-class " + fmt(three) + " (>= " + fmt(kThreeClassFloor, 2) +
                      " and >= six-class), merged six-class " + fmt(merged) + " (>= six-class); training " +
                      fmt(rep.seconds, 1) + "s single-threaded; info: three-class >= merged " +
                      (three_ok >= merged_ok ? "yes" : "no") + ", reference matrices merged " + fmt(ref_merged) +
                      " vs three-class " + fmt(ref_three)};
}

Outcome criterion_grid()
{
    auto& rep = replication();
    const GridSpec grid;
    const auto first = grid_search(rep.train, LabelScheme(SchemeId::Test1), grid, 1);
    const auto second = grid_search(rep.train, LabelScheme(SchemeId::Test1), grid, 2);
    const auto csv_a = grid_csv(first);
    const auto csv_b = grid_csv(second);
    double best = 0.0;
    std::size_t failed = 0;
    for (const auto& c : first.cells) {
        best = std::max(best, c.mean_accuracy);
        failed += c.failed ? 1 : 0;
    }
    const auto rows = static_cast<std::size_t>(std::count(csv_a.begin(), csv_a.end(), '\n')) - 1;
    const bool pass = first.cells.size() == 30 && first.best().mean_accuracy == best && csv_a == csv_b &&
                      rows == 30 * grid.folds + 30;
    return {pass, "cells " + std::to_string(first.cells.size()) + ", selected C " + format_double(first.best().c) +
                      " gamma " + format_double(first.best().gamma) + " mean " + fmt(first.best().mean_accuracy) +
                      " = max " + fmt(best) + ", csv rows " + std::to_string(rows) + ", identical across runs: " +
                      (csv_a == csv_b ? "yes" : "no") + ", non-converged cells " + std::to_string(failed) +
                      "; info: selected mean >= 0.93 " + (first.best().mean_accuracy >= 0.93 ? "yes" : "no")};
}

Outcome criterion_persistence()
{
    auto& rep = replication();
    const auto dir = std::filesystem::temp_directory_path();
    std::size_t compared = 0;
    bool equal = true;
    bool portable = true;
    for (const OvoModel* model : {&rep.six, &rep.three}) {
        const auto path = dir / ("fpsvm_acceptance_" + std::string(model->scheme.name()) + ".fpsvm");
        save_model(*model, path);
        std::ifstream in(path, std::ios::binary);
        std::stringstream bytes;
        bytes << in.rdbuf();
        const auto text = bytes.str();
        for (const unsigned char ch : text) {
            portable = portable && (ch == '\n' || (ch >= 0x20 && ch < 0x7f));
        }
        // Another machine sees only the bytes.
        const auto loaded = deserialize_model(text);
        portable = portable && serialize_model(loaded) == text;
        for (const auto& s : rep.test.samples()) {
            const auto a = tally(*model, s);
            const auto b = tally(loaded, s);
            equal = equal && a.winner == b.winner && a.votes == b.votes && a.margins == b.margins;
            ++compared;
        }
        std::filesystem::remove(path);
    }
    return {equal && portable, std::to_string(compared / 2) + " held-out samples x 2 models; predictions and margins " +
                                   (equal ? "identical" : "DIFFER") + "; file is " +
                                   (portable ? "plain ASCII and re-serializes byte-identically" : "NOT portable")};
}

Outcome criterion_invariants()
{
    auto& rep = replication();
    std::vector<std::string> broken;

    // Gram PSD spot-checks on standardized training rows.
    const auto z = rep.six.scaler.apply(rep.train.samples());
    std::mt19937_64 rng(5);
    double min_eig = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> idx(kPsdRows);
        for (auto& i : idx) {
            i = std::uniform_int_distribution<std::size_t>(0, z.rows() - 1)(rng);
        }
        for (const double gamma : {0.01, 1.0, 100.0}) {
            const auto k = gram(KernelParams(gamma), z.select_rows(idx));
            const auto size = static_cast<Eigen::Index>(kPsdRows);
            Eigen::MatrixXd m(size, size);
            for (Eigen::Index i = 0; i < size; ++i) {
                for (Eigen::Index j = 0; j < size; ++j) {
                    m(i, j) = k(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                }
            }
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
        }
    }
    if (min_eig < kPsdFloor) {
        broken.push_back("gram min eigenvalue " + sci(min_eig));
    }

    // Standardizer bounds on the data it was fitted to.
    double worst_mean = 0.0;
    double worst_var = 0.0;
    const auto rows = static_cast<double>(z.rows());
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        long double total = 0.0L;
        for (std::size_t i = 0; i < z.rows(); ++i) {
            total += z(i, j);
        }
        const auto mean = static_cast<double>(total / rows);
        double var = 0.0;
        for (std::size_t i = 0; i < z.rows(); ++i) {
            var += (z(i, j) - mean) * (z(i, j) - mean);
        }
        var /= rows;
        worst_mean = std::max(worst_mean, std::fabs(mean));
        worst_var = std::max(worst_var, std::fabs(var - 1.0));
    }
    if (worst_mean > kScalerMeanBound || worst_var > kScalerVarianceBound) {
        broken.push_back("scaler |mean| " + sci(worst_mean) + " |var-1| " + sci(worst_var));
    }

    // Vote totals and confusion identities for both trained models.
    for (const OvoModel* model : {&rep.six, &rep.three}) {
        const std::size_t k = model->classes.size();
        std::vector<std::string> pred;
        for (const auto& s : rep.test.samples()) {
            const auto t = tally(*model, s);
            if (std::accumulate(t.votes.begin(), t.votes.end(), std::size_t{0}) != k * (k - 1) / 2) {
                broken.push_back("vote total");
            }
            pred.push_back(model->classes[t.winner]);
        }
        const auto truth = relabel_names(rep.test.samples(), model->scheme);
        const auto cm = confusion(truth, pred, model->classes);
        const auto r = report(cm);
        for (std::size_t c = 0; c < k; ++c) {
            const auto support = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), model->classes[c]));
            if (cm.row_sum(c) != support || r.classes[c].support != support) {
                broken.push_back("row sum for " + model->classes[c]);
            }
        }
        if (cm.total() != rep.test.size()) {
            broken.push_back("confusion total");
        }
        if (std::fabs(r.weighted.recall - r.accuracy) > kRecallIdentityBound) {
            broken.push_back("weighted recall vs accuracy");
        }
    }
    if (!broken.empty()) {
        return {false, broken.front() + " (+" + std::to_string(broken.size() - 1) + " more)"};
    }
    return {true, "gram min eigenvalue " + sci(min_eig) + " over 60 spot checks, scaler |mean| " + sci(worst_mean) +
                      " |var-1| " + sci(worst_var) +
                      ", vote totals, row sums and weighted recall = accuracy hold for both models"};
}

} // namespace

int main()
{
    report_line(1, "metrics reproduce reference reports", criterion_metrics);
    report_line(2, "SMO matches brute-force QP on 50 small problems", criterion_solver);
    report_line(3, "two-point closed form", criterion_closed_form);
    report_line(4, "end-to-end synthetic replication", criterion_replication);
    report_line(5, "default grid search contract", criterion_grid);
    report_line(6, "model persistence", criterion_persistence);
    report_line(7, "module invariants", criterion_invariants);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
