// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

// fpsvm command-line front end. Talks to the library only through the C API.

#include "fpsvm/fpsvm.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Failure {
    std::string message;
};

void check(fpsvm_status status, const std::string& context = {})
{
    if (status != FPSVM_OK) {
        std::string msg = context.empty() ? std::string() : context + ": ";
        msg += fpsvm_last_error();
        throw Failure{msg};
    }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const noexcept { Free(p); }
};

using DatasetPtr = std::unique_ptr<fpsvm_dataset, Deleter<fpsvm_dataset, fpsvm_dataset_free>>;
using ModelPtr = std::unique_ptr<fpsvm_model, Deleter<fpsvm_model, fpsvm_model_free>>;
using EvalPtr = std::unique_ptr<fpsvm_evaluation, Deleter<fpsvm_evaluation, fpsvm_evaluation_free>>;
using GridPtr = std::unique_ptr<fpsvm_grid_result, Deleter<fpsvm_grid_result, fpsvm_grid_result_free>>;

DatasetPtr load_dataset(const std::string& path)
{
    fpsvm_dataset* raw = nullptr;
    check(fpsvm_dataset_load_csv(path.c_str(), &raw));
    return DatasetPtr(raw);
}

std::pair<DatasetPtr, DatasetPtr> split(const fpsvm_dataset* data, double fraction, std::uint64_t seed)
{
    fpsvm_dataset* train = nullptr;
    fpsvm_dataset* test = nullptr;
    check(fpsvm_dataset_split(data, fraction, seed, &train, &test), "split");
    return {DatasetPtr(train), DatasetPtr(test)};
}

fpsvm_scheme parse_scheme(const std::string& name)
{
    fpsvm_scheme scheme{};
    check(fpsvm_scheme_from_name(name.c_str(), &scheme));
    return scheme;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
        throw Failure{"cannot write " + path};
    }
}

std::string render(const fpsvm_evaluation* eval)
{
    return std::string(fpsvm_evaluation_report_text(eval)) + "\n" + fpsvm_evaluation_confusion_text(eval);
}

// Prints the report and writes the optional report and confusion files.
void emit_evaluation(const fpsvm_evaluation* eval, const std::string& report_out, const std::string& confusion_out)
{
    const auto text = render(eval);
    std::cout << text;
    if (!report_out.empty()) {
        write_file(report_out, text);
    }
    if (!confusion_out.empty()) {
        write_file(confusion_out, fpsvm_evaluation_confusion_csv(eval));
    }
}

struct Options {
    std::string data;
    std::string scheme = "test1";
    std::optional<double> c;
    double gamma = 10.0;
    double test_fraction = 0.2;
    std::uint64_t seed = 7;
    std::size_t n = 5676;
    std::size_t folds = 5;
    std::vector<double> c_grid;
    std::vector<double> gamma_grid;
    unsigned jobs = 0;
    std::string out;
    std::string model;
    std::string model_out;
    std::string report_out;
    std::string confusion;
    std::string confusion_out;
    std::string format = "text";
};

void cmd_synth(const Options& o)
{
    fpsvm_dataset* raw = nullptr;
    check(fpsvm_dataset_synthesize(o.seed, o.n, &raw));
    DatasetPtr data(raw);
    check(fpsvm_dataset_save_csv(data.get(), o.out.c_str()));
    std::size_t counts[FPSVM_PATTERN_COUNT] = {};
    check(fpsvm_dataset_pattern_counts(data.get(), counts));
    for (std::size_t k = 0; k < FPSVM_PATTERN_COUNT; ++k) {
        std::cout << fpsvm_pattern_name(k) << ' ' << counts[k] << '\n';
    }
    std::cout << "total " << fpsvm_dataset_size(data.get()) << '\n';
}

void cmd_train(const Options& o)
{
    const auto scheme = parse_scheme(o.scheme);
    const auto data = load_dataset(o.data);
    const auto [train, test] = split(data.get(), o.test_fraction, o.seed);

    fpsvm_train_options options;
    fpsvm_train_options_init(&options, scheme);
    if (o.c) {
        options.c = *o.c;
    }
    options.gamma = o.gamma;
    options.jobs = o.jobs;

    fpsvm_model* raw = nullptr;
    check(fpsvm_model_train(train.get(), scheme, &options, &raw), "training on " + o.data);
    ModelPtr model(raw);
    std::cerr << "trained " << fpsvm_scheme_name(scheme) << " on " << fpsvm_dataset_size(train.get())
              << " samples (C " << options.c << ", gamma " << options.gamma << "), testing on "
              << fpsvm_dataset_size(test.get()) << '\n';
    if (!o.model_out.empty()) {
        check(fpsvm_model_save(model.get(), o.model_out.c_str()));
    }

    fpsvm_evaluation* eval = nullptr;
    check(fpsvm_model_evaluate(model.get(), test.get(), &eval));
    emit_evaluation(EvalPtr(eval).get(), o.report_out, o.confusion_out);
}

void cmd_grid(const Options& o)
{
    const auto scheme = parse_scheme(o.scheme);
    const auto data = load_dataset(o.data);
    const auto [train, test] = split(data.get(), o.test_fraction, o.seed);

    fpsvm_grid_options options;
    fpsvm_grid_options_init(&options);
    if (!o.c_grid.empty()) {
        options.c_values = o.c_grid.data();
        options.c_count = o.c_grid.size();
    }
    if (!o.gamma_grid.empty()) {
        options.gamma_values = o.gamma_grid.data();
        options.gamma_count = o.gamma_grid.size();
    }
    options.folds = o.folds;
    options.seed = o.seed;
    options.jobs = o.jobs;

    fpsvm_grid_result* raw = nullptr;
    check(fpsvm_grid_search(train.get(), scheme, &options, &raw), "grid search on " + o.data);
    GridPtr grid(raw);
    if (!o.out.empty()) {
        write_file(o.out, fpsvm_grid_csv(grid.get()));
    } else {
        std::cout << fpsvm_grid_csv(grid.get());
    }
    double c = 0.0;
    double gamma = 0.0;
    double mean = 0.0;
    int failed = 0;
    check(fpsvm_grid_cell(grid.get(), fpsvm_grid_selected(grid.get()), &c, &gamma, &mean, &failed));
    for (std::size_t k = 0; k < fpsvm_grid_cell_count(grid.get()); ++k) {
        double kc = 0.0;
        double kg = 0.0;
        int kf = 0;
        check(fpsvm_grid_cell(grid.get(), k, &kc, &kg, nullptr, &kf));
        if (kf) {
            std::cerr << "warning: C " << kc << ", gamma " << kg << " failed to converge on some folds\n";
        }
    }
    std::cerr << "selected C " << c << " gamma " << gamma << " (mean CV accuracy " << mean << ")\n";
    if (!o.out.empty()) {
        std::cout << "selected C " << c << " gamma " << gamma << '\n';
    }
}

void cmd_eval(const Options& o)
{
    fpsvm_model* raw_model = nullptr;
    check(fpsvm_model_load(o.model.c_str(), &raw_model));
    ModelPtr model(raw_model);
    const auto data = load_dataset(o.data);
    fpsvm_evaluation* eval = nullptr;
    check(fpsvm_model_evaluate(model.get(), data.get(), &eval), "evaluating " + o.data);
    emit_evaluation(EvalPtr(eval).get(), o.report_out, o.confusion_out);
}

void cmd_report(const Options& o)
{
    fpsvm_evaluation* raw = nullptr;
    check(fpsvm_evaluation_from_confusion_csv(o.confusion.c_str(), &raw));
    EvalPtr eval(raw);
    const std::string text = o.format == "csv" ? fpsvm_evaluation_report_csv(eval.get())
                                               : fpsvm_evaluation_report_text(eval.get());
    std::cout << text;
    if (!o.report_out.empty()) {
        write_file(o.report_out, text);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gas-liquid flow pattern classification with an RBF support vector machine"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fpsvm_version()));
    Options o;

    const auto positive = CLI::PositiveNumber;
    auto add_scheme = [&](CLI::App* cmd) {
        cmd->add_option("--scheme", o.scheme, "Label scheme: test1, test2 or test3")->capture_default_str();
    };
    auto add_split = [&](CLI::App* cmd) {
        cmd->add_option("--test-fraction", o.test_fraction, "Held-out fraction per class")
            ->capture_default_str()
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--seed", o.seed, "Split and fold seed")->capture_default_str();
    };
    auto add_jobs = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", o.jobs, "Worker threads (0: all cores)")->capture_default_str();
    };

    auto* synth = app.add_subcommand("synth", "Write a synthetic flow-pattern dataset");
    synth->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
    synth->add_option("--n", o.n, "Number of samples")->capture_default_str();
    synth->add_option("--out", o.out, "Output CSV")->required();

    auto* train = app.add_subcommand("train", "Train on a stratified split and report held-out accuracy");
    train->add_option("--data", o.data, "Input CSV")->required();
    add_scheme(train);
    train->add_option("--c", o.c, "Box constraint (default 100 for test1, 1000 otherwise)")->check(positive);
    train->add_option("--gamma", o.gamma, "RBF width")->capture_default_str()->check(positive);
    add_split(train);
    add_jobs(train);
    train->add_option("--model-out", o.model_out, "Write the trained model (.fpsvm)");
    train->add_option("--report-out", o.report_out, "Write the report and confusion matrix");
    train->add_option("--confusion-out", o.confusion_out, "Write the confusion matrix as CSV");

    auto* grid = app.add_subcommand("grid", "Cross-validated grid search over C and gamma");
    grid->add_option("--data", o.data, "Input CSV")->required();
    add_scheme(grid);
    add_split(grid);
    grid->add_option("--folds", o.folds, "Cross-validation folds")->capture_default_str();
    grid->add_option("--c-grid", o.c_grid, "Comma-separated C values")->delimiter(',')->check(positive);
    grid->add_option("--gamma-grid", o.gamma_grid, "Comma-separated gamma values")->delimiter(',')->check(positive);
    add_jobs(grid);
    grid->add_option("--out", o.out, "Grid CSV (default: standard output)");

    auto* eval = app.add_subcommand("eval", "Evaluate a saved model on a dataset");
    eval->add_option("--model", o.model, "Model file")->required();
    eval->add_option("--data", o.data, "Input CSV")->required();
    eval->add_option("--report-out", o.report_out, "Write the report and confusion matrix");
    eval->add_option("--confusion-out", o.confusion_out, "Write the confusion matrix as CSV");

    auto* report = app.add_subcommand("report", "Render a classification report from a confusion matrix CSV");
    report->add_option("--confusion", o.confusion, "Confusion matrix CSV")->required();
    report->add_option("--format", o.format, "text or csv")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "csv"}));
    report->add_option("--report-out", o.report_out, "Write the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) {
            cmd_synth(o);
        } else if (*train) {
            cmd_train(o);
        } else if (*grid) {
            cmd_grid(o);
        } else if (*eval) {
            cmd_eval(o);
        } else if (*report) {
            cmd_report(o);
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
