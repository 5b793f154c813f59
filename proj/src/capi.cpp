// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#include "fpsvm/fpsvm.h"

#include "fpsvm/dataset.hpp"
#include "fpsvm/error.hpp"
#include "fpsvm/metrics.hpp"
#include "fpsvm/model_file.hpp"
#include "fpsvm/model_selection.hpp"
#include "fpsvm/multiclass.hpp"

#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

struct fpsvm_dataset {
    fpsvm::Dataset data;
};

struct fpsvm_model {
    fpsvm::OvoModel model;
};

struct fpsvm_evaluation {
    fpsvm::ConfusionMatrix confusion;
    fpsvm::ClassReport report;
    std::string report_text;
    std::string report_csv;
    std::string confusion_text;
    std::string confusion_csv;
};

struct fpsvm_grid_result {
    fpsvm::GridResult result;
    std::string csv;
};

namespace {

thread_local std::string g_last_error;

fpsvm_status status_of(fpsvm::ErrorCode code)
{
    switch (code) {
    case fpsvm::ErrorCode::InvalidArgument: return FPSVM_ERR_INVALID_ARGUMENT;
    case fpsvm::ErrorCode::Io: return FPSVM_ERR_IO;
    case fpsvm::ErrorCode::Schema: return FPSVM_ERR_SCHEMA;
    case fpsvm::ErrorCode::Parse: return FPSVM_ERR_PARSE;
    case fpsvm::ErrorCode::Label: return FPSVM_ERR_LABEL;
    case fpsvm::ErrorCode::Convergence: return FPSVM_ERR_CONVERGENCE;
    case fpsvm::ErrorCode::CorruptModel: return FPSVM_ERR_CORRUPT_MODEL;
    }
    return FPSVM_ERR_INTERNAL;
}

fpsvm_status fail(fpsvm_status status, std::string message)
{
    g_last_error = std::move(message);
    return status;
}

template <typename Body>
fpsvm_status guard(Body&& body) noexcept
{
    try {
        body();
        return FPSVM_OK;
    } catch (const fpsvm::Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(FPSVM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FPSVM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FPSVM_ERR_INTERNAL, "unknown error");
    }
}

#define FPSVM_REQUIRE(cond, what)                                   \
    do {                                                            \
        if (!(cond)) {                                              \
            return fail(FPSVM_ERR_INVALID_ARGUMENT, (what));        \
        }                                                           \
    } while (0)

std::optional<fpsvm::LabelScheme> to_scheme(fpsvm_scheme scheme)
{
    switch (scheme) {
    case FPSVM_SCHEME_TEST1: return fpsvm::LabelScheme(fpsvm::SchemeId::Test1);
    case FPSVM_SCHEME_TEST2: return fpsvm::LabelScheme(fpsvm::SchemeId::Test2);
    case FPSVM_SCHEME_TEST3: return fpsvm::LabelScheme(fpsvm::SchemeId::Test3);
    }
    return std::nullopt;
}

fpsvm_scheme from_scheme(const fpsvm::LabelScheme& scheme)
{
    switch (scheme.id()) {
    case fpsvm::SchemeId::Test1: return FPSVM_SCHEME_TEST1;
    case fpsvm::SchemeId::Test2: return FPSVM_SCHEME_TEST2;
    case fpsvm::SchemeId::Test3: return FPSVM_SCHEME_TEST3;
    }
    return FPSVM_SCHEME_TEST1;
}

unsigned resolve_jobs(unsigned jobs)
{
    if (jobs > 0) {
        return jobs;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

fpsvm_evaluation* make_evaluation(fpsvm::ConfusionMatrix cm)
{
    auto report = fpsvm::report(cm);
    auto* e = new fpsvm_evaluation{std::move(cm), std::move(report), {}, {}, {}, {}};
    e->report_text = fpsvm::render_text(e->report);
    e->report_csv = fpsvm::render_csv(e->report);
    e->confusion_text = fpsvm::render_confusion_text(e->confusion);
    e->confusion_csv = fpsvm::render_confusion_csv(e->confusion);
    return e;
}

constexpr double kDefaultC[] = {0.1, 1, 10, 100, 1000, 10000};
constexpr double kDefaultGamma[] = {0.01, 0.1, 1, 10, 100};

} // namespace

extern "C" {

const char* fpsvm_version(void)
{
    return "1.0.0";
}

const char* fpsvm_last_error(void)
{
    return g_last_error.c_str();
}

const char* fpsvm_status_name(fpsvm_status status)
{
    switch (status) {
    case FPSVM_OK: return "ok";
    case FPSVM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FPSVM_ERR_IO: return "i/o error";
    case FPSVM_ERR_SCHEMA: return "schema error";
    case FPSVM_ERR_PARSE: return "parse error";
    case FPSVM_ERR_LABEL: return "label error";
    case FPSVM_ERR_CONVERGENCE: return "convergence failure";
    case FPSVM_ERR_CORRUPT_MODEL: return "corrupt model";
    case FPSVM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

fpsvm_status fpsvm_scheme_from_name(const char* name, fpsvm_scheme* out)
{
    FPSVM_REQUIRE(name != nullptr && out != nullptr, "null argument");
    const auto scheme = fpsvm::LabelScheme::parse(name);
    if (!scheme) {
        return fail(FPSVM_ERR_INVALID_ARGUMENT,
                    std::string("unknown scheme \"") + name + "\" (expected test1, test2 or test3)");
    }
    *out = from_scheme(*scheme);
    return FPSVM_OK;
}

const char* fpsvm_scheme_name(fpsvm_scheme scheme)
{
    const auto s = to_scheme(scheme);
    return s ? s->name().data() : nullptr;
}

const char* fpsvm_pattern_name(size_t index)
{
    if (index >= fpsvm::kPatternCount) {
        return nullptr;
    }
    return fpsvm::to_string(fpsvm::kAllPatterns[index]).data();
}

// ---- datasets -------------------------------------------------------------

fpsvm_status fpsvm_dataset_load_csv(const char* path, fpsvm_dataset** out)
{
    FPSVM_REQUIRE(path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    return guard([&] { *out = new fpsvm_dataset{fpsvm::load_csv(path)}; });
}

fpsvm_status fpsvm_dataset_synthesize(uint64_t seed, size_t n, fpsvm_dataset** out)
{
    FPSVM_REQUIRE(out != nullptr, "null argument");
    *out = nullptr;
    return guard([&] { *out = new fpsvm_dataset{fpsvm::synth_generate(seed, n)}; });
}

fpsvm_status fpsvm_dataset_save_csv(const fpsvm_dataset* data, const char* path)
{
    FPSVM_REQUIRE(data != nullptr && path != nullptr, "null argument");
    return guard([&] { fpsvm::save_csv(data->data, path); });
}

size_t fpsvm_dataset_size(const fpsvm_dataset* data)
{
    return data != nullptr ? data->data.size() : 0;
}

fpsvm_status fpsvm_dataset_pattern_counts(const fpsvm_dataset* data, size_t* counts)
{
    FPSVM_REQUIRE(data != nullptr && counts != nullptr, "null argument");
    const auto c = data->data.pattern_counts();
    std::copy(c.begin(), c.end(), counts);
    return FPSVM_OK;
}

fpsvm_status fpsvm_dataset_split(const fpsvm_dataset* data, double test_fraction, uint64_t seed,
                                 fpsvm_dataset** train, fpsvm_dataset** test)
{
    FPSVM_REQUIRE(data != nullptr && train != nullptr && test != nullptr, "null argument");
    *train = nullptr;
    *test = nullptr;
    return guard([&] {
        auto [tr, te] = fpsvm::stratified_split(data->data, test_fraction, seed);
        auto a = std::make_unique<fpsvm_dataset>(fpsvm_dataset{std::move(tr)});
        auto b = std::make_unique<fpsvm_dataset>(fpsvm_dataset{std::move(te)});
        *train = a.release();
        *test = b.release();
    });
}

void fpsvm_dataset_free(fpsvm_dataset* data)
{
    delete data;
}

// ---- training and prediction ----------------------------------------------

void fpsvm_train_options_init(fpsvm_train_options* options, fpsvm_scheme scheme)
{
    if (options == nullptr) {
        return;
    }
    options->c = scheme == FPSVM_SCHEME_TEST1 ? 100.0 : 1000.0;
    options->gamma = 10.0;
    options->kkt_tolerance = 1e-3;
    options->jobs = 0;
}

fpsvm_status fpsvm_model_train(const fpsvm_dataset* train, fpsvm_scheme scheme, const fpsvm_train_options* options,
                               fpsvm_model** out)
{
    FPSVM_REQUIRE(train != nullptr && options != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    const auto s = to_scheme(scheme);
    FPSVM_REQUIRE(s.has_value(), "unknown scheme");
    return guard([&] {
        fpsvm::TrainConfig config;
        config.c = options->c;
        config.kernel = fpsvm::KernelParams(options->gamma);
        config.kkt_tolerance = options->kkt_tolerance;
        *out = new fpsvm_model{fpsvm::train_ovo(train->data, *s, config, resolve_jobs(options->jobs))};
    });
}

fpsvm_status fpsvm_model_save(const fpsvm_model* model, const char* path)
{
    FPSVM_REQUIRE(model != nullptr && path != nullptr, "null argument");
    return guard([&] { fpsvm::save_model(model->model, path); });
}

fpsvm_status fpsvm_model_load(const char* path, fpsvm_model** out)
{
    FPSVM_REQUIRE(path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    return guard([&] { *out = new fpsvm_model{fpsvm::load_model(path)}; });
}

fpsvm_scheme fpsvm_model_scheme(const fpsvm_model* model)
{
    return model != nullptr ? from_scheme(model->model.scheme) : FPSVM_SCHEME_TEST1;
}

size_t fpsvm_model_class_count(const fpsvm_model* model)
{
    return model != nullptr ? model->model.classes.size() : 0;
}

const char* fpsvm_model_class_name(const fpsvm_model* model, size_t index)
{
    if (model == nullptr || index >= model->model.classes.size()) {
        return nullptr;
    }
    return model->model.classes[index].c_str();
}

double fpsvm_model_c(const fpsvm_model* model)
{
    return model != nullptr ? model->model.c : 0.0;
}

double fpsvm_model_gamma(const fpsvm_model* model)
{
    return model != nullptr ? model->model.gamma : 0.0;
}

fpsvm_status fpsvm_model_predict(const fpsvm_model* model, const fpsvm_dataset* data, size_t* classes,
                                 size_t capacity)
{
    FPSVM_REQUIRE(model != nullptr && data != nullptr && classes != nullptr, "null argument");
    FPSVM_REQUIRE(capacity >= data->data.size(), "prediction buffer is smaller than the dataset");
    return guard([&] {
        const auto samples = data->data.samples();
        for (std::size_t i = 0; i < samples.size(); ++i) {
            classes[i] = fpsvm::predict_index(model->model, samples[i]);
        }
    });
}

void fpsvm_model_free(fpsvm_model* model)
{
    delete model;
}

// ---- evaluation -------------------------------------------------------------

fpsvm_status fpsvm_model_evaluate(const fpsvm_model* model, const fpsvm_dataset* data, fpsvm_evaluation** out)
{
    FPSVM_REQUIRE(model != nullptr && data != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    return guard([&] {
        const auto& m = model->model;
        const auto truth = fpsvm::relabel_names(data->data.samples(), m.scheme);
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (std::find(m.classes.begin(), m.classes.end(), truth[i]) == m.classes.end()) {
                throw fpsvm::Error(fpsvm::ErrorCode::Label,
                                   "sample " + std::to_string(i) + " has class " + truth[i] +
                                       ", which the model (scheme " + std::string(m.scheme.name()) +
                                       ") was not trained on");
            }
        }
        const auto predicted = fpsvm::predict_batch(m, data->data.samples());
        *out = make_evaluation(fpsvm::confusion(truth, predicted, m.classes));
    });
}

fpsvm_status fpsvm_evaluation_from_confusion_csv(const char* path, fpsvm_evaluation** out)
{
    FPSVM_REQUIRE(path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    return guard([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw fpsvm::Error(fpsvm::ErrorCode::Io, std::string("cannot open confusion matrix ") + path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        *out = make_evaluation(fpsvm::parse_confusion_csv(buffer.str()));
    });
}

double fpsvm_evaluation_accuracy(const fpsvm_evaluation* eval)
{
    return eval != nullptr ? eval->report.accuracy : 0.0;
}

const char* fpsvm_evaluation_report_text(const fpsvm_evaluation* eval)
{
    return eval != nullptr ? eval->report_text.c_str() : nullptr;
}

const char* fpsvm_evaluation_report_csv(const fpsvm_evaluation* eval)
{
    return eval != nullptr ? eval->report_csv.c_str() : nullptr;
}

const char* fpsvm_evaluation_confusion_text(const fpsvm_evaluation* eval)
{
    return eval != nullptr ? eval->confusion_text.c_str() : nullptr;
}

const char* fpsvm_evaluation_confusion_csv(const fpsvm_evaluation* eval)
{
    return eval != nullptr ? eval->confusion_csv.c_str() : nullptr;
}

void fpsvm_evaluation_free(fpsvm_evaluation* eval)
{
    delete eval;
}

// ---- grid search --------------------------------------------------------------

void fpsvm_grid_options_init(fpsvm_grid_options* options)
{
    if (options == nullptr) {
        return;
    }
    options->c_values = kDefaultC;
    options->c_count = std::size(kDefaultC);
    options->gamma_values = kDefaultGamma;
    options->gamma_count = std::size(kDefaultGamma);
    options->folds = 5;
    options->seed = 0;
    options->jobs = 0;
}

fpsvm_status fpsvm_grid_search(const fpsvm_dataset* train, fpsvm_scheme scheme, const fpsvm_grid_options* options,
                               fpsvm_grid_result** out)
{
    FPSVM_REQUIRE(train != nullptr && options != nullptr && out != nullptr, "null argument");
    FPSVM_REQUIRE(options->c_values != nullptr && options->gamma_values != nullptr, "null grid values");
    *out = nullptr;
    const auto s = to_scheme(scheme);
    FPSVM_REQUIRE(s.has_value(), "unknown scheme");
    return guard([&] {
        fpsvm::GridSpec spec;
        spec.c_values.assign(options->c_values, options->c_values + options->c_count);
        spec.gamma_values.assign(options->gamma_values, options->gamma_values + options->gamma_count);
        spec.folds = options->folds;
        spec.seed = options->seed;
        auto result = fpsvm::grid_search(train->data, *s, spec, resolve_jobs(options->jobs));
        auto csv = fpsvm::grid_csv(result);
        *out = new fpsvm_grid_result{std::move(result), std::move(csv)};
    });
}

size_t fpsvm_grid_cell_count(const fpsvm_grid_result* result)
{
    return result != nullptr ? result->result.cells.size() : 0;
}

fpsvm_status fpsvm_grid_cell(const fpsvm_grid_result* result, size_t index, double* c, double* gamma,
                             double* mean_accuracy, int* failed)
{
    FPSVM_REQUIRE(result != nullptr, "null argument");
    FPSVM_REQUIRE(index < result->result.cells.size(), "grid cell index out of range");
    const auto& cell = result->result.cells[index];
    if (c != nullptr) *c = cell.c;
    if (gamma != nullptr) *gamma = cell.gamma;
    if (mean_accuracy != nullptr) *mean_accuracy = cell.mean_accuracy;
    if (failed != nullptr) *failed = cell.failed ? 1 : 0;
    return FPSVM_OK;
}

size_t fpsvm_grid_selected(const fpsvm_grid_result* result)
{
    return result != nullptr ? result->result.selected : 0;
}

const char* fpsvm_grid_csv(const fpsvm_grid_result* result)
{
    return result != nullptr ? result->csv.c_str() : nullptr;
}

void fpsvm_grid_result_free(fpsvm_grid_result* result)
{
    delete result;
}

} // extern "C"
