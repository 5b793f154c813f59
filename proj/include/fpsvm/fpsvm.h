/*
 * SPDX-License-Identifier: Apache-2.0
 * Copyright 2026 The fpsvm Authors
 *
 * C interface to the flow-pattern SVM library.
 *
 * Every object is an opaque handle released by its matching *_free call.
 * Functions that can fail return fpsvm_status; on failure the calling
 * thread's message is available from fpsvm_last_error() until the next
 * failing call on that thread. Strings returned by accessor functions are
 * owned by the handle and live as long as it does.
 */
#ifndef FPSVM_FPSVM_H
#define FPSVM_FPSVM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FPSVM_BUILDING_LIBRARY)
#    define FPSVM_API __declspec(dllexport)
#  else
#    define FPSVM_API __declspec(dllimport)
#  endif
#else
#  define FPSVM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fpsvm_status {
    FPSVM_OK = 0,
    FPSVM_ERR_INVALID_ARGUMENT = 1,
    FPSVM_ERR_IO = 2,
    FPSVM_ERR_SCHEMA = 3,
    FPSVM_ERR_PARSE = 4,
    FPSVM_ERR_LABEL = 5,
    FPSVM_ERR_CONVERGENCE = 6,
    FPSVM_ERR_CORRUPT_MODEL = 7,
    FPSVM_ERR_INTERNAL = 99
} fpsvm_status;

typedef enum fpsvm_scheme {
    FPSVM_SCHEME_TEST1 = 1, /* DB, SS, SW, A, I, B */
    FPSVM_SCHEME_TEST2 = 2, /* DB, ST, A, I, B */
    FPSVM_SCHEME_TEST3 = 3  /* Dispersed, Segregated, Intermittent */
} fpsvm_scheme;

typedef struct fpsvm_dataset fpsvm_dataset;
typedef struct fpsvm_model fpsvm_model;
typedef struct fpsvm_evaluation fpsvm_evaluation;
typedef struct fpsvm_grid_result fpsvm_grid_result;

#define FPSVM_PATTERN_COUNT 6

FPSVM_API const char* fpsvm_version(void);
FPSVM_API const char* fpsvm_last_error(void);
FPSVM_API const char* fpsvm_status_name(fpsvm_status status);

FPSVM_API fpsvm_status fpsvm_scheme_from_name(const char* name, fpsvm_scheme* out);
FPSVM_API const char* fpsvm_scheme_name(fpsvm_scheme scheme);
/* Base pattern names in report order: DB, SS, SW, A, I, B. NULL past the end. */
FPSVM_API const char* fpsvm_pattern_name(size_t index);

/* ---- datasets ---------------------------------------------------------- */

FPSVM_API fpsvm_status fpsvm_dataset_load_csv(const char* path, fpsvm_dataset** out);
FPSVM_API fpsvm_status fpsvm_dataset_synthesize(uint64_t seed, size_t n, fpsvm_dataset** out);
FPSVM_API fpsvm_status fpsvm_dataset_save_csv(const fpsvm_dataset* data, const char* path);
FPSVM_API size_t fpsvm_dataset_size(const fpsvm_dataset* data);
/* counts must hold FPSVM_PATTERN_COUNT entries. */
FPSVM_API fpsvm_status fpsvm_dataset_pattern_counts(const fpsvm_dataset* data, size_t* counts);
/* Stratified on base patterns; both outputs keep input order. */
FPSVM_API fpsvm_status fpsvm_dataset_split(const fpsvm_dataset* data, double test_fraction, uint64_t seed,
                                           fpsvm_dataset** train, fpsvm_dataset** test);
FPSVM_API void fpsvm_dataset_free(fpsvm_dataset* data);

/* ---- training and prediction ------------------------------------------- */

typedef struct fpsvm_train_options {
    double c;
    double gamma;
    double kkt_tolerance;
    unsigned jobs; /* 0: one per hardware thread */
} fpsvm_train_options;

/* gamma 10; C 100 for test1, 1000 otherwise; tolerance 1e-3; jobs 0. */
FPSVM_API void fpsvm_train_options_init(fpsvm_train_options* options, fpsvm_scheme scheme);

/* Fits the scaler on `train` and one binary model per class pair. */
FPSVM_API fpsvm_status fpsvm_model_train(const fpsvm_dataset* train, fpsvm_scheme scheme,
                                         const fpsvm_train_options* options, fpsvm_model** out);
FPSVM_API fpsvm_status fpsvm_model_save(const fpsvm_model* model, const char* path);
FPSVM_API fpsvm_status fpsvm_model_load(const char* path, fpsvm_model** out);
FPSVM_API fpsvm_scheme fpsvm_model_scheme(const fpsvm_model* model);
FPSVM_API size_t fpsvm_model_class_count(const fpsvm_model* model);
FPSVM_API const char* fpsvm_model_class_name(const fpsvm_model* model, size_t index);
FPSVM_API double fpsvm_model_c(const fpsvm_model* model);
FPSVM_API double fpsvm_model_gamma(const fpsvm_model* model);
/* Writes one class index per sample into classes[0 .. fpsvm_dataset_size(data)). */
FPSVM_API fpsvm_status fpsvm_model_predict(const fpsvm_model* model, const fpsvm_dataset* data, size_t* classes,
                                           size_t capacity);
FPSVM_API void fpsvm_model_free(fpsvm_model* model);

/* ---- evaluation reports ------------------------------------------------ */

/* Fails with FPSVM_ERR_LABEL if a sample's class is not one of the model's. */
FPSVM_API fpsvm_status fpsvm_model_evaluate(const fpsvm_model* model, const fpsvm_dataset* data,
                                            fpsvm_evaluation** out);
/* Report from a confusion-matrix CSV (header row and first column are class names). */
FPSVM_API fpsvm_status fpsvm_evaluation_from_confusion_csv(const char* path, fpsvm_evaluation** out);
FPSVM_API double fpsvm_evaluation_accuracy(const fpsvm_evaluation* eval);
FPSVM_API const char* fpsvm_evaluation_report_text(const fpsvm_evaluation* eval);
FPSVM_API const char* fpsvm_evaluation_report_csv(const fpsvm_evaluation* eval);
FPSVM_API const char* fpsvm_evaluation_confusion_text(const fpsvm_evaluation* eval);
FPSVM_API const char* fpsvm_evaluation_confusion_csv(const fpsvm_evaluation* eval);
FPSVM_API void fpsvm_evaluation_free(fpsvm_evaluation* eval);

/* ---- grid search ------------------------------------------------------- */

typedef struct fpsvm_grid_options {
    const double* c_values;
    size_t c_count;
    const double* gamma_values;
    size_t gamma_count;
    size_t folds;
    uint64_t seed;
    unsigned jobs; /* 0: one per hardware thread */
} fpsvm_grid_options;

/* C in {0.1 .. 10000} and gamma in {0.01 .. 100} by decades, 5 folds, seed 0. */
FPSVM_API void fpsvm_grid_options_init(fpsvm_grid_options* options);

FPSVM_API fpsvm_status fpsvm_grid_search(const fpsvm_dataset* train, fpsvm_scheme scheme,
                                         const fpsvm_grid_options* options, fpsvm_grid_result** out);
FPSVM_API size_t fpsvm_grid_cell_count(const fpsvm_grid_result* result);
FPSVM_API fpsvm_status fpsvm_grid_cell(const fpsvm_grid_result* result, size_t index, double* c, double* gamma,
                                       double* mean_accuracy, int* failed);
FPSVM_API size_t fpsvm_grid_selected(const fpsvm_grid_result* result);
FPSVM_API const char* fpsvm_grid_csv(const fpsvm_grid_result* result);
FPSVM_API void fpsvm_grid_result_free(fpsvm_grid_result* result);

#ifdef __cplusplus
}
#endif

#endif /* FPSVM_FPSVM_H */
