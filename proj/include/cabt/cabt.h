/*
 * C interface to the cellular-automaton backtracking simulator.
 *
 * Every fallible call returns a cabt_status; on failure a message describing
 * the error is available from cabt_last_error() on the same thread until the
 * next call. Strings returned through char** out-parameters are owned by the
 * caller and must be released with cabt_string_free(). Handles are opaque and
 * released with their matching *_destroy function; destroying NULL is a no-op.
 */
#ifndef CABT_H
#define CABT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CABT_BUILDING_LIBRARY)
#define CABT_API __declspec(dllexport)
#else
#define CABT_API __declspec(dllimport)
#endif
#else
#define CABT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cabt_status {
    CABT_OK = 0,
    CABT_ERR_INVALID_ARGUMENT = 1, /* NULL pointer or unknown enumerator */
    CABT_ERR_DOMAIN = 2,
    CABT_ERR_PRECONDITION = 3,
    CABT_ERR_RESOURCE = 4, /* qubit or enumeration cap exceeded */
    CABT_ERR_CONTRACT = 5,
    CABT_ERR_EMPTY_SUBSPACE = 6,
    CABT_ERR_PARSE = 7,
    CABT_ERR_INTERNAL = 8
} cabt_status;

typedef enum cabt_mode {
    CABT_MODE_MARK_POSTSELECT = 0,
    CABT_MODE_FULL_PAPER = 1
} cabt_mode;

typedef struct cabt_instance cabt_instance;
typedef struct cabt_result cabt_result;

typedef struct cabt_selftest_options {
    uint64_t seed;
    double perturbation;
    int requested_width;
} cabt_selftest_options;

#define CABT_DEFAULT_QUBIT_CAP 26
#define CABT_DEFAULT_ENUMERATION_CAP 24

CABT_API const char* cabt_version(void);
CABT_API const char* cabt_status_string(cabt_status status);
CABT_API const char* cabt_last_error(void);
/* 1-based offending character position of the last CABT_ERR_PARSE, else 0. */
CABT_API size_t cabt_last_error_position(void);
CABT_API void cabt_string_free(char* str);

/* Evolution rows as '.'/'#' text (one line per row) and as JSON. */
CABT_API cabt_status cabt_evolve(int rule, const char* initial, int steps, char** rendered, char** json);
CABT_API cabt_status cabt_preimages_json(int rule, const char* target, int steps, int max_width, char** json);
/* width <= 0 skips the simulated extraction probability. */
CABT_API cabt_status cabt_order_json(int64_t base, int64_t modulus, int width, char** json);

/* modulus == 0 leaves the modexp register out (mark_postselect only). */
CABT_API cabt_status cabt_instance_create(int rule, const char* target, int steps, int64_t base, int64_t modulus,
                                          cabt_instance** out);
CABT_API void cabt_instance_destroy(cabt_instance* instance);
CABT_API cabt_status cabt_instance_validate(const cabt_instance* instance, cabt_mode mode);
CABT_API cabt_status cabt_instance_qubit_budget(const cabt_instance* instance, int* qubits);

CABT_API cabt_status cabt_run(const cabt_instance* instance, cabt_mode mode, uint64_t shots, uint64_t seed,
                              int qubit_cap, cabt_result** out);
CABT_API void cabt_result_destroy(cabt_result* result);
CABT_API int cabt_result_verified(const cabt_result* result);
/* Nonzero when post-selection found nothing in measurement. */
CABT_API int cabt_result_nothing_measured(const cabt_result* result);
CABT_API double cabt_result_acceptance(const cabt_result* result);
CABT_API size_t cabt_result_preimage_count(const cabt_result* result);
CABT_API cabt_status cabt_result_preimage(const cabt_result* result, size_t position, char** bitstring);
CABT_API cabt_status cabt_result_json(const cabt_result* result, char** json);

CABT_API void cabt_selftest_default_options(cabt_selftest_options* options);
/* One PASS/FAIL line per acceptance criterion in *report. */
CABT_API cabt_status cabt_selftest(const cabt_selftest_options* options, char** report, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* CABT_H */
