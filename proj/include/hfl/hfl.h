/* SPDX-License-Identifier: Apache-2.0 */

#ifndef HFL_H
#define HFL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(HFL_BUILDING_SHARED)
#define HFL_API __attribute__((visibility("default")))
#else
#define HFL_API
#endif

typedef enum hfl_status {
    HFL_OK = 0,
    HFL_ERR_PARSE = 1,
    HFL_ERR_DOMAIN = 2,
    HFL_ERR_SIZE_LIMIT = 3,
    HFL_ERR_NOT_WELLORDER = 4,
    HFL_ERR_WELLFOUNDED = 5,
    HFL_ERR_ARGUMENT = 6,
    HFL_ERR_INTERNAL = 7
} hfl_status;

typedef enum hfl_format { HFL_FORMAT_TEXT = 0, HFL_FORMAT_JSON = 1 } hfl_format;

typedef struct hfl_caps {
    size_t level_cap;
    size_t wellorder_cap;
    size_t witness_cap;
} hfl_caps;

/* Opaque handles. Each must be released with its *_free function. */
typedef struct hfl_set hfl_set;
typedef struct hfl_formula hfl_formula;

/* Message of the last failure on this thread; "" after a success. */
HFL_API const char* hfl_last_error(void);
/* 1-based column of the last parse error on this thread, 0 otherwise. */
HFL_API size_t hfl_last_error_column(void);
HFL_API const char* hfl_status_name(hfl_status s);

HFL_API hfl_caps hfl_default_caps(void);
/* Strings returned through char** outputs are owned by the caller. */
HFL_API void hfl_string_free(char* s);

/* ---- sets ---- */
HFL_API hfl_status hfl_set_parse(const char* text, hfl_set** out);
HFL_API hfl_status hfl_set_parse_json(const char* json, hfl_set** out);
HFL_API hfl_status hfl_set_render(const hfl_set* s, hfl_format format, int numerals, char** out);
HFL_API void hfl_set_free(hfl_set* s);
HFL_API size_t hfl_set_size(const hfl_set* s);
HFL_API int hfl_set_equal(const hfl_set* a, const hfl_set* b);
HFL_API int hfl_set_contains(const hfl_set* s, const hfl_set* x);
HFL_API int hfl_set_is_transitive(const hfl_set* s);

HFL_API hfl_status hfl_v_level(size_t n, const hfl_caps* caps, hfl_set** out);
HFL_API hfl_status hfl_lset(size_t n, const hfl_caps* caps, hfl_set** out);
/* "v:N", "l:N" or "file:PATH" (braces notation). */
HFL_API hfl_status hfl_universe(const char* spec, const hfl_caps* caps, hfl_set** out);

/* ---- formulae ---- */
HFL_API hfl_status hfl_formula_parse(const char* text, hfl_formula** out);
HFL_API hfl_status hfl_formula_render(const hfl_formula* p, int sugar, char** out);
/* Goedel number in decimal. */
HFL_API hfl_status hfl_formula_enum(const hfl_formula* p, char** out);
HFL_API size_t hfl_formula_arity(const hfl_formula* p);
HFL_API void hfl_formula_free(hfl_formula* p);

/* Satisfaction of p in universe under env (a comma-separated list of sets,
   head first). *result is 0 or 1. When trace is non-null it receives the
   quantifier instantiation tree. */
HFL_API hfl_status hfl_eval(const hfl_set* universe, const hfl_formula* p, const char* env,
                            int* result, char** trace);

/* A definability witness for subset of universe. With minimal set, the least
   witness under the env/formula order over base_order: "canonical", or
   "lr:N" for the constructible well-order of L_N (universe must be L_N). */
HFL_API hfl_status hfl_witness(const hfl_set* universe, const hfl_set* subset, int minimal,
                               const char* base_order, const hfl_caps* caps, hfl_format format,
                               int sugar, char** out);

/* L_n listed under its well-order with minimal witnesses. When verify is set,
   *verified receives 1 if the induced relation is a well-order on L_n. */
HFL_API hfl_status hfl_wellorder(size_t n, const hfl_caps* caps, hfl_format format, int sugar,
                                 int verify, int* verified, char** out);

/* Axiom and absoluteness report for universe as a class model. *clean is 1
   when every counterexample was independently confirmed and every absoluteness
   check that ran passed. */
HFL_API hfl_status hfl_axioms(const hfl_set* universe, hfl_format format, int* clean, char** out);

#ifdef __cplusplus
}
#endif

#endif
