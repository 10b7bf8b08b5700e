#ifndef QRE_QRE_H
#define QRE_QRE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QRE_API __declspec(dllexport)
#else
#define QRE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qre_status {
  QRE_OK = 0,
  QRE_INVALID_ARGUMENT = 1,
  QRE_PARSE_ERROR = 2,
  QRE_INFEASIBLE = 3,
  QRE_CONTEXT_MISMATCH = 4,
  QRE_INTERNAL = 5
} qre_status;

typedef struct qre_context qre_context;
typedef struct qre_element qre_element;
typedef struct qre_doc qre_doc;

QRE_API const char* qre_version(void);

/* Message of the last failed call on this thread; empty after a success. */
QRE_API const char* qre_last_error(void);
QRE_API const char* qre_status_name(qre_status s);

/* Every char* handed out by the library must be released here. */
QRE_API void qre_string_free(char* s);

/* ---- contexts: one matrix size n, 1 <= n <= 8 ---- */

QRE_API qre_status qre_context_new(int n, qre_context** out);
QRE_API void qre_context_free(qre_context* ctx);
QRE_API int qre_context_n(const qre_context* ctx);
/* Bounds each memo table of the context to cap entries; 0 means unbounded. */
QRE_API qre_status qre_context_set_cache_cap(qre_context* ctx, size_t cap);
QRE_API qre_status qre_context_cache_size(const qre_context* ctx, size_t* out);
/* Generator tables of R, its inverse and R~ as JSON. */
QRE_API qre_status qre_context_rform_json(const qre_context* ctx, char** out);

/* ---- elements of the quantum matrix algebra, kept in normal form ----
 * An element remembers its context; mixing contexts is QRE_CONTEXT_MISMATCH.
 * Results of qre_element_twist and qre_element_braided_* live in the
 * covariantized algebra, written in the same basis. */

QRE_API qre_status qre_element_one(const qre_context* ctx, qre_element** out);
QRE_API qre_status qre_element_generator(const qre_context* ctx, int row, int col, qre_element** out);
/* Word syntax: x[i,j]^k factors joined by '*', or "1". */
QRE_API qre_status qre_element_from_word(const qre_context* ctx, const char* word, qre_element** out);
QRE_API qre_status qre_element_from_json(const qre_context* ctx, const char* json, qre_element** out);
QRE_API qre_status qre_element_qdet(const qre_context* ctx, qre_element** out);
/* The closed braided determinant; as_printed != 0 uses exceedance exponents. */
QRE_API qre_status qre_element_braided_det(const qre_context* ctx, int as_printed, qre_element** out);
/* The same determinant as a sum of braided monomials, rendered in format
 * "json", "text" or "latex". */
QRE_API qre_status qre_braided_det_formula(int n, int as_printed, const char* format, char** out);
QRE_API void qre_element_free(qre_element* e);

QRE_API qre_status qre_element_add(const qre_element* a, const qre_element* b, qre_element** out);
QRE_API qre_status qre_element_sub(const qre_element* a, const qre_element* b, qre_element** out);
QRE_API qre_status qre_element_mul(const qre_element* a, const qre_element* b, qre_element** out);
QRE_API qre_status qre_element_braided_mul(const qre_element* a, const qre_element* b, qre_element** out);
QRE_API qre_status qre_element_twist(const qre_element* a, qre_element** out);
/* Reduces every coefficient modulo the ell-th cyclotomic polynomial in q. */
QRE_API qre_status qre_element_specialize(const qre_element* a, int ell, qre_element** out);
QRE_API qre_status qre_element_equal(const qre_element* a, const qre_element* b, int* out);
QRE_API qre_status qre_element_term_count(const qre_element* a, size_t* out);
QRE_API qre_status qre_element_to_string(const qre_element* a, char** out);
QRE_API qre_status qre_element_to_json(const qre_element* a, char** out);

/* ---- presentations ----
 * family: "mn", "gln", "sln", "small-gln", "small-sln". ell is ignored
 * (pass 0) for the first three and must be odd and >= 3 otherwise. */

QRE_API qre_status qre_doc_present(const char* family, int n, int ell, qre_doc** out);
QRE_API qre_status qre_doc_from_json(const char* json, qre_doc** out);
QRE_API void qre_doc_free(qre_doc* doc);
QRE_API qre_status qre_doc_relation_count(const qre_doc* doc, size_t* out);
/* format: "json", "text" or "latex". */
QRE_API qre_status qre_doc_render(const qre_doc* doc, const char* format, char** out);

/* ---- combinatorics ---- */

/* sigma_q(parts) as JSON with "value", "factors", "display" and "expanded";
 * ell > 0 adds the reduction modulo the ell-th cyclotomic polynomial. */
QRE_API qre_status qre_sigma_json(const int* parts, size_t len, int n, int ell, char** out);
/* JSON array of the index tuples in V^k(parts). */
QRE_API qre_status qre_vset_json(int k, const int* parts, size_t len, char** out);
QRE_API qre_status qre_count_terms(int n, int ell, int k, uint64_t* enumerated, uint64_t* formula);

/* ---- verification ----
 * params_json may be NULL; recognised keys are n, ell, seed, workers,
 * budget, long_running and timing. The report is JSON. */

QRE_API qre_status qre_verify(const char* suite, const char* params_json, char** report, size_t* failures);
/* Newline separated suite names. */
QRE_API qre_status qre_verify_suites(char** out);

#ifdef __cplusplus
}
#endif

#endif
