#ifndef OSPCHAR_OSPCHAR_H
#define OSPCHAR_OSPCHAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OSPC_API __declspec(dllexport)
#else
#define OSPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ospc_status {
  OSPC_OK = 0,
  OSPC_ERR_INVALID_ARGUMENT = 1,
  OSPC_ERR_DOMAIN = 2,
  OSPC_ERR_LIMIT = 3,
  OSPC_ERR_IDENTITY = 4, /* a verification found a mismatch; the report is still returned */
  OSPC_ERR_IO = 5,
  OSPC_ERR_INTERNAL = 6
} ospc_status;

typedef enum ospc_algebra { OSPC_SP = 0, OSPC_OSP = 1 } ospc_algebra;

typedef enum ospc_format { OSPC_FORMAT_JSON = 0, OSPC_FORMAT_CSV = 1, OSPC_FORMAT_TEXT = 2 } ospc_format;

typedef enum ospc_weight_set { OSPC_SET_PC = 0, OSPC_SET_PB = 1, OSPC_SET_PBQ = 2, OSPC_SET_PCHECK = 3 } ospc_weight_set;

typedef struct ospc_context ospc_context;
typedef struct ospc_series ospc_series;   /* truncated weight/q character */
typedef struct ospc_qseries ospc_qseries; /* univariate q-series with rational exponents */
typedef struct ospc_table ospc_table;     /* weight list, decomposition or fusion table */

/* Strings returned through char** are owned by the caller; free with ospc_string_free. */
OSPC_API void ospc_string_free(char* s);
OSPC_API const char* ospc_status_name(ospc_status status);
OSPC_API const char* ospc_version(void);

OSPC_API ospc_status ospc_context_create(ospc_context** out);
OSPC_API void ospc_context_destroy(ospc_context* ctx);
/* Message for the last failed call on this context (empty after success). */
OSPC_API const char* ospc_last_error(const ospc_context* ctx);
OSPC_API ospc_status ospc_context_set_workers(ospc_context* ctx, unsigned workers);
/* NULL disables the fusion-table cache. */
OSPC_API ospc_status ospc_context_set_cache_dir(ospc_context* ctx, const char* dir);
/* Relative principal-depth window for characters; 0 restores the default. */
OSPC_API ospc_status ospc_context_set_depth_window(ospc_context* ctx, int64_t window);
/* Caps enforced on every call: rank <= max_rank (<= 6), trunc <= max_trunc. */
OSPC_API ospc_status ospc_context_set_limits(ospc_context* ctx, int max_rank, int max_trunc);

/* Characters. Weights are C-side integer coordinates of length `rank`. */
OSPC_API ospc_status ospc_char_denominator(ospc_context* ctx, ospc_algebra type, int rank, int trunc, ospc_series** out);
OSPC_API ospc_status ospc_char_theta(ospc_context* ctx, int rank, int trunc, ospc_series** out);
OSPC_API ospc_status ospc_char_verma(ospc_context* ctx, ospc_algebra type, const int64_t* weight, int rank, int trunc,
                                     ospc_series** out);
OSPC_API ospc_status ospc_char_weyl(ospc_context* ctx, ospc_algebra type, const int64_t* weight, int rank, int trunc,
                                    ospc_series** out);
/* Level k = k_num / k_den. */
OSPC_API ospc_status ospc_char_wmodule(ospc_context* ctx, const int64_t* lambda, const int64_t* mu, int rank,
                                       int64_t k_num, int64_t k_den, int trunc, ospc_qseries** out);
OSPC_API ospc_status ospc_char_branching(ospc_context* ctx, const int64_t* lambda, const int64_t* mu, int rank,
                                         int trunc, ospc_qseries** out);

OSPC_API ospc_status ospc_series_term_count(const ospc_series* s, size_t* out);
/* Decimal string of the coefficient of e^weight q^grade. */
OSPC_API ospc_status ospc_series_coefficient(const ospc_series* s, const int64_t* weight, int grade, char** out);
OSPC_API ospc_status ospc_series_render(const ospc_series* s, ospc_format format, char** out);
OSPC_API void ospc_series_destroy(ospc_series* s);
OSPC_API ospc_status ospc_qseries_render(const ospc_qseries* s, ospc_format format, char** out);
OSPC_API void ospc_qseries_destroy(ospc_qseries* s);

/* Verifications return OSPC_OK when the identity holds and OSPC_ERR_IDENTITY when it does not;
   *report (JSON or text) is filled in both cases. */
OSPC_API ospc_status ospc_verify_triple_product(ospc_context* ctx, int rank, int trunc, ospc_format format,
                                                char** report);
OSPC_API ospc_status ospc_verify_branching(ospc_context* ctx, int rank, const int64_t* mu, int trunc,
                                           ospc_format format, char** report);
OSPC_API ospc_status ospc_verify_singular_vanishing(ospc_context* ctx, int rank, int box, int mu_box, int trunc,
                                                    ospc_format format, char** report);
OSPC_API ospc_status ospc_verify_delta_lemma(ospc_context* ctx, int rank, int cases, uint64_t seed,
                                             ospc_format format, char** report);
OSPC_API ospc_status ospc_verify_main_theorem(ospc_context* ctx, int rank, int cases, uint64_t seed, int trunc,
                                              ospc_format format, char** report);
/* p <= 0 sweeps the default ranges for this rank. */
OSPC_API ospc_status ospc_verify_bijections(ospc_context* ctx, int rank, int p, ospc_format format, char** report);
OSPC_API ospc_status ospc_verify_fusion_axioms(ospc_context* ctx, const ospc_table* table, ospc_format format,
                                               char** report);

/* Tables. */
OSPC_API ospc_status ospc_table_admissible(ospc_context* ctx, ospc_weight_set set, int p, int q, int rank,
                                           ospc_table** out);
OSPC_API ospc_status ospc_table_decompose(ospc_context* ctx, int rank, int u, int v, ospc_table** out);
OSPC_API ospc_status ospc_table_affine_fusion(ospc_context* ctx, int rank, int level, ospc_table** out);
OSPC_API ospc_status ospc_table_w_fusion(ospc_context* ctx, int rank, int p, int q, ospc_table** out);
OSPC_API ospc_status ospc_table_osp_fusion(ospc_context* ctx, int rank, int u, int v, ospc_table** out);
OSPC_API ospc_status ospc_table_size(const ospc_table* t, size_t* out);
OSPC_API ospc_status ospc_table_render(const ospc_table* t, ospc_format format, char** out);
OSPC_API void ospc_table_destroy(ospc_table* t);

#ifdef __cplusplus
}
#endif

#endif
