#ifndef QUOTLAT_QUOTLAT_H
#define QUOTLAT_QUOTLAT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QL_API __declspec(dllexport)
#else
#define QL_API __attribute__((visibility("default")))
#endif

typedef enum ql_status {
    QL_OK = 0,
    QL_INVALID_ARGUMENT,
    QL_PARSE_ERROR,
    QL_DEGENERATE_FORM,
    QL_NOT_P_ELEMENTARY,
    QL_DEPENDENT_ROWS,
    QL_NOT_IN_DUAL,
    QL_NON_INTEGRAL_RESULT,
    QL_NOT_DEFINITE,
    QL_NOT_RANK2,
    QL_NOT_ORDER_P,
    QL_UNSUPPORTED_PRIME,
    QL_MIDDLE_BLOCKS_PRESENT,
    QL_HYPOTHESES_NOT_MET,
    QL_TORSION_PRESENT,
    QL_HYPOTHESIS_FAILED,
    QL_NOT_ORDER3,
    QL_NOT_STABLE,
    QL_WEIGHT_UNKNOWN,
    QL_WEIGHT_TWO_PRESENT,
    QL_INFEASIBLE,
    QL_FIXED_COUNT_MISMATCH,
    QL_DISCR_MISMATCH,
    QL_NO_INTEGRAL_SCALE,
    QL_GLUE_NOT_IN_DUAL,
    QL_GLUE_NOT_OVERLATTICE,
    QL_NOT_COPRIME,
    QL_CLASSIFICATION_FAILURE,
    QL_NON_INTEGRAL_EXPANSION,
    QL_OUTSIDE_SUPPORTED_SPAN,
    QL_SCHEMA_ERROR,
    QL_CONSISTENCY_ERROR,
    QL_MISSING_DATA,
    QL_IO_ERROR,
    QL_NOT_FOUND,
    QL_INTERNAL = 100
} ql_status;

typedef enum ql_verdict { QL_NORMAL = 0, QL_NOT_NORMAL = 1, QL_UNKNOWN = 2 } ql_verdict;

typedef enum ql_format { QL_FORMAT_TABLE = 0, QL_FORMAT_JSON = 1 } ql_format;

typedef struct ql_lattice ql_lattice;
typedef struct ql_scenario ql_scenario;

/* Strings returned through char** are owned by the caller: release with
 * ql_string_free.  Matrices travel as JSON arrays of rows; entries are
 * integers or decimal strings. */

QL_API const char* ql_version(void);
QL_API const char* ql_status_name(ql_status s);
/* Message of the last failure on the calling thread. */
QL_API const char* ql_last_error(void);
QL_API void ql_string_free(char* s);

QL_API ql_status ql_lattice_parse(const char* expr, ql_lattice** out);
QL_API ql_status ql_lattice_from_gram(const char* gram_json, ql_lattice** out);
QL_API void ql_lattice_free(ql_lattice* l);
QL_API ql_status ql_lattice_rank(const ql_lattice* l, size_t* out);
QL_API ql_status ql_lattice_gram_json(const ql_lattice* l, char** out);
/* rank, det, signature, discriminant group, reduced binary blocks */
QL_API ql_status ql_lattice_invariants_json(const ql_lattice* l, char** out);
/* L^v(p) */
QL_API ql_status ql_lattice_quotient_middle(const ql_lattice* l, long p, ql_lattice** out);

QL_API ql_status ql_snf_json(const char* matrix_json, char** out);
/* gram_json may be NULL; with a Gram the invariant and sigma-kernel data are added. */
QL_API ql_status ql_jordan_json(const char* matrix_json, long p, const char* gram_json, char** out);

QL_API ql_status ql_weight_json(long p, const long* exponents, size_t n, char** out);
QL_API ql_status ql_weight2d_json(long p, long q, char** out);

/* gram_json NULL selects U^3 + E8(-1)^2.  Classes are JSON arrays of length
 * rank + 1: coordinates on H^2(S), then the delta coefficient. */
QL_API ql_status ql_hilb2_json(const char* gram_json, const char* x_json, const char* y_json, char** out);
QL_API ql_status ql_hilb2_s_lattice_json(const char* gram_json, char** out);

/* ref: a file path, or a catalog name or alias (case-insensitive). */
QL_API ql_status ql_scenario_load(const char* ref, ql_scenario** out);
QL_API ql_status ql_scenario_parse(const char* json_text, ql_scenario** out);
QL_API void ql_scenario_free(ql_scenario* s);
QL_API ql_status ql_scenario_name(const ql_scenario* s, char** out);
/* criterion: NULL or one of auto, simple, surface, main, th3, maintori, witness */
QL_API ql_status ql_normality_json(const ql_scenario* s, const char* criterion, char** out, ql_verdict* verdict);
QL_API ql_status ql_quotient_json(const ql_scenario* s, char** out);
QL_API ql_status ql_scenario_verify(const ql_scenario* s, ql_format format, char** out, int* pass);

/* Catalog from $QUOTLAT_CATALOG or the built-in directory.  filter may be
 * NULL; threads = 0 uses every core.  *pass is 1 when every row passes. */
QL_API ql_status ql_verify_catalog(const char* filter, ql_format format, unsigned threads, char** out, int* pass);
QL_API ql_status ql_catalog_dir(char** out);

#ifdef __cplusplus
}
#endif

#endif
