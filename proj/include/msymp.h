/* msymp — chart-local symbolic engine for (pre)multisymplectic systems.
 *
 * C API: opaque handles, status codes, malloc'd strings released with
 * msymp_string_free. All handles are immutable once built except forms and
 * multivectors during construction (msymp_*_set). Thread-safe for disjoint
 * handles; the error message is thread-local.
 */
#ifndef MSYMP_H
#define MSYMP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    MSYMP_OK = 0,
    MSYMP_CHECK_FAILED = 1, /* a report verdict is nonzero/error */
    MSYMP_INPUT_ERROR = 2,  /* file or expression failed to parse/validate */
    MSYMP_ERR_SYNTAX = 10,
    MSYMP_ERR_UNBOUND = 11,
    MSYMP_ERR_DOMAIN = 12, /* NotPolynomial, NotClosed, NotCartan, ... */
    MSYMP_ERR_INVALID = 13,
    MSYMP_ERR_INTERNAL = 14
} msymp_status;

typedef struct msymp_expr msymp_expr;
typedef struct msymp_chart msymp_chart;
typedef struct msymp_form msymp_form;
typedef struct msymp_mvec msymp_mvec;
typedef struct msymp_section msymp_section;
typedef struct msymp_system msymp_system;

typedef struct {
    uint64_t seed;
    double tolerance;
} msymp_options;

const char* msymp_version(void);
/* message for the last failing call on this thread */
const char* msymp_last_error(void);
void msymp_string_free(char* s);

/* --- scalar expressions --------------------------------------------------- */

msymp_status msymp_expr_parse(const char* src, msymp_expr** out);
msymp_status msymp_expr_print(const msymp_expr* e, char** out);
msymp_status msymp_expr_differentiate(const msymp_expr* e, const char* sym, msymp_expr** out);
msymp_status msymp_expr_eval(const msymp_expr* e, const char* const* names, const double* values,
                             size_t n, double* out);
/* 0 = zero, 1 = nonzero, 2 = unknown */
msymp_status msymp_expr_is_zero(const msymp_expr* e, int* out);
void msymp_expr_free(msymp_expr* e);

/* --- charts, forms, multivector fields ------------------------------------ */

msymp_status msymp_chart_new(const char* const* base, size_t m, const char* const* fiber, size_t n,
                             msymp_chart** out);
void msymp_chart_free(msymp_chart* c);

msymp_status msymp_form_new(const msymp_chart* c, int degree, msymp_form** out);
/* adds coeff on the wedge of the named coordinate differentials */
msymp_status msymp_form_set(msymp_form* a, const char* const* names, size_t k,
                            const msymp_expr* coeff);
msymp_status msymp_form_wedge(const msymp_form* a, const msymp_form* b, msymp_form** out);
msymp_status msymp_form_d(const msymp_form* a, msymp_form** out);
msymp_status msymp_form_print(const msymp_form* a, char** out);
void msymp_form_free(msymp_form* a);

msymp_status msymp_mvec_new(const msymp_chart* c, int degree, msymp_mvec** out);
msymp_status msymp_mvec_set(msymp_mvec* x, const char* const* names, size_t k,
                            const msymp_expr* coeff);
msymp_status msymp_mvec_wedge(const msymp_mvec* a, const msymp_mvec* b, msymp_mvec** out);
msymp_status msymp_mvec_print(const msymp_mvec* x, char** out);
void msymp_mvec_free(msymp_mvec* x);

msymp_status msymp_contract(const msymp_mvec* x, const msymp_form* a, msymp_form** out);
msymp_status msymp_lie_derivative(const msymp_mvec* x, const msymp_form* a, msymp_form** out);
msymp_status msymp_sn_bracket(const msymp_mvec* y, const msymp_mvec* x, msymp_mvec** out);

msymp_status msymp_section_new(const msymp_chart* c, const char* const* fiber_exprs, size_t n,
                               msymp_section** out);
msymp_status msymp_section_prolong(const msymp_section* s, msymp_mvec** out);
msymp_status msymp_pullback_section(const msymp_section* s, const msymp_form* a, msymp_form** out);
void msymp_section_free(msymp_section* s);

/* --- systems --------------------------------------------------------------- */

msymp_status msymp_system_parse(const char* file_text, msymp_system** out);
msymp_status msymp_system_omega(const msymp_system* s, msymp_form** out);
void msymp_system_free(msymp_system* s);

/* --- batch commands (JSON reports, the CLI surface) ------------------------ */
/* Return MSYMP_OK / MSYMP_CHECK_FAILED / MSYMP_INPUT_ERROR. *json_out is set
 * on all three (an error report on MSYMP_INPUT_ERROR). */

msymp_status msymp_cmd_check(const char* file_text, const msymp_options* opt, char** json_out);
msymp_status msymp_cmd_field_equations(const char* file_text, const char* section_or_null,
                                       const msymp_options* opt, char** json_out);
msymp_status msymp_cmd_noether(const char* file_text, const char* symmetry, int order_max,
                               const char* const* witnesses, size_t n_witnesses,
                               const msymp_options* opt, char** json_out);
msymp_status msymp_cmd_symmetry(const char* file_text, const char* symmetry,
                                const char* const* witnesses, size_t n_witnesses,
                                const msymp_options* opt, char** json_out);
msymp_status msymp_cmd_conserved(const char* file_text, const char* quantity,
                                 const char* const* witnesses, size_t n_witnesses,
                                 const char* section_or_null, const msymp_options* opt,
                                 char** json_out);
msymp_status msymp_cmd_action(const char* file_text, const char* section,
                              const char* const* axis_names, const double* lo, const double* hi,
                              size_t n_axes, int quadrature_points, const msymp_options* opt,
                              char** json_out);
msymp_status msymp_cmd_identities(uint64_t seed, int cases, const msymp_options* opt,
                                  char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* MSYMP_H */
