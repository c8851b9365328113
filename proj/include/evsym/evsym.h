/* evsym: symmetries of scalar evolution equations u_t = F(t, u, u_1, ..., u_n). */
#ifndef EVSYM_EVSYM_H
#define EVSYM_EVSYM_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define EVSYM_API __declspec(dllexport)
#else
#define EVSYM_API __attribute__((visibility("default")))
#endif

typedef struct evsym_context evsym_context;
typedef struct evsym_expr evsym_expr;
typedef struct evsym_equation evsym_equation;

typedef enum evsym_status {
    EVSYM_OK = 0,
    EVSYM_ERR_PARSE = 1,            /* malformed expression or corpus text */
    EVSYM_ERR_INVALID_ARGUMENT = 2, /* null pointer or unknown enum value */
    EVSYM_ERR_DOMAIN = 3,           /* input outside an operation's domain */
    EVSYM_ERR_RESOURCE = 4,         /* configured size cap exceeded */
    EVSYM_ERR_INTERNAL = 5,         /* defect: independent computations disagreed */
    EVSYM_ERR_IO = 6
} evsym_status;

typedef enum evsym_hypothesis_mode {
    EVSYM_MODE_ORDER_N_MINUS_1 = 0,
    EVSYM_MODE_ORDER_N_MINUS_2 = 1
} evsym_hypothesis_mode;

EVSYM_API const char* evsym_version(void);
EVSYM_API const char* evsym_status_string(evsym_status status);

/* A context owns declared constants and the last error message. It must not
   be used from two threads at once; expressions and equations are immutable. */
EVSYM_API evsym_status evsym_context_new(evsym_context** out);
EVSYM_API void evsym_context_free(evsym_context* ctx);
EVSYM_API const char* evsym_last_error(const evsym_context* ctx);
/* Comma-separated names, added to those already declared. */
EVSYM_API evsym_status evsym_declare_constants(evsym_context* ctx, const char* names);

EVSYM_API evsym_status evsym_parse(evsym_context* ctx, const char* source, evsym_expr** out);
EVSYM_API void evsym_expr_free(evsym_expr* e);
/* Caller releases *out with evsym_string_free. */
EVSYM_API evsym_status evsym_expr_to_string(evsym_context* ctx, const evsym_expr* e, char** out);
EVSYM_API void evsym_string_free(char* s);
EVSYM_API evsym_status evsym_expr_equal(evsym_context* ctx, const evsym_expr* a, const evsym_expr* b, int* out);
EVSYM_API evsym_status evsym_expr_is_zero(evsym_context* ctx, const evsym_expr* e, int* out);

EVSYM_API evsym_status evsym_add(evsym_context* ctx, const evsym_expr* a, const evsym_expr* b, evsym_expr** out);
EVSYM_API evsym_status evsym_mul(evsym_context* ctx, const evsym_expr* a, const evsym_expr* b, evsym_expr** out);
EVSYM_API evsym_status evsym_total_d(evsym_context* ctx, const evsym_expr* e, evsym_expr** out);
/* var is "x", "t", "u" or "u<i>". */
EVSYM_API evsym_status evsym_partial(evsym_context* ctx, const evsym_expr* e, const char* var, evsym_expr** out);
EVSYM_API evsym_status evsym_bracket(evsym_context* ctx, const evsym_expr* h, const evsym_expr* r,
                                     evsym_expr** out);

EVSYM_API evsym_status evsym_equation_new(evsym_context* ctx, const evsym_expr* rhs, evsym_equation** out);
EVSYM_API void evsym_equation_free(evsym_equation* eq);
/* *is_symmetry is 1 or 0; residual may be NULL. */
EVSYM_API evsym_status evsym_is_symmetry(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g,
                                         int* is_symmetry, evsym_expr** residual);

/* JSON reports with keys entry, command, verdict, order, flags, time_class,
   residual, details. Caller releases *out with evsym_string_free. */
EVSYM_API evsym_status evsym_check_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g, char** out);
EVSYM_API evsym_status evsym_classify_json(evsym_context* ctx, const evsym_equation* eq, char** out);
EVSYM_API evsym_status evsym_determine_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g,
                                            char** out);
/* eq may be NULL; with an equation the d/dt closure check is included. */
EVSYM_API evsym_status evsym_timedep_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g,
                                          char** out);
EVSYM_API evsym_status evsym_scaling_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* q0,
                                          char** out);
EVSYM_API evsym_status evsym_master_json(evsym_context* ctx, const evsym_equation* eq, const evsym_expr* g0,
                                         char** out);
/* options: "order=5 t_degree=0 x_degree=0 base_weight=2 min_weight=0 max_weight=7
   lambda=<expr> max_pool=2000"; linear_t != 0 searches G0 + t G1 pairs instead. */
EVSYM_API evsym_status evsym_find_json(evsym_context* ctx, const evsym_equation* eq, const char* options,
                                       int linear_t, char** out);
/* basis: ';'-separated expressions. */
EVSYM_API evsym_status evsym_hypothesis_json(evsym_context* ctx, const evsym_equation* eq, const char* basis,
                                             evsym_hypothesis_mode mode, char** out);
EVSYM_API evsym_status evsym_dim_bound_json(evsym_context* ctx, int k, int n, int dim_phi, char** out);
EVSYM_API evsym_status evsym_corpus_run_json(evsym_context* ctx, const char* path, char** out);

#ifdef __cplusplus
}
#endif

#endif
