/* C interface to the modal toolkit: S5 (and subsystems) with an explicit
 * local/global assumption split, a Kripke decision procedure with
 * countermodel extraction, a two-section Hilbert proof checker, and the
 * bundled ontological-argument casebook.
 *
 * Conventions:
 *   - Every fallible call returns a modal_status; out-parameters are written
 *     only on MODAL_OK. modal_last_error() describes the most recent failure
 *     on the calling thread.
 *   - Handles are opaque; free them with the matching *_free function.
 *   - `char**` results are heap strings owned by the caller; release them
 *     with modal_string_free. `const char*` results are borrowed and live as
 *     long as the handle they came from.
 */

#ifndef MODAL_MODAL_H
#define MODAL_MODAL_H

#include <stddef.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#  ifdef MODAL_BUILD_SHARED
#    define MODAL_API __declspec(dllexport)
#  else
#    define MODAL_API __declspec(dllimport)
#  endif
#else
#  define MODAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum modal_status {
  MODAL_OK = 0,
  MODAL_ERR_PARSE = 1,            /* bad formula/model/proof/query text */
  MODAL_ERR_INVALID_ARGUMENT = 2, /* null handle, bad enum, violated precondition */
  MODAL_ERR_WORLD_OUT_OF_RANGE = 3,
  MODAL_ERR_DIAMOND_PRESENT = 4,  /* operation requires a desugared formula */
  MODAL_ERR_TOO_MANY_VARIABLES = 5,
  MODAL_ERR_BOUND_TOO_LARGE = 6,  /* search space exceeds the model budget */
  MODAL_ERR_UNKNOWN_CASE = 7,
  MODAL_ERR_IO = 8,
  MODAL_ERR_INTERNAL = 9
} modal_status;

typedef enum modal_logic {
  MODAL_LOGIC_K = 0,
  MODAL_LOGIC_T = 1,
  MODAL_LOGIC_S4 = 2,
  MODAL_LOGIC_S5 = 3
} modal_logic;

typedef enum modal_axiom {
  MODAL_AXIOM_K = 0,
  MODAL_AXIOM_T = 1,
  MODAL_AXIOM_4 = 2,
  MODAL_AXIOM_S5 = 3
} modal_axiom;

typedef enum modal_verdict_kind {
  MODAL_VERDICT_VALID = 0,
  MODAL_VERDICT_VALID_UP_TO_BOUND = 1,
  MODAL_VERDICT_COUNTERMODEL = 2
} modal_verdict_kind;

typedef struct modal_formula modal_formula;
typedef struct modal_model modal_model;
typedef struct modal_model_iter modal_model_iter;
typedef struct modal_verdict modal_verdict;
typedef struct modal_derivation modal_derivation;
typedef struct modal_check_report modal_check_report;
typedef struct modal_casebook modal_casebook;
typedef struct modal_case_outcome modal_case_outcome;

MODAL_API const char* modal_version(void);
/* Message for the last failing call on this thread; never NULL. */
MODAL_API const char* modal_last_error(void);

MODAL_API void modal_string_free(char* s);
MODAL_API void modal_string_array_free(char** strings, size_t count);
MODAL_API void modal_index_array_free(int* indices);

/* ---- formulas ---------------------------------------------------------- */

MODAL_API modal_status modal_formula_parse(const char* text, modal_formula** out);
MODAL_API modal_status modal_formula_print(const modal_formula* f, char** out);
MODAL_API modal_status modal_formula_desugar(const modal_formula* f, modal_formula** out);
MODAL_API modal_status modal_formula_atoms(const modal_formula* f, char*** names,
                                           size_t* count);
/* Distinct Box-headed subformulas, printed; requires a Diamond-free input. */
MODAL_API modal_status modal_formula_box_subformulas(const modal_formula* f, char*** printed,
                                                     size_t* count);
MODAL_API int modal_formula_equal(const modal_formula* a, const modal_formula* b);
MODAL_API void modal_formula_free(modal_formula* f);

/* ---- proof-theoretic helpers ------------------------------------------- */

MODAL_API modal_status modal_is_tautology_instance(const modal_formula* f, int* out);
/* On success *matched is 0 or 1; when 1, *a_out (and *b_out for the K
 * schema) receive the metavariable bindings. Unused out-slots get NULL. */
MODAL_API modal_status modal_match_axiom_schema(modal_axiom tag, const modal_formula* f,
                                                int* matched, modal_formula** a_out,
                                                modal_formula** b_out);

/* ---- models ------------------------------------------------------------ */

MODAL_API modal_status modal_model_parse(const char* km_text, modal_model** out);
MODAL_API modal_status modal_model_print(const modal_model* m, char** out);
MODAL_API int modal_model_world_count(const modal_model* m);
MODAL_API int modal_model_is_universal(const modal_model* m);
/* -1 when the model has no designated world. */
MODAL_API int modal_model_designated(const modal_model* m);
/* Relation as a flattened (from, to) pair list owned by the caller. */
MODAL_API modal_status modal_model_relation(const modal_model* m, int** pairs,
                                            size_t* pair_count);
MODAL_API modal_status modal_model_atoms(const modal_model* m, char*** names, size_t* count);
MODAL_API modal_status modal_model_atom_worlds(const modal_model* m, const char* atom,
                                               int** worlds, size_t* count);
MODAL_API modal_status modal_model_eval(const modal_model* m, int world,
                                        const modal_formula* f, int* out);
MODAL_API modal_status modal_model_holds_globally(const modal_model* m,
                                                  const modal_formula* f, int* out);
/* Human-readable frame-condition violations, one string per violation. */
MODAL_API modal_status modal_model_check_frame(const modal_model* m, modal_logic logic,
                                               char*** violations, size_t* count);
MODAL_API void modal_model_free(modal_model* m);

/* ---- enumeration ------------------------------------------------------- */

MODAL_API modal_status modal_enumerate_models(const char* const* atoms, size_t atom_count,
                                              modal_logic logic, int worlds,
                                              modal_model_iter** out);
/* Writes NULL to *out once the stream is exhausted. */
MODAL_API modal_status modal_model_iter_next(modal_model_iter* it, modal_model** out);
MODAL_API void modal_model_iter_free(modal_model_iter* it);

/* ---- decision procedure ------------------------------------------------ */

/* max_worlds <= 0 means "use the default": the S5 small-model bound, or 3
 * worlds for K/T/S4. */
MODAL_API modal_status modal_decide(modal_logic logic, const modal_formula* const* globals,
                                    size_t global_count, const modal_formula* const* locals,
                                    size_t local_count, const modal_formula* goal,
                                    int max_worlds, modal_verdict** out);
MODAL_API modal_verdict_kind modal_verdict_get_kind(const modal_verdict* v);
/* World count actually searched (countermodels: the model's size). */
MODAL_API int modal_verdict_bound(const modal_verdict* v);
/* Borrowed; NULL unless the verdict is a countermodel. */
MODAL_API const modal_model* modal_verdict_model(const modal_verdict* v);
MODAL_API int modal_verdict_world(const modal_verdict* v);
MODAL_API void modal_verdict_free(modal_verdict* v);

/* ---- derivations ------------------------------------------------------- */

MODAL_API modal_status modal_derivation_parse(const char* mpf_text, modal_derivation** out);
MODAL_API modal_status modal_derivation_check(const modal_derivation* d,
                                              modal_check_report** out);
MODAL_API int modal_report_accepted(const modal_check_report* r);
MODAL_API size_t modal_report_error_count(const modal_check_report* r);
MODAL_API const char* modal_report_error_label(const modal_check_report* r, size_t i);
MODAL_API const char* modal_report_error_kind(const modal_check_report* r, size_t i);
MODAL_API const char* modal_report_error_message(const modal_check_report* r, size_t i);
MODAL_API size_t modal_report_warning_count(const modal_check_report* r);
MODAL_API const char* modal_report_warning(const modal_check_report* r, size_t i);
MODAL_API void modal_report_free(modal_check_report* r);
MODAL_API void modal_derivation_free(modal_derivation* d);

/* ---- casebook ---------------------------------------------------------- */

MODAL_API modal_status modal_casebook_open(const char* cases_dir, modal_casebook** out);
MODAL_API size_t modal_casebook_count(const modal_casebook* cb);
MODAL_API const char* modal_casebook_name(const modal_casebook* cb, size_t i);
MODAL_API const char* modal_casebook_kind(const modal_casebook* cb, size_t i);
MODAL_API const char* modal_casebook_summary(const modal_casebook* cb, size_t i);
MODAL_API const char* modal_casebook_narrative(const modal_casebook* cb, size_t i);
MODAL_API modal_status modal_casebook_run(const modal_casebook* cb, const char* name,
                                          modal_case_outcome** out);
MODAL_API const char* modal_outcome_name(const modal_case_outcome* o);
MODAL_API const char* modal_outcome_expected(const modal_case_outcome* o);
MODAL_API const char* modal_outcome_actual(const modal_case_outcome* o);
MODAL_API int modal_outcome_pass(const modal_case_outcome* o);
MODAL_API void modal_outcome_free(modal_case_outcome* o);
MODAL_API void modal_casebook_free(modal_casebook* cb);

#ifdef __cplusplus
}
#endif

#endif /* MODAL_MODAL_H */
