/* C interface to the normal-form engine.
 *
 * All functions return hznf_status; outputs are returned through pointers.
 * On any failure the thread-local message from hznf_last_error() describes
 * the problem.  Strings returned through char** are heap-allocated and must
 * be released with hznf_string_free(); handles with the matching *_free().
 * Rationals cross the boundary as exact "p/q" strings.
 */
#ifndef HZNF_H
#define HZNF_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HZNF_OK = 0,
  HZNF_ERR_PARSE = 1,      /* malformed input text or rational */
  HZNF_ERR_DEGENERATE = 2, /* the math rejects the input (zero quadratic part,
                              degenerate perturbation, ...) */
  HZNF_ERR_CONTRACT = 3,   /* precondition violated by the caller */
  HZNF_ERR_INTERNAL = 4    /* unexpected failure */
} hznf_status;

typedef enum {
  HZNF_MODE_STATE = 0,
  HZNF_MODE_ORBITAL = 1,
  HZNF_MODE_PARAMETRIC = 2
} hznf_mode;

/* flags for hznf_normalize */
#define HZNF_EMIT_TRANSFORMS 0x1u /* include the transform log in the JSON */
#define HZNF_RUN_VERIFY 0x2u      /* run the cone identity on input and output */

typedef struct hznf_field hznf_field;
typedef struct hznf_result hznf_result;

const char* hznf_version(void);

/* message for the most recent failure on this thread; never NULL */
const char* hznf_last_error(void);

void hznf_string_free(char* s);
void hznf_field_free(hznf_field* f);
void hznf_result_free(hznf_result* r);

/* text format round trip (see the file-format section of the README) */
hznf_status hznf_parse(const char* text, hznf_field** out);
hznf_status hznf_serialize(const hznf_field* f, char** out);

/* the built-in three-parameter example family; a..e are "p/q" rationals */
hznf_status hznf_field_from_example(const char* a, const char* b, const char* c,
                                    const char* d, const char* e,
                                    hznf_field** out);

hznf_status hznf_bracket(const hznf_field* a, const hznf_field* b,
                         hznf_field** out);

/* runs the selected pipeline; max_param_deg is ignored for parameter-free
 * fields */
hznf_status hznf_normalize(const hznf_field* f, hznf_mode mode, int max_grade,
                           int max_param_deg, unsigned flags,
                           hznf_result** out);

hznf_status hznf_result_field(const hznf_result* r, hznf_field** out);
hznf_status hznf_result_json(const hznf_result* r, char** out);
hznf_status hznf_result_text(const hznf_result* r, char** out);

/* dimension of the space of polynomial first integrals (expected 0) */
hznf_status hznf_check_integral(const hznf_field* f, int max_deg,
                                int* dimension);

/* invariant-cone identity; *holds is 1 or 0 */
hznf_status hznf_cone_check(const hznf_field* f, int* holds);

/* one worked-example trial; fills a JSON report and a pass flag */
hznf_status hznf_example_trial(const char* a, const char* b, const char* c,
                               const char* d, const char* e, int max_grade,
                               int max_param_deg, char** json_report,
                               int* pass);

/* solves [S,u] + T u = -x^l R^(k-l) u for an orbital normal form u;
 * *found is 1 with a JSON solution, or 0 when the truncated system has
 * no solution */
hznf_status hznf_solve_symmetry(const hznf_field* u, int l, int k,
                                int max_grade, char** json_solution,
                                int* found);

#ifdef __cplusplus
}
#endif

#endif /* HZNF_H */
