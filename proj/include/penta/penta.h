/* penta — pentagon-relation toolkit, public C API.
 *
 * All functions return a penta_status; every non-OK status leaves a
 * human-readable message retrievable with penta_last_error_message()
 * (thread-local). Objects are opaque handles owned by the caller and
 * released with the matching *_free function.
 */
#ifndef PENTA_PENTA_H
#define PENTA_PENTA_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum penta_status {
  PENTA_OK = 0,
  PENTA_E_INVALID_LABEL = 1,
  PENTA_E_SHAPE = 2,
  PENTA_E_EMPTY_MODULE = 3,
  PENTA_E_CONTRACTION = 4,
  PENTA_E_WEIGHT = 5,
  PENTA_E_COCYCLE = 6,
  PENTA_E_GROUP = 7,
  PENTA_E_RANGE = 8,
  PENTA_E_UNSUPPORTED = 9,
  PENTA_E_SINGULAR = 10,
  PENTA_E_CONSTRUCTION = 11,
  PENTA_E_PARSE = 12,
  PENTA_E_VALIDATION = 13,
  PENTA_E_IO = 14,
  PENTA_E_OPTIONS = 15,
  PENTA_E_INTERNAL = 16
} penta_status;

/* A solution document: fusion rules, blocks, optional weights. */
typedef struct penta_solution penta_solution;
/* Result of a check run. */
typedef struct penta_report penta_report;

const char* penta_version(void);
const char* penta_last_error_message(void);

penta_status penta_solution_load(const char* path, penta_solution** out);
penta_status penta_solution_save(const penta_solution* sol, const char* path);
void penta_solution_free(penta_solution* sol);

/* kind: "trivial" | "pointed" | "fibonacci"; n and k apply to "pointed". */
penta_status penta_gen(const char* kind, unsigned n, unsigned k, penta_solution** out);

/* form: "global" | "component" | "tensor" | "be". The be form needs weights:
 * either from `weights` (its embedded weight list) or embedded in `sol`.
 * threads = 0 picks the library default (the PENTA_THREADS environment
 * variable caps it). */
penta_status penta_check(const penta_solution* sol, const char* form, double tolerance,
                         const penta_solution* weights, int threads, penta_report** out);

int penta_report_passed(const penta_report* report);
double penta_report_overall(const penta_report* report);
/* JSON object with the fixed key set
 * {overall, tolerance, passed, worst, vacuous_count, tuples_checked, wall_ms}.
 * Returned strings are released with penta_string_free. */
penta_status penta_report_json(const penta_report* report, char** out);
penta_status penta_report_text(const penta_report* report, char** out);
void penta_report_free(penta_report* report);

/* Multiplicity-free pentagon solver over the rules of `rules_doc`.
 * On success *best holds the top-ranked converged solution (NULL when no
 * start converged) and *summary_json describes the run. */
penta_status penta_solve(const penta_solution* rules_doc, unsigned starts,
                         unsigned long long seed, double target, penta_solution** best,
                         char** summary_json);

void penta_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* PENTA_PENTA_H */
