#ifndef SYMDYN_SYMDYN_H
#define SYMDYN_SYMDYN_H

/*
 * symdyn: one-sided Markov shifts on countable graphs, their Cuntz-Krieger
 * relations, and shift equivalence of nonnegative integer matrices.
 *
 * Every analysis produces an sd_report holding a JSON body (sorted keys,
 * integers only), a line-oriented text rendering and a pass flag. Inputs
 * are JSON documents (graphs, certificates, matrices).
 *
 * Functions return SD_OK or an error status; sd_last_error() then describes
 * the failure for the calling thread. Output handles are set only on
 * success.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SYMDYN_BUILDING)
#    define SYMDYN_API __declspec(dllexport)
#  else
#    define SYMDYN_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__)
#  define SYMDYN_API __attribute__((visibility("default")))
#else
#  define SYMDYN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sd_status {
  SD_OK = 0,
  SD_ERR_PARSE = 1,       /* malformed JSON or expression */
  SD_ERR_VALIDATION = 2,  /* well-formed input violating an invariant */
  SD_ERR_UNSUPPORTED = 3, /* presentation the operation cannot decide */
  SD_ERR_DOMAIN = 4,      /* argument outside an operation's domain */
  SD_ERR_PARAMETER = 5,   /* bad level, depth or bound */
  SD_ERR_INTERNAL = 6,
  SD_ERR_NULL = 7         /* a required pointer was NULL */
} sd_status;

typedef struct sd_graph sd_graph;
typedef struct sd_model sd_model;
typedef struct sd_report sd_report;

SYMDYN_API const char* sd_version(void);
SYMDYN_API const char* sd_status_name(sd_status status);
/* Message of the last failed call on this thread ("" if none). */
SYMDYN_API const char* sd_last_error(void);

/* Graph file: {"type":"finite"|"block"|"banded", ...}, optional "boundary". */
SYMDYN_API sd_status sd_graph_parse(const char* json_text, sd_graph** out);
SYMDYN_API void sd_graph_free(sd_graph* graph);

/* boundary: NULL uses the graph file's "boundary" field, else J_A; "auto"
 * means J_A; otherwise a JSON list such as [{"finite":[1,2],"classes":[]}]. */
SYMDYN_API sd_status sd_model_create(const sd_graph* graph, const char* boundary,
                                     sd_model** out);
SYMDYN_API void sd_model_free(sd_model* model);

SYMDYN_API sd_status sd_classify(const sd_graph* graph, sd_report** out);
SYMDYN_API sd_status sd_jset(const sd_model* model, sd_report** out);
/* window 0: none (finite graphs only). */
SYMDYN_API sd_status sd_spectrum(const sd_model* model, unsigned level, unsigned long window,
                                 sd_report** out);
/* window: vertex window for infinite presentations. */
SYMDYN_API sd_status sd_ck_verify(const sd_model* model, unsigned long window, sd_report** out);
/* all_pairs != 0 scans every 0 <= m < n <= 3 and ignores m, n. */
SYMDYN_API sd_status sd_essential_freeness(const sd_model* model, int all_pairs, unsigned m,
                                           unsigned n, unsigned depth, sd_report** out);
SYMDYN_API sd_status sd_periodic(const sd_model* model, unsigned max_period,
                                 unsigned max_preperiod, sd_report** out);
SYMDYN_API sd_status sd_rn_partition(const sd_model* model, unsigned big_n, unsigned level,
                                     sd_report** out);
/* expr like "S(1,2)* . S(1)"; level 0 evaluates at the least valid level. */
SYMDYN_API sd_status sd_monomial(const sd_model* model, const char* expr, unsigned level,
                                 sd_report** out);

/* {"A","B","R","S"}, {"A","B","R","S","lag":k} or {"A","B","chain":[...]}. */
SYMDYN_API sd_status sd_sse_verify(const char* certificate_json, sd_report** out);
/* {"A","B"}. */
SYMDYN_API sd_status sd_sse_search(const char* json_text, unsigned inner_dim,
                                   unsigned entry_bound, sd_report** out);
/* {"A"} with optional "B" and "elements", or a finite graph file. */
SYMDYN_API sd_status sd_invariants(const char* json_text, unsigned positivity_bound,
                                   sd_report** out);
/* {"A","B","R","S"}; identities checked on edge paths of length <= max_length. */
SYMDYN_API sd_status sd_conjugacy(const char* certificate_json, unsigned max_length,
                                  sd_report** out);

/* Strings are owned by the report. */
SYMDYN_API const char* sd_report_json(const sd_report* report);
SYMDYN_API const char* sd_report_text(const sd_report* report);
SYMDYN_API int sd_report_passed(const sd_report* report);
SYMDYN_API void sd_report_free(sd_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SYMDYN_SYMDYN_H */
