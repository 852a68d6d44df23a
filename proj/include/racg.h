/* C interface to the racg shared library.
 *
 * All operations take a JSON document as a NUL-terminated string and
 * return their result the same way through an out-parameter.  Returned
 * strings are heap-allocated; release them with racg_string_free.
 * On failure the out-parameter is untouched, a nonzero status is
 * returned, and racg_last_error() gives a thread-local message.
 */
#ifndef RACG_H
#define RACG_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum racg_status {
  RACG_OK = 0,
  RACG_ERR_PARSE = 1,
  RACG_ERR_LIMIT = 2,
  RACG_ERR_INTERNAL = 3
} racg_status;

typedef struct racg_options racg_options;

racg_options* racg_options_new(void);
void racg_options_free(racg_options* opts);

/* Known keys: "radius", "retries", "seed", "max_vertices", "budget_ms",
 * "relator_cap".  Unknown keys are rejected. */
racg_status racg_options_set_int(racg_options* opts, const char* key, long value);

/* Last error message for the calling thread, or "" if none. */
const char* racg_last_error(void);

void racg_string_free(char* s);

/* Operations.  `opts` may be NULL for defaults. */
racg_status racg_cliquegraph(const char* json, const racg_options* opts, char** out);
racg_status racg_poset(const char* json, const racg_options* opts, char** out);
racg_status racg_check(const char* json, const racg_options* opts, char** out);
racg_status racg_collapse(const char* json, const racg_options* opts, char** out);
racg_status racg_invgraph(const char* json, const racg_options* opts, char** out);
racg_status racg_recognize(const char* json, const racg_options* opts, char** out);
racg_status racg_extend(const char* json, const racg_options* opts, char** out);
racg_status racg_sils(const char* json, const racg_options* opts, char** out);
racg_status racg_decompose(const char* json, const racg_options* opts, char** out);
racg_status racg_abelianize(const char* json, const racg_options* opts, char** out);
racg_status racg_snf(const char* json, const racg_options* opts, char** out);
racg_status racg_graph_to_dot(const char* json, const racg_options* opts, char** out);

#ifdef __cplusplus
}
#endif

#endif /* RACG_H */
