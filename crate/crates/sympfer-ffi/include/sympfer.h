/* C interface for the sympfer verification engine.
 *
 * Conventions:
 *   - All handles are opaque and must be released with their free function.
 *   - All returned strings are NUL-terminated UTF-8 on the heap; release
 *     them with sf_string_free. sf_version() returns a static string that
 *     must not be freed.
 *   - Functions return SF_OK (0) on success and a negative code otherwise.
 *     No function panics or throws across this boundary.
 */

#ifndef SYMPFER_H
#define SYMPFER_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes. */
#define SF_OK                0
#define SF_ERR_NULL         -1  /* a required pointer argument was NULL    */
#define SF_ERR_BAD_ARG      -2  /* unknown command or module name          */
#define SF_ERR_PANIC        -3  /* internal error caught at the boundary   */
#define SF_ERR_UTF8         -4  /* a string argument was not valid UTF-8   */
#define SF_ERR_CHECK_FAILED -5  /* report produced, but some checks failed */

/* Opaque context: fixed rank d and weight cutoff. */
typedef struct SfContext SfContext;

/* Create a context. d >= 1 is the number of symplectic-fermion pairs;
 * cutoff_doubled is twice the weight cutoff (half-integers representable),
 * at least 4. Returns NULL on invalid arguments. */
SfContext *sf_context_new(uint8_t d, int64_t cutoff_doubled);

/* Release a context. NULL is ignored. */
void sf_context_free(SfContext *ctx);

/* Release a string returned by this library. NULL is ignored. */
void sf_string_free(char *s);

/* Write the JSON fusion table for the context's rank into *out. */
int sf_fusion_table_json(const SfContext *ctx, char **out);

/* Run one named command and write its JSON report into *out.
 * Commands: "verify-appendix", "verify-voa", "zhu", "fusion",
 * "coeffs-delta", "report-all". Returns SF_OK when all checks pass,
 * SF_ERR_CHECK_FAILED when the report contains failures (the report is
 * still written). */
int sf_run_command_json(const SfContext *ctx, const char *command, char **out);

/* dim I(L, M; N) at d=1 for module names "T+", "T-", "Tt+", "Tt-";
 * writes the dimension into *out_dim. */
int sf_fusion_dim(const SfContext *ctx, const char *l, const char *m,
                  const char *n, int *out_dim);

/* Library version; static string, do not free. */
const char *sf_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SYMPFER_H */
