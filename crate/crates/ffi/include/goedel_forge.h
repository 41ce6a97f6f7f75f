#ifndef GOEDEL_FORGE_H
#define GOEDEL_FORGE_H

#include <stdint.h>

typedef enum GfStatus {
  GF_STATUS_OK = 0,
  GF_STATUS_NULL_POINTER = 1,
  GF_STATUS_INVALID_UTF8 = 2,
  GF_STATUS_PARSE = 3,
  GF_STATUS_OUT_OF_FUEL = 4,
  GF_STATUS_RESOURCE_EXHAUSTED = 5,
  // A proof was rejected.
  GF_STATUS_REJECTED = 6,
  GF_STATUS_INVALID_ARGUMENT = 7,
  GF_STATUS_PANIC = 8,
} GfStatus;

typedef enum GfPsiKind {
  GF_PSI_KIND_TOT = 0,
  GF_PSI_KIND_KBAR = 1,
} GfPsiKind;

typedef enum GfVerdict {
  GF_VERDICT_ESCAPED = 0,
  GF_VERDICT_INCONCLUSIVE = 1,
  GF_VERDICT_REFUTED_PRECONDITION = 2,
} GfVerdict;

// A formal system of the observing tower.
typedef struct GfSystem GfSystem;

// A parsed program.
typedef struct GfTerm GfTerm;

// A finished creative run.
typedef struct GfTranscript GfTranscript;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next call on the same thread.
const char *gf_last_error(void);

// # Safety
// `s` is null or a string returned by this library, not yet freed.
void gf_string_free(char *s);

// # Safety
// `src` is a NUL-terminated string; `out` is writable.
enum GfStatus gf_term_parse(const char *src, struct GfTerm **out);

// Program with the given index.
//
// # Safety
// `index` is a NUL-terminated string; `out` is writable.
enum GfStatus gf_term_decode(const char *index, struct GfTerm **out);

// # Safety
// `term` is null or a live handle.
void gf_term_free(struct GfTerm *term);

// # Safety
// `term` is a live handle; `out` is writable.
enum GfStatus gf_term_print(const struct GfTerm *term, char **out);

// # Safety
// `term` is a live handle; `out` is writable.
enum GfStatus gf_term_encode(const struct GfTerm *term, char **out);

// Runs `term` on `x`. Returns `GF_STATUS_OUT_OF_FUEL` when the budget runs out.
//
// # Safety
// `term` is a live handle, `x` a NUL-terminated string, `out` writable.
enum GfStatus gf_eval(const struct GfTerm *term, const char *x, uint64_t fuel, char **out);

// Index of `x ↦ φ_i(pair(a, x))`.
//
// # Safety
// `i` and `a` are NUL-terminated strings; `out` is writable.
enum GfStatus gf_smn(const char *i, const char *a, char **out);

// # Safety
// `i` is a NUL-terminated string; `out` is writable.
enum GfStatus gf_psi(enum GfPsiKind kind, const char *i, char **out);

// Index of the enumerator `v, φ_i(1), φ_i(2), …`.
//
// # Safety
// `i` and `v` are NUL-terminated strings; `out` is writable.
enum GfStatus gf_extend(const char *i, const char *v, char **out);

// Runs `steps` creative steps from `seed`. A run that stops early still
// yields its transcript, with status `GF_STATUS_OUT_OF_FUEL`.
//
// # Safety
// `seed` is a NUL-terminated string; `out` is writable.
enum GfStatus gf_creative_run(const char *seed,
                              uint64_t steps,
                              enum GfPsiKind kind,
                              uint64_t fuel,
                              uint64_t sample_width,
                              struct GfTranscript **out);

// # Safety
// `t` is null or a live handle.
void gf_transcript_free(struct GfTranscript *t);

// Number of completed steps.
//
// # Safety
// `t` is a live handle; `out` is writable.
enum GfStatus gf_transcript_steps(const struct GfTranscript *t, uint64_t *out);

// Index of the enumerator after the last completed step.
//
// # Safety
// `t` is a live handle; `out` is writable.
enum GfStatus gf_transcript_current(const struct GfTranscript *t, char **out);

// The transcript as line-delimited JSON.
//
// # Safety
// `t` is a live handle; `out` is writable.
enum GfStatus gf_transcript_jsonl(const struct GfTranscript *t, char **out);

// Escape audit of `candidate`. The verdict is always written when the
// arguments are valid; `json_out` may be null.
//
// # Safety
// `candidate` is a NUL-terminated string; `verdict` is writable;
// `json_out` is null or writable.
enum GfStatus gf_escape_audit(const char *candidate,
                              enum GfPsiKind kind,
                              uint64_t sample_width,
                              uint64_t fuel,
                              enum GfVerdict *verdict,
                              char **json_out);

// `S_level` of the observing tower.
//
// # Safety
// `out` is writable.
enum GfStatus gf_system_at(uint64_t level, struct GfSystem **out);

// # Safety
// `s` is null or a live handle.
void gf_system_free(struct GfSystem *s);

// Checks a proof in the text format. On `GF_STATUS_REJECTED`, `failing_line`
// receives the 1-based line of the first failure; it may be null.
//
// # Safety
// `system` is a live handle, `proof` a NUL-terminated string,
// `failing_line` null or writable.
enum GfStatus gf_check_proof(const struct GfSystem *system,
                             const char *proof,
                             uint64_t *failing_line);

// Gödel sentence of `S_level`, stated over the atom of the next level.
//
// # Safety
// `p_prime` and `sentence` are writable.
enum GfStatus gf_godel_sentence(uint64_t level, char **p_prime, char **sentence);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOEDEL_FORGE_H */
