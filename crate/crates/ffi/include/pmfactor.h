#ifndef PMFACTOR_H
#define PMFACTOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PmfStatus {
  PMF_STATUS_OK = 0,
  PMF_STATUS_NULL_ARGUMENT = 1,
  // Malformed text, bad edge list, or an unknown name.
  PMF_STATUS_INVALID_INPUT = 2,
  // The input is outside the operation's hypotheses.
  PMF_STATUS_PRECONDITION = 3,
  // The family does not verify.
  PMF_STATUS_VERIFY_FAILED = 4,
  // The target is provably out of reach; the family holds the best found.
  PMF_STATUS_TARGET_UNREACHABLE = 5,
  // The search gave up; the family holds the best found.
  PMF_STATUS_BUDGET_EXHAUSTED = 6,
  PMF_STATUS_INTERNAL = 7,
  PMF_STATUS_PANIC = 8,
} PmfStatus;

typedef enum PmfStrategy {
  PMF_STRATEGY_PEEL = 0,
  PMF_STRATEGY_PROOF = 1,
  PMF_STRATEGY_EXACT = 2,
} PmfStrategy;

// Opaque handle to a family of edge-disjoint perfect matchings.
typedef struct PmfFamily PmfFamily;

// Opaque graph handle.
typedef struct PmfGraph PmfGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *pmf_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void pmf_string_free(char *s);

// Graph on `n` vertices from `edge_count` pairs laid out as
// `u0, v0, u1, v1, ...`.
//
// # Safety
// `edges` must point to `2 * edge_count` values (or be null when
// `edge_count` is 0); `out` must be writable.
enum PmfStatus pmf_graph_new(size_t n,
                             const size_t *edges,
                             size_t edge_count,
                             struct PmfGraph **out);

// Parses the text format `n m` followed by one `u v` line per edge.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum PmfStatus pmf_graph_parse(const char *text, struct PmfGraph **out);

// Builds a named graph family (`sharp-g1`, `random-semiregular`, ...).
// `k` is the base degree for `random-semiregular`; 0 picks the threshold.
//
// # Safety
// `family` must be a nul-terminated string; `out` must be writable.
enum PmfStatus pmf_graph_generate(const char *family,
                                  size_t n,
                                  size_t k,
                                  uint64_t seed,
                                  struct PmfGraph **out);

// # Safety
// `g` must be null or a live handle from this library.
void pmf_graph_free(struct PmfGraph *g);

// Number of vertices; 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t pmf_graph_order(const struct PmfGraph *g);

// Number of edges; 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t pmf_graph_edge_count(const struct PmfGraph *g);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum PmfStatus pmf_graph_to_text(const struct PmfGraph *g, char **out);

// `2⌈n/4⌉ - 1` for even `n`, 0 for odd `n`.
size_t pmf_d_threshold(size_t n);

// Searches for `target` edge-disjoint perfect matchings. On
// `TargetUnreachable` and `BudgetExhausted` `*out` still receives the best
// family found; on other failures it is set to null.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum PmfStatus pmf_decompose(const struct PmfGraph *g,
                             size_t target,
                             enum PmfStrategy strategy,
                             uint64_t seed,
                             struct PmfFamily **out);

// Number of matchings; 0 for null.
//
// # Safety
// `f` must be null or a live handle.
size_t pmf_family_len(const struct PmfFamily *f);

// Copies the edges of matching `index` as `u0, v0, u1, v1, ...` into
// `buf`, which holds `capacity` values. `*written` receives the number of
// values the matching needs; nothing is copied when it exceeds `capacity`.
//
// # Safety
// `f` must be a live handle, `buf` must hold `capacity` values, and
// `written` must be writable.
enum PmfStatus pmf_family_matching(const struct PmfFamily *f,
                                   size_t index,
                                   size_t *buf,
                                   size_t capacity,
                                   size_t *written);

// Family in the text format: one `u-v` line per edge, matchings separated
// by `--` lines.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum PmfStatus pmf_family_to_text(const struct PmfFamily *f, char **out);

// # Safety
// `f` must be null or a live handle from this library.
void pmf_family_free(struct PmfFamily *f);

// Checks that `family_text` lists edge-disjoint perfect matchings of `g`.
// Returns `VerifyFailed` with the first violation as the error message.
//
// # Safety
// `g` must be a live handle; `family_text` must be a nul-terminated string.
enum PmfStatus pmf_verify(const struct PmfGraph *g, const char *family_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PMFACTOR_H */
