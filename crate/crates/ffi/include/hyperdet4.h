#ifndef HYPERDET4_H
#define HYPERDET4_H

/* Generated by cbindgen from hyperdet4-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum Hd4Status {
  HD4_STATUS_OK = 0,
  HD4_STATUS_NULL_POINTER = 1,
  HD4_STATUS_INVALID_JSON = 2,
  HD4_STATUS_INVALID_ARGUMENT = 3,
  HD4_STATUS_NOT_IN_SUBSPACE = 4,
  HD4_STATUS_INTERNAL_ERROR = 5,
} Hd4Status;

// Opaque coordinate-vector handle (a point of the subspace A).
typedef struct Hd4AVector Hd4AVector;

// Opaque four-qubit state handle.
typedef struct Hd4State Hd4State;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent error on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread; do not free.
const char *hd4_last_error_message(void);

// Parse a state from JSON (`{"amplitudes": [[re,im] x 16]}` or
// `{"z": [[re,im] x 4]}`, the latter embedded into the full representation).
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum Hd4Status hd4_state_from_json(const char *json, struct Hd4State **out);

// # Safety
// `handle` must come from this library and not already be freed.
void hd4_state_free(struct Hd4State *handle);

// Parse a coordinate vector from JSON (`{"z": [[re,im] x 4]}`), or project a
// full state onto A when the projection residual is below 1e-10.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum Hd4Status hd4_avector_from_json(const char *json, struct Hd4AVector **out);

// # Safety
// `handle` must come from this library and not already be freed.
void hd4_avector_free(struct Hd4AVector *handle);

// The reference maximizer L as a coordinate-vector handle.
struct Hd4AVector *hd4_state_l(void);

// The companion maximizer L′.
struct Hd4AVector *hd4_state_lprime(void);

// Hyperdeterminant of a full state via the calibrated pencil construction.
//
// # Safety
// All pointers must be valid; `handle` must be a live state handle.
enum Hd4Status hd4_det4(const struct Hd4State *handle, double *out_re, double *out_im);

// Hyperdeterminant of a coordinate vector via the restriction formula.
//
// # Safety
// All pointers must be valid; `handle` must be a live coordinate handle.
enum Hd4Status hd4_det_a(const struct Hd4AVector *handle, double *out_re, double *out_im);

// Generic-set test: writes 1 when the SL-orbit tangent rank is 12.
//
// # Safety
// All pointers must be valid; `handle` must be a live state handle.
enum Hd4Status hd4_is_generic(const struct Hd4State *handle,
                              int32_t *out_generic,
                              int32_t *out_rank);

// Kempf-Ness orthogonality residual max_k |⟨z, X_k z⟩|.
//
// # Safety
// All pointers must be valid; `handle` must be a live coordinate handle.
enum Hd4Status hd4_kempf_ness_residual(const struct Hd4AVector *handle, double *out);

// Sampled orbit norm-minimality probe: min ‖g·z‖/‖z‖ over `samples`
// determinant-one perturbations.
//
// # Safety
// All pointers must be valid; `handle` must be a live coordinate handle.
enum Hd4Status hd4_norm_min_probe(const struct Hd4AVector *handle,
                                  size_t samples,
                                  uint64_t seed,
                                  double *out);

// First-order criticality certificate of a coordinate vector on Δ, as a
// JSON string (free with [`hd4_string_free`]).
//
// # Safety
// All pointers must be valid; `handle` must be a live coordinate handle.
enum Hd4Status hd4_certify_json(const struct Hd4AVector *handle, char **out);

// Multistart maximization of |V_n| under the L1 constraint; the full
// report is returned as JSON (free with [`hd4_string_free`]).
//
// # Safety
// `out` must be a valid pointer.
enum Hd4Status hd4_maximize_vn_json(size_t n,
                                    size_t restarts,
                                    uint64_t seed,
                                    double tol,
                                    char **out);

// Multistart maximization of |Det| on the unit sphere of A, as JSON (free
// with [`hd4_string_free`]).
//
// # Safety
// `out` must be a valid pointer.
enum Hd4Status hd4_maximize_det_a_json(size_t restarts, uint64_t seed, double tol, char **out);

// Best LU fidelity |⟨b, (V₁⊗V₂⊗V₃⊗V₄)a⟩| over SU(2)^⊗4 (multistart).
// Inputs are normalized internally; fails on zero states.
//
// # Safety
// All pointers must be valid; the state handles must be live.
enum Hd4Status hd4_lu_fidelity(const struct Hd4State *a,
                               const struct Hd4State *b,
                               size_t restarts,
                               uint64_t seed,
                               double *out);

// Serialize a state handle back to JSON (free with [`hd4_string_free`]).
//
// # Safety
// All pointers must be valid; `handle` must be a live state handle.
enum Hd4Status hd4_state_to_json(const struct Hd4State *handle, char **out);

// Serialize a coordinate handle to JSON (free with [`hd4_string_free`]).
//
// # Safety
// All pointers must be valid; `handle` must be a live coordinate handle.
enum Hd4Status hd4_avector_to_json(const struct Hd4AVector *handle, char **out);

// Embed a coordinate handle into a full state handle.
//
// # Safety
// All pointers must be valid; `handle` must be a live coordinate handle.
enum Hd4Status hd4_avector_embed(const struct Hd4AVector *handle, struct Hd4State **out);

// Release a string allocated by this library.
//
// # Safety
// `s` must have been returned by this library and not already freed.
void hd4_string_free(char *s);

// Library version as a static string (do not free).
const char *hd4_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERDET4_H */
