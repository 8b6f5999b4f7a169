#ifndef QMEMORY_H
#define QMEMORY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define QM_FAMILY_RC 0

#define QM_FAMILY_DFS 1

#define QM_BASIS_BIT 0

#define QM_BASIS_PHASE 1

/*
 Correlated flip channel evaluated at a fixed `(mu, p)`.
 */
typedef struct QmChannel QmChannel;

/*
 Fidelity polynomial in `mu` and `p` with integer coefficients.
 */
typedef struct QmPolynomial QmPolynomial;

typedef int32_t QmStatus;

#define QM_OK 0

#define QM_INVALID_ARGUMENT 1

#define QM_NULL_POINTER 2

#define QM_UNSUPPORTED 3

#define QM_BUFFER_TOO_SMALL 4

/*
 `qm_threshold` found no sign change of F_DFS - F_RC on [0, 1].
 */
#define QM_NO_CROSSING 5

/*
 Internal failure, including a caught panic.
 */
#define QM_INTERNAL 6

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *qm_version(void);

/*
 Message for the most recent failure on this thread; empty after a success.
 The pointer stays valid until the next `qm_*` call on the same thread.
 */
const char *qm_last_error(void);

/*
 Derives the entanglement-fidelity polynomial of an `n`-qubit code.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
QmStatus qm_fidelity_poly_new(uint32_t family_code,
                              uint32_t n,
                              uint32_t basis_code,
                              struct QmPolynomial **out);

/*
 Published closed form for `(family, n)`.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
QmStatus qm_fixture_new(uint32_t family_code, uint32_t n, struct QmPolynomial **out);

/*
 Parses the canonical text form, e.g. `1 - 3*p^2 + 2*p^3`.

 # Safety
 `text` must be a NUL-terminated string and `out` writable.
 */
QmStatus qm_poly_parse(const char *text, struct QmPolynomial **out);

/*
 # Safety
 `poly` must come from a `qm_*_new` call; `out` must be writable.
 */
QmStatus qm_poly_eval(const struct QmPolynomial *poly, double mu, double p, double *out);

/*
 Coefficient of `mu^mu_deg * p^p_deg`.

 # Safety
 `poly` must come from a `qm_*_new` call; `out` must be writable.
 */
QmStatus qm_poly_coeff(const struct QmPolynomial *poly,
                       uint32_t mu_deg,
                       uint32_t p_deg,
                       int64_t *out);

/*
 Sets `*out` to 1 when the polynomials are identical and 0 otherwise.

 # Safety
 Both handles must come from `qm_*_new` calls; `out` must be writable.
 */
QmStatus qm_poly_equal(const struct QmPolynomial *a, const struct QmPolynomial *b, int32_t *out);

/*
 Writes the canonical text form into `buf`.

 `*written` receives the text length without the terminator. When `len`
 is too small nothing is copied and `QM_BUFFER_TOO_SMALL` is returned, so
 a first call with `len = 0` sizes the buffer.

 # Safety
 `poly` must come from a `qm_*_new` call, `buf` must hold `len` bytes
 (it may be null when `len` is 0) and `written` must be writable.
 */
QmStatus qm_poly_to_string(const struct QmPolynomial *poly, char *buf, size_t len, size_t *written);

/*
 # Safety
 `poly` must be null or come from a `qm_*_new` call not yet freed.
 */
void qm_poly_free(struct QmPolynomial *poly);

/*
 Builds the `n`-qubit channel at `(mu, p)`.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
QmStatus qm_channel_new(uint32_t n,
                        uint32_t basis_code,
                        double mu,
                        double p,
                        struct QmChannel **out);

/*
 Probability of the flip pattern whose bit `k - 1` marks qubit `k`.

 # Safety
 `channel` must come from `qm_channel_new`; `out` must be writable.
 */
QmStatus qm_channel_weight(const struct QmChannel *channel, uint32_t pattern, double *out);

/*
 # Safety
 `channel` must be null or come from `qm_channel_new` and not yet freed.
 */
void qm_channel_free(struct QmChannel *channel);

/*
 Smallest `mu` in [0, 1] where the `n`-qubit DFS code overtakes the
 repetition code at error probability `p`, bisected to `tol`.

 # Safety
 `out_mu` and `out_crossings` must be writable; `out_crossings` may be null.
 */
QmStatus qm_threshold(uint32_t n, double p, double tol, double *out_mu, uint32_t *out_crossings);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMEMORY_H */
