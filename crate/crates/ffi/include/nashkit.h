#ifndef NASHKIT_H
#define NASHKIT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  NK_STATUS_OK = 0,
  NK_STATUS_NULL_ARGUMENT = 1,
  NK_STATUS_INVALID_UTF8 = 2,
  NK_STATUS_MALFORMED_INPUT = 10,
  NK_STATUS_DIMENSION_MISMATCH = 11,
  NK_STATUS_ZERO_POLYNOMIAL = 20,
  NK_STATUS_NOT_INVERTIBLE = 21,
  NK_STATUS_NOT_NILPOTENT = 22,
  NK_STATUS_NOT_UNIPOTENT = 23,
  NK_STATUS_NOT_HYPERBOLIC = 24,
  NK_STATUS_NOT_EXPONENTIAL_ELEMENT = 25,
  NK_STATUS_NOT_ABELIAN = 26,
  NK_STATUS_NOT_IN_ALGEBRA = 27,
  NK_STATUS_NOT_NILPOTENT_ALGEBRA = 28,
  NK_STATUS_NOT_SOLVABLE = 29,
  NK_STATUS_NOT_SPLIT = 30,
  NK_STATUS_NOT_THETA_STABLE = 31,
  NK_STATUS_NOT_SIMULTANEOUSLY_DIAGONALIZABLE = 32,
  NK_STATUS_NOT_POSITIVE_RATIONAL = 33,
  NK_STATUS_IRRATIONAL_SPECTRUM = 34,
  NK_STATUS_EXACT_REQUIRED = 35,
  NK_STATUS_LIFT_FAILED = 36,
  NK_STATUS_POSTCONDITION_FAILED = 37,
  NK_STATUS_CLUSTER_AMBIGUITY = 40,
  NK_STATUS_NUMERICAL_FAILURE = 41,
  NK_STATUS_PANIC = 99,
} NkStatus;

/**
 * Whether an element is read in the group or in the Lie algebra.
 */
typedef enum {
  NK_SETTING_GROUP = 0,
  NK_SETTING_ALGEBRA = 1,
} NkSetting;

/**
 * Domain of the exponential / logarithm.
 */
typedef enum {
  NK_DOMAIN_NILPOTENT = 0,
  NK_DOMAIN_HYPERBOLIC = 1,
  NK_DOMAIN_EXPONENTIAL = 2,
} NkDomain;

/**
 * Opaque matrix Lie algebra.
 */
typedef struct NkAlgebra NkAlgebra;

/**
 * Opaque square matrix, exact or approximate.
 */
typedef struct NkMatrix NkMatrix;

/**
 * Class predicates of an element.
 */
typedef struct {
  bool elliptic;
  bool hyperbolic;
  bool unipotent;
  bool semisimple;
  bool exponential;
} NkElementClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread (empty after a
 * successful call). The pointer stays valid until the next call on the
 * same thread.
 */
const char *nk_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, not yet freed.
 */
void nk_string_free(char *s);

/**
 * Parses a matrix from its JSON encoding; `tol` applies to approximate
 * matrices.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
NkStatus nk_matrix_from_json(const char *json, double tol, NkMatrix **out);

/**
 * Builds an approximate `n × n` matrix from `n*n` row-major entries.
 *
 * # Safety
 * `entries` must point to `n*n` doubles; `out` must be writable.
 */
NkStatus nk_matrix_new_approx(size_t n, const double *entries, double tol, NkMatrix **out);

/**
 * Builds an exact `n × n` matrix from row-major numerators and
 * denominators.
 *
 * # Safety
 * `num` and `den` must each point to `n*n` integers; `out` must be writable.
 */
NkStatus nk_matrix_new_exact(size_t n, const int64_t *num, const int64_t *den, NkMatrix **out);

/**
 * Releases a matrix handle.
 *
 * # Safety
 * `m` must be null or a handle from this library, not yet freed.
 */
void nk_matrix_free(NkMatrix *m);

/**
 * Side length of the matrix (0 for a null handle).
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t nk_matrix_size(const NkMatrix *m);

/**
 * Whether the matrix holds exact rationals.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
bool nk_matrix_is_exact(const NkMatrix *m);

/**
 * Copies the entries, rounded to doubles, into `out` (row-major, `n*n`).
 *
 * # Safety
 * `m` must be a live handle; `out` must have room for `n*n` doubles.
 */
NkStatus nk_matrix_entries(const NkMatrix *m, double *out);

/**
 * JSON encoding of the matrix.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
NkStatus nk_matrix_to_json(const NkMatrix *m, char **out);

/**
 * Elliptic, hyperbolic and unipotent parts. `additive` selects
 * `x = e + h + u` instead of `x = e·h·u`.
 *
 * # Safety
 * `x` must be a live handle; the out-parameters must be writable.
 */
NkStatus nk_jordan(const NkMatrix *x, bool additive, NkMatrix **e, NkMatrix **h, NkMatrix **u);

/**
 * Semisimple and nilpotent parts, `x = s + n`.
 *
 * # Safety
 * `x` must be a live handle; the out-parameters must be writable.
 */
NkStatus nk_sn_split(const NkMatrix *x, NkMatrix **s, NkMatrix **n);

/**
 * Class predicates of `x`.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
NkStatus nk_classify(const NkMatrix *x, NkSetting setting, NkElementClass *out);

/**
 * Exponential of `x` on the given domain.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
NkStatus nk_exp(const NkMatrix *x, NkDomain d, NkMatrix **out);

/**
 * Logarithm of `x` on the given domain.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
NkStatus nk_log(const NkMatrix *x, NkDomain d, NkMatrix **out);

/**
 * `x = k·exp(X)` with `k` orthogonal and `X` symmetric.
 *
 * # Safety
 * `x` must be a live handle; the out-parameters must be writable.
 */
NkStatus nk_polar_kak(const NkMatrix *x, NkMatrix **k, NkMatrix **big_x);

/**
 * `x = k·a·n` with `k` orthogonal, `a` positive diagonal, `n` unit upper
 * triangular.
 *
 * # Safety
 * `x` must be a live handle; the out-parameters must be writable.
 */
NkStatus nk_iwasawa_kan(const NkMatrix *x, NkMatrix **k, NkMatrix **a, NkMatrix **n);

/**
 * Replica of a hyperbolic or unipotent element, as JSON
 * (`{"kind", "dimension", "lattice"}`).
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
NkStatus nk_replica_json(const NkMatrix *x, char **out);

/**
 * Parses an algebra (`{"generators": [...]}` or `{"basis": [...]}`); exact
 * if every matrix is exact.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
NkStatus nk_algebra_from_json(const char *json, double tol, NkAlgebra **out);

/**
 * Releases an algebra handle.
 *
 * # Safety
 * `a` must be null or a handle from this library, not yet freed.
 */
void nk_algebra_free(NkAlgebra *a);

/**
 * Dimension of the algebra (0 for a null handle).
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t nk_algebra_dim(const NkAlgebra *a);

/**
 * JSON encoding (`{"n", "basis"}`) of the algebra.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
NkStatus nk_algebra_to_json(const NkAlgebra *a, char **out);

/**
 * Nondegeneracy of the trace form.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
NkStatus nk_algebra_is_reductive(const NkAlgebra *a, bool *out);

/**
 * Solvable radical as JSON (`{"dim", "basis"}`). Exact algebras only.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
NkStatus nk_algebra_radical_json(const NkAlgebra *a, char **out);

/**
 * Unipotent radical as JSON (`{"dim", "basis"}`). Exact algebras only.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
NkStatus nk_algebra_unipotent_radical_json(const NkAlgebra *a, char **out);

/**
 * Levi decomposition as JSON (`{"levi": [...], "unipotent": [...]}`).
 * Exact algebras only.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
NkStatus nk_algebra_levi_json(const NkAlgebra *a, char **out);

/**
 * Runs every acceptance criterion; writes the JSON report and whether all
 * passed.
 *
 * # Safety
 * The out-parameters must be writable.
 */
NkStatus nk_selftest(uint64_t seed, char **report, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NASHKIT_H */
