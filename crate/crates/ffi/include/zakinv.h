#ifndef ZAKINV_H
#define ZAKINV_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every call.
typedef enum ZakStatus {
  ZAK_STATUS_OK = 0,
  ZAK_STATUS_NULL_POINTER = 1,
  ZAK_STATUS_PARSE = 2,
  ZAK_STATUS_EMPTY_GENERATOR = 3,
  ZAK_STATUS_NOT_NESTED = 4,
  ZAK_STATUS_NOT_INVARIANT = 5,
  ZAK_STATUS_INVALID_ARGUMENT = 6,
  ZAK_STATUS_NOT_IN_LATTICE = 7,
  ZAK_STATUS_INTERNAL = 99,
} ZakStatus;

// Finite abelian group `Z_{m_1} x ... x Z_{m_d}`.
typedef struct ZakGroup ZakGroup;

// Subgroup of a `ZakGroup`.
typedef struct ZakLattice ZakLattice;

// Complex-valued function on a `ZakGroup`.
typedef struct ZakSignal ZakSignal;

// Generator on the line given by its piecewise-constant spectrum.
typedef struct ZakSpectrum ZakSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a
// successful call. The pointer stays valid until the next call into this
// library from the same thread; do not free it.
const char *zak_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *zak_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void zak_string_free(char *s);

// Parses a spectrum document `{"pieces":[{"lo":"0","hi":"1/2","re":1}]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum ZakStatus zak_spectrum_from_json(const char *json, struct ZakSpectrum **out);

// # Safety
// `s` must come from `zak_spectrum_from_json` or be null.
void zak_spectrum_free(struct ZakSpectrum *s);

// Decides `(1/N)Z`-invariance of `<psi>_Z` by disjointness of the
// folded branches.
//
// # Safety
// Pointers must be valid; `out_invariant` must be writable.
enum ZakStatus zak_line_extra_invariance(const struct ZakSpectrum *spectrum,
                                         uint32_t n,
                                         bool *out_invariant);

// Same decision through the support-overlap test; requires `n >= 2`.
//
// # Safety
// Pointers must be valid; `out_invariant` must be writable.
enum ZakStatus zak_line_periodization_criterion(const struct ZakSpectrum *spectrum,
                                                uint32_t n,
                                                bool *out_invariant);

// `Z_N(psi)(x, xi)` with `xi` given as exact rational text such as `"3/8"`.
//
// # Safety
// Pointers must be valid; `out_re` and `out_im` must be writable.
enum ZakStatus zak_line_evaluate(const struct ZakSpectrum *spectrum,
                                 uint32_t n,
                                 double x,
                                 const char *xi,
                                 double *out_re,
                                 double *out_im);

// Full line verdict as JSON, the same document `zakinv line` writes.
// Release the result with `zak_string_free`.
//
// # Safety
// Pointers must be valid; `out_json` must be writable.
enum ZakStatus zak_line_report_json(const struct ZakSpectrum *spectrum,
                                    uint32_t n,
                                    double tol,
                                    char **out_json);

// Parses a group such as `"2x4"`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum ZakStatus zak_group_parse(const char *spec, struct ZakGroup **out);

// # Safety
// `g` must come from `zak_group_parse` or be null.
void zak_group_free(struct ZakGroup *g);

// Number of elements, or 0 for a null handle.
//
// # Safety
// `g` must be valid or null.
size_t zak_group_order(const struct ZakGroup *g);

// Parses the subgroup generated by `"(1,2);(0,2)"`; the empty string gives
// the trivial subgroup.
//
// # Safety
// Pointers must be valid; `out` must be writable.
enum ZakStatus zak_lattice_parse(const struct ZakGroup *group,
                                 const char *generators,
                                 struct ZakLattice **out);

// # Safety
// `l` must come from `zak_lattice_parse` or be null.
void zak_lattice_free(struct ZakLattice *l);

// Number of elements, or 0 for a null handle.
//
// # Safety
// `l` must be valid or null.
size_t zak_lattice_len(const struct ZakLattice *l);

// Signal from `len` samples in lexicographic element order. `im` may be
// null for a real signal.
//
// # Safety
// `re` (and `im` when non-null) must point to `len` doubles.
enum ZakStatus zak_signal_new(const struct ZakGroup *group,
                              const double *re,
                              const double *im,
                              size_t len,
                              struct ZakSignal **out);

// # Safety
// `s` must come from `zak_signal_new` or be null.
void zak_signal_free(struct ZakSignal *s);

// Decides whether `<psi>_K` is `L`-invariant through the Zak transform.
//
// # Safety
// Pointers must be valid; `out_invariant` must be writable.
enum ZakStatus zak_group_extra_invariance(const struct ZakSignal *psi,
                                          const struct ZakLattice *k,
                                          const struct ZakLattice *l,
                                          double tol,
                                          bool *out_invariant);

// Same decision by least-squares projection onto `span{T_k psi}`.
// `out_max_residual` may be null.
//
// # Safety
// Pointers must be valid; `out_invariant` must be writable.
enum ZakStatus zak_group_oracle(const struct ZakSignal *psi,
                                const struct ZakLattice *k,
                                const struct ZakLattice *l,
                                double tol,
                                bool *out_invariant,
                                double *out_max_residual);

// Full group verdict as JSON, the same document `zakinv group` writes.
// Release the result with `zak_string_free`.
//
// # Safety
// Pointers must be valid; `out_json` must be writable.
enum ZakStatus zak_group_report_json(const struct ZakSignal *psi,
                                     const struct ZakLattice *k,
                                     const struct ZakLattice *l,
                                     double tol,
                                     char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZAKINV_H */
