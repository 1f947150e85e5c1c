#ifndef QECC_LAB_H
#define QECC_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QeccStatus {
  QECC_STATUS_OK = 0,
  QECC_STATUS_NULL_POINTER = 1,
  /**
   * Unparseable name, label or spec, or an out-of-range argument.
   */
  QECC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The simulation hit a state it cannot classify.
   */
  QECC_STATUS_INVARIANT_VIOLATION = 3,
  QECC_STATUS_BUFFER_TOO_SMALL = 4,
  QECC_STATUS_PANIC = 5,
} QeccStatus;

typedef enum QeccPolicy {
  QECC_POLICY_CORRECT_THEN_DECODE = 0,
  QECC_POLICY_DECODE_ONLY = 1,
} QeccPolicy;

typedef enum QeccPauli {
  QECC_PAULI_I = 0,
  QECC_PAULI_X = 1,
  QECC_PAULI_Y = 2,
  QECC_PAULI_Z = 3,
} QeccPauli;

typedef enum QeccUniverse {
  QECC_UNIVERSE_REFERENCE_TABLES = 0,
  QECC_UNIVERSE_FULL_XZ = 1,
} QeccUniverse;

/**
 * Opaque code handle.
 */
typedef struct QeccCode QeccCode;

/**
 * Summary of one pipeline run. `syndrome` holds the bits with the first
 * generator in the most significant position of `syndrome_len` bits.
 */
typedef struct QeccPipelineResult {
  bool has_syndrome;
  uint64_t syndrome;
  uint32_t syndrome_len;
  bool syndrome_measured;
  enum QeccPauli residual;
  /**
   * Global phase `i^phase_exp` of the residual.
   */
  uint8_t phase_exp;
  double error_norm;
  double probe_fidelity;
} QeccPipelineResult;

typedef struct QeccFnReport {
  uint32_t total;
  uint32_t identity;
  int64_t f_numer;
  int64_t f_denom;
} QeccFnReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message, NUL-terminated, into
 * `buf`. Returns the message length in bytes excluding the terminator;
 * nothing is written when `buf` is null or `len` is too small.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t qecc_last_error_message(char *buf, size_t len);

/**
 * Builds one of `bitflip3`, `phaseflip3`, `shor9`, `steane7`, `five5`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum QeccStatus qecc_code_new(const char *name, struct QeccCode **out);

/**
 * Releases a handle from [`qecc_code_new`]. Null is ignored.
 *
 * # Safety
 * `code` must be null or a live handle not freed before.
 */
void qecc_code_free(struct QeccCode *code);

/**
 * Physical qubit count, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uint32_t qecc_code_num_qubits(const struct QeccCode *code);

/**
 * Generator count (syndrome length), or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
uint32_t qecc_code_num_generators(const struct QeccCode *code);

/**
 * Commutation syndrome of a Pauli label such as `"X1 Z4"`, written as
 * ASCII `'0'`/`'1'` plus a terminator. `len` must exceed the generator count.
 *
 * # Safety
 * `code` must be a live handle, `pauli` NUL-terminated, `buf` valid for `len`
 * bytes.
 */
enum QeccStatus qecc_code_syndrome(const struct QeccCode *code,
                                   const char *pauli,
                                   char *buf,
                                   size_t len);

/**
 * Encodes the generic probe, applies `error_spec` (`none`, Pauli tokens or
 * `c:co,cx,cy,cz` on `qubit`), then corrects or not and decodes.
 *
 * # Safety
 * `code` must be a live handle, `error_spec` NUL-terminated, `out` writable.
 */
enum QeccStatus qecc_run_pipeline(const struct QeccCode *code,
                                  const char *error_spec,
                                  uint32_t qubit,
                                  enum QeccPolicy policy,
                                  uint64_t seed,
                                  struct QeccPipelineResult *out);

/**
 * Double-error census and exact `f` for `shor9`, `steane7` or `five5`.
 * The reference-table universe exists for those three codes only.
 *
 * # Safety
 * `code` must be a live handle, `out` writable.
 */
enum QeccStatus qecc_compute_f(const struct QeccCode *code,
                               enum QeccUniverse universe,
                               struct QeccFnReport *out);

/**
 * Average fidelity at error probability `p`: `1 - (2/3) p` when
 * `f_denom == 0` (no protection), else `1 - (1 - f) p^2`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QeccStatus qecc_curve_value(int64_t f_numer, int64_t f_denom, double p, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QECC_LAB_H */
