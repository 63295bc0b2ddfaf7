#ifndef BCDKIT_H
#define BCDKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BcdStatus {
  BCD_STATUS_OK = 0,
  BCD_STATUS_NULL_POINTER = 1,
  BCD_STATUS_INVALID_ARGUMENT = 2,
  BCD_STATUS_UNKNOWN_CIRCUIT = 3,
  BCD_STATUS_PARSE_ERROR = 4,
  BCD_STATUS_ANALYSIS_FAILED = 5,
  BCD_STATUS_PANIC = 6,
} BcdStatus;

/**
 * Opaque netlist handle.
 */
typedef struct BcdNetlist BcdNetlist;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *bcd_last_error(void);

/**
 * Builds a named circuit (`ncla4`, `bcd-cs`, ...). `digits` applies to BCD
 * chains only.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum BcdStatus bcd_netlist_generate(const char *name, uint32_t digits, struct BcdNetlist **out);

/**
 * Loads a netlist document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum BcdStatus bcd_netlist_from_json(const char *json, struct BcdNetlist **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from this library and must not be used afterwards.
 */
void bcd_netlist_free(struct BcdNetlist *handle);

/**
 * Writes the number of primary inputs and outputs.
 *
 * # Safety
 * `handle` must be a live handle; the counts must be writable.
 */
enum BcdStatus bcd_netlist_shape(const struct BcdNetlist *handle, size_t *inputs, size_t *outputs);

/**
 * Evaluates one input vector. Bits are bytes (0 or 1) in primary-input
 * order; outputs are written the same way.
 *
 * # Safety
 * `inputs` must hold `n_inputs` bytes and `outputs` room for `n_outputs`.
 */
enum BcdStatus bcd_netlist_evaluate(const struct BcdNetlist *handle,
                                    const uint8_t *inputs,
                                    size_t n_inputs,
                                    uint8_t *outputs,
                                    size_t n_outputs);

/**
 * Total transistor count under the default cost model.
 *
 * # Safety
 * `handle` must be a live handle and `total` writable.
 */
enum BcdStatus bcd_netlist_transistor_cost(const struct BcdNetlist *handle, uint32_t *total);

/**
 * Longest input-to-output path under the default unit-delay model.
 *
 * # Safety
 * `handle` must be a live handle and `depth` writable.
 */
enum BcdStatus bcd_netlist_delay_topological(const struct BcdNetlist *handle, uint64_t *depth);

/**
 * Exhaustive check against the circuit's arithmetic oracle. A completed
 * check returns `Ok` even when vectors fail; compare `passed` to `vectors`.
 *
 * # Safety
 * `handle` must be a live handle; `passed` and `vectors` writable.
 */
enum BcdStatus bcd_netlist_check(const struct BcdNetlist *handle,
                                 uint64_t *passed,
                                 uint64_t *vectors);

/**
 * Canonical JSON document; free with `bcd_string_free`.
 *
 * # Safety
 * `handle` must be a live handle and `out` writable.
 */
enum BcdStatus bcd_netlist_to_json(const struct BcdNetlist *handle, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void bcd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BCDKIT_H */
