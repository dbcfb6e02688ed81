#ifndef TETRA_H
#define TETRA_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum TetraStatus {
  TETRA_STATUS_OK = 0,
  TETRA_STATUS_NULL_POINTER = 1,
  // Packed bits out of range, malformed text or bad UTF-8.
  TETRA_STATUS_INVALID_ARGUMENT = 2,
  TETRA_STATUS_NOT_INVERTIBLE = 3,
  TETRA_STATUS_IO = 4,
  // A store file failed to parse or verify.
  TETRA_STATUS_FORMAT = 5,
  TETRA_STATUS_INDEX_OUT_OF_RANGE = 6,
  // The caller's buffer is too small. Count out-parameters are still set.
  TETRA_STATUS_BUFFER_TOO_SMALL = 7,
  // A Rust panic was caught at the boundary.
  TETRA_STATUS_INTERNAL = 8,
} TetraStatus;

// Opaque list of base solutions.
typedef struct TetraStore TetraStore;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length without the NUL.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t tetra_last_error_message(char *buf, size_t len);

// Parses `rrr/rrr/rrr` text into packed bits.
//
// # Safety
// `text` must be null or NUL-terminated; `out_bits` null or writable.
enum TetraStatus tetra_mat3_parse(const char *text, uint16_t *out_bits);

// Writes `rrr/rrr/rrr` plus NUL; `buf` needs 12 bytes.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
enum TetraStatus tetra_mat3_format(uint16_t bits, char *buf, size_t len);

// Direct-sum tetrahedron equation for `(r1, r2, r3, r4)`.
//
// # Safety
// `out_holds` must be null or writable.
enum TetraStatus tetra_check_ds(uint16_t r1,
                                uint16_t r2,
                                uint16_t r3,
                                uint16_t r4,
                                bool *out_holds);

// Both mixed equations of a modified pair `(r4, q4)` over `(r1, r2, r3)`.
//
// # Safety
// `out_holds` must be null or writable.
enum TetraStatus tetra_check_modified(uint16_t r1,
                                      uint16_t r2,
                                      uint16_t r3,
                                      uint16_t r4,
                                      uint16_t q4,
                                      bool *out_holds);

// # Safety
// `out_result` must be null or writable.
enum TetraStatus tetra_is_genuinely_3d(uint16_t bits, bool *out_result);

// Basis-state permutation of an invertible matrix: `out_map[x]` is the
// image of state `x`, with coordinate 1 as the most significant bit.
//
// # Safety
// `out_map` must be null or point to 8 writable bytes.
enum TetraStatus tetra_quantize(uint16_t bits, uint8_t *out_map);

// Number of nonzero entries of `a·Q(r) + b·Q(s)` for generic `a`, `b`.
//
// # Safety
// `out_count` must be null or writable.
enum TetraStatus tetra_vertex_count(uint16_t r, uint16_t s, size_t *out_count);

// Runs the exhaustive base search over GL(3, F2). `threads == 0` uses the
// default pool. Free the result with [`tetra_store_free`].
//
// # Safety
// `out_store` must be null or writable.
enum TetraStatus tetra_store_search(size_t threads, struct TetraStore **out_store);

// # Safety
// `path` must be null or NUL-terminated; `out_store` null or writable.
enum TetraStatus tetra_store_load(const char *path, struct TetraStore **out_store);

// Writes the store file and reports its checksum. `out_checksum` may be null.
//
// # Safety
// `store` must be a live handle or null; `path` NUL-terminated or null.
enum TetraStatus tetra_store_save(const struct TetraStore *store,
                                  const char *path,
                                  uint64_t *out_checksum);

// # Safety
// `store` must be a live handle or null; `out_len` null or writable.
enum TetraStatus tetra_store_len(const struct TetraStore *store, size_t *out_len);

// Record `index` in canonical order as `r1, r2, r3, r4`.
//
// # Safety
// `store` must be a live handle or null; `out_record` null or 4 writable values.
enum TetraStatus tetra_store_get(const struct TetraStore *store,
                                 size_t index,
                                 uint16_t *out_record);

// Ordered six-tuple count and the count up to interchanging both pairs.
//
// # Safety
// `store` must be a live handle or null; out-pointers null or writable.
enum TetraStatus tetra_store_sixtuple_counts(const struct TetraStore *store,
                                             uint64_t *out_raw,
                                             uint64_t *out_deduplicated);

// Frees a handle. Null is ignored.
//
// # Safety
// `store` must be null or a handle not yet freed.
void tetra_store_free(struct TetraStore *store);

// Modified pairs `(r4, q4)`, `r4 < q4`, for the triple. Writes up to
// `capacity` pairs as consecutive `r4, q4` values into `out_pairs` and the
// total number found into `out_count`. Returns `BufferTooSmall` if they do
// not all fit; `out_pairs` may be null when `capacity` is 0.
//
// # Safety
// `out_pairs` must hold `2 * capacity` writable values; `out_count` writable.
enum TetraStatus tetra_search_modified_pairs(uint16_t r1,
                                             uint16_t r2,
                                             uint16_t r3,
                                             uint16_t *out_pairs,
                                             size_t capacity,
                                             size_t *out_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TETRA_H */
