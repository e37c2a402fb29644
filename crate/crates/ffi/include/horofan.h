#ifndef HOROFAN_H
#define HOROFAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HorofanStatus {
  HOROFAN_STATUS_OK = 0,
  // A verdict came out negative.
  HOROFAN_STATUS_CHECK_FAILED = 1,
  // The input was malformed or violates the axioms.
  HOROFAN_STATUS_INPUT_ERROR = 2,
  HOROFAN_STATUS_NULL_POINTER = 3,
  HOROFAN_STATUS_INVALID_UTF8 = 4,
  // The library panicked.
  HOROFAN_STATUS_PANIC = 5,
} HorofanStatus;

// A stacky coloured fan.
typedef struct HorofanFan HorofanFan;

// A map of stacky coloured fans.
typedef struct HorofanMap HorofanMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or null. Valid until the next call.
const char *horofan_last_error(void);

// # Safety
// `s` must be null or a string returned by this library that has not been freed.
void horofan_string_free(char *s);

// Parses and validates a fan document.
//
// # Safety
// `json` must be null or a NUL-terminated string; `out` must be null or writable.
enum HorofanStatus horofan_fan_from_json(const char *json, struct HorofanFan **out);

// # Safety
// `fan` must be null or a handle from this library that has not been freed.
void horofan_fan_free(struct HorofanFan *fan);

// Canonical JSON document; free with [`horofan_string_free`].
//
// # Safety
// `fan` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_fan_to_json(const struct HorofanFan *fan, char **out);

// Whether every colour set of the fan is empty.
//
// # Safety
// `fan` must be a live handle or null.
enum HorofanStatus horofan_fan_is_toroidal(const struct HorofanFan *fan);

// Character group of the stabilizer as JSON with `free_rank`, `torsion` and `name`.
//
// # Safety
// `fan` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_fan_k_beta(const struct HorofanFan *fan, char **out);

// Class group of the underlying coloured fan as JSON; fails the check when colour points and
// support do not span the lattice.
//
// # Safety
// `fan` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_fan_class_group(const struct HorofanFan *fan, char **out);

// The decolouration with the same stacky structure.
//
// # Safety
// `fan` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_fan_decolour(const struct HorofanFan *fan, struct HorofanFan **out);

// The good moduli space map, when the construction succeeds.
//
// # Safety
// `fan` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_fan_gms(const struct HorofanFan *fan, struct HorofanMap **out);

// The Cox stack of the underlying coloured fan with its map down to the fan.
//
// # Safety
// `fan` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_fan_cox(const struct HorofanFan *fan, struct HorofanMap **out);

// Parses and validates a map document. Relative `domain` and `codomain` paths resolve against
// `base_dir`, or the working directory when it is null.
//
// # Safety
// `json` and `base_dir` must be null or NUL-terminated strings; `out` must be null or writable.
enum HorofanStatus horofan_map_from_json(const char *json,
                                         const char *base_dir,
                                         struct HorofanMap **out);

// # Safety
// `map` must be null or a handle from this library that has not been freed.
void horofan_map_free(struct HorofanMap *map);

// Canonical JSON document with inline domain and codomain.
//
// # Safety
// `map` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_map_to_json(const struct HorofanMap *map, char **out);

// A new handle for the domain.
//
// # Safety
// `map` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_map_domain(const struct HorofanMap *map, struct HorofanFan **out);

// A new handle for the codomain.
//
// # Safety
// `map` must be a live handle or null; `out` must be null or writable.
enum HorofanStatus horofan_map_codomain(const struct HorofanMap *map, struct HorofanFan **out);

// Whether the map induces an isomorphism of horospherical stacks.
//
// # Safety
// `map` must be a live handle or null.
enum HorofanStatus horofan_map_check_isomorphism(const struct HorofanMap *map);

// Whether the map induces a good moduli space morphism.
//
// # Safety
// `map` must be a live handle or null.
enum HorofanStatus horofan_map_check_gms(const struct HorofanMap *map);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOROFAN_H */
