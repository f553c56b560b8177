#ifndef CURVSEG_H
#define CURVSEG_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_POINTER = 1,
  CS_STATUS_INVALID_ARGUMENT = 2,
  CS_STATUS_IO = 3,
  CS_STATUS_FORMAT = 4,
  CS_STATUS_TOO_SMALL = 5,
  CS_STATUS_INTERNAL = 6,
} CsStatus;

typedef enum CsRegionMode {
  CS_REGION_MODE_COMBINED = 0,
  CS_REGION_MODE_CONVEX_ONLY = 1,
  CS_REGION_MODE_CONCAVE_ONLY = 2,
} CsRegionMode;

typedef enum CsStencil {
  CS_STENCIL_SOBEL = 0,
  CS_STENCIL_CENTRAL = 1,
} CsStencil;

/**
 * Opaque grayscale image.
 */
typedef struct CsImage CsImage;

/**
 * Opaque binary mask.
 */
typedef struct CsMask CsMask;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *cs_version(void);

/**
 * Static description of a status code.
 */
const char *cs_status_string(enum CsStatus status);

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cs_last_error_message(void);

/**
 * Copies `width * height` samples into a new image.
 *
 * # Safety
 * `samples` must point to `width * height` readable doubles and `out` must
 * be a valid pointer to write the handle to.
 */
enum CsStatus cs_image_new(size_t width,
                           size_t height,
                           const double *samples,
                           struct CsImage **out);

/**
 * Loads a PGM or PNG file, normalized to `[0, 1]`.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CsStatus cs_image_load(const char *path, struct CsImage **out);

/**
 * # Safety
 * `image` must be NULL or a handle from this library.
 */
size_t cs_image_width(const struct CsImage *image);

/**
 * # Safety
 * `image` must be NULL or a handle from this library.
 */
size_t cs_image_height(const struct CsImage *image);

/**
 * Copies the samples row-major into `buf`, which must hold `len >= width * height`.
 *
 * # Safety
 * `image` must be a live handle and `buf` must be writable for `len` doubles.
 */
enum CsStatus cs_image_copy_samples(const struct CsImage *image, double *buf, size_t len);

/**
 * # Safety
 * `image` must be NULL or a handle from this library not yet freed.
 */
void cs_image_free(struct CsImage *image);

/**
 * Gaussian smoothing into a new image.
 *
 * # Safety
 * `image` must be a live handle and `out` a valid pointer.
 */
enum CsStatus cs_smooth(const struct CsImage *image, double sigma, struct CsImage **out);

/**
 * Full detector: region and exterior-boundary masks. `min_area` of 0 keeps
 * every component; components are 8-connected.
 *
 * # Safety
 * `image` must be a live handle; `region_out` and `boundary_out` must be
 * valid pointers.
 */
enum CsStatus cs_detect(const struct CsImage *image,
                        double sigma,
                        enum CsRegionMode mode,
                        enum CsStencil stencil,
                        size_t min_area,
                        struct CsMask **region_out,
                        struct CsMask **boundary_out);

/**
 * Watershed lines of the gradient modulus; `sigma` 0 skips smoothing.
 *
 * # Safety
 * `image` must be a live handle and `out` a valid pointer.
 */
enum CsStatus cs_watershed_contours(const struct CsImage *image,
                                    double sigma,
                                    enum CsStencil stencil,
                                    struct CsMask **out);

/**
 * # Safety
 * `mask` must be NULL or a handle from this library.
 */
size_t cs_mask_width(const struct CsMask *mask);

/**
 * # Safety
 * `mask` must be NULL or a handle from this library.
 */
size_t cs_mask_height(const struct CsMask *mask);

/**
 * Number of set pixels.
 *
 * # Safety
 * `mask` must be NULL or a handle from this library.
 */
size_t cs_mask_count(const struct CsMask *mask);

/**
 * Writes one byte per pixel (1 set, 0 clear) into `buf`.
 *
 * # Safety
 * `mask` must be a live handle and `buf` writable for `len` bytes.
 */
enum CsStatus cs_mask_copy(const struct CsMask *mask, uint8_t *buf, size_t len);

/**
 * Saves as binary PGM (P5, maxval 255; set pixels 255).
 *
 * # Safety
 * `mask` must be a live handle and `path` a NUL-terminated string.
 */
enum CsStatus cs_mask_save(const struct CsMask *mask, const char *path);

/**
 * # Safety
 * `mask` must be NULL or a handle from this library not yet freed.
 */
void cs_mask_free(struct CsMask *mask);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURVSEG_H */
