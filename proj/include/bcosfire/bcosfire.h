/*
 * bcosfire - trainable B-COSFIRE filters for delineating curvilinear
 * structures in grayscale images.
 *
 * C API over the C++ core: opaque handles, status-code returns, a
 * thread-local message for the last failure. All functions returning
 * bcf_status leave outputs untouched unless they return BCF_OK; every handle
 * returned through an out-parameter is owned by the caller and released with
 * the matching *_free function.
 */
#ifndef BCOSFIRE_H
#define BCOSFIRE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BCF_API __declspec(dllexport)
#else
#define BCF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bcf_status {
  BCF_OK = 0,
  BCF_ERROR_IO = 1,          /* unreadable / unwritable file */
  BCF_ERROR_FORMAT = 2,      /* unsupported or corrupt raster */
  BCF_ERROR_PARAM = 3,       /* parameter outside its contract */
  BCF_ERROR_CONTRACT = 4,    /* inconsistent inputs (e.g. dimension mismatch) */
  BCF_ERROR_UNSUPPORTED = 5, /* operation undefined for this input kind */
  BCF_ERROR_NULL_ARGUMENT = 6,
  BCF_ERROR_INTERNAL = 7
} bcf_status;

typedef enum bcf_polarity {
  BCF_DARK_ON_BRIGHT = 0, /* cracks: dark lines on bright background */
  BCF_BRIGHT_ON_DARK = 1  /* synthetic stimuli: bright lines on black */
} bcf_polarity;

typedef struct bcf_image bcf_image;       /* grayscale raster of doubles */
typedef struct bcf_mask bcf_mask;         /* binary map */
typedef struct bcf_tupleset bcf_tupleset; /* configured filter structure */
typedef struct bcf_prepared bcf_prepared; /* threshold-independent pipeline state */
typedef struct bcf_sweep_result bcf_sweep_result;

typedef struct bcf_cosfire_params {
  double w;         /* preferred line width, pixels, > 0 */
  int l;            /* preferred line length, odd, >= 3 */
  int eta;          /* tuple spacing, 1 <= eta <= (l-1)/2 */
  double sigma0;    /* blur base std-dev, >= 0 */
  double alpha;     /* blur growth rate, >= 0 */
  int orientations; /* rotation-tolerant bank size, default 8 */
} bcf_cosfire_params;

typedef enum bcf_stimulus_kind {
  BCF_STIMULUS_CIRCLE = 0,
  BCF_STIMULUS_DASHED_CIRCLE = 1,
  BCF_STIMULUS_GABOR_CURVE = 2
} bcf_stimulus_kind;

typedef struct bcf_stimulus_spec {
  int kind; /* bcf_stimulus_kind */
  int width, height;
  double radius;
  double line_width;
  double gap_deg;        /* dashed circles */
  double arc_gap_ratio;  /* visible arc length as a multiple of the gap */
  double noise_variance; /* zero-mean Gaussian, added then clipped to [0,1] */
  uint64_t seed;
  double gabor_amplitude, gabor_envelope, gabor_period;
} bcf_stimulus_spec;

typedef struct bcf_ttest_result {
  int h;    /* 1 iff p < alpha */
  double p; /* two-tailed */
  double t;
  int dof;
} bcf_ttest_result;

BCF_API const char* bcf_version(void);
BCF_API const char* bcf_status_name(bcf_status status);
/* Message describing the most recent failure on this thread ("" if none). */
BCF_API const char* bcf_last_error(void);
/* Worker threads for internal parallel loops; 0 restores the default
 * (hardware concurrency, or the BCF_THREADS environment variable). */
BCF_API void bcf_set_threads(int n);

/* ---- images (grayscale, row-major doubles, intensities in [0,1]) ---- */
BCF_API bcf_status bcf_image_create(int width, int height, const double* data /* nullable */,
                                    bcf_image** out);
BCF_API bcf_status bcf_image_load(const char* path, bcf_image** out); /* BMP or PNG */
BCF_API bcf_status bcf_image_save_png(const bcf_image* image, const char* path);
BCF_API int bcf_image_width(const bcf_image* image);
BCF_API int bcf_image_height(const bcf_image* image);
BCF_API const double* bcf_image_data(const bcf_image* image);
BCF_API void bcf_image_free(bcf_image* image);

/* ---- binary maps ---- */
BCF_API bcf_status bcf_mask_create(int width, int height, const uint8_t* data /* nullable */,
                                   bcf_mask** out);
BCF_API bcf_status bcf_mask_load(const char* path, bcf_mask** out); /* binarized at > 127 */
BCF_API bcf_status bcf_mask_save_png(const bcf_mask* mask, const char* path); /* 0/255 */
BCF_API int bcf_mask_width(const bcf_mask* mask);
BCF_API int bcf_mask_height(const bcf_mask* mask);
BCF_API const uint8_t* bcf_mask_data(const bcf_mask* mask);
BCF_API void bcf_mask_free(bcf_mask* mask);

/* ---- filter configuration ---- */
BCF_API void bcf_cosfire_params_init(bcf_cosfire_params* params); /* w=6.34 l=29 eta=2 s0=2 a=1 n=8 */
BCF_API bcf_status bcf_tupleset_configure(const bcf_cosfire_params* params, double phi,
                                          bcf_tupleset** out);
BCF_API int bcf_tupleset_count(const bcf_tupleset* set);
BCF_API bcf_status bcf_tupleset_get(const bcf_tupleset* set, int index, double* rho,
                                    double* angle);
/* Writes the "rho angle" line format; *needed receives the full length
 * (excluding the terminator) regardless of capacity. */
BCF_API bcf_status bcf_tupleset_serialize(const bcf_tupleset* set, char* buffer, size_t capacity,
                                          size_t* needed);
BCF_API void bcf_tupleset_free(bcf_tupleset* set);

/* ---- pipeline ---- */
/* Response of a single filter with preferred orientation phi (radians). */
BCF_API bcf_status bcf_response(const bcf_image* image, const bcf_cosfire_params* params,
                                double phi, bcf_polarity polarity, bcf_image** out);
/* Rotation-tolerant response and orientation map (index k per pixel,
 * theta = k*pi/orientations, stored as doubles). */
BCF_API bcf_status bcf_rotation_tolerant(const bcf_image* image, const bcf_cosfire_params* params,
                                         bcf_polarity polarity, bcf_image** response,
                                         bcf_image** orientation);
/* Filter + thin + hysteresis (t_l = 0.5*t_h) + 3x3 closing. */
BCF_API bcf_status bcf_delineate(const bcf_image* image, const bcf_cosfire_params* params,
                                 double t_h, bcf_polarity polarity, bcf_mask** out);
/* Threshold-independent part of delineate, for threshold sweeps. Accessors
 * return views owned by the prepared object. */
BCF_API bcf_status bcf_prepare(const bcf_image* image, const bcf_cosfire_params* params,
                               bcf_polarity polarity, bcf_prepared** out);
BCF_API const bcf_image* bcf_prepared_response(const bcf_prepared* prepared);    /* normalized */
BCF_API const bcf_image* bcf_prepared_orientation(const bcf_prepared* prepared);
BCF_API const bcf_image* bcf_prepared_thinned(const bcf_prepared* prepared);
BCF_API bcf_status bcf_prepared_rethreshold(const bcf_prepared* prepared, double t_h,
                                            bcf_mask** out);
BCF_API void bcf_prepared_free(bcf_prepared* prepared);
/* Full width (radians) at 75% of the unrotated peak, probed in 1-degree
 * steps; probe_size 0 sizes the probe image automatically. */
BCF_API bcf_status bcf_orientation_bandwidth(const bcf_cosfire_params* params, int probe_size,
                                             double* radians);

/* ---- evaluation ---- */
/* Distance-tolerant counts: detected point matches when the nearest truth
 * point is strictly closer than d_star (Euclidean), and vice versa for
 * false negatives. */
BCF_API bcf_status bcf_match_tolerant(const bcf_mask* detected, const bcf_mask* truth,
                                      double d_star, int64_t* tp, int64_t* fp, int64_t* fn);
BCF_API bcf_status bcf_prf(int64_t tp, int64_t fp, int64_t fn, double* precision, double* recall,
                           double* f_measure);
BCF_API bcf_status bcf_paired_ttest(const double* a, const double* b, int n, double alpha,
                                    bcf_ttest_result* out);
/* 20*log10(mean response on signal / mean response elsewhere). */
BCF_API bcf_status bcf_snr(const bcf_image* response, const bcf_mask* signal, double* snr_db);

/* Threshold sweep t_h = 0.00 .. 1.00 in steps of 0.01 over a paired dataset;
 * per-image pipelines run once and are rethresholded. */
BCF_API bcf_status bcf_sweep(const bcf_image* const* images, const bcf_mask* const* truths,
                             int count, const bcf_cosfire_params* params, bcf_polarity polarity,
                             double d_star, bcf_sweep_result** out);
BCF_API int bcf_sweep_point_count(const bcf_sweep_result* result); /* 101 */
BCF_API int bcf_sweep_best_index(const bcf_sweep_result* result);
BCF_API bcf_status bcf_sweep_point(const bcf_sweep_result* result, int index, double* t_h,
                                   double* mean_precision, double* mean_recall, double* mean_f);
BCF_API bcf_status bcf_sweep_image_point(const bcf_sweep_result* result, int image, int index,
                                         int64_t* tp, int64_t* fp, int64_t* fn, double* precision,
                                         double* recall, double* f_measure);
BCF_API void bcf_sweep_result_free(bcf_sweep_result* result);

/* ---- synthetic stimuli ---- */
BCF_API void bcf_stimulus_spec_init(bcf_stimulus_spec* spec); /* 300x300 circle r=100 w=5 */
BCF_API bcf_status bcf_synth_generate(const bcf_stimulus_spec* spec, bcf_image** stimulus,
                                      bcf_mask** truth);
/* Full ideal circumference (gaps included), the SNR signal region. */
BCF_API bcf_status bcf_arc_mask(const bcf_stimulus_spec* spec, bcf_mask** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BCOSFIRE_H */
