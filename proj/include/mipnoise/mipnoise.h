//
// Copyright 2026 The mipnoise Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
/* C interface to the mipnoise library.
 *
 * All objects are opaque handles created by a *_create / builder function and
 * released by the matching *_free function. Every fallible call returns a
 * mipnoise_status; on failure mipnoise_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread). Strings
 * returned through char** are owned by the caller and released with
 * mipnoise_string_free.
 */
#ifndef MIPNOISE_MIPNOISE_H_
#define MIPNOISE_MIPNOISE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(MIPNOISE_BUILDING_LIBRARY)
#define MIPNOISE_API __attribute__((visibility("default")))
#else
#define MIPNOISE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mipnoise_status {
  MIPNOISE_OK = 0,
  MIPNOISE_ERR_INVALID_ARGUMENT = 1,
  MIPNOISE_ERR_MALFORMED_INPUT = 2,
  MIPNOISE_ERR_CAPACITY_EXCEEDED = 3,
  MIPNOISE_ERR_IO = 4,
  MIPNOISE_ERR_RUNTIME = 5,
  MIPNOISE_ERR_UNDEFINED_POSTERIOR = 6,
  MIPNOISE_ERR_BUFFER_TOO_SMALL = 7,
  MIPNOISE_ERR_INTERNAL = 8
} mipnoise_status;

typedef enum mipnoise_variant {
  MIPNOISE_VARIANT_LAPLACE_RADIUS = 0,
  MIPNOISE_VARIANT_DENSITY_EXACT = 1
} mipnoise_variant;

typedef enum mipnoise_moment_subsets {
  MIPNOISE_MOMENTS_RESPLIT_TRAIN = 0,
  MIPNOISE_MOMENTS_HALF_OF_DATASET = 1
} mipnoise_moment_subsets;

typedef struct mipnoise_dataset mipnoise_dataset;
typedef struct mipnoise_algorithm mipnoise_algorithm;
typedef struct mipnoise_output mipnoise_output;

MIPNOISE_API const char* mipnoise_version(void);
MIPNOISE_API const char* mipnoise_last_error(void);
MIPNOISE_API const char* mipnoise_status_name(mipnoise_status status);
MIPNOISE_API void mipnoise_string_free(char* text);

/* Datasets: immutable n x d tables, row-major. */
MIPNOISE_API mipnoise_status mipnoise_dataset_create(size_t rows, size_t cols,
                                                     const double* values,
                                                     mipnoise_dataset** out);
MIPNOISE_API mipnoise_status mipnoise_dataset_parse_csv(const char* text,
                                                        mipnoise_dataset** out);
MIPNOISE_API mipnoise_status mipnoise_dataset_load_csv(const char* path,
                                                       mipnoise_dataset** out);
/* Scalar dataset whose variance stays bounded while its sensitivity grows
 * exponentially under the reciprocal-sum algorithm; n even, >= 4. */
MIPNOISE_API mipnoise_status mipnoise_dataset_pathological(size_t n,
                                                           mipnoise_dataset** out);
MIPNOISE_API size_t mipnoise_dataset_rows(const mipnoise_dataset* data);
MIPNOISE_API size_t mipnoise_dataset_cols(const mipnoise_dataset* data);
MIPNOISE_API void mipnoise_dataset_free(mipnoise_dataset* data);

/* Base algorithms: "mean", "covariance", "reciprocal-sum", or a callback. */
MIPNOISE_API mipnoise_status mipnoise_algorithm_builtin(const char* name,
                                                        mipnoise_algorithm** out);

/* Called with the full table (row-major), the sorted indices of the selected
 * records, and an output buffer of out_dim entries. Return 0 on success. */
typedef int (*mipnoise_algorithm_fn)(void* user, const double* values, size_t rows,
                                     size_t cols, const size_t* subset,
                                     size_t subset_size, double* out, size_t out_dim);
MIPNOISE_API mipnoise_status mipnoise_algorithm_callback(const char* name,
                                                         size_t out_dim,
                                                         mipnoise_algorithm_fn fn,
                                                         void* user,
                                                         mipnoise_algorithm** out);
MIPNOISE_API void mipnoise_algorithm_free(mipnoise_algorithm* alg);

/* Private releases. */
typedef struct mipnoise_mip_options {
  double eta;
  int moment_order;
  size_t replicates;
  mipnoise_variant variant;
  mipnoise_moment_subsets moment_subsets;
  int unbiased_variance;
  double sigma_floor;
} mipnoise_mip_options;

MIPNOISE_API void mipnoise_mip_options_init(mipnoise_mip_options* options);
MIPNOISE_API mipnoise_status mipnoise_privatize_mip(const mipnoise_dataset* data,
                                                    const mipnoise_algorithm* alg,
                                                    const mipnoise_mip_options* options,
                                                    uint64_t seed,
                                                    mipnoise_output** out);
MIPNOISE_API mipnoise_status mipnoise_privatize_laplace_dp(
    const mipnoise_dataset* data, const mipnoise_algorithm* alg, double epsilon,
    double sensitivity, uint64_t seed, mipnoise_output** out);

MIPNOISE_API size_t mipnoise_output_dim(const mipnoise_output* output);
MIPNOISE_API const double* mipnoise_output_theta(const mipnoise_output* output);
MIPNOISE_API double mipnoise_output_noise_scale(const mipnoise_output* output);
MIPNOISE_API const char* mipnoise_output_mechanism(const mipnoise_output* output);
MIPNOISE_API mipnoise_status mipnoise_output_json(const mipnoise_output* output,
                                                  char** json);
MIPNOISE_API void mipnoise_output_free(mipnoise_output* output);

/* Moments and sensitivity. Results are written to sigma[0..capacity); the
 * needed length is always stored in *dim (BUFFER_TOO_SMALL if larger). */
MIPNOISE_API mipnoise_status mipnoise_estimate_moments(
    const mipnoise_dataset* data, const mipnoise_algorithm* alg, size_t replicates,
    int moment_order, uint64_t seed, int unbiased_variance, double* sigma,
    size_t capacity, size_t* dim);
MIPNOISE_API mipnoise_status mipnoise_exact_moments(
    const mipnoise_dataset* data, const mipnoise_algorithm* alg, size_t k,
    int moment_order, int central, double* moments, size_t capacity, size_t* dim);
MIPNOISE_API mipnoise_status mipnoise_sensitivity_exact(const mipnoise_dataset* data,
                                                        const mipnoise_algorithm* alg,
                                                        size_t k, double* out);

/* Calibration helpers. */
MIPNOISE_API mipnoise_status mipnoise_eta_from_epsilon(double epsilon, double* eta);
MIPNOISE_API mipnoise_status mipnoise_epsilon_from_eta(double eta, double* epsilon);
MIPNOISE_API mipnoise_status mipnoise_scale_constant(double eta, int moment_order,
                                                     int isotropic, double* c);
MIPNOISE_API mipnoise_status mipnoise_sigma_norm(const double* x, const double* sigma,
                                                 size_t dim, int moment_order,
                                                 double* out);

/* Runs a subcommand ("fig1", "synth", "moments", "privatize", "attack-eval")
 * from key=value config text; *manifest receives the JSON run manifest. */
MIPNOISE_API mipnoise_status mipnoise_run_subcommand(const char* name,
                                                     const char* config_text,
                                                     char** manifest);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* MIPNOISE_MIPNOISE_H_ */
