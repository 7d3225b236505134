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
#include "mipnoise/mipnoise.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "attack/conversion.h"
#include "core/base_algorithm.h"
#include "core/dataset.h"
#include "core/error.h"
#include "experiments/runner.h"
#include "mechanisms/mechanisms.h"
#include "moments/moments.h"
#include "moments/pathological.h"
#include "noise/noise.h"

struct mipnoise_dataset {
  mipnoise::DatasetTable table;
};

struct mipnoise_algorithm {
  std::shared_ptr<const mipnoise::BaseAlgorithm> alg;
};

struct mipnoise_output {
  mipnoise::MechanismOutput output;
};

namespace {

thread_local std::string last_error;

mipnoise_status StatusFor(mipnoise::ErrorCode code) {
  switch (code) {
    case mipnoise::ErrorCode::kInvalidArgument: return MIPNOISE_ERR_INVALID_ARGUMENT;
    case mipnoise::ErrorCode::kMalformedInput: return MIPNOISE_ERR_MALFORMED_INPUT;
    case mipnoise::ErrorCode::kCapacityExceeded: return MIPNOISE_ERR_CAPACITY_EXCEEDED;
    case mipnoise::ErrorCode::kIo: return MIPNOISE_ERR_IO;
    case mipnoise::ErrorCode::kRuntime: return MIPNOISE_ERR_RUNTIME;
    case mipnoise::ErrorCode::kUndefinedPosterior: return MIPNOISE_ERR_UNDEFINED_POSTERIOR;
  }
  return MIPNOISE_ERR_INTERNAL;
}

mipnoise_status Fail(mipnoise_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
mipnoise_status Guard(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const mipnoise::Error& e) {
    return Fail(StatusFor(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(MIPNOISE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(MIPNOISE_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(MIPNOISE_ERR_INTERNAL, "unknown failure");
  }
}

#define MIPNOISE_REQUIRE(cond, what)                                   \
  do {                                                                 \
    if (!(cond)) return Fail(MIPNOISE_ERR_INVALID_ARGUMENT, what);     \
  } while (0)

char* CopyString(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

mipnoise_status CopyVector(const std::vector<double>& values, double* out,
                           size_t capacity, size_t* dim) {
  if (dim != nullptr) *dim = values.size();
  if (values.size() > capacity) {
    return Fail(MIPNOISE_ERR_BUFFER_TOO_SMALL,
                "result needs " + std::to_string(values.size()) + " entries");
  }
  if (!values.empty()) std::memcpy(out, values.data(), values.size() * sizeof(double));
  return MIPNOISE_OK;
}

mipnoise_status WrapDataset(mipnoise::DatasetTable table, mipnoise_dataset** out) {
  *out = new mipnoise_dataset{std::move(table)};
  return MIPNOISE_OK;
}

}  // namespace

extern "C" {

const char* mipnoise_version(void) { return mipnoise::kMipnoiseVersion; }

const char* mipnoise_last_error(void) { return last_error.c_str(); }

const char* mipnoise_status_name(mipnoise_status status) {
  switch (status) {
    case MIPNOISE_OK: return "ok";
    case MIPNOISE_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case MIPNOISE_ERR_MALFORMED_INPUT: return "malformed-input";
    case MIPNOISE_ERR_CAPACITY_EXCEEDED: return "capacity-exceeded";
    case MIPNOISE_ERR_IO: return "io";
    case MIPNOISE_ERR_RUNTIME: return "runtime";
    case MIPNOISE_ERR_UNDEFINED_POSTERIOR: return "undefined-posterior";
    case MIPNOISE_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case MIPNOISE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void mipnoise_string_free(char* text) { std::free(text); }

mipnoise_status mipnoise_dataset_create(size_t rows, size_t cols, const double* values,
                                        mipnoise_dataset** out) {
  MIPNOISE_REQUIRE(out != nullptr, "out must not be null");
  MIPNOISE_REQUIRE(values != nullptr || rows * cols == 0, "values must not be null");
  return Guard([&] {
    return WrapDataset(
        mipnoise::DatasetTable(rows, cols, std::vector<double>(values, values + rows * cols)),
        out);
  });
}

mipnoise_status mipnoise_dataset_parse_csv(const char* text, mipnoise_dataset** out) {
  MIPNOISE_REQUIRE(text != nullptr && out != nullptr, "arguments must not be null");
  return Guard([&] { return WrapDataset(mipnoise::ParseCsv(text), out); });
}

mipnoise_status mipnoise_dataset_load_csv(const char* path, mipnoise_dataset** out) {
  MIPNOISE_REQUIRE(path != nullptr && out != nullptr, "arguments must not be null");
  return Guard([&] { return WrapDataset(mipnoise::LoadCsv(path), out); });
}

mipnoise_status mipnoise_dataset_pathological(size_t n, mipnoise_dataset** out) {
  MIPNOISE_REQUIRE(out != nullptr, "out must not be null");
  return Guard([&] { return WrapDataset(mipnoise::BuildPathologicalDataset(n), out); });
}

size_t mipnoise_dataset_rows(const mipnoise_dataset* data) {
  return data ? data->table.rows() : 0;
}

size_t mipnoise_dataset_cols(const mipnoise_dataset* data) {
  return data ? data->table.cols() : 0;
}

void mipnoise_dataset_free(mipnoise_dataset* data) { delete data; }

mipnoise_status mipnoise_algorithm_builtin(const char* name, mipnoise_algorithm** out) {
  MIPNOISE_REQUIRE(name != nullptr && out != nullptr, "arguments must not be null");
  return Guard([&] {
    *out = new mipnoise_algorithm{mipnoise::MakeAlgorithm(name)};
    return MIPNOISE_OK;
  });
}

mipnoise_status mipnoise_algorithm_callback(const char* name, size_t out_dim,
                                            mipnoise_algorithm_fn fn, void* user,
                                            mipnoise_algorithm** out) {
  MIPNOISE_REQUIRE(fn != nullptr && out != nullptr, "arguments must not be null");
  MIPNOISE_REQUIRE(out_dim > 0, "out_dim must be positive");
  return Guard([&] {
    auto body = [fn, user, out_dim](const mipnoise::DatasetTable& data,
                                    const mipnoise::SubsetMask& mask) {
      const std::vector<std::size_t> subset = mask.Indices();
      std::vector<double> result(out_dim);
      const int rc = fn(user, data.values().data(), data.rows(), data.cols(),
                        subset.data(), subset.size(), result.data(), out_dim);
      if (rc != 0) {
        throw mipnoise::Error(mipnoise::ErrorCode::kRuntime,
                              "algorithm callback returned " + std::to_string(rc));
      }
      return result;
    };
    *out = new mipnoise_algorithm{std::make_shared<mipnoise::FunctionAlgorithm>(
        name ? name : "callback", out_dim, std::move(body))};
    return MIPNOISE_OK;
  });
}

void mipnoise_algorithm_free(mipnoise_algorithm* alg) { delete alg; }

void mipnoise_mip_options_init(mipnoise_mip_options* options) {
  if (options == nullptr) return;
  const mipnoise::MipOptions defaults;
  options->eta = defaults.eta;
  options->moment_order = defaults.moment_order;
  options->replicates = defaults.replicates;
  options->variant = MIPNOISE_VARIANT_LAPLACE_RADIUS;
  options->moment_subsets = MIPNOISE_MOMENTS_RESPLIT_TRAIN;
  options->unbiased_variance = 0;
  options->sigma_floor = defaults.sigma_floor;
}

mipnoise_status mipnoise_privatize_mip(const mipnoise_dataset* data,
                                       const mipnoise_algorithm* alg,
                                       const mipnoise_mip_options* options,
                                       uint64_t seed, mipnoise_output** out) {
  MIPNOISE_REQUIRE(data && alg && options && out, "arguments must not be null");
  return Guard([&] {
    mipnoise::MipOptions o;
    o.eta = options->eta;
    o.moment_order = options->moment_order;
    o.replicates = options->replicates;
    o.variant = options->variant == MIPNOISE_VARIANT_DENSITY_EXACT
                    ? mipnoise::NoiseVariant::kDensityExact
                    : mipnoise::NoiseVariant::kLaplaceRadius;
    o.moment_subsets = options->moment_subsets == MIPNOISE_MOMENTS_HALF_OF_DATASET
                           ? mipnoise::MomentSubsets::kHalfOfDataset
                           : mipnoise::MomentSubsets::kResplitTrain;
    o.unbiased_variance = options->unbiased_variance != 0;
    o.sigma_floor = options->sigma_floor;
    *out = new mipnoise_output{mipnoise::PrivatizeMip(data->table, *alg->alg, o, seed)};
    return MIPNOISE_OK;
  });
}

mipnoise_status mipnoise_privatize_laplace_dp(const mipnoise_dataset* data,
                                              const mipnoise_algorithm* alg,
                                              double epsilon, double sensitivity,
                                              uint64_t seed, mipnoise_output** out) {
  MIPNOISE_REQUIRE(data && alg && out, "arguments must not be null");
  return Guard([&] {
    *out = new mipnoise_output{
        mipnoise::PrivatizeLaplaceDp(data->table, *alg->alg, epsilon, sensitivity, seed)};
    return MIPNOISE_OK;
  });
}

size_t mipnoise_output_dim(const mipnoise_output* output) {
  return output ? output->output.theta_hat.size() : 0;
}

const double* mipnoise_output_theta(const mipnoise_output* output) {
  return output ? output->output.theta_hat.data() : nullptr;
}

double mipnoise_output_noise_scale(const mipnoise_output* output) {
  return output ? output->output.noise_scale : 0.0;
}

const char* mipnoise_output_mechanism(const mipnoise_output* output) {
  return output ? output->output.mechanism_id.c_str() : "";
}

mipnoise_status mipnoise_output_json(const mipnoise_output* output, char** json) {
  MIPNOISE_REQUIRE(output && json, "arguments must not be null");
  return Guard([&] {
    *json = CopyString(mipnoise::MechanismOutputJson(output->output).dump());
    return MIPNOISE_OK;
  });
}

void mipnoise_output_free(mipnoise_output* output) { delete output; }

mipnoise_status mipnoise_estimate_moments(const mipnoise_dataset* data,
                                          const mipnoise_algorithm* alg,
                                          size_t replicates, int moment_order,
                                          uint64_t seed, int unbiased_variance,
                                          double* sigma, size_t capacity, size_t* dim) {
  MIPNOISE_REQUIRE(data && alg && (sigma || capacity == 0), "arguments must not be null");
  return Guard([&] {
    mipnoise::Rng rng(seed);
    mipnoise::MomentEstimateOptions options;
    options.unbiased_variance = unbiased_variance != 0;
    const mipnoise::MomentEstimate est = mipnoise::EstimateMoments(
        data->table, *alg->alg, replicates, moment_order, rng, options);
    return CopyVector(est.profile.sigma(), sigma, capacity, dim);
  });
}

mipnoise_status mipnoise_exact_moments(const mipnoise_dataset* data,
                                       const mipnoise_algorithm* alg, size_t k,
                                       int moment_order, int central, double* moments,
                                       size_t capacity, size_t* dim) {
  MIPNOISE_REQUIRE(data && alg && (moments || capacity == 0), "arguments must not be null");
  return Guard([&] {
    return CopyVector(mipnoise::ExactMoments(data->table, *alg->alg, k, moment_order,
                                             central != 0),
                      moments, capacity, dim);
  });
}

mipnoise_status mipnoise_sensitivity_exact(const mipnoise_dataset* data,
                                           const mipnoise_algorithm* alg, size_t k,
                                           double* out) {
  MIPNOISE_REQUIRE(data && alg && out, "arguments must not be null");
  return Guard([&] {
    *out = mipnoise::SensitivityExact(data->table, *alg->alg, k,
                                      mipnoise::SensitivityNorm::kAbs);
    return MIPNOISE_OK;
  });
}

mipnoise_status mipnoise_eta_from_epsilon(double epsilon, double* eta) {
  MIPNOISE_REQUIRE(eta != nullptr, "eta must not be null");
  return Guard([&] {
    *eta = mipnoise::MipEtaFromDp(epsilon);
    return MIPNOISE_OK;
  });
}

mipnoise_status mipnoise_epsilon_from_eta(double eta, double* epsilon) {
  MIPNOISE_REQUIRE(epsilon != nullptr, "epsilon must not be null");
  return Guard([&] {
    *epsilon = mipnoise::DpEpsilonFromEta(eta);
    return MIPNOISE_OK;
  });
}

mipnoise_status mipnoise_scale_constant(double eta, int moment_order, int isotropic,
                                        double* c) {
  MIPNOISE_REQUIRE(c != nullptr, "c must not be null");
  return Guard([&] {
    *c = mipnoise::MipScaleConstant(eta, moment_order,
                                    isotropic ? mipnoise::ScaleConstant::kIsotropic
                                              : mipnoise::ScaleConstant::kWeighted);
    return MIPNOISE_OK;
  });
}

mipnoise_status mipnoise_sigma_norm(const double* x, const double* sigma, size_t dim,
                                    int moment_order, double* out) {
  MIPNOISE_REQUIRE(x && sigma && out, "arguments must not be null");
  return Guard([&] {
    const mipnoise::MomentProfile profile(std::vector<double>(sigma, sigma + dim),
                                          moment_order);
    *out = mipnoise::SigmaNorm(std::span<const double>(x, dim), profile);
    return MIPNOISE_OK;
  });
}

mipnoise_status mipnoise_run_subcommand(const char* name, const char* config_text,
                                        char** manifest) {
  MIPNOISE_REQUIRE(name && manifest, "arguments must not be null");
  return Guard([&] {
    *manifest = CopyString(
        mipnoise::RunSubcommand(name, config_text ? config_text : "").dump(2));
    return MIPNOISE_OK;
  });
}

}  // extern "C"
