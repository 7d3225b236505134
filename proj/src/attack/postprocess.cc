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
#include "attack/postprocess.h"

#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "core/error.h"

namespace mipnoise {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ||(z, t)||_M - z, without cancellation for t << z.
double NormExcess(double z, double t, int m) {
  if (z == 0.0) return t;
  const double r = std::pow(t / z, m);
  return z * std::expm1(std::log1p(r) / m);
}

struct MarginalSetup {
  std::shared_ptr<const NoiseMarginal> marginal;
  double unit;  // x_1 = unit * z_1
};

MarginalSetup RequireDensityExactMip(const MechanismDescriptor& base) {
  if (!base.noise || base.noise->variant != NoiseVariant::kDensityExact ||
      !base.center) {
    ThrowInvalid("this post-processing needs a density-exact MIP mechanism");
  }
  const NoiseSpec& spec = *base.noise;
  const std::size_t d = spec.profile.dim();
  if (d > 2) ThrowInvalid("projection marginals are tabulated for d <= 2 only");
  const int m = spec.profile.order();
  const double unit = spec.profile.sigma()[0] *
                      std::pow(static_cast<double>(d), 1.0 / m) * spec.scale;
  return {std::make_shared<const NoiseMarginal>(d, m), unit};
}

}  // namespace

NoiseMarginal::NoiseMarginal(std::size_t dim, int moment_order, double step,
                             double z_max)
    : dim_(dim), step_(step), z_max_(z_max) {
  if (dim != 1 && dim != 2) ThrowInvalid("marginal needs dim 1 or 2");
  if (moment_order < 1) ThrowInvalid("marginal needs M >= 1");
  if (!(step > 0.0) || !(z_max > step)) ThrowInvalid("bad marginal grid");
  if (dim_ == 1) return;  // Laplace(1): closed form

  const std::size_t nodes = static_cast<std::size_t>(std::ceil(z_max / step)) + 1;
  z_max_ = static_cast<double>(nodes - 1) * step;
  // log h(z) with h(z) = int_R exp(-||(z, t)||_M) dt, unnormalized.
  std::vector<double> log_h(nodes);
  boost::math::quadrature::exp_sinh<double> integrator;
  for (std::size_t j = 0; j < nodes; ++j) {
    const double z = static_cast<double>(j) * step;
    const double inner = integrator.integrate(
        [z, moment_order](double t) {
          return std::exp(-NormExcess(z, t, moment_order));
        },
        0.0, std::numeric_limits<double>::infinity());
    log_h[j] = -z + std::log(2.0 * inner);
  }
  // Tail masses by the trapezoid rule from the far end; beyond z_max the
  // density decays like e^{-z}, contributing h(z_max).
  const double ref = log_h[0];
  std::vector<double> tail(nodes);
  tail[nodes - 1] = std::exp(log_h[nodes - 1] - ref);
  for (std::size_t j = nodes - 1; j-- > 0;) {
    tail[j] = tail[j + 1] +
              0.5 * step * (std::exp(log_h[j] - ref) + std::exp(log_h[j + 1] - ref));
  }
  const double total = 2.0 * tail[0];
  log_density_.resize(nodes);
  log_tail_.resize(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    log_density_[j] = log_h[j] - ref - std::log(total);
    log_tail_[j] = std::log(tail[j] / total);
  }
}

double NoiseMarginal::Interpolate(const std::vector<double>& table,
                                  double z) const {
  const double pos = z / step_;
  std::size_t j = static_cast<std::size_t>(pos);
  if (j >= table.size() - 1) j = table.size() - 2;  // linear extrapolation
  const double frac = pos - static_cast<double>(j);
  return table[j] + frac * (table[j + 1] - table[j]);
}

double NoiseMarginal::LogDensity(double z) const {
  const double a = std::abs(z);
  if (dim_ == 1) return -a - std::log(2.0);
  return Interpolate(log_density_, a);
}

double NoiseMarginal::UpperTail(double z) const {
  if (z < 0.0) return 1.0 - UpperTail(-z);
  if (dim_ == 1) return 0.5 * std::exp(-z);
  return std::exp(Interpolate(log_tail_, z));
}

double NoiseMarginal::Cdf(double z) const {
  return z < 0.0 ? UpperTail(-z) : 1.0 - UpperTail(z);
}

MechanismDescriptor AffinePostProcess(MechanismDescriptor base,
                                      const Eigen::MatrixXd& w,
                                      const Eigen::VectorXd& b) {
  if (w.rows() != w.cols() || b.size() != w.rows()) {
    ThrowInvalid("affine map needs a square W and a matching offset");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(w);
  if (!lu.isInvertible()) ThrowInvalid("affine map W must be invertible");
  auto inner = std::make_shared<const MechanismDescriptor>(std::move(base));
  const Eigen::MatrixXd w_inv = lu.inverse();
  auto forward = [w, b](std::span<const double> x) {
    if (static_cast<Eigen::Index>(x.size()) != w.cols()) {
      ThrowInvalid("affine map dimension differs from the mechanism output");
    }
    Eigen::VectorXd y = w * Eigen::Map<const Eigen::VectorXd>(x.data(), x.size()) + b;
    return std::vector<double>(y.data(), y.data() + y.size());
  };
  auto backward = [w_inv, b](std::span<const double> y) {
    Eigen::VectorXd x =
        w_inv * (Eigen::Map<const Eigen::VectorXd>(y.data(), y.size()) - b);
    return std::vector<double>(x.data(), x.data() + x.size());
  };

  MechanismDescriptor mech;
  mech.id = inner->id + "+affine";
  mech.budget = inner->budget;
  mech.n = inner->n;
  mech.k = inner->k;
  mech.release = [inner, forward](const SubsetMask& mask, Rng& rng) {
    return forward(inner->release(mask, rng));
  };
  if (inner->has_density()) {
    mech.log_density = [inner, backward](std::span<const double> y,
                                         const SubsetMask& mask) {
      return inner->log_density(backward(y), mask);
    };
  }
  if (inner->center && inner->noise_log_density) {
    mech.center = [inner, forward](const SubsetMask& mask) {
      return forward(inner->center(mask));
    };
    // Noise W X: evaluate the base noise at W^{-1} y (no offset).
    mech.noise_log_density = [inner, w_inv](std::span<const double> y) {
      Eigen::VectorXd x = w_inv * Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
      return inner->noise_log_density(std::span<const double>(x.data(), x.size()));
    };
  }
  for (const auto& o : inner->support) mech.support.push_back(forward(o));
  return mech;
}

MechanismDescriptor ProjectionPostProcess(MechanismDescriptor base) {
  const MarginalSetup setup = RequireDensityExactMip(base);
  auto inner = std::make_shared<const MechanismDescriptor>(std::move(base));
  MechanismDescriptor mech;
  mech.id = inner->id + "+project";
  mech.budget = inner->budget;
  mech.n = inner->n;
  mech.k = inner->k;
  mech.release = [inner](const SubsetMask& mask, Rng& rng) {
    return std::vector<double>{inner->release(mask, rng)[0]};
  };
  mech.center = [inner](const SubsetMask& mask) {
    return std::vector<double>{inner->center(mask)[0]};
  };
  mech.noise_log_density = [setup](std::span<const double> x) {
    return setup.marginal->LogDensity(x[0] / setup.unit);
  };
  mech.log_density = [inner, setup](std::span<const double> y,
                                    const SubsetMask& mask) {
    const double c = inner->center(mask)[0];
    return setup.marginal->LogDensity((y[0] - c) / setup.unit);
  };
  return mech;
}

MechanismDescriptor QuantizePostProcess(MechanismDescriptor base, double lower,
                                        double upper) {
  if (!(lower < upper)) ThrowInvalid("quantization needs lower < upper");
  const MarginalSetup setup = RequireDensityExactMip(base);
  auto inner = std::make_shared<const MechanismDescriptor>(std::move(base));
  MechanismDescriptor mech;
  mech.id = inner->id + "+quantize3";
  mech.budget = inner->budget;
  mech.n = inner->n;
  mech.k = inner->k;
  mech.release = [inner, lower, upper](const SubsetMask& mask, Rng& rng) {
    const double x = inner->release(mask, rng)[0];
    return std::vector<double>{x < lower ? 0.0 : (x < upper ? 1.0 : 2.0)};
  };
  mech.log_density = [inner, setup, lower, upper](std::span<const double> y,
                                                  const SubsetMask& mask) {
    const double c = inner->center(mask)[0];
    const double below = setup.marginal->Cdf((lower - c) / setup.unit);
    const double above = setup.marginal->UpperTail((upper - c) / setup.unit);
    double p = 0.0;
    if (y[0] == 0.0) {
      p = below;
    } else if (y[0] == 2.0) {
      p = above;
    } else {
      p = 1.0 - below - above;
    }
    return p > 0.0 ? std::log(p) : kNegInf;
  };
  mech.support = {{0.0}, {1.0}, {2.0}};
  return mech;
}

}  // namespace mipnoise
