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
#ifndef MIPNOISE_ATTACK_POSTPROCESS_H_
#define MIPNOISE_ATTACK_POSTPROCESS_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mechanisms/mechanisms.h"

namespace mipnoise {

// Law of the first coordinate of density-exact MIP noise in its natural
// units: with x_i = z_i sigma_i d^{1/M} c the joint density is proportional
// to exp(-||z||_M), and this class tabulates the marginal of z_1 for d = 1
// (closed form) or d = 2 (quadrature over z_2 on a grid, log-linear
// interpolation between nodes).
class NoiseMarginal {
 public:
  NoiseMarginal(std::size_t dim, int moment_order, double step = 0.01,
                double z_max = 50.0);

  // Normalized log-density of z_1.
  double LogDensity(double z) const;
  // P(z_1 > z) for z >= 0 (equal to P(z_1 < -z) by symmetry).
  double UpperTail(double z) const;
  double Cdf(double z) const;

 private:
  double Interpolate(const std::vector<double>& table, double z) const;

  std::size_t dim_;
  double step_;
  double z_max_;
  std::vector<double> log_density_;  // at z = 0, step, 2 step, ...
  std::vector<double> log_tail_;
};

// f(x) = W x + b with W square and invertible. The output law is the base
// law pushed through f, so the Jacobian is a constant across masks.
MechanismDescriptor AffinePostProcess(MechanismDescriptor base,
                                      const Eigen::MatrixXd& w,
                                      const Eigen::VectorXd& b);

// f(x) = x_1. Requires a density-exact MIP descriptor of dimension 1 or 2.
MechanismDescriptor ProjectionPostProcess(MechanismDescriptor base);

// f(x) = 0, 1 or 2 as x_1 < lower, lower <= x_1 < upper, or x_1 >= upper.
// Same requirements as ProjectionPostProcess; the PMF is exact up to the
// marginal's tabulation error.
MechanismDescriptor QuantizePostProcess(MechanismDescriptor base, double lower,
                                        double upper);

}  // namespace mipnoise

#endif  // MIPNOISE_ATTACK_POSTPROCESS_H_
