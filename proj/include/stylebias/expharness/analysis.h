// Copyright 2026 The StyleBias Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Inspection of the learned parametric-bias space.

#ifndef STYLEBIAS_EXPHARNESS_ANALYSIS_H_
#define STYLEBIAS_EXPHARNESS_ANALYSIS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/rnnpb/demonstration.h"
#include "stylebias/rnnpb/model.h"

namespace stylebias {

struct PcaResult {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;   // p_dim x out_dim, orthonormal columns
  Eigen::MatrixXd coordinates;  // n x out_dim
  Eigen::VectorXd explained_variance_ratio;  // out_dim
};

// Projects the rows of `points` on the leading principal axes. Each axis is
// signed so that its largest-magnitude loading is positive (first index on
// ties). Throws SpecificationError for fewer than two points or
// out_dim > dimension.
PcaResult PcaProject(const Eigen::MatrixXd& points, int out_dim = 2);

struct ProbeResult {
  double r2 = 0;
  bool degenerate = false;  // rank-deficient design or constant target
};

// Ordinary least squares y ~ 1 + points.
ProbeResult LinearProbe(const Eigen::MatrixXd& points,
                        const Eigen::VectorXd& y);

// Stacks p_k of every demonstration in dataset order.
Eigen::MatrixXd PbMatrix(const RnnpbModel& model,
                         std::span<const Demonstration> dataset);

// Probes "r", "f_style" and "beta" from p_k. Throws SpecificationError
// with fewer than three demonstrations.
std::map<std::string, ProbeResult> ProbePb(
    const RnnpbModel& model, std::span<const Demonstration> dataset);

}  // namespace stylebias

#endif  // STYLEBIAS_EXPHARNESS_ANALYSIS_H_
