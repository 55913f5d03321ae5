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

#ifndef STYLEBIAS_RNNPB_DEMONSTRATION_H_
#define STYLEBIAS_RNNPB_DEMONSTRATION_H_

#include <vector>

#include <Eigen/Dense>

#include "stylebias/rnnpb/state_layout.h"

namespace stylebias {

// One control tick: measured sensors s_t and the command u_t in effect.
struct Sample {
  Eigen::VectorXd s;
  Eigen::VectorXd u;

  bool operator==(const Sample&) const = default;
};

using Trajectory = std::vector<Sample>;

// Ground-truth configuration and style of a recorded trial. Used only for
// probing and plotting, never for training.
struct DemoMeta {
  double r = 0;        // joint radius [m]
  double f_style = 0;  // target tension [N]
  double beta = 0;     // feedback rate

  bool operator==(const DemoMeta&) const = default;
};

struct Demonstration {
  int id = 0;
  Trajectory steps;  // 5 Hz
  DemoMeta meta;

  bool operator==(const Demonstration&) const = default;
};

// Throws SpecificationError if any sample's widths disagree with `layout`
// or the trajectory is shorter than `min_steps`.
void ValidateTrajectory(const Trajectory& steps, const StateLayout& layout,
                        int min_steps);

// x = (s, u)
Eigen::VectorXd Concat(const Sample& sample);
Sample Split(const Eigen::VectorXd& x, const StateLayout& layout);

}  // namespace stylebias

#endif  // STYLEBIAS_RNNPB_DEMONSTRATION_H_
