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

#include "stylebias/rnnpb/demonstration.h"

#include <string>

#include "stylebias/errors.h"

namespace stylebias {

void ValidateTrajectory(const Trajectory& steps, const StateLayout& layout,
                        int min_steps) {
  if (static_cast<int>(steps.size()) < min_steps) {
    throw SpecificationError("trajectory has " + std::to_string(steps.size()) +
                             " steps, need at least " +
                             std::to_string(min_steps));
  }
  for (std::size_t t = 0; t < steps.size(); ++t) {
    if (steps[t].s.size() != layout.s_dim() ||
        steps[t].u.size() != layout.u_dim()) {
      throw SpecificationError("sample " + std::to_string(t) +
                               " does not match the state layout");
    }
  }
}

Eigen::VectorXd Concat(const Sample& sample) {
  Eigen::VectorXd x(sample.s.size() + sample.u.size());
  x << sample.s, sample.u;
  return x;
}

Sample Split(const Eigen::VectorXd& x, const StateLayout& layout) {
  if (x.size() != layout.x_dim()) {
    throw SpecificationError("state vector width does not match layout");
  }
  return {x.head(layout.s_dim()), x.tail(layout.u_dim())};
}

}  // namespace stylebias
