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

#include "stylebias/expharness/normalization.h"

#include "stylebias/errors.h"

namespace stylebias {

NormStats NormStats::Identity(int width) {
  return {Eigen::VectorXd::Zero(width), Eigen::VectorXd::Ones(width)};
}

NormStats ComputeNormStats(std::span<const Demonstration> dataset) {
  if (dataset.empty() || dataset.front().steps.empty()) {
    throw SpecificationError("cannot normalize an empty dataset");
  }
  const Eigen::Index width = Concat(dataset.front().steps.front()).size();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(width);
  double count = 0;
  for (const Demonstration& demo : dataset) {
    for (const Sample& sample : demo.steps) {
      const Eigen::VectorXd x = Concat(sample);
      if (x.size() != width) {
        throw SpecificationError("dataset samples differ in width");
      }
      sum += x;
      count += 1;
    }
  }
  NormStats stats;
  stats.mean = sum / count;
  // two-pass variance
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(width);
  for (const Demonstration& demo : dataset) {
    for (const Sample& sample : demo.steps) {
      sq += (Concat(sample) - stats.mean).cwiseAbs2();
    }
  }
  stats.std = (sq / count).cwiseSqrt().cwiseMax(NormStats::kStdFloor);
  return stats;
}

}  // namespace stylebias
