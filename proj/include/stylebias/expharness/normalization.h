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

#ifndef STYLEBIAS_EXPHARNESS_NORMALIZATION_H_
#define STYLEBIAS_EXPHARNESS_NORMALIZATION_H_

#include <span>

#include <Eigen/Dense>

#include "stylebias/rnnpb/demonstration.h"

namespace stylebias {

// Per-dimension z-score of x = (s, u).
struct NormStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;

  static constexpr double kStdFloor = 1e-8;

  template <typename Derived>
  Eigen::VectorXd Apply(const Eigen::MatrixBase<Derived>& x) const {
    return ((x.array() - mean.array()) / std.array()).matrix();
  }
  template <typename Derived>
  Eigen::VectorXd Invert(const Eigen::MatrixBase<Derived>& z) const {
    return (z.array() * std.array() + mean.array()).matrix();
  }

  // identity transform of the given width
  static NormStats Identity(int width);

  bool operator==(const NormStats&) const = default;
};

// Mean and population standard deviation over every step of every
// demonstration; std is floored at kStdFloor. Throws SpecificationError on
// an empty dataset.
NormStats ComputeNormStats(std::span<const Demonstration> dataset);

}  // namespace stylebias

#endif  // STYLEBIAS_EXPHARNESS_NORMALIZATION_H_
