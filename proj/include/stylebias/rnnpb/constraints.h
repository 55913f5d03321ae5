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

// Style constraints evaluated on a predicted rollout x_{2..T}.
//
// Every sequence norm is the Frobenius norm of the time-stacked matrix:
//   tension:                ||x_c[2..T]||
//   muscle_length_velocity: ||x_c[3..T] - x_c[2..T-1]||
//   joint_velocity:         ||x_c[3..T] - x_c[2..T-1]||
//   pb_norm:                ||p||
// where x_c is the named channel. A positive weight minimizes the quantity
// and a negative weight maximizes it.

#ifndef STYLEBIAS_RNNPB_CONSTRAINTS_H_
#define STYLEBIAS_RNNPB_CONSTRAINTS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/rnnpb/state_layout.h"

namespace stylebias {

enum class ConstraintKind {
  kTension,
  kMuscleLengthVelocity,
  kJointVelocity,
  kPbNorm,
};

struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::kTension;
  double weight = 0.1;  // alpha
  std::string channel = "tension";

  // default channel names of the tendon arm layout
  static ConstraintSpec Tension(double weight);
  static ConstraintSpec MuscleLengthVelocity(double weight);
  static ConstraintSpec JointVelocity(double weight);
  static ConstraintSpec PbNorm(double weight);

  bool operator==(const ConstraintSpec&) const = default;
};

std::string_view ConstraintKindName(ConstraintKind kind);
ConstraintKind ParseConstraintKind(std::string_view name);

// Throws SpecificationError if the channel is missing from the layout or a
// tension constraint names a command channel.
void ValidateConstraint(const ConstraintSpec& spec, const StateLayout& layout);

// Unweighted loss value. `rollout` holds full x vectors. Throws
// SpecificationError for an empty rollout, or a velocity kind with fewer
// than two steps.
double ConstraintLoss(const ConstraintSpec& spec, const StateLayout& layout,
                      std::span<const Eigen::VectorXd> rollout,
                      const Eigen::VectorXd& p);

struct ConstraintGradient {
  double loss = 0;
  std::vector<Eigen::VectorXd> d_rollout;  // same shape as the rollout
  Eigen::VectorXd d_p;
};

// Loss and its gradient; the gradient of a zero norm is taken as zero.
ConstraintGradient ConstraintLossWithGradient(
    const ConstraintSpec& spec, const StateLayout& layout,
    std::span<const Eigen::VectorXd> rollout, const Eigen::VectorXd& p);

}  // namespace stylebias

#endif  // STYLEBIAS_RNNPB_CONSTRAINTS_H_
