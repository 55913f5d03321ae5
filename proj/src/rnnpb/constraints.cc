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

#include "stylebias/rnnpb/constraints.h"

#include <cmath>
#include <string>

#include "stylebias/errors.h"

namespace stylebias {

using Eigen::VectorXd;

ConstraintSpec ConstraintSpec::Tension(double weight) {
  return {ConstraintKind::kTension, weight, "tension"};
}
ConstraintSpec ConstraintSpec::MuscleLengthVelocity(double weight) {
  return {ConstraintKind::kMuscleLengthVelocity, weight, "muscle_length_cmd"};
}
ConstraintSpec ConstraintSpec::JointVelocity(double weight) {
  return {ConstraintKind::kJointVelocity, weight, "theta"};
}
ConstraintSpec ConstraintSpec::PbNorm(double weight) {
  return {ConstraintKind::kPbNorm, weight, ""};
}

std::string_view ConstraintKindName(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kTension:
      return "tension";
    case ConstraintKind::kMuscleLengthVelocity:
      return "muscle_length_velocity";
    case ConstraintKind::kJointVelocity:
      return "joint_velocity";
    case ConstraintKind::kPbNorm:
      return "pb_norm";
  }
  return "";
}

ConstraintKind ParseConstraintKind(std::string_view name) {
  for (ConstraintKind kind :
       {ConstraintKind::kTension, ConstraintKind::kMuscleLengthVelocity,
        ConstraintKind::kJointVelocity, ConstraintKind::kPbNorm}) {
    if (ConstraintKindName(kind) == name) return kind;
  }
  throw SpecificationError("unknown constraint kind '" + std::string(name) +
                           "'");
}

void ValidateConstraint(const ConstraintSpec& spec, const StateLayout& layout) {
  if (spec.kind == ConstraintKind::kPbNorm) return;
  const ChannelSlice slice = layout.Slice(spec.channel);
  if (spec.kind == ConstraintKind::kTension && !slice.is_sensor) {
    throw SpecificationError("tension constraint must read a sensor channel");
  }
}

ConstraintGradient ConstraintLossWithGradient(
    const ConstraintSpec& spec, const StateLayout& layout,
    std::span<const VectorXd> rollout, const VectorXd& p) {
  ValidateConstraint(spec, layout);
  ConstraintGradient g;
  g.d_p = VectorXd::Zero(p.size());
  for (const VectorXd& x : rollout) g.d_rollout.push_back(VectorXd::Zero(x.size()));

  if (spec.kind == ConstraintKind::kPbNorm) {
    g.loss = p.norm();
    if (g.loss > 0) g.d_p = p / g.loss;
    return g;
  }

  if (rollout.empty()) throw SpecificationError("empty rollout");
  const ChannelSlice c = layout.Slice(spec.channel);
  if (spec.kind == ConstraintKind::kTension) {
    double sq = 0;
    for (const VectorXd& x : rollout) sq += x.segment(c.offset, c.width).squaredNorm();
    g.loss = std::sqrt(sq);
    if (g.loss > 0) {
      for (std::size_t t = 0; t < rollout.size(); ++t) {
        g.d_rollout[t].segment(c.offset, c.width) =
            rollout[t].segment(c.offset, c.width) / g.loss;
      }
    }
    return g;
  }

  if (rollout.size() < 2) {
    throw SpecificationError("velocity constraints need at least two steps");
  }
  std::vector<VectorXd> diff;
  double sq = 0;
  for (std::size_t t = 1; t < rollout.size(); ++t) {
    diff.push_back(rollout[t].segment(c.offset, c.width) -
                   rollout[t - 1].segment(c.offset, c.width));
    sq += diff.back().squaredNorm();
  }
  g.loss = std::sqrt(sq);
  if (g.loss > 0) {
    for (std::size_t t = 1; t < rollout.size(); ++t) {
      const VectorXd d = diff[t - 1] / g.loss;
      g.d_rollout[t].segment(c.offset, c.width) += d;
      g.d_rollout[t - 1].segment(c.offset, c.width) -= d;
    }
  }
  return g;
}

double ConstraintLoss(const ConstraintSpec& spec, const StateLayout& layout,
                      std::span<const VectorXd> rollout, const VectorXd& p) {
  return ConstraintLossWithGradient(spec, layout, rollout, p).loss;
}

}  // namespace stylebias
