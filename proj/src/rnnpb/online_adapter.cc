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

#include "stylebias/rnnpb/online_adapter.h"

#include <utility>

#include "stylebias/errors.h"

namespace stylebias {

OnlineAdapter::OnlineAdapter(const RnnpbModel& model, AdaptVariant variant,
                             Eigen::VectorXd p_init, int threshold,
                             int capacity, int epochs_per_push)
    : model_(model),
      variant_(std::move(variant)),
      p_(std::move(p_init)),
      threshold_(threshold),
      capacity_(capacity) {
  if (threshold_ < 2 || capacity_ < threshold_) {
    throw SpecificationError("online buffer needs 2 <= threshold <= capacity");
  }
  if (epochs_per_push < 1) {
    throw SpecificationError("epochs_per_push must be >= 1");
  }
  variant_.epochs = epochs_per_push;
  variant_.Validate();
  internal::CheckPb(model_, p_);
}

std::optional<Eigen::VectorXd> OnlineAdapter::Push(const Sample& sample) {
  ValidateTrajectory({sample}, model_.layout, 1);
  ++pushes_;
  buffer_.push_back(sample);
  if (static_cast<int>(buffer_.size()) > capacity_) buffer_.pop_front();
  if (static_cast<int>(buffer_.size()) < threshold_) return std::nullopt;

  const Trajectory window(buffer_.begin(), buffer_.end());
  AdaptVariant variant = variant_;
  if (!variant.use_matching_term) {
    variant.rollout_steps = static_cast<int>(window.size());
  }
  p_ = AdaptPb(model_, window, variant, p_).p;
  return p_;
}

}  // namespace stylebias
