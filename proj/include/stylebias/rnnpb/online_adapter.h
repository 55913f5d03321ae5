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

#ifndef STYLEBIAS_RNNPB_ONLINE_ADAPTER_H_
#define STYLEBIAS_RNNPB_ONLINE_ADAPTER_H_

#include <deque>
#include <optional>

#include <Eigen/Dense>

#include "stylebias/rnnpb/adapt.h"
#include "stylebias/rnnpb/demonstration.h"
#include "stylebias/rnnpb/model.h"

namespace stylebias {

// Sliding-window adaptation of p while a task runs. Samples are buffered
// in arrival order; once the buffer holds `threshold` samples every push
// runs `epochs_per_push` adaptation epochs over the window, continuing from
// the current p. The oldest sample is dropped past `capacity`.
//
// Holds a reference to the model, which must outlive the adapter.
class OnlineAdapter {
 public:
  static constexpr int kDefaultThreshold = 10;
  static constexpr int kDefaultCapacity = 20;
  static constexpr int kDefaultEpochsPerPush = 3;

  OnlineAdapter(const RnnpbModel& model, AdaptVariant variant,
                Eigen::VectorXd p_init, int threshold = kDefaultThreshold,
                int capacity = kDefaultCapacity,
                int epochs_per_push = kDefaultEpochsPerPush);

  // Returns the new p when this push triggered an update.
  std::optional<Eigen::VectorXd> Push(const Sample& sample);

  const Eigen::VectorXd& p() const { return p_; }
  const std::deque<Sample>& buffer() const { return buffer_; }
  int num_pushes() const { return pushes_; }

 private:
  const RnnpbModel& model_;
  AdaptVariant variant_;
  Eigen::VectorXd p_;
  int threshold_;
  int capacity_;
  std::deque<Sample> buffer_;
  int pushes_ = 0;
};

}  // namespace stylebias

#endif  // STYLEBIAS_RNNPB_ONLINE_ADAPTER_H_
