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

// Joint teacher-forced training of the network weights and one parametric
// bias per demonstration.

#ifndef STYLEBIAS_RNNPB_FIT_H_
#define STYLEBIAS_RNNPB_FIT_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stylebias/rnnpb/demonstration.h"
#include "stylebias/rnnpb/model.h"
#include "stylebias/rnnpb/state_layout.h"
#include "stylebias/seqcore/layer_spec.h"

namespace stylebias {

struct TrainConfig {
  std::vector<UnitSpec> hidden_units = DeskHiddenUnits();
  std::uint64_t seed = 1;
  double learning_rate = 1e-3;
  int max_epochs = 5000;
  // stop once the full-batch teacher-forced MSE falls below this
  double early_stop_mse = 1e-4;
  double clip_norm = 5.0;
  // Demos of equal length are split into this many gradient shards. The
  // shard partition fixes the summation order, so results do not depend on
  // `threads`.
  int shards = 1;
  int threads = 1;

  void Validate() const;
};

struct FitReport {
  std::vector<double> loss_trace;  // MSE at the start of every epoch
  int epochs_run = 0;
  double final_mse = 0;
  std::vector<std::string> warnings;
};

// Called after every epoch with (epoch, mse); optional.
using EpochCallback = std::function<void(int, double)>;

// Normalization is computed from `dataset`. Demonstration ids must be
// unique. Throws SpecificationError for an empty dataset.
RnnpbModel Fit(const StateLayout& layout,
               std::span<const Demonstration> dataset,
               const TrainConfig& config, FitReport* report = nullptr,
               const EpochCallback& on_epoch = nullptr);

// Mean teacher-forced MSE over the dataset using each demo's own p_k, in
// normalized units and weighted by step count.
double DatasetMse(const RnnpbModel& model,
                  std::span<const Demonstration> dataset);

}  // namespace stylebias

#endif  // STYLEBIAS_RNNPB_FIT_H_
