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

// Demonstration grids recorded from the simulated arm.
//
// Sample t holds the measurement s_t = (theta, tension) and the command u_t
// that was active while the arm reached it; u_1 is the resting command l0.
// The command for the next period, u_{t+1}, is computed from s_t.

#ifndef STYLEBIAS_EXPHARNESS_DATASET_H_
#define STYLEBIAS_EXPHARNESS_DATASET_H_

#include <vector>

#include "stylebias/rnnpb/demonstration.h"
#include "stylebias/rnnpb/state_layout.h"
#include "stylebias/tendon_sim/arm.h"

namespace stylebias {

struct SimConfig {
  ArmGeometry geometry;  // joint_radius/moment_arms are set per grid cell
  MuscleParams muscle;
  SimSettings settings;
  double control_period = 0.2;  // 5 Hz
};

struct GridConfig {
  std::vector<double> r_values{0.03, 0.035, 0.04};
  std::vector<double> f_style_values{10, 100, 200};
  std::vector<double> beta_values{0.1};
  int steps_per_demo = 30;
  int repeats = 1;

  // Throws SpecificationError on empty lists, steps_per_demo < 2 or
  // non-positive radii.
  void Validate() const;
};

Sample MakeSample(const ArmState& state, const MuscleVector& tension,
                  const MuscleVector& command);

// Runs the demonstrator once from rest.
Demonstration RecordDemonstration(int id, const DemoMeta& meta, int steps,
                                  const SimConfig& sim);

// One demo per (r, f_style, beta, repeat) in that nesting order; ids count
// from 0. Repeats are identical because the simulator is deterministic.
// A simulator fault is rethrown with the offending cell named.
std::vector<Demonstration> GenerateDataset(const GridConfig& grid,
                                           const SimConfig& sim);

}  // namespace stylebias

#endif  // STYLEBIAS_EXPHARNESS_DATASET_H_
