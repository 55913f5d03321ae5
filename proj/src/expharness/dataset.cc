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

#include "stylebias/expharness/dataset.h"

#include <string>

#include "stylebias/errors.h"

namespace stylebias {

void GridConfig::Validate() const {
  if (r_values.empty() || f_style_values.empty() || beta_values.empty()) {
    throw SpecificationError("grid lists must be non-empty");
  }
  if (steps_per_demo < 2) throw SpecificationError("steps_per_demo must be >= 2");
  if (repeats < 1) throw SpecificationError("repeats must be >= 1");
  for (double r : r_values) {
    if (!(r > 0)) throw SpecificationError("joint radius must be > 0");
  }
  for (double f : f_style_values) {
    if (!(f >= 0)) throw SpecificationError("f_style must be >= 0");
  }
}

Sample MakeSample(const ArmState& state, const MuscleVector& tension,
                  const MuscleVector& command) {
  Sample sample;
  sample.s.resize(1 + kNumMuscles);
  sample.s << state.theta, tension;
  sample.u = command;
  return sample;
}

Demonstration RecordDemonstration(int id, const DemoMeta& meta, int steps,
                                  const SimConfig& sim) {
  const ArmGeometry geom = [&] {
    ArmGeometry g = sim.geometry;
    g.joint_radius = meta.r;
    g.moment_arms = MuscleVector(meta.r, -meta.r, meta.r);
    return g;
  }();
  Demonstration demo;
  demo.id = id;
  demo.meta = meta;
  ArmState state = RestState(geom);
  DemoControllerState ctrl;
  ctrl.f_style = meta.f_style;
  ctrl.beta = meta.beta;
  MuscleVector command = geom.rest_path_lengths;
  MuscleVector tension = MuscleTensions(state, geom, sim.muscle);
  demo.steps.push_back(MakeSample(state, tension, command));
  while (static_cast<int>(demo.steps.size()) < steps) {
    const DemoControllerResult c =
        DemoControllerStep(ctrl, state.theta, geom, sim.muscle);
    ctrl = c.ctrl;
    command = c.l_ref;
    const SimStepResult next = SimStep(state, command, sim.control_period,
                                       geom, sim.muscle, sim.settings);
    state = next.state;
    demo.steps.push_back(MakeSample(state, next.tension, command));
  }
  return demo;
}

std::vector<Demonstration> GenerateDataset(const GridConfig& grid,
                                           const SimConfig& sim) {
  grid.Validate();
  std::vector<Demonstration> out;
  int id = 0;
  for (double r : grid.r_values) {
    for (double f : grid.f_style_values) {
      for (double beta : grid.beta_values) {
        for (int rep = 0; rep < grid.repeats; ++rep) {
          try {
            out.push_back(RecordDemonstration(id, {r, f, beta},
                                              grid.steps_per_demo, sim));
          } catch (const SimulationFault& e) {
            throw SimulationFault("grid cell r=" + std::to_string(r) +
                                  " f_style=" + std::to_string(f) +
                                  " beta=" + std::to_string(beta) + ": " +
                                  e.what());
          }
          ++id;
        }
      }
    }
  }
  return out;
}

}  // namespace stylebias
