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

// Recurrent network with parametric bias:
//
//   (s_{t+1}, u_{t+1}) = h(s_t, u_t, p)
//
// p is constant within a sequence and is appended to the normalized state
// at the first layer. Public functions take and return physical units;
// normalization happens inside.

#ifndef STYLEBIAS_RNNPB_MODEL_H_
#define STYLEBIAS_RNNPB_MODEL_H_

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/expharness/normalization.h"
#include "stylebias/rnnpb/demonstration.h"
#include "stylebias/rnnpb/state_layout.h"
#include "stylebias/seqcore/network.h"
#include "stylebias/seqcore/step.h"

namespace stylebias {

struct RnnpbModel {
  StateLayout layout;
  Network<double> net;
  std::map<int, Eigen::VectorXd> pb_table;  // demonstration id -> p_k
  NormStats norm;

  Eigen::VectorXd ZeroPb() const {
    return Eigen::VectorXd::Zero(layout.p_dim);
  }
  // Throws SpecificationError for unknown ids.
  const Eigen::VectorXd& Pb(int id) const;

  // Throws SpecificationError if the network, layout, and normalization
  // widths disagree.
  void Validate() const;
};

// Hidden-layer presets: {64, 64, 32, L32, L32, 32, 64, 64} and
// {500, 300, 100, L100, L100, 100, 300, 500}.
std::vector<UnitSpec> DeskHiddenUnits();
std::vector<UnitSpec> PaperHiddenUnits();

// Full unit list {input, hidden..., output} for `layout`.
std::vector<UnitSpec> UnitsForLayout(const StateLayout& layout,
                                     const std::vector<UnitSpec>& hidden);

struct RnnpbStepResult {
  Eigen::VectorXd s_pred;
  Eigen::VectorXd u_pred;
  RecurrentState<double> state;
};

RnnpbStepResult RnnpbStep(const RnnpbModel& model, const Eigen::VectorXd& s,
                          const Eigen::VectorXd& u, const Eigen::VectorXd& p,
                          const RecurrentState<double>& state);

// Feeds the observed (s_t, u_t) for t = 1..T-1 and collects the predicted
// s for t = 2..T. Throws SpecificationError when T < 2.
std::vector<Eigen::VectorXd> TeacherForcedPrediction(
    const RnnpbModel& model, const Trajectory& observed,
    const Eigen::VectorXd& p);

// ||s_data_{2:T} - s_pred_{2:T}|| (Frobenius) in normalized units.
double MatchingLoss(const RnnpbModel& model, const Trajectory& observed,
                    const Eigen::VectorXd& p);

// Teacher-forced mean squared error over all predicted x components, in
// normalized units. This is the training loss.
double TeacherForcedMse(const RnnpbModel& model, const Trajectory& observed,
                        const Eigen::VectorXd& p);

// Seeds the network with (s_1, u_1) and feeds every prediction back in.
// Returns x_pred for t = 2..T.
Trajectory AutoregressiveRollout(const RnnpbModel& model,
                                 const Eigen::VectorXd& s1,
                                 const Eigen::VectorXd& u1,
                                 const Eigen::VectorXd& p, int steps);

// Normalized-space helpers shared by training and adaptation.
namespace internal {

Eigen::VectorXd NormalizedState(const RnnpbModel& model, const Sample& sample);
Eigen::VectorXd NetworkInput(const Eigen::VectorXd& x_norm,
                             const Eigen::VectorXd& p);
void CheckPb(const RnnpbModel& model, const Eigen::VectorXd& p);

}  // namespace internal

}  // namespace stylebias

#endif  // STYLEBIAS_RNNPB_MODEL_H_
