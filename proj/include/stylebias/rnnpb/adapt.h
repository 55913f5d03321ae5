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

// Parametric-bias adaptation with frozen weights.
//
// For an observed trajectory D = (s_t, u_t), t = 1..T the objective is
//
//   L(p) = ||s_data[2..T] - s_pred[2..T]||                 (matching, "A")
//        + sum_i alpha_i L_i(x_pred'[2..T], p)             (style, "B")
//
// s_pred comes from a teacher-forced pass over D and x_pred' from an
// autoregressive rollout seeded with (s_1, u_1) only. The matching term is
// measured in normalized units. Style constraints read the rollout scaled
// by the dataset standard deviation but not centered, i.e. x / sigma, so
// that minimizing tension drives it toward zero rather than toward the
// dataset mean. Velocity terms are unaffected by the missing shift.

#ifndef STYLEBIAS_RNNPB_ADAPT_H_
#define STYLEBIAS_RNNPB_ADAPT_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/rnnpb/constraints.h"
#include "stylebias/rnnpb/demonstration.h"
#include "stylebias/rnnpb/model.h"
#include "stylebias/seqcore/gradient_check.h"

namespace stylebias {

struct AdaptVariant {
  std::string name;
  bool use_matching_term = true;
  std::vector<ConstraintSpec> constraints;
  double learning_rate = 0.01;
  int epochs = 30;
  double momentum = 0.9;
  // Rollout length when there is no matching term; otherwise T = |D|.
  int rollout_steps = 60;
  // per-component bound applied after every momentum step
  double pb_clamp = 3.0;

  // Throws SpecificationError when the variant has neither term.
  void Validate() const;
};

struct AdaptObjective {
  double loss = 0;
  double matching = 0;                  // unweighted matching term
  std::vector<double> constraint_terms; // unweighted L_i, in variant order
  Eigen::VectorXd grad_p;
};

// Evaluates L(p) and dL/dp by reverse mode through both passes.
AdaptObjective EvaluateAdaptationObjective(const RnnpbModel& model,
                                           const Trajectory& observed,
                                           const AdaptVariant& variant,
                                           const Eigen::VectorXd& p);

// Central-difference check of EvaluateAdaptationObjective's grad_p.
GradientCheckReport AdaptationGradientCheck(const RnnpbModel& model,
                                            const Trajectory& observed,
                                            const AdaptVariant& variant,
                                            const Eigen::VectorXd& p,
                                            double h = 1e-6,
                                            double tol = 1e-4);

struct AdaptResult {
  Eigen::VectorXd p;
  std::vector<double> loss_trace;  // L at the start of every epoch
};

// Momentum SGD on p only; model weights are never modified.
AdaptResult AdaptPb(const RnnpbModel& model, const Trajectory& observed,
                    const AdaptVariant& variant, const Eigen::VectorXd& p_init);

// Rollout in constraint units (x / sigma) for t = 2..T, as scored by the
// style terms.
std::vector<Eigen::VectorXd> ConstraintSpaceRollout(const RnnpbModel& model,
                                                    const Sample& first,
                                                    const Eigen::VectorXd& p,
                                                    int steps);

}  // namespace stylebias

#endif  // STYLEBIAS_RNNPB_ADAPT_H_
