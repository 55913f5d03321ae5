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

// Closed-loop runs of a trained model on the simulated arm.
//
// The model is started from rest with u_1 = l0. At every step it receives
// the measured s_t and the command u_t it issued, predicts (s_{t+1},
// u_{t+1}), and u_{t+1} is sent to the simulator as the muscle length
// reference. The recurrent state persists over the whole run.

#ifndef STYLEBIAS_EXPHARNESS_EXPERIMENTS_H_
#define STYLEBIAS_EXPHARNESS_EXPERIMENTS_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/expharness/dataset.h"
#include "stylebias/rnnpb/adapt.h"
#include "stylebias/rnnpb/model.h"

namespace stylebias {

struct MetricTrace {
  std::string variant;
  Eigen::VectorXd p;                  // p at the start of the run
  std::vector<double> theta_error;    // |theta_task - theta_t|
  std::vector<double> tension_norm;   // ||f_t||
  Trajectory samples;                 // measured (s_t, u_t)

  double MeanTensionNorm() const;
  double FinalThetaError() const { return theta_error.back(); }
};

inline constexpr double kThetaTask = -1.5707963267948966;

// Geometry of `sim` with moment arms (+r, -r, +r).
SimConfig WithRadius(const SimConfig& sim, double r);

// Closed loop for `steps` samples with p fixed. Throws SpecificationError
// for steps < 2. The model is not modified.
MetricTrace EvaluateRollout(const RnnpbModel& model, const Eigen::VectorXd& p,
                            const SimConfig& sim, int steps);

struct VariantReport {
  std::string variant;
  Eigen::VectorXd p_before;
  Eigen::VectorXd p_after;
  std::vector<double> loss_trace;
  MetricTrace before;
  MetricTrace after;
};

// Runs with p_init, adapts p on that run's samples, and runs again.
VariantReport RunVariantExperiment(const RnnpbModel& model,
                                   const AdaptVariant& variant,
                                   const SimConfig& sim, int steps,
                                   const Eigen::VectorXd& p_init);

struct OnlineReport {
  std::string variant;
  std::vector<int> update_steps;           // 1-based sample index
  std::vector<Eigen::VectorXd> p_history;  // p after each update
  MetricTrace trace;
};

// Closed loop in which every measured sample is pushed to an online
// adapter; later steps use the updated p.
OnlineReport RunOnlineExperiment(const RnnpbModel& model,
                                 const AdaptVariant& variant,
                                 const SimConfig& sim, int steps,
                                 const Eigen::VectorXd& p_init,
                                 int epochs_per_push = 3);

// The five adaptation variants on tension with weight +-alpha.
std::vector<AdaptVariant> StandardVariants(double alpha = 0.1);
// Online variants on joint velocity with weight +-alpha.
std::vector<AdaptVariant> OnlineVariants(double alpha = 0.1);

}  // namespace stylebias

#endif  // STYLEBIAS_EXPHARNESS_EXPERIMENTS_H_
