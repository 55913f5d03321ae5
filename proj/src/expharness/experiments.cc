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

#include "stylebias/expharness/experiments.h"

#include <cmath>
#include <numeric>
#include <optional>
#include <utility>

#include "stylebias/errors.h"
#include "stylebias/rnnpb/online_adapter.h"

namespace stylebias {

using Eigen::VectorXd;

double MetricTrace::MeanTensionNorm() const {
  if (tension_norm.empty()) return 0;
  return std::accumulate(tension_norm.begin(), tension_norm.end(), 0.0) /
         static_cast<double>(tension_norm.size());
}

SimConfig WithRadius(const SimConfig& sim, double r) {
  SimConfig out = sim;
  out.geometry.joint_radius = r;
  out.geometry.moment_arms = MuscleVector(r, -r, r);
  return out;
}

namespace {

// Shared closed loop; `adapter` may be null.
MetricTrace ClosedLoop(const RnnpbModel& model, const VectorXd& p_init,
                       const SimConfig& sim, int steps, OnlineAdapter* adapter,
                       OnlineReport* online) {
  if (steps < 2) throw SpecificationError("closed-loop run needs >= 2 steps");
  internal::CheckPb(model, p_init);
  const ArmGeometry& geom = sim.geometry;
  MetricTrace trace;
  trace.p = p_init;
  VectorXd p = p_init;
  ArmState arm = RestState(geom);
  MuscleVector tension = MuscleTensions(arm, geom, sim.muscle);
  Sample sample = MakeSample(arm, tension, geom.rest_path_lengths);
  RecurrentState<double> state = RecurrentState<double>::Zero(model.net);
  for (int t = 1;; ++t) {
    trace.samples.push_back(sample);
    trace.theta_error.push_back(std::abs(kThetaTask - arm.theta));
    trace.tension_norm.push_back(tension.norm());
    if (adapter != nullptr) {
      if (std::optional<VectorXd> update = adapter->Push(sample)) {
        p = *update;
        online->update_steps.push_back(t);
        online->p_history.push_back(p);
      }
    }
    if (t == steps) break;
    RnnpbStepResult pred = RnnpbStep(model, sample.s, sample.u, p, state);
    state = std::move(pred.state);
    const MuscleVector command = pred.u_pred;
    const SimStepResult next = SimStep(arm, command, sim.control_period, geom,
                                       sim.muscle, sim.settings);
    arm = next.state;
    tension = next.tension;
    sample = MakeSample(arm, tension, command);
  }
  return trace;
}

}  // namespace

MetricTrace EvaluateRollout(const RnnpbModel& model, const VectorXd& p,
                            const SimConfig& sim, int steps) {
  return ClosedLoop(model, p, sim, steps, nullptr, nullptr);
}

VariantReport RunVariantExperiment(const RnnpbModel& model,
                                   const AdaptVariant& variant,
                                   const SimConfig& sim, int steps,
                                   const VectorXd& p_init) {
  variant.Validate();
  VariantReport report;
  report.variant = variant.name;
  report.p_before = p_init;
  report.before = EvaluateRollout(model, p_init, sim, steps);
  report.before.variant = variant.name;
  AdaptVariant v = variant;
  if (!v.use_matching_term) v.rollout_steps = steps;
  const AdaptResult adapted = AdaptPb(model, report.before.samples, v, p_init);
  report.p_after = adapted.p;
  report.loss_trace = adapted.loss_trace;
  report.after = EvaluateRollout(model, adapted.p, sim, steps);
  report.after.variant = variant.name;
  return report;
}

OnlineReport RunOnlineExperiment(const RnnpbModel& model,
                                 const AdaptVariant& variant,
                                 const SimConfig& sim, int steps,
                                 const VectorXd& p_init, int epochs_per_push) {
  OnlineAdapter adapter(model, variant, p_init,
                        OnlineAdapter::kDefaultThreshold,
                        OnlineAdapter::kDefaultCapacity, epochs_per_push);
  OnlineReport report;
  report.variant = variant.name;
  report.trace = ClosedLoop(model, p_init, sim, steps, &adapter, &report);
  report.trace.variant = variant.name;
  return report;
}

std::vector<AdaptVariant> StandardVariants(double alpha) {
  std::vector<AdaptVariant> out;
  auto add = [&](std::string name, bool matching, double weight) {
    AdaptVariant v;
    v.name = std::move(name);
    v.use_matching_term = matching;
    if (weight != 0) v.constraints = {ConstraintSpec::Tension(weight)};
    out.push_back(std::move(v));
  };
  add("A", true, 0);
  add("B-min", false, alpha);
  add("B-max", false, -alpha);
  add("AB-min", true, alpha);
  add("AB-max", true, -alpha);
  return out;
}

std::vector<AdaptVariant> OnlineVariants(double alpha) {
  std::vector<AdaptVariant> out;
  for (const auto& [name, weight] :
       {std::pair{"jvelocity-min", alpha}, std::pair{"jvelocity-max", -alpha}}) {
    AdaptVariant v;
    v.name = name;
    v.use_matching_term = true;
    v.constraints = {ConstraintSpec::JointVelocity(weight)};
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace stylebias
