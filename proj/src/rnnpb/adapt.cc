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

#include "stylebias/rnnpb/adapt.h"

#include <cmath>
#include <utility>

#include "stylebias/errors.h"
#include "stylebias/seqcore/optimizer.h"
#include "stylebias/seqcore/step.h"

namespace stylebias {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void AdaptVariant::Validate() const {
  if (!use_matching_term && constraints.empty()) {
    throw SpecificationError("adaptation variant '" + name +
                             "' has neither a matching nor a style term");
  }
  if (epochs < 0) throw SpecificationError("epochs must be >= 0");
  if (!use_matching_term && rollout_steps < 2) {
    throw SpecificationError("style-only adaptation needs rollout_steps >= 2");
  }
}

namespace {

// Teacher-forced matching term; adds dL/dp into *grad_p.
double MatchingTermWithGradient(const RnnpbModel& model,
                                const Trajectory& observed, const VectorXd& p,
                                VectorXd* grad_p) {
  const Network<double>& net = model.net;
  const int ns = model.layout.s_dim();
  const int nx = model.layout.x_dim();
  const std::size_t steps = observed.size() - 1;

  std::vector<StepCache<double>> caches(steps);
  std::vector<VectorXd> residual(steps);
  RecurrentState<double> state = RecurrentState<double>::Zero(net);
  RecurrentState<double> next;
  double sq = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    const VectorXd input = internal::NetworkInput(
        internal::NormalizedState(model, observed[t]), p);
    MatrixXd y = ForwardStep(net, MatrixXd(input), state, &next, &caches[t]);
    residual[t] = y.col(0).head(ns) -
                  internal::NormalizedState(model, observed[t + 1]).head(ns);
    sq += residual[t].squaredNorm();
    std::swap(state, next);
  }
  const double loss = std::sqrt(sq);
  if (loss == 0) return 0;

  VectorXd scratch = VectorXd::Zero(net.num_parameters());
  RecurrentState<double> d_state;
  for (std::size_t t = steps; t-- > 0;) {
    MatrixXd d_out = MatrixXd::Zero(nx, 1);
    d_out.col(0).head(ns) = residual[t] / loss;
    MatrixXd d_in = BackwardStep(net, caches[t], d_out, &d_state, &scratch);
    *grad_p += d_in.col(0).tail(p.size());
  }
  return loss;
}

}  // namespace

std::vector<VectorXd> ConstraintSpaceRollout(const RnnpbModel& model,
                                             const Sample& first,
                                             const VectorXd& p, int steps) {
  internal::CheckPb(model, p);
  if (steps < 2) throw SpecificationError("rollout needs T >= 2");
  const VectorXd shift = model.norm.mean.cwiseQuotient(model.norm.std);
  VectorXd x = internal::NormalizedState(model, first);
  RecurrentState<double> state = RecurrentState<double>::Zero(model.net);
  RecurrentState<double> next;
  std::vector<VectorXd> out;
  for (int t = 1; t < steps; ++t) {
    MatrixXd y = ForwardStep(model.net, MatrixXd(internal::NetworkInput(x, p)),
                             state, &next);
    x = y.col(0);
    out.push_back(x + shift);
    std::swap(state, next);
  }
  return out;
}

AdaptObjective EvaluateAdaptationObjective(const RnnpbModel& model,
                                           const Trajectory& observed,
                                           const AdaptVariant& variant,
                                           const VectorXd& p) {
  variant.Validate();
  internal::CheckPb(model, p);
  ValidateTrajectory(observed, model.layout, variant.use_matching_term ? 2 : 1);
  for (const ConstraintSpec& c : variant.constraints) {
    ValidateConstraint(c, model.layout);
  }

  AdaptObjective result;
  result.grad_p = VectorXd::Zero(p.size());
  if (variant.use_matching_term) {
    result.matching =
        MatchingTermWithGradient(model, observed, p, &result.grad_p);
    result.loss += result.matching;
  }
  if (variant.constraints.empty()) return result;

  // Autoregressive pass: x_1 from data, every later input is the previous
  // output, so the backward pass carries dL/d(input x) into the previous
  // step's output gradient.
  const Network<double>& net = model.net;
  const int nx = model.layout.x_dim();
  const int steps = variant.use_matching_term
                        ? static_cast<int>(observed.size())
                        : variant.rollout_steps;
  const VectorXd shift = model.norm.mean.cwiseQuotient(model.norm.std);

  std::vector<StepCache<double>> caches(steps - 1);
  std::vector<VectorXd> rollout;
  VectorXd x = internal::NormalizedState(model, observed.front());
  RecurrentState<double> state = RecurrentState<double>::Zero(net);
  RecurrentState<double> next;
  for (int t = 0; t + 1 < steps; ++t) {
    MatrixXd y = ForwardStep(net, MatrixXd(internal::NetworkInput(x, p)),
                             state, &next, &caches[t]);
    x = y.col(0);
    rollout.push_back(x + shift);
    std::swap(state, next);
  }

  std::vector<VectorXd> d_rollout(rollout.size(), VectorXd::Zero(nx));
  for (const ConstraintSpec& c : variant.constraints) {
    const ConstraintGradient g =
        ConstraintLossWithGradient(c, model.layout, rollout, p);
    result.constraint_terms.push_back(g.loss);
    result.loss += c.weight * g.loss;
    result.grad_p += c.weight * g.d_p;
    for (std::size_t t = 0; t < rollout.size(); ++t) {
      d_rollout[t] += c.weight * g.d_rollout[t];
    }
  }

  VectorXd scratch = VectorXd::Zero(net.num_parameters());
  RecurrentState<double> d_state;
  VectorXd carry = VectorXd::Zero(nx);
  for (std::size_t t = rollout.size(); t-- > 0;) {
    const MatrixXd d_out = d_rollout[t] + carry;
    MatrixXd d_in = BackwardStep(net, caches[t], d_out, &d_state, &scratch);
    carry = d_in.col(0).head(nx);
    result.grad_p += d_in.col(0).tail(p.size());
  }
  return result;
}

GradientCheckReport AdaptationGradientCheck(const RnnpbModel& model,
                                            const Trajectory& observed,
                                            const AdaptVariant& variant,
                                            const VectorXd& p, double h,
                                            double tol) {
  const VectorXd analytic =
      EvaluateAdaptationObjective(model, observed, variant, p).grad_p;
  return CompareWithCentralDifferences<double>(
      [&](const VectorXd& q) {
        return EvaluateAdaptationObjective(model, observed, variant, q).loss;
      },
      p, analytic, h, tol);
}

AdaptResult AdaptPb(const RnnpbModel& model, const Trajectory& observed,
                    const AdaptVariant& variant, const VectorXd& p_init) {
  variant.Validate();
  AdaptResult result;
  result.p = p_init;
  OptState<double> opt = OptState<double>::MomentumSgd(
      p_init.size(), variant.learning_rate, variant.momentum);
  for (int epoch = 0; epoch < variant.epochs; ++epoch) {
    const AdaptObjective objective =
        EvaluateAdaptationObjective(model, observed, variant, result.p);
    result.loss_trace.push_back(objective.loss);
    OptimizerStep<double>(&opt, objective.grad_p, result.p);
    result.p = result.p.cwiseMax(-variant.pb_clamp).cwiseMin(variant.pb_clamp);
  }
  return result;
}

}  // namespace stylebias
