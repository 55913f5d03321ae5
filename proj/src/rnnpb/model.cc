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

#include "stylebias/rnnpb/model.h"

#include <cmath>
#include <string>
#include <utility>

#include "stylebias/errors.h"

namespace stylebias {

using Eigen::MatrixXd;
using Eigen::VectorXd;

const VectorXd& RnnpbModel::Pb(int id) const {
  auto it = pb_table.find(id);
  if (it == pb_table.end()) {
    throw SpecificationError("no parametric bias for demonstration " +
                             std::to_string(id));
  }
  return it->second;
}

void RnnpbModel::Validate() const {
  layout.Validate();
  if (net.num_layers() == 0) throw SpecificationError("model has no network");
  if (net.input_width() != layout.input_width() ||
      net.output_width() != layout.output_width()) {
    throw SpecificationError("network widths do not match the state layout");
  }
  if (norm.mean.size() != layout.x_dim() || norm.std.size() != layout.x_dim()) {
    throw SpecificationError("normalization width does not match layout");
  }
  for (const auto& [id, p] : pb_table) {
    if (p.size() != layout.p_dim) {
      throw SpecificationError("parametric bias " + std::to_string(id) +
                               " has the wrong width");
    }
  }
}

std::vector<UnitSpec> DeskHiddenUnits() {
  return {{64, false}, {64, false}, {32, false}, {32, true},
          {32, true},  {32, false}, {64, false}, {64, false}};
}

std::vector<UnitSpec> PaperHiddenUnits() {
  return {{500, false}, {300, false}, {100, false}, {100, true},
          {100, true},  {100, false}, {300, false}, {500, false}};
}

std::vector<UnitSpec> UnitsForLayout(const StateLayout& layout,
                                     const std::vector<UnitSpec>& hidden) {
  std::vector<UnitSpec> units;
  units.push_back({layout.input_width(), false});
  units.insert(units.end(), hidden.begin(), hidden.end());
  units.push_back({layout.output_width(), false});
  return units;
}

namespace internal {

VectorXd NormalizedState(const RnnpbModel& model, const Sample& sample) {
  if (sample.s.size() != model.layout.s_dim() ||
      sample.u.size() != model.layout.u_dim()) {
    throw SpecificationError("sample widths do not match the state layout");
  }
  return model.norm.Apply(Concat(sample));
}

VectorXd NetworkInput(const VectorXd& x_norm, const VectorXd& p) {
  VectorXd input(x_norm.size() + p.size());
  input << x_norm, p;
  return input;
}

void CheckPb(const RnnpbModel& model, const VectorXd& p) {
  if (p.size() != model.layout.p_dim) {
    throw SpecificationError("parametric bias has width " +
                             std::to_string(p.size()) + ", expected " +
                             std::to_string(model.layout.p_dim));
  }
}

}  // namespace internal

RnnpbStepResult RnnpbStep(const RnnpbModel& model, const VectorXd& s,
                          const VectorXd& u, const VectorXd& p,
                          const RecurrentState<double>& state) {
  internal::CheckPb(model, p);
  const VectorXd x = internal::NormalizedState(model, {s, u});
  StepResult<double> step =
      ForwardStep(model.net, internal::NetworkInput(x, p), state);
  const Sample pred = Split(model.norm.Invert(step.output), model.layout);
  return {pred.s, pred.u, std::move(step.state)};
}

namespace {

// normalized predictions of x_{2..T}
std::vector<VectorXd> TeacherForcedNormalized(const RnnpbModel& model,
                                              const Trajectory& observed,
                                              const VectorXd& p) {
  internal::CheckPb(model, p);
  ValidateTrajectory(observed, model.layout, 2);
  std::vector<VectorXd> out;
  RecurrentState<double> state = RecurrentState<double>::Zero(model.net);
  RecurrentState<double> next;
  for (std::size_t t = 0; t + 1 < observed.size(); ++t) {
    const VectorXd input = internal::NetworkInput(
        internal::NormalizedState(model, observed[t]), p);
    MatrixXd y = ForwardStep(model.net, MatrixXd(input), state, &next);
    out.push_back(y.col(0));
    std::swap(state, next);
  }
  return out;
}

}  // namespace

std::vector<VectorXd> TeacherForcedPrediction(const RnnpbModel& model,
                                              const Trajectory& observed,
                                              const VectorXd& p) {
  std::vector<VectorXd> s_pred;
  for (const VectorXd& x : TeacherForcedNormalized(model, observed, p)) {
    s_pred.push_back(model.norm.Invert(x).head(model.layout.s_dim()));
  }
  return s_pred;
}

double MatchingLoss(const RnnpbModel& model, const Trajectory& observed,
                    const VectorXd& p) {
  const std::vector<VectorXd> pred = TeacherForcedNormalized(model, observed, p);
  const int ns = model.layout.s_dim();
  double sq = 0;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    const VectorXd target = internal::NormalizedState(model, observed[t + 1]);
    sq += (pred[t].head(ns) - target.head(ns)).squaredNorm();
  }
  return std::sqrt(sq);
}

double TeacherForcedMse(const RnnpbModel& model, const Trajectory& observed,
                        const VectorXd& p) {
  const std::vector<VectorXd> pred = TeacherForcedNormalized(model, observed, p);
  double sq = 0;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    sq += (pred[t] - internal::NormalizedState(model, observed[t + 1]))
              .squaredNorm();
  }
  return sq / (static_cast<double>(pred.size()) * model.layout.x_dim());
}

Trajectory AutoregressiveRollout(const RnnpbModel& model, const VectorXd& s1,
                                 const VectorXd& u1, const VectorXd& p,
                                 int steps) {
  internal::CheckPb(model, p);
  if (steps < 2) throw SpecificationError("rollout needs T >= 2");
  VectorXd x = internal::NormalizedState(model, {s1, u1});
  RecurrentState<double> state = RecurrentState<double>::Zero(model.net);
  RecurrentState<double> next;
  Trajectory out;
  for (int t = 1; t < steps; ++t) {
    MatrixXd y = ForwardStep(model.net, MatrixXd(internal::NetworkInput(x, p)),
                             state, &next);
    x = y.col(0);
    out.push_back(Split(model.norm.Invert(x), model.layout));
    std::swap(state, next);
  }
  return out;
}

}  // namespace stylebias
