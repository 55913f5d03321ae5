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

#ifndef STYLEBIAS_SEQCORE_SEQUENCE_LOSS_H_
#define STYLEBIAS_SEQCORE_SEQUENCE_LOSS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/errors.h"
#include "stylebias/seqcore/network.h"
#include "stylebias/seqcore/step.h"

namespace stylebias {

template <typename Scalar>
struct SequenceGradients {
  Scalar loss = 0;
  VectorX<Scalar> grad_net;
  // dLoss/d(extra input); one column per batch column when batched
  std::optional<MatrixX<Scalar>> grad_extra;
};

// Teacher-forced mean squared error over a batch of equal-length
// sequences. inputs[t] and targets[t] are (width x batch). When `extra` is
// given (extra_width x batch) it is appended below every step's input.
// The loss is the mean over steps, batch columns, and output dimensions.
template <typename Scalar>
SequenceGradients<Scalar> BatchSequenceLoss(
    const Network<Scalar>& net, std::span<const MatrixX<Scalar>> inputs,
    std::span<const MatrixX<Scalar>> targets,
    const MatrixX<Scalar>* extra = nullptr) {
  using Matrix = MatrixX<Scalar>;
  if (inputs.empty()) throw SpecificationError("empty sequence");
  if (inputs.size() != targets.size()) {
    throw SpecificationError("inputs and targets differ in length");
  }
  const Eigen::Index batch = inputs.front().cols();
  const Eigen::Index extra_rows = extra != nullptr ? extra->rows() : 0;
  if (extra != nullptr && extra->cols() != batch) {
    throw SpecificationError("extra input batch size mismatch");
  }
  const std::size_t steps = inputs.size();
  const Scalar count = static_cast<Scalar>(steps) *
                       static_cast<Scalar>(batch) *
                       static_cast<Scalar>(net.output_width());

  std::vector<StepCache<Scalar>> caches(steps);
  std::vector<Matrix> d_outputs(steps);
  RecurrentState<Scalar> state = RecurrentState<Scalar>::Zero(net, batch);
  RecurrentState<Scalar> next;
  SequenceGradients<Scalar> result;
  Matrix step_input(net.input_width(), batch);
  for (std::size_t t = 0; t < steps; ++t) {
    if (inputs[t].rows() + extra_rows != net.input_width() ||
        inputs[t].cols() != batch) {
      throw SpecificationError("input shape mismatch at step " +
                               std::to_string(t));
    }
    if (targets[t].rows() != net.output_width() ||
        targets[t].cols() != batch) {
      throw SpecificationError("target shape mismatch at step " +
                               std::to_string(t));
    }
    step_input.topRows(inputs[t].rows()) = inputs[t];
    if (extra != nullptr) step_input.bottomRows(extra_rows) = *extra;
    Matrix out = ForwardStep(net, step_input, state, &next, &caches[t]);
    Matrix residual = out - targets[t];
    result.loss += residual.squaredNorm();
    d_outputs[t] = (Scalar(2) / count) * residual;
    std::swap(state, next);
  }
  result.loss /= count;

  result.grad_net = VectorX<Scalar>::Zero(net.num_parameters());
  if (extra != nullptr) result.grad_extra = Matrix::Zero(extra_rows, batch);
  RecurrentState<Scalar> d_state;
  for (std::size_t t = steps; t-- > 0;) {
    Matrix d_input =
        BackwardStep(net, caches[t], d_outputs[t], &d_state, &result.grad_net);
    if (extra != nullptr) *result.grad_extra += d_input.bottomRows(extra_rows);
  }
  return result;
}

// Single-sequence form: one vector per step, optional extra vector.
template <typename Scalar>
struct SequenceLossResult {
  Scalar loss = 0;
  VectorX<Scalar> grad_net;
  std::optional<VectorX<Scalar>> grad_extra;
};

template <typename Scalar>
SequenceLossResult<Scalar> SequenceLossAndGradients(
    const Network<Scalar>& net, std::span<const VectorX<Scalar>> inputs,
    std::span<const VectorX<Scalar>> targets,
    const std::optional<VectorX<Scalar>>& extra = std::nullopt) {
  std::vector<MatrixX<Scalar>> in(inputs.begin(), inputs.end());
  std::vector<MatrixX<Scalar>> tg(targets.begin(), targets.end());
  MatrixX<Scalar> extra_matrix;
  if (extra) extra_matrix = *extra;
  SequenceGradients<Scalar> batch = BatchSequenceLoss<Scalar>(
      net, in, tg, extra ? &extra_matrix : nullptr);
  SequenceLossResult<Scalar> result;
  result.loss = batch.loss;
  result.grad_net = std::move(batch.grad_net);
  if (batch.grad_extra) result.grad_extra = batch.grad_extra->col(0);
  return result;
}

// Loss only, no tape.
template <typename Scalar>
Scalar SequenceLoss(const Network<Scalar>& net,
                    std::span<const VectorX<Scalar>> inputs,
                    std::span<const VectorX<Scalar>> targets,
                    const std::optional<VectorX<Scalar>>& extra =
                        std::nullopt) {
  if (inputs.empty()) throw SpecificationError("empty sequence");
  if (inputs.size() != targets.size()) {
    throw SpecificationError("inputs and targets differ in length");
  }
  const Eigen::Index extra_rows = extra ? extra->size() : 0;
  RecurrentState<Scalar> state = RecurrentState<Scalar>::Zero(net);
  RecurrentState<Scalar> next;
  VectorX<Scalar> step_input(net.input_width());
  Scalar loss = 0;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    if (inputs[t].size() + extra_rows != net.input_width()) {
      throw SpecificationError("input shape mismatch at step " +
                               std::to_string(t));
    }
    step_input.head(inputs[t].size()) = inputs[t];
    if (extra) step_input.tail(extra_rows) = *extra;
    MatrixX<Scalar> out =
        ForwardStep(net, MatrixX<Scalar>(step_input), state, &next);
    loss += (out.col(0) - targets[t]).squaredNorm();
    std::swap(state, next);
  }
  return loss / (static_cast<Scalar>(inputs.size()) *
                 static_cast<Scalar>(net.output_width()));
}

}  // namespace stylebias

#endif  // STYLEBIAS_SEQCORE_SEQUENCE_LOSS_H_
