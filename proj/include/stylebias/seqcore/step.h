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

// Single time step of a Network, forward and reverse mode.
//
// All step functions work on column batches: an input is a
// (input_width x batch) matrix and every column is an independent sequence.
// The single-vector ForwardStep overload is the batch == 1 case.

#ifndef STYLEBIAS_SEQCORE_STEP_H_
#define STYLEBIAS_SEQCORE_STEP_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/errors.h"
#include "stylebias/seqcore/network.h"

namespace stylebias {

// Cell and hidden matrices per layer; dense layers hold empty matrices.
// The same type carries state gradients during the backward pass.
template <typename Scalar>
struct RecurrentState {
  std::vector<MatrixX<Scalar>> cell;
  std::vector<MatrixX<Scalar>> hidden;

  static RecurrentState Zero(const Network<Scalar>& net, int batch = 1) {
    RecurrentState state;
    state.cell.resize(net.num_layers());
    state.hidden.resize(net.num_layers());
    for (int l = 0; l < net.num_layers(); ++l) {
      if (net.layer(l).kind != LayerKind::kLstm) continue;
      const int width = net.layer(l).output_width;
      state.cell[l] = MatrixX<Scalar>::Zero(width, batch);
      state.hidden[l] = MatrixX<Scalar>::Zero(width, batch);
    }
    return state;
  }

  bool operator==(const RecurrentState&) const = default;
};

// Intermediate values kept by a forward step for its backward step.
template <typename Scalar>
struct StepCache {
  std::vector<MatrixX<Scalar>> input;   // input to each layer
  std::vector<MatrixX<Scalar>> output;  // post-activation output
  std::vector<MatrixX<Scalar>> gates;   // lstm: activated i, f, g, o
  std::vector<MatrixX<Scalar>> cell_prev;
  std::vector<MatrixX<Scalar>> hidden_prev;
  std::vector<MatrixX<Scalar>> cell_tanh;
};

namespace internal {

template <typename Derived>
auto Sigmoid(const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  return (Scalar(1) + (-z.array()).exp()).inverse().matrix();
}

}  // namespace internal

// Advances every column one step. Writes the successor state into *next
// (which may not alias `state`) and fills *cache when given.
template <typename Scalar>
MatrixX<Scalar> ForwardStep(const Network<Scalar>& net,
                            const MatrixX<Scalar>& input,
                            const RecurrentState<Scalar>& state,
                            RecurrentState<Scalar>* next,
                            StepCache<Scalar>* cache = nullptr) {
  using Matrix = MatrixX<Scalar>;
  if (input.rows() != net.input_width()) {
    throw SpecificationError("input width " + std::to_string(input.rows()) +
                             " does not match network input width " +
                             std::to_string(net.input_width()));
  }
  const int layers = net.num_layers();
  const Eigen::Index batch = input.cols();
  *next = state;
  if (cache != nullptr) {
    cache->input.assign(layers, Matrix());
    cache->output.assign(layers, Matrix());
    cache->gates.assign(layers, Matrix());
    cache->cell_prev.assign(layers, Matrix());
    cache->hidden_prev.assign(layers, Matrix());
    cache->cell_tanh.assign(layers, Matrix());
  }

  Matrix x = input;
  for (int l = 0; l < layers; ++l) {
    const LayerSpec& spec = net.layer(l);
    if (cache != nullptr) cache->input[l] = x;
    if (spec.kind == LayerKind::kDense) {
      Matrix z = net.InputWeight(l) * x;
      z.colwise() += net.Bias(l);
      if (spec.activation == Activation::kTanh) z = z.array().tanh().matrix();
      x = std::move(z);
    } else {
      const int n = spec.output_width;
      const Matrix& c_prev = state.cell[l];
      const Matrix& h_prev = state.hidden[l];
      if (c_prev.rows() != n || c_prev.cols() != batch ||
          h_prev.rows() != n || h_prev.cols() != batch) {
        throw SpecificationError("recurrent state shape mismatch at layer " +
                                 std::to_string(l));
      }
      Matrix z = net.InputWeight(l) * x;
      z.noalias() += net.RecurrentWeight(l) * h_prev;
      z.colwise() += net.Bias(l);
      Matrix gates(4 * n, batch);
      gates.topRows(2 * n) = internal::Sigmoid(z.topRows(2 * n));
      gates.middleRows(2 * n, n) = z.middleRows(2 * n, n).array().tanh();
      gates.bottomRows(n) = internal::Sigmoid(z.bottomRows(n));
      Matrix c = gates.middleRows(n, n).cwiseProduct(c_prev) +
                 gates.topRows(n).cwiseProduct(gates.middleRows(2 * n, n));
      Matrix c_tanh = c.array().tanh().matrix();
      Matrix h = gates.bottomRows(n).cwiseProduct(c_tanh);
      if (cache != nullptr) {
        cache->gates[l] = std::move(gates);
        cache->cell_prev[l] = c_prev;
        cache->hidden_prev[l] = h_prev;
        cache->cell_tanh[l] = std::move(c_tanh);
      }
      next->cell[l] = std::move(c);
      next->hidden[l] = h;
      x = std::move(h);
    }
    if (cache != nullptr) cache->output[l] = x;
  }
  return x;
}

// Single-sequence convenience form.
template <typename Scalar>
struct StepResult {
  VectorX<Scalar> output;
  RecurrentState<Scalar> state;
};

template <typename Scalar>
StepResult<Scalar> ForwardStep(const Network<Scalar>& net,
                               const VectorX<Scalar>& input,
                               const RecurrentState<Scalar>& state) {
  StepResult<Scalar> result;
  MatrixX<Scalar> out = ForwardStep(net, MatrixX<Scalar>(input), state,
                                    &result.state);
  result.output = out.col(0);
  return result;
}

// Reverse-mode step. `d_output` is dLoss/d(step output). On entry
// *d_state holds dLoss/d(state produced by this step) and on exit
// dLoss/d(state consumed by this step); empty matrices are read as zero.
// Parameter gradients accumulate into *d_weights. Returns dLoss/d(input).
template <typename Scalar>
MatrixX<Scalar> BackwardStep(const Network<Scalar>& net,
                             const StepCache<Scalar>& cache,
                             const MatrixX<Scalar>& d_output,
                             RecurrentState<Scalar>* d_state,
                             VectorX<Scalar>* d_weights) {
  using Matrix = MatrixX<Scalar>;
  const int layers = net.num_layers();
  if (d_state->cell.size() != static_cast<std::size_t>(layers)) {
    d_state->cell.resize(layers);
    d_state->hidden.resize(layers);
  }
  Matrix dx = d_output;
  for (int l = layers - 1; l >= 0; --l) {
    const LayerSpec& spec = net.layer(l);
    const Matrix& x = cache.input[l];
    if (spec.kind == LayerKind::kDense) {
      Matrix dz = dx;
      if (spec.activation == Activation::kTanh) {
        dz.array() *= Scalar(1) - cache.output[l].array().square();
      }
      Eigen::Map<Matrix> dw(d_weights->data() + net.offset(l),
                            spec.output_width, spec.input_width);
      dw.noalias() += dz * x.transpose();
      d_weights->segment(net.BiasOffset(l), spec.output_width) +=
          dz.rowwise().sum();
      dx.noalias() = net.InputWeight(l).transpose() * dz;
      continue;
    }

    const int n = spec.output_width;
    const Matrix& gates = cache.gates[l];
    const auto i_gate = gates.topRows(n).array();
    const auto f_gate = gates.middleRows(n, n).array();
    const auto g_gate = gates.middleRows(2 * n, n).array();
    const auto o_gate = gates.bottomRows(n).array();
    const auto c_tanh = cache.cell_tanh[l].array();

    Matrix dh = dx;
    if (d_state->hidden[l].size() > 0) dh += d_state->hidden[l];
    Matrix dc = (dh.array() * o_gate * (Scalar(1) - c_tanh.square())).matrix();
    if (d_state->cell[l].size() > 0) dc += d_state->cell[l];

    Matrix dz(4 * n, dx.cols());
    dz.topRows(n) = (dc.array() * g_gate * i_gate * (Scalar(1) - i_gate))
                        .matrix();
    dz.middleRows(n, n) =
        (dc.array() * cache.cell_prev[l].array() * f_gate *
         (Scalar(1) - f_gate))
            .matrix();
    dz.middleRows(2 * n, n) =
        (dc.array() * i_gate * (Scalar(1) - g_gate.square())).matrix();
    dz.bottomRows(n) =
        (dh.array() * c_tanh * o_gate * (Scalar(1) - o_gate)).matrix();

    Eigen::Map<Matrix> dwx(d_weights->data() + net.offset(l), 4 * n,
                           spec.input_width);
    dwx.noalias() += dz * x.transpose();
    Eigen::Map<Matrix> dwh(d_weights->data() + net.RecurrentWeightOffset(l),
                           4 * n, n);
    dwh.noalias() += dz * cache.hidden_prev[l].transpose();
    d_weights->segment(net.BiasOffset(l), 4 * n) += dz.rowwise().sum();

    d_state->cell[l] = (dc.array() * f_gate).matrix();
    d_state->hidden[l].noalias() = net.RecurrentWeight(l).transpose() * dz;
    dx.noalias() = net.InputWeight(l).transpose() * dz;
  }
  return dx;
}

}  // namespace stylebias

#endif  // STYLEBIAS_SEQCORE_STEP_H_
