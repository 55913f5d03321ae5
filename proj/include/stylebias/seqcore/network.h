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

#ifndef STYLEBIAS_SEQCORE_NETWORK_H_
#define STYLEBIAS_SEQCORE_NETWORK_H_

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/errors.h"
#include "stylebias/seqcore/counter_rng.h"
#include "stylebias/seqcore/layer_spec.h"

namespace stylebias {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Stack of dense and LSTM layers over one flat parameter vector.
//
// Per-layer parameter layout (column-major blocks, in order):
//   dense: W (out x in), b (out)
//   lstm:  W_x (4out x in), W_h (4out x out), b (4out)
// LSTM gate rows are ordered input, forget, cell candidate, output.
template <typename Scalar>
class Network {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;
  using ConstMatrixMap = Eigen::Map<const Matrix>;
  using ConstVectorMap = Eigen::Map<const Vector>;

  Network() = default;

  // Initializes weights uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) from a
  // counter-based generator keyed by (seed, layer). LSTM forget-gate biases
  // start at 1.
  Network(std::vector<LayerSpec> layers, std::uint64_t seed)
      : layers_(std::move(layers)), seed_(seed) {
    ValidateLayers(layers_);
    ComputeOffsets();
    weights_.resize(ParameterCount(layers_));
    for (std::size_t l = 0; l < layers_.size(); ++l) InitializeLayer(l);
  }

  // Adopts an existing weight vector, e.g. one loaded from disk.
  Network(std::vector<LayerSpec> layers, Vector weights, std::uint64_t seed)
      : layers_(std::move(layers)), weights_(std::move(weights)), seed_(seed) {
    ValidateLayers(layers_);
    ComputeOffsets();
    if (weights_.size() != ParameterCount(layers_)) {
      throw SpecificationError(
          "weight vector has " + std::to_string(weights_.size()) +
          " entries, layers need " + std::to_string(ParameterCount(layers_)));
    }
  }

  static Network Zeros(std::vector<LayerSpec> layers) {
    ValidateLayers(layers);
    const int count = ParameterCount(layers);
    return Network(std::move(layers), Vector::Zero(count), 0);
  }

  const std::vector<LayerSpec>& layers() const { return layers_; }
  const LayerSpec& layer(int l) const { return layers_[l]; }
  int num_layers() const { return static_cast<int>(layers_.size()); }
  int input_width() const { return layers_.front().input_width; }
  int output_width() const { return layers_.back().output_width; }
  int num_parameters() const { return static_cast<int>(weights_.size()); }
  std::uint64_t seed() const { return seed_; }

  const Vector& weights() const { return weights_; }
  Vector& mutable_weights() { return weights_; }
  int offset(int l) const { return offsets_[l]; }

  // dense W, or lstm W_x
  ConstMatrixMap InputWeight(int l) const {
    const LayerSpec& s = layers_[l];
    return ConstMatrixMap(weights_.data() + offsets_[l], GateRows(s),
                          s.input_width);
  }
  // lstm W_h
  ConstMatrixMap RecurrentWeight(int l) const {
    const LayerSpec& s = layers_[l];
    return ConstMatrixMap(
        weights_.data() + offsets_[l] + GateRows(s) * s.input_width,
        GateRows(s), s.output_width);
  }
  ConstVectorMap Bias(int l) const {
    return ConstVectorMap(weights_.data() + BiasOffset(l),
                          GateRows(layers_[l]));
  }

  // Offsets inside the flat vector, shared with gradient buffers.
  int RecurrentWeightOffset(int l) const {
    return offsets_[l] + GateRows(layers_[l]) * layers_[l].input_width;
  }
  int BiasOffset(int l) const {
    const LayerSpec& s = layers_[l];
    int offset = offsets_[l] + GateRows(s) * s.input_width;
    if (s.kind == LayerKind::kLstm) offset += GateRows(s) * s.output_width;
    return offset;
  }

  static int GateRows(const LayerSpec& s) {
    return s.kind == LayerKind::kLstm ? 4 * s.output_width : s.output_width;
  }

 private:
  void ComputeOffsets() {
    offsets_.clear();
    int offset = 0;
    for (const LayerSpec& layer : layers_) {
      offsets_.push_back(offset);
      offset += ParameterCount(layer);
    }
  }

  void InitializeLayer(std::size_t l) {
    const LayerSpec& s = layers_[l];
    const CounterRng rng(seed_, l);
    const double bound = 1.0 / std::sqrt(static_cast<double>(s.input_width));
    const int begin = offsets_[l];
    const int count = ParameterCount(s);
    for (int i = 0; i < count; ++i) {
      weights_[begin + i] = static_cast<Scalar>(rng.Uniform(i, -bound, bound));
    }
    if (s.kind == LayerKind::kLstm) {
      const int bias = BiasOffset(static_cast<int>(l));
      weights_.segment(bias + s.output_width, s.output_width).setOnes();
    }
  }

  std::vector<LayerSpec> layers_;
  std::vector<int> offsets_;
  Vector weights_;
  std::uint64_t seed_ = 0;
};

}  // namespace stylebias

#endif  // STYLEBIAS_SEQCORE_NETWORK_H_
