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

#ifndef STYLEBIAS_SEQCORE_OPTIMIZER_H_
#define STYLEBIAS_SEQCORE_OPTIMIZER_H_

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

#include "stylebias/errors.h"
#include "stylebias/seqcore/network.h"

namespace stylebias {

enum class OptimizerKind { kAdam, kMomentumSgd };

template <typename Scalar>
struct OptState {
  OptimizerKind kind = OptimizerKind::kAdam;
  std::int64_t step_count = 0;
  VectorX<Scalar> first_moment;   // adam m
  VectorX<Scalar> second_moment;  // adam v
  VectorX<Scalar> velocity;       // momentum
  Scalar learning_rate = Scalar(1e-3);
  Scalar beta1 = Scalar(0.9);
  Scalar beta2 = Scalar(0.999);
  Scalar epsilon = Scalar(1e-8);
  Scalar momentum = Scalar(0.9);

  static OptState Adam(Eigen::Index size, Scalar learning_rate) {
    OptState state;
    state.kind = OptimizerKind::kAdam;
    state.learning_rate = learning_rate;
    state.first_moment = VectorX<Scalar>::Zero(size);
    state.second_moment = VectorX<Scalar>::Zero(size);
    return state;
  }

  static OptState MomentumSgd(Eigen::Index size, Scalar learning_rate,
                              Scalar momentum) {
    OptState state;
    state.kind = OptimizerKind::kMomentumSgd;
    state.learning_rate = learning_rate;
    state.momentum = momentum;
    state.velocity = VectorX<Scalar>::Zero(size);
    return state;
  }

  Eigen::Index size() const {
    return kind == OptimizerKind::kAdam ? first_moment.size()
                                        : velocity.size();
  }
};

// One update of `params` in place.
//   adam:     bias-corrected first and second moments
//   momentum: v <- mu v + g, params <- params - lr v
template <typename Scalar>
void OptimizerStep(OptState<Scalar>* opt,
                   const Eigen::Ref<const VectorX<Scalar>>& grads,
                   Eigen::Ref<VectorX<Scalar>> params) {
  if (params.size() != grads.size() || params.size() != opt->size()) {
    throw SpecificationError("optimizer length mismatch");
  }
  ++opt->step_count;
  if (opt->kind == OptimizerKind::kMomentumSgd) {
    opt->velocity = opt->momentum * opt->velocity + grads;
    params -= opt->learning_rate * opt->velocity;
    return;
  }
  const Scalar t = static_cast<Scalar>(opt->step_count);
  opt->first_moment =
      opt->beta1 * opt->first_moment + (Scalar(1) - opt->beta1) * grads;
  opt->second_moment = opt->beta2 * opt->second_moment +
                       (Scalar(1) - opt->beta2) * grads.cwiseAbs2();
  const Scalar m_scale = Scalar(1) / (Scalar(1) - std::pow(opt->beta1, t));
  const Scalar v_scale = Scalar(1) / (Scalar(1) - std::pow(opt->beta2, t));
  params.array() -= opt->learning_rate * (m_scale * opt->first_moment.array()) /
                    ((v_scale * opt->second_moment.array()).sqrt() +
                     opt->epsilon);
}

// Rescales `grads` so its Euclidean norm is at most max_norm. Returns the
// norm before clipping.
template <typename Scalar>
Scalar ClipGlobalNorm(Eigen::Ref<VectorX<Scalar>> grads, Scalar max_norm) {
  const Scalar norm = grads.norm();
  if (norm > max_norm) grads *= max_norm / norm;
  return norm;
}

}  // namespace stylebias

#endif  // STYLEBIAS_SEQCORE_OPTIMIZER_H_
