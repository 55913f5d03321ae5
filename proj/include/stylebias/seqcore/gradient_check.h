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

#ifndef STYLEBIAS_SEQCORE_GRADIENT_CHECK_H_
#define STYLEBIAS_SEQCORE_GRADIENT_CHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "stylebias/errors.h"
#include "stylebias/seqcore/network.h"
#include "stylebias/seqcore/sequence_loss.h"

namespace stylebias {

struct GradientCheckReport {
  double max_rel_err = 0;
  int worst_index = -1;  // -1 when every component is exactly equal
  std::vector<int> flagged;  // indices with error above tolerance
  bool passed = true;
  int num_checked = 0;
};

// Error between an analytic and a numeric derivative:
//   |a - n| / max(|a|, |n|, floor)
// The floor keeps round-off in near-zero components (about 1e-10 at
// h = 1e-6) from reading as large relative errors.
inline constexpr double kRelativeErrorFloor = 1e-4;

inline double RelativeError(double analytic, double numeric,
                            double floor = kRelativeErrorFloor) {
  const double denom =
      std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

// Compares `analytic` against central differences of `loss` around
// `params`, component by component.
template <typename Scalar>
GradientCheckReport CompareWithCentralDifferences(
    const std::function<Scalar(const VectorX<Scalar>&)>& loss,
    const VectorX<Scalar>& params, const VectorX<Scalar>& analytic, Scalar h,
    double tol) {
  if (!(h > 0)) throw SpecificationError("finite-difference step must be > 0");
  if (params.size() != analytic.size()) {
    throw SpecificationError("gradient length mismatch");
  }
  GradientCheckReport report;
  VectorX<Scalar> probe = params;
  for (Eigen::Index i = 0; i < params.size(); ++i) {
    probe[i] = params[i] + h;
    const Scalar up = loss(probe);
    probe[i] = params[i] - h;
    const Scalar down = loss(probe);
    probe[i] = params[i];
    const double numeric = static_cast<double>((up - down) / (Scalar(2) * h));
    const double err = RelativeError(static_cast<double>(analytic[i]), numeric);
    if (err > report.max_rel_err) {
      report.max_rel_err = err;
      report.worst_index = static_cast<int>(i);
    }
    if (err >= tol) report.flagged.push_back(static_cast<int>(i));
    ++report.num_checked;
  }
  report.passed = report.flagged.empty();
  return report;
}

// Checks SequenceLossAndGradients w.r.t. the network parameters.
template <typename Scalar>
GradientCheckReport GradientCheck(const Network<Scalar>& net,
                                  std::span<const VectorX<Scalar>> inputs,
                                  std::span<const VectorX<Scalar>> targets,
                                  Scalar h, double tol,
                                  const std::optional<VectorX<Scalar>>& extra =
                                      std::nullopt) {
  const SequenceLossResult<Scalar> analytic =
      SequenceLossAndGradients(net, inputs, targets, extra);
  Network<Scalar> probe_net = net;
  auto loss = [&](const VectorX<Scalar>& w) {
    probe_net.mutable_weights() = w;
    return SequenceLoss(probe_net, inputs, targets, extra);
  };
  return CompareWithCentralDifferences<Scalar>(loss, net.weights(),
                                               analytic.grad_net, h, tol);
}

}  // namespace stylebias

#endif  // STYLEBIAS_SEQCORE_GRADIENT_CHECK_H_
