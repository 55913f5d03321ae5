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

#include "stylebias/expharness/analysis.h"

#include <cmath>

#include "stylebias/errors.h"

namespace stylebias {

using Eigen::MatrixXd;
using Eigen::VectorXd;

PcaResult PcaProject(const MatrixXd& points, int out_dim) {
  if (points.rows() < 2) throw SpecificationError("PCA needs at least two points");
  if (out_dim < 1 || out_dim > points.cols()) {
    throw SpecificationError("PCA output dimension " + std::to_string(out_dim) +
                             " exceeds the point dimension " +
                             std::to_string(points.cols()));
  }
  PcaResult out;
  out.mean = points.colwise().mean().transpose();
  const MatrixXd centered = points.rowwise() - out.mean.transpose();
  const MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(points.rows() - 1);
  const Eigen::SelfAdjointEigenSolver<MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw SimulationFault("eigendecomposition did not converge");
  }
  // eigenvalues come in ascending order
  const Eigen::Index d = points.cols();
  const double total = eig.eigenvalues().sum();
  out.components.resize(d, out_dim);
  out.explained_variance_ratio.resize(out_dim);
  for (int j = 0; j < out_dim; ++j) {
    VectorXd v = eig.eigenvectors().col(d - 1 - j);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < d; ++i) {
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    }
    if (v[arg] < 0) v = -v;
    out.components.col(j) = v;
    const double lambda = std::max(0.0, eig.eigenvalues()[d - 1 - j]);
    out.explained_variance_ratio[j] = total > 0 ? lambda / total : 0;
  }
  out.coordinates = centered * out.components;
  return out;
}

ProbeResult LinearProbe(const MatrixXd& points, const VectorXd& y) {
  if (points.rows() != y.size()) throw SpecificationError("probe size mismatch");
  ProbeResult out;
  MatrixXd design(points.rows(), points.cols() + 1);
  design << VectorXd::Ones(points.rows()), points;
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  const Eigen::ColPivHouseholderQR<MatrixXd> qr(design);
  if (qr.rank() < design.cols() || y.size() == 0 ||
      y.maxCoeff() == y.minCoeff() || !(ss_tot > 0)) {
    out.degenerate = true;
    return out;
  }
  const VectorXd beta = qr.solve(y);
  out.r2 = 1.0 - (y - design * beta).squaredNorm() / ss_tot;
  return out;
}

MatrixXd PbMatrix(const RnnpbModel& model,
                  std::span<const Demonstration> dataset) {
  MatrixXd out(dataset.size(), model.layout.p_dim);
  for (std::size_t k = 0; k < dataset.size(); ++k) {
    out.row(k) = model.Pb(dataset[k].id).transpose();
  }
  return out;
}

std::map<std::string, ProbeResult> ProbePb(
    const RnnpbModel& model, std::span<const Demonstration> dataset) {
  if (dataset.size() < 3) throw SpecificationError("probe needs >= 3 demos");
  const MatrixXd pb = PbMatrix(model, dataset);
  const Eigen::Index n = static_cast<Eigen::Index>(dataset.size());
  VectorXd r(n), f(n), beta(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    r[k] = dataset[k].meta.r;
    f[k] = dataset[k].meta.f_style;
    beta[k] = dataset[k].meta.beta;
  }
  return {{"r", LinearProbe(pb, r)},
          {"f_style", LinearProbe(pb, f)},
          {"beta", LinearProbe(pb, beta)}};
}

}  // namespace stylebias
