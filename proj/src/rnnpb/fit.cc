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

#include "stylebias/rnnpb/fit.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "stylebias/errors.h"
#include "stylebias/expharness/normalization.h"
#include "stylebias/seqcore/optimizer.h"
#include "stylebias/seqcore/sequence_loss.h"

namespace stylebias {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void TrainConfig::Validate() const {
  if (!(learning_rate > 0)) throw SpecificationError("learning_rate must be > 0");
  if (max_epochs < 0) throw SpecificationError("max_epochs must be >= 0");
  if (!(clip_norm > 0)) throw SpecificationError("clip_norm must be > 0");
  if (shards < 1) throw SpecificationError("shards must be >= 1");
  if (threads < 1) throw SpecificationError("threads must be >= 1");
  if (hidden_units.empty()) throw SpecificationError("no hidden units");
}

namespace {

// One block of equal-length demos evaluated as matrix columns.
struct Shard {
  std::vector<int> demos;  // dataset indices, one per column
  std::vector<MatrixXd> inputs;
  std::vector<MatrixXd> targets;
  double count = 0;  // residual entries
};

std::vector<Shard> BuildShards(const RnnpbModel& model,
                               std::span<const Demonstration> dataset,
                               int shards) {
  std::map<std::size_t, std::vector<int>> by_length;
  for (std::size_t k = 0; k < dataset.size(); ++k) {
    by_length[dataset[k].steps.size()].push_back(static_cast<int>(k));
  }
  const int nx = model.layout.x_dim();
  std::vector<Shard> out;
  for (const auto& [length, members] : by_length) {
    const int n = static_cast<int>(members.size());
    const int parts = std::min(shards, n);
    for (int s = 0; s < parts; ++s) {
      Shard shard;
      for (int j = s * n / parts; j < (s + 1) * n / parts; ++j) {
        shard.demos.push_back(members[j]);
      }
      const int cols = static_cast<int>(shard.demos.size());
      for (std::size_t t = 0; t + 1 < length; ++t) {
        MatrixXd in(nx, cols), tg(nx, cols);
        for (int c = 0; c < cols; ++c) {
          const Trajectory& steps = dataset[shard.demos[c]].steps;
          in.col(c) = internal::NormalizedState(model, steps[t]);
          tg.col(c) = internal::NormalizedState(model, steps[t + 1]);
        }
        shard.inputs.push_back(std::move(in));
        shard.targets.push_back(std::move(tg));
      }
      shard.count = static_cast<double>(length - 1) * cols * nx;
      out.push_back(std::move(shard));
    }
  }
  return out;
}

struct ShardResult {
  double sum_sq = 0;
  VectorXd grad_net;  // gradient of sum_sq
  MatrixXd grad_pb;
};

ShardResult EvaluateShard(const Network<double>& net, const Shard& shard,
                          const MatrixXd& pb) {
  SequenceGradients<double> g =
      BatchSequenceLoss<double>(net, shard.inputs, shard.targets, &pb);
  return {g.loss * shard.count, g.grad_net * shard.count,
          *g.grad_extra * shard.count};
}

template <typename Fn>
void ParallelFor(int n, int threads, Fn fn) {
  const int workers = std::min(threads, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

RnnpbModel Fit(const StateLayout& layout,
               std::span<const Demonstration> dataset,
               const TrainConfig& config, FitReport* report,
               const EpochCallback& on_epoch) {
  layout.Validate();
  config.Validate();
  if (dataset.empty()) throw SpecificationError("empty dataset");
  std::set<int> ids;
  for (const Demonstration& d : dataset) {
    ValidateTrajectory(d.steps, layout, 2);
    if (!ids.insert(d.id).second) {
      throw SpecificationError("duplicate demonstration id " +
                               std::to_string(d.id));
    }
  }
  FitReport local;
  FitReport& rep = report != nullptr ? *report : local;
  rep = FitReport{};
  const int num_demos = static_cast<int>(dataset.size());
  if (layout.p_dim >= num_demos) {
    rep.warnings.push_back(
        "parametric bias width " + std::to_string(layout.p_dim) +
        " is not smaller than the number of demonstrations (" +
        std::to_string(num_demos) + ")");
  }

  RnnpbModel model;
  model.layout = layout;
  model.norm = ComputeNormStats(dataset);
  model.net = Network<double>(
      StackLayers(UnitsForLayout(layout, config.hidden_units)), config.seed);

  const std::vector<Shard> shards = BuildShards(model, dataset, config.shards);
  double total_count = 0;
  for (const Shard& s : shards) total_count += s.count;

  const int nw = model.net.num_parameters();
  const int pd = layout.p_dim;
  VectorXd params = VectorXd::Zero(nw + pd * num_demos);
  params.head(nw) = model.net.weights();
  OptState<double> opt = OptState<double>::Adam(params.size(),
                                                config.learning_rate);

  std::vector<ShardResult> results(shards.size());
  auto evaluate = [&](VectorXd* grad) {
    model.net.mutable_weights() = params.head(nw);
    ParallelFor(static_cast<int>(shards.size()), config.threads, [&](int i) {
      MatrixXd pb(pd, shards[i].demos.size());
      for (std::size_t c = 0; c < shards[i].demos.size(); ++c) {
        pb.col(c) = params.segment(nw + pd * shards[i].demos[c], pd);
      }
      results[i] = EvaluateShard(model.net, shards[i], pb);
    });
    double sum_sq = 0;
    grad->setZero(params.size());
    for (std::size_t i = 0; i < shards.size(); ++i) {
      sum_sq += results[i].sum_sq;
      grad->head(nw) += results[i].grad_net;
      for (std::size_t c = 0; c < shards[i].demos.size(); ++c) {
        grad->segment(nw + pd * shards[i].demos[c], pd) +=
            results[i].grad_pb.col(c);
      }
    }
    *grad /= total_count;
    return sum_sq / total_count;
  };

  VectorXd grad;
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    const double mse = evaluate(&grad);
    rep.loss_trace.push_back(mse);
    if (on_epoch) on_epoch(epoch, mse);
    if (mse < config.early_stop_mse) break;
    ClipGlobalNorm<double>(grad, config.clip_norm);
    OptimizerStep<double>(&opt, grad, params);
    rep.epochs_run = epoch + 1;
  }

  model.net.mutable_weights() = params.head(nw);
  for (int k = 0; k < num_demos; ++k) {
    model.pb_table[dataset[k].id] = params.segment(nw + pd * k, pd);
  }
  rep.final_mse = DatasetMse(model, dataset);
  return model;
}

double DatasetMse(const RnnpbModel& model,
                  std::span<const Demonstration> dataset) {
  if (dataset.empty()) throw SpecificationError("empty dataset");
  double sum = 0, weight = 0;
  for (const Demonstration& d : dataset) {
    const double n = static_cast<double>(d.steps.size() - 1);
    sum += n * TeacherForcedMse(model, d.steps, model.Pb(d.id));
    weight += n;
  }
  return sum / weight;
}

}  // namespace stylebias
