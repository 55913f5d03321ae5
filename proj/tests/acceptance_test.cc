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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stylebias/cli_io/cli.h"
#include "stylebias/cli_io/config.h"
#include "stylebias/cli_io/persist.h"
#include "stylebias/expharness/analysis.h"
#include "stylebias/expharness/dataset.h"
#include "stylebias/expharness/experiments.h"
#include "stylebias/expharness/normalization.h"
#include "stylebias/expharness/report.h"
#include "stylebias/rnnpb/adapt.h"
#include "stylebias/rnnpb/constraints.h"
#include "stylebias/rnnpb/fit.h"
#include "stylebias/rnnpb/online_adapter.h"
#include "stylebias/seqcore/gradient_check.h"
#include "stylebias/seqcore/optimizer.h"
#include "stylebias/tendon_sim/arm.h"
#include "test_util.h"

namespace stylebias {
namespace {

namespace fs = std::filesystem;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

VectorXd Vec(std::initializer_list<double> v) {
  VectorXd out(v.size());
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::vector<VectorXd> Rows(std::initializer_list<VectorXd> rows) {
  return std::vector<VectorXd>(rows);
}

// Shared state: the default-seed desk model is trained once.
struct Trained {
  RunConfig config;
  std::vector<Demonstration> data;
  RnnpbModel model;
  FitReport report;
  double seconds = 0;
};

const Trained& DefaultModel() {
  static const Trained trained = [] {
    Trained t;
    t.config = PresetConfig(Preset::kDesk);
    t.data = GenerateDataset(t.config.grid, t.config.sim);
    const auto start = std::chrono::steady_clock::now();
    t.model = Fit(StateLayout::TendonArm(t.config.p_dim), t.data, t.config.train,
                  &t.report);
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start).count();
    return t;
  }();
  return trained;
}

// ------------------------------------------------------------ criterion 1

Outcome GradientExactness() {
  double train_worst = 0, adapt_worst = 0;
  int nets = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Network<double> net(testing_util::RandomLayers(seed, 200, true),
                              seed + 50);
    if (net.num_parameters() > 200) return {false, "network over 200 params"};
    const testing_util::RandomSequence seq =
        testing_util::MakeSequence(net, 5, seed, 0);
    train_worst = std::max(
        train_worst,
        GradientCheck<double>(net, seq.inputs, seq.targets, 1e-6, 1e-5).max_rel_err);

    const RnnpbModel model = testing_util::RandomTinyModel(seed);
    if (model.net.num_parameters() > 200) return {false, "model over 200 params"};
    AdaptVariant v;
    v.name = "AB";
    v.constraints = {ConstraintSpec::Tension(0.3), ConstraintSpec::JointVelocity(-0.2),
                     ConstraintSpec::MuscleLengthVelocity(0.15),
                     ConstraintSpec::PbNorm(0.05)};
    const Trajectory d = testing_util::RandomTrajectory(model.layout, 5, seed + 100);
    adapt_worst = std::max(
        adapt_worst, AdaptationGradientCheck(model, d, v,
                                             testing_util::RandomVector(2, seed),
                                             1e-6, 1e-4)
                         .max_rel_err);
    ++nets;
  }
  return {train_worst < 1e-5 && adapt_worst < 1e-4,
          Fmt("%.0f networks; training max rel err %.3g (< 1e-5), adaptation "
              "max rel err %.3g (< 1e-4)",
              nets, train_worst, adapt_worst)};
}

// ------------------------------------------------------------ criterion 2

Outcome OptimizerIdentities() {
  const double lr = 0.01;
  bool ok = true;
  for (double g : {-3.0, -1e-3, 0.5, 40.0}) {
    OptState<double> adam = OptState<double>::Adam(3, lr);
    VectorXd p = Vec({0.5, -1, 2});
    const VectorXd before = p;
    OptimizerStep<double>(&adam, VectorXd::Constant(3, g), p);
    for (int i = 0; i < 3; ++i) {
      const double step = p[i] - before[i];
      ok &= std::abs(step) > 0 && std::abs(step) <= lr;
      ok &= std::signbit(step) != std::signbit(g);
    }
  }
  OptState<double> momentum = OptState<double>::MomentumSgd(3, lr, 0.9);
  VectorXd p = Vec({0.25, -0.5, 1});
  const VectorXd g = Vec({2, -4, 0.5});
  VectorXd expected = p;
  for (int i = 0; i < 3; ++i) expected[i] = p[i] - lr * g[i];
  OptimizerStep<double>(&momentum, g, p);
  ok &= p == expected;
  return {ok, "Adam first step in (0, lr] against the gradient sign; momentum "
              "first step equals -lr*g exactly"};
}

// ------------------------------------------------------------ criterion 3

Outcome ConstraintUnitValues() {
  const StateLayout wide{{{"theta", 1}, {"tension", 2}}, {{"l", 1}}, 2};
  const StateLayout tiny = testing_util::TinyLayout();
  const double tension = ConstraintLoss(ConstraintSpec::Tension(0.1), wide,
                                        Rows({Vec({9, 3, 4, 9})}), Vec({0, 0}));
  const double still =
      ConstraintLoss(ConstraintSpec::MuscleLengthVelocity(0.1), tiny,
                     Rows({Vec({0, 1, 0.3}), Vec({1, 2, 0.3}), Vec({5, 0, 0.3})}),
                     Vec({0, 0}));
  const double joint =
      ConstraintLoss(ConstraintSpec::JointVelocity(0.1), tiny,
                     Rows({Vec({0, 7, 1}), Vec({1, 7, 1}), Vec({3, 7, 1})}), Vec({0, 0}));
  return {tension == 5.0 && still == 0.0 && joint == std::sqrt(5.0),
          Fmt("tension(3,4) = %.17g, constant velocity = %.17g, "
              "theta(0,1,3) = %.17g",
              tension, still, joint)};
}

// ------------------------------------------------------------ criterion 4

Outcome OnlineBuffer() {
  const RnnpbModel model = testing_util::RandomTinyModel(13);
  AdaptVariant v;
  v.use_matching_term = false;
  v.constraints = {ConstraintSpec::JointVelocity(0.1)};
  OnlineAdapter adapter(model, v, model.ZeroPb());
  auto sample = [](int i) {
    return Sample{Vec({0.01 * i, 0.02 * i}), Vec({-0.01 * i})};
  };
  int first_update = -1;
  std::size_t max_size = 0;
  for (int i = 1; i <= 25; ++i) {
    if (adapter.Push(sample(i)) && first_update < 0) first_update = i;
    max_size = std::max(max_size, adapter.buffer().size());
  }
  bool fifo = adapter.buffer().size() == 20;
  for (int i = 0; fifo && i < 20; ++i) fifo = adapter.buffer()[i] == sample(6 + i);
  return {first_update == 10 && max_size == 20 && fifo,
          Fmt("first update at push %.0f, peak size %.0f, holds samples 6..25: ",
              first_update, static_cast<double>(max_size)) +
              (fifo ? "yes" : "no")};
}

// ------------------------------------------------------------ criterion 5

double BalancedAngle(const MuscleVector& f, const ArmGeometry& geom,
                     const SimSettings& settings) {
  const double torque = geom.moment_arms.dot(f);
  const double wl = geom.mass * settings.gravity * geom.com_distance;
  auto residual = [&](double th) { return torque - wl * std::sin(th); };
  double lo = -std::numbers::pi / 2, hi = std::numbers::pi / 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((residual(lo) > 0) == (residual(mid) > 0)) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

Outcome SimulatorStatics() {
  const MuscleParams mp;
  const SimSettings settings;
  const double dt = SimConfig{}.control_period;
  double drift = 0;
  for (double r : {0.03, 0.035, 0.04}) {
    const ArmGeometry geom = ArmGeometry::WithRadius(r);
    for (const MuscleVector& f : {MuscleVector(40, 100, 40), MuscleVector(20, 80, 30),
                                  MuscleVector(60, 150, 50)}) {
      const double theta = BalancedAngle(f, geom, settings);
      const MuscleVector l_ref = BodyImage(theta, f, geom, mp);
      ArmState s;
      s.theta = theta;
      s.l_cmd = l_ref;
      for (int i = 0; i < 50; ++i) {
        s = SimStep(s, l_ref, dt, geom, mp, settings).state;
        drift = std::max(drift, std::abs(s.theta - theta));
      }
    }
  }
  double round_trip = 0;
  const ArmGeometry geom;
  for (double f = 10; f <= 200; f += 10) {
    for (double theta : {0.0, -0.7, -std::numbers::pi / 2}) {
      const MuscleVector stretch =
          PathLengths(theta, geom) - BodyImage(theta, MuscleVector::Constant(f), geom, mp);
      for (int i = 0; i < kNumMuscles; ++i) {
        round_trip = std::max(round_trip, std::abs(MuscleTension(stretch[i], 0, mp) - f));
      }
    }
  }
  return {drift < 1e-3 && round_trip < 1e-9,
          Fmt("max |dtheta| over 50 steps %.3g rad (< 1e-3); tension round-trip "
              "error %.3g N (< 1e-9)",
              drift, round_trip)};
}

// ------------------------------------------------------------ criterion 6

Outcome TrainingConvergence() {
  const Trained& t = DefaultModel();
  return {t.report.final_mse < 1e-3,
          Fmt("teacher-forced MSE %.4g (< 1e-3) after %.0f epochs in %.1f s",
              t.report.final_mse, t.report.epochs_run, t.seconds)};
}

// ------------------------------------------------------------ criterion 7

Outcome PbSelfOrganization() {
  const Trained& t = DefaultModel();
  const auto probe = ProbePb(t.model, t.data);
  const double r0 = probe.at("r").degenerate ? 0 : probe.at("r").r2;
  const double f0 = probe.at("f_style").degenerate ? 0 : probe.at("f_style").r2;
  std::vector<double> rs{r0}, fs{f0};
  for (std::uint64_t seed = 2; seed <= 5; ++seed) {
    TrainConfig cfg = t.config.train;
    cfg.seed = seed;
    const RnnpbModel m = Fit(StateLayout::TendonArm(t.config.p_dim), t.data, cfg);
    const auto p = ProbePb(m, t.data);
    rs.push_back(p.at("r").degenerate ? 0 : p.at("r").r2);
    fs.push_back(p.at("f_style").degenerate ? 0 : p.at("f_style").r2);
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  const double rm = median(rs), fm = median(fs);
  return {r0 >= 0.8 && f0 >= 0.8 && rm >= 0.7 && fm >= 0.7,
          Fmt("default seed R2 r %.3f, f_style %.3f (>= 0.8); 5-seed median r "
              "%.3f, f_style %.3f (>= 0.7)",
              r0, f0, rm, fm)};
}

// ------------------------------------------------------------ criterion 8

Outcome ConstraintDirection() {
  const Trained& t = DefaultModel();
  const SimConfig sim = WithRadius(t.config.sim, t.config.experiment.eval_r);
  const int steps = t.config.experiment.eval_steps;
  const AdaptVariant& lo = t.config.Variant("B-min");
  const AdaptVariant& hi = t.config.Variant("B-max");
  if (lo.learning_rate != 0.01 || lo.epochs != 30 || hi.learning_rate != 0.01 ||
      hi.epochs != 30 || lo.constraints.at(0).weight != 0.1 ||
      hi.constraints.at(0).weight != -0.1) {
    return {false, "variant settings differ from lr 0.01, 30 epochs, alpha +-0.1"};
  }
  const VectorXd p0 = t.model.ZeroPb();
  const double base = EvaluateRollout(t.model, p0, sim, steps).MeanTensionNorm();
  const double fmin =
      RunVariantExperiment(t.model, lo, sim, steps, p0).after.MeanTensionNorm();
  const double fmax =
      RunVariantExperiment(t.model, hi, sim, steps, p0).after.MeanTensionNorm();
  return {fmin <= base && base <= fmax && fmin <= 0.95 * fmax,
          Fmt("mean ||f||: minimize %.2f <= baseline %.2f <= maximize %.2f N; "
              "gap %.1f%% (>= 5%%)",
              fmin, base, fmax, 100 * (1 - fmin / fmax))};
}

// ------------------------------------------------------------ criterion 9

// Adapts with the matching term on the p = 0 closed-loop run at a trained
// radius, then scores one-step prediction on the later run driven by the
// adapted p, which the adaptation never saw.
Outcome ConfigurationMatching() {
  const Trained& t = DefaultModel();
  const SimConfig sim = WithRadius(t.config.sim, t.config.experiment.eval_r);
  const int steps = t.config.experiment.eval_steps;
  const AdaptVariant& a = t.config.Variant("A");
  if (!a.use_matching_term || !a.constraints.empty()) {
    return {false, "variant A is not matching-only"};
  }
  const VariantReport rep =
      RunVariantExperiment(t.model, a, sim, steps, t.model.ZeroPb());
  const Trajectory& held_out = rep.after.samples;
  const double mse0 = TeacherForcedMse(t.model, held_out, t.model.ZeroPb());
  const double mse_a = TeacherForcedMse(t.model, held_out, rep.p_after);
  const double drop = 1 - mse_a / mse0;
  return {drop >= 0.3,
          Fmt("r = %.3f: held-out one-step MSE %.4g at p=0, %.4g adapted; drop "
              "%.1f%% (>= 30%%)",
              t.config.experiment.eval_r, mse0, mse_a, 100 * drop)};
}

// ----------------------------------------------------------- criterion 10

VectorXd TopEigenvector(const MatrixXd& a, const std::vector<VectorXd>& previous) {
  VectorXd v = VectorXd::LinSpaced(a.rows(), 1, 2).normalized();
  for (int it = 0; it < 20000; ++it) {
    VectorXd next = a * v;
    for (const VectorXd& u : previous) next -= u.dot(next) * u;
    v = next.normalized();
  }
  return v;
}

double PcaOracleError(const MatrixXd& pts) {
  const int k = std::min<int>(2, pts.cols());
  const PcaResult pca = PcaProject(pts, k);
  const MatrixXd c = pts.rowwise() - pts.colwise().mean();
  const MatrixXd cov = c.transpose() * c / static_cast<double>(pts.rows() - 1);
  std::vector<VectorXd> found;
  double worst = 0;
  for (int j = 0; j < k; ++j) {
    VectorXd v = TopEigenvector(cov, found);
    found.push_back(v);
    if (v.dot(pca.components.col(j)) < 0) v = -v;
    worst = std::max(worst, (v - pca.components.col(j)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (c * v - pca.coordinates.col(j)).cwiseAbs().maxCoeff());
  }
  return worst;
}

Outcome ExactProperties() {
  const Trained& t = DefaultModel();
  double pca = PcaOracleError(PbMatrix(t.model, t.data));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    MatrixXd pts(10, 4);
    const CounterRng rng(seed, 88);
    for (Eigen::Index i = 0; i < pts.size(); ++i) {
      pts.data()[i] = rng.Uniform(i, -1, 1) * (1 + i % 4);
    }
    pca = std::max(pca, PcaOracleError(pts));
  }

  double norm = 0;
  for (const Demonstration& d : t.data) {
    for (const Sample& s : d.steps) {
      const VectorXd x = Concat(s);
      norm = std::max(norm, (t.model.norm.Invert(t.model.norm.Apply(x)) - x)
                                .cwiseAbs().maxCoeff());
    }
  }

  const RnnpbModel model = DeserializeModel(SerializeModel(t.model));
  const std::vector<Demonstration> data =
      DeserializeDataset(SerializeDataset(t.data));
  double serial = 0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    serial = std::max(serial,
                      std::abs(TeacherForcedMse(model, data[k].steps,
                                                model.Pb(data[k].id)) -
                               TeacherForcedMse(t.model, t.data[k].steps,
                                                t.model.Pb(t.data[k].id))));
  }
  return {pca < 1e-8 && norm < 1e-12 && serial < 1e-15,
          Fmt("PCA vs power iteration %.3g (< 1e-8); normalization round-trip "
              "%.3g (< 1e-12); serialized teacher-forced loss change %.3g (< 1e-15)",
              pca, norm, serial)};
}

// ----------------------------------------------------------- criterion 11

std::map<std::string, std::string> CsvArtifacts(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      out[fs::relative(entry.path(), root).string()] = ReadTextFile(entry.path());
    }
  }
  return out;
}

Outcome PipelineDeterminism() {
  const fs::path root = fs::temp_directory_path() / "stylebias_acceptance";
  fs::remove_all(root);
  WriteTextFile(root / "config.json", R"({
  "seed": 3,
  "grid": {"r_values": [0.03, 0.04], "f_style_values": [10, 200],
           "steps_per_demo": 12},
  "network": {"hidden_units": [{"width": 8, "lstm": false},
                               {"width": 6, "lstm": true},
                               {"width": 8, "lstm": false}]},
  "train": {"max_epochs": 150},
  "adapt": {"epochs": 5, "rollout_steps": 12},
  "experiment": {"eval_steps": 12}
})");
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* name : {"a", "b"}) {
    const fs::path out = root / name;
    for (const char* sub : {"gen-data", "train", "adapt", "eval"}) {
      std::ostringstream log, err;
      const int code = RunCli({"--config", (root / "config.json").string(), "--out",
                               out.string(), sub},
                              log, err);
      if (code != kExitOk) {
        return {false, std::string(sub) + " exited with " + std::to_string(code) +
                           ": " + err.str()};
      }
    }
    runs.push_back(CsvArtifacts(out));
  }
  const bool same = runs[0] == runs[1] && !runs[0].empty();
  std::string differing;
  for (const auto& [path, bytes] : runs[0]) {
    if (runs[1].count(path) == 0 || runs[1].at(path) != bytes) differing += " " + path;
  }
  fs::remove_all(root);
  return {same, std::to_string(runs[0].size()) + " CSV artifacts " +
                    (same ? "byte-identical across two runs"
                          : "differ:" + differing)};
}

}  // namespace
}  // namespace stylebias

int main() {
  using stylebias::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gradient exactness", stylebias::GradientExactness},
      {"optimizer identities", stylebias::OptimizerIdentities},
      {"constraint unit values", stylebias::ConstraintUnitValues},
      {"online buffer semantics", stylebias::OnlineBuffer},
      {"simulator statics", stylebias::SimulatorStatics},
      {"training convergence", stylebias::TrainingConvergence},
      {"parametric bias self-organization", stylebias::PbSelfOrganization},
      {"constraint direction", stylebias::ConstraintDirection},
      {"configuration matching", stylebias::ConfigurationMatching},
      {"exact property suite", stylebias::ExactProperties},
      {"pipeline determinism", stylebias::PipelineDeterminism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
