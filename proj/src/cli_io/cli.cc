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

#include "stylebias/cli_io/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "stylebias/cli_io/config.h"
#include "stylebias/cli_io/persist.h"
#include "stylebias/errors.h"
#include "stylebias/expharness/analysis.h"
#include "stylebias/expharness/dataset.h"
#include "stylebias/expharness/experiments.h"
#include "stylebias/expharness/report.h"
#include "stylebias/rnnpb/adapt.h"
#include "stylebias/rnnpb/fit.h"
#include "stylebias/seqcore/counter_rng.h"
#include "stylebias/seqcore/gradient_check.h"

namespace stylebias {
namespace {

namespace fs = std::filesystem;
using Eigen::VectorXd;

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string variant;
  std::string preset;
};

struct Context {
  RunConfig config;
  fs::path out;
  std::string variant;
  std::ostream* log;

  fs::path DatasetPath() const { return out / "dataset.jsonl"; }
  fs::path ModelPath() const { return out / "model.json"; }
  void Wrote(const fs::path& path) const { *log << "wrote " << path.string() << "\n"; }
  void Write(const fs::path& path, std::string_view content) const {
    WriteTextFile(path, content);
    Wrote(path);
  }
};

int ThreadsFromEnv() {
  const char* env = std::getenv("STYLEBIAS_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    throw ConfigError("STYLEBIAS_THREADS must be a positive integer, got '" +
                      std::string(env) + "'");
  }
  return static_cast<int>(n);
}

RunConfig ResolveConfig(const Options& opt) {
  nlohmann::json overrides = nlohmann::json::object();
  if (!opt.config_path.empty()) {
    const std::string text = ReadTextFile(opt.config_path);
    try {
      overrides = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(opt.config_path + ": " + e.what());
    }
  }
  if (!opt.preset.empty()) {
    ParsePreset(opt.preset);
    if (overrides.is_object()) overrides["preset"] = opt.preset;
  }
  if (opt.seed && overrides.is_object()) overrides["seed"] = *opt.seed;
  RunConfig config = ConfigFromJson(overrides);
  config.train.threads = ThreadsFromEnv();
  return config;
}

std::vector<std::string> Numbered(std::string_view prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

std::vector<std::string> Concat(std::vector<std::string> a,
                                const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<std::string> SampleHeader() {
  return Concat(Concat({"step", "theta"}, Numbered("tension_", kNumMuscles)),
                Numbered("l_cmd_", kNumMuscles));
}

std::vector<double> SampleRow(int step, const Sample& s) {
  std::vector<double> row{static_cast<double>(step)};
  for (Eigen::Index i = 0; i < s.s.size(); ++i) row.push_back(s.s[i]);
  for (Eigen::Index i = 0; i < s.u.size(); ++i) row.push_back(s.u[i]);
  return row;
}

CsvTable TrajectoryTable(const Trajectory& steps) {
  CsvTable table(SampleHeader());
  for (std::size_t t = 0; t < steps.size(); ++t) {
    table.AddRow(SampleRow(static_cast<int>(t + 1), steps[t]));
  }
  return table;
}

CsvTable MetricTable(const MetricTrace& trace) {
  CsvTable table({"step", "theta_error", "tension_norm"});
  for (std::size_t t = 0; t < trace.theta_error.size(); ++t) {
    table.AddRow(std::vector<double>{static_cast<double>(t + 1),
                                     trace.theta_error[t],
                                     trace.tension_norm[t]});
  }
  return table;
}

std::vector<double> PRow(const VectorXd& p) {
  return std::vector<double>(p.data(), p.data() + p.size());
}

std::vector<Demonstration> LoadDatasetFor(const Context& ctx) {
  std::vector<Demonstration> data = LoadDataset(ctx.DatasetPath());
  const StateLayout layout = StateLayout::TendonArm(ctx.config.p_dim);
  for (const Demonstration& d : data) {
    try {
      ValidateTrajectory(d.steps, layout, 2);
    } catch (const SpecificationError& e) {
      throw ParseError(ctx.DatasetPath().string() + ": demo " +
                       std::to_string(d.id) + ": " + e.what());
    }
  }
  return data;
}

RnnpbModel LoadModelFor(const Context& ctx) {
  RnnpbModel model = LoadModel(ctx.ModelPath());
  if (!(model.layout == StateLayout::TendonArm(model.layout.p_dim))) {
    throw ParseError(ctx.ModelPath().string() +
                     ": model was not trained on the tendon arm layout");
  }
  return model;
}

// ------------------------------------------------------------- subcommands

void GenData(const Context& ctx) {
  const std::vector<Demonstration> data =
      GenerateDataset(ctx.config.grid, ctx.config.sim);
  SaveDataset(ctx.DatasetPath(), data);
  ctx.Wrote(ctx.DatasetPath());
  CsvTable demos({"id", "r", "f_style", "beta", "steps"});
  CsvTable samples(Concat({"id"}, SampleHeader()));
  for (const Demonstration& d : data) {
    demos.AddRow(std::vector<double>{static_cast<double>(d.id), d.meta.r,
                                     d.meta.f_style, d.meta.beta,
                                     static_cast<double>(d.steps.size())});
    for (std::size_t t = 0; t < d.steps.size(); ++t) {
      std::vector<double> row{static_cast<double>(d.id)};
      const std::vector<double> rest =
          SampleRow(static_cast<int>(t + 1), d.steps[t]);
      row.insert(row.end(), rest.begin(), rest.end());
      samples.AddRow(row);
    }
  }
  ctx.Write(ArtifactPath(ctx.out, "data", "grid", "demos"), demos.ToString());
  ctx.Write(ArtifactPath(ctx.out, "data", "grid", "samples"), samples.ToString());
  nlohmann::json snapshot = ConfigToJson(ctx.config);
  snapshot.erase("output_dir");
  ctx.Write(ctx.out / "config.json", snapshot.dump(2) + "\n");
}

void Train(const Context& ctx) {
  const std::vector<Demonstration> data = LoadDatasetFor(ctx);
  FitReport report;
  const RnnpbModel model =
      Fit(StateLayout::TendonArm(ctx.config.p_dim), data, ctx.config.train,
          &report);
  for (const std::string& w : report.warnings) *ctx.log << "warning: " << w << "\n";
  SaveModel(ctx.ModelPath(), model);
  ctx.Wrote(ctx.ModelPath());
  const std::string preset(PresetName(ctx.config.preset));
  CsvTable loss({"epoch", "mse"});
  for (std::size_t e = 0; e < report.loss_trace.size(); ++e) {
    loss.AddRow(std::vector<double>{static_cast<double>(e + 1),
                                    report.loss_trace[e]});
  }
  ctx.Write(ArtifactPath(ctx.out, "train", preset, "loss"), loss.ToString());
  ctx.Write(ArtifactPath(ctx.out, "train", preset, "loss", "svg"),
            SvgLineChart("training loss", "teacher-forced MSE",
                         {{"mse", report.loss_trace}}));
  CsvTable pb(Concat({"id", "r", "f_style", "beta"},
                     Numbered("p_", ctx.config.p_dim)));
  for (const Demonstration& d : data) {
    std::vector<double> row{static_cast<double>(d.id), d.meta.r,
                            d.meta.f_style, d.meta.beta};
    const std::vector<double> p = PRow(model.Pb(d.id));
    row.insert(row.end(), p.begin(), p.end());
    pb.AddRow(row);
  }
  ctx.Write(ArtifactPath(ctx.out, "train", preset, "pb"), pb.ToString());
  CsvTable summary({"epochs_run", "final_mse", "parameters"});
  summary.AddRow(std::vector<double>{static_cast<double>(report.epochs_run),
                                     report.final_mse,
                                     static_cast<double>(model.net.num_parameters())});
  ctx.Write(ArtifactPath(ctx.out, "train", preset, "summary"), summary.ToString());
  *ctx.log << "final teacher-forced mse " << FormatNumber(report.final_mse)
           << " after " << report.epochs_run << " epochs\n";
}

std::vector<AdaptVariant> SelectVariants(const Context& ctx,
                                         const std::vector<AdaptVariant>& pool) {
  if (ctx.variant.empty()) return pool;
  for (const AdaptVariant& v : pool) {
    if (v.name == ctx.variant) return {v};
  }
  throw ConfigError("unknown variant '" + ctx.variant + "' for this subcommand");
}

SimConfig EvalSim(const Context& ctx) {
  return WithRadius(ctx.config.sim, ctx.config.experiment.eval_r);
}

void Adapt(const Context& ctx) {
  const RnnpbModel model = LoadModelFor(ctx);
  const int steps = ctx.config.experiment.eval_steps;
  std::optional<PcaResult> pca;
  if (model.pb_table.size() >= 2) {
    Eigen::MatrixXd points(model.pb_table.size(), model.layout.p_dim);
    int row = 0;
    for (const auto& [id, p] : model.pb_table) points.row(row++) = p.transpose();
    pca = PcaProject(points, std::min(2, model.layout.p_dim));
  }
  CsvTable summary({"variant", "mean_tension_before", "mean_tension_after",
                    "final_theta_error_before", "final_theta_error_after",
                    "loss_first", "loss_last"});
  for (const AdaptVariant& v : SelectVariants(ctx, ctx.config.variants)) {
    const VariantReport rep =
        RunVariantExperiment(model, v, EvalSim(ctx), steps, model.ZeroPb());
    CsvTable trace({"step", "theta_error_before", "tension_norm_before",
                    "theta_error_after", "tension_norm_after"});
    for (int t = 0; t < steps; ++t) {
      trace.AddRow(std::vector<double>{
          static_cast<double>(t + 1), rep.before.theta_error[t],
          rep.before.tension_norm[t], rep.after.theta_error[t],
          rep.after.tension_norm[t]});
    }
    ctx.Write(ArtifactPath(ctx.out, "adapt", v.name, "trace"), trace.ToString());
    CsvTable loss({"epoch", "loss"});
    for (std::size_t e = 0; e < rep.loss_trace.size(); ++e) {
      loss.AddRow(std::vector<double>{static_cast<double>(e + 1),
                                      rep.loss_trace[e]});
    }
    ctx.Write(ArtifactPath(ctx.out, "adapt", v.name, "loss"), loss.ToString());
    std::vector<std::string> pb_header =
        Concat({"point", "id"}, Numbered("p_", model.layout.p_dim));
    if (pca) pb_header = Concat(pb_header, Numbered("pc", pca->components.cols()));
    CsvTable pb(pb_header);
    auto add_point = [&](const std::string& name, double id, const VectorXd& p) {
      std::vector<std::string> row{name, FormatNumber(id)};
      for (double x : PRow(p)) row.push_back(FormatNumber(x));
      if (pca) {
        const VectorXd c = pca->components.transpose() * (p - pca->mean);
        for (Eigen::Index i = 0; i < c.size(); ++i) row.push_back(FormatNumber(c[i]));
      }
      pb.AddRow(std::move(row));
    };
    for (const auto& [id, p] : model.pb_table) add_point("trained", id, p);
    add_point("before", -1, rep.p_before);
    add_point("after", -1, rep.p_after);
    ctx.Write(ArtifactPath(ctx.out, "adapt", v.name, "pb"), pb.ToString());
    ctx.Write(ArtifactPath(ctx.out, "adapt", v.name, "tension", "svg"),
              SvgLineChart(v.name + ": muscle tension", "||f|| [N]",
                           {{"before", rep.before.tension_norm},
                            {"after", rep.after.tension_norm}}));
    summary.AddRow({v.name, FormatNumber(rep.before.MeanTensionNorm()),
                    FormatNumber(rep.after.MeanTensionNorm()),
                    FormatNumber(rep.before.FinalThetaError()),
                    FormatNumber(rep.after.FinalThetaError()),
                    FormatNumber(rep.loss_trace.empty() ? 0 : rep.loss_trace.front()),
                    FormatNumber(rep.loss_trace.empty() ? 0 : rep.loss_trace.back())});
    *ctx.log << v.name << ": mean ||f|| " << FormatNumber(rep.before.MeanTensionNorm())
             << " -> " << FormatNumber(rep.after.MeanTensionNorm()) << "\n";
  }
  const std::string tag = ctx.variant.empty() ? "all" : ctx.variant;
  ctx.Write(ArtifactPath(ctx.out, "adapt", "summary", tag), summary.ToString());
}

void Rollout(const Context& ctx) {
  const RnnpbModel model = LoadModelFor(ctx);
  const int steps = ctx.config.experiment.eval_steps;
  VectorXd p = model.ZeroPb();
  std::string name = "p0";
  if (!ctx.variant.empty()) {
    const AdaptVariant& v = SelectVariants(ctx, ctx.config.variants).front();
    p = RunVariantExperiment(model, v, EvalSim(ctx), steps, p).p_after;
    name = v.name;
  }
  const MetricTrace closed = EvaluateRollout(model, p, EvalSim(ctx), steps);
  ctx.Write(ArtifactPath(ctx.out, "rollout", name, "closed_loop"),
            TrajectoryTable(closed.samples).ToString());
  ctx.Write(ArtifactPath(ctx.out, "rollout", name, "metrics"),
            MetricTable(closed).ToString());
  const Sample& first = closed.samples.front();
  Trajectory open = AutoregressiveRollout(model, first.s, first.u, p, steps);
  open.insert(open.begin(), first);
  ctx.Write(ArtifactPath(ctx.out, "rollout", name, "model_only"),
            TrajectoryTable(open).ToString());
}

void Eval(const Context& ctx) {
  const RnnpbModel model = LoadModelFor(ctx);
  const std::vector<Demonstration> data = LoadDatasetFor(ctx);
  const int steps = ctx.config.experiment.eval_steps;
  CsvTable summary({"id", "r", "f_style", "beta", "mean_tension",
                    "final_theta_error", "teacher_forced_mse"});
  for (const Demonstration& d : data) {
    const MetricTrace trace = EvaluateRollout(
        model, model.Pb(d.id), WithRadius(ctx.config.sim, d.meta.r), steps);
    summary.AddRow(std::vector<double>{
        static_cast<double>(d.id), d.meta.r, d.meta.f_style, d.meta.beta,
        trace.MeanTensionNorm(), trace.FinalThetaError(),
        TeacherForcedMse(model, d.steps, model.Pb(d.id))});
  }
  ctx.Write(ArtifactPath(ctx.out, "eval", "pk", "summary"), summary.ToString());
  const MetricTrace base = EvaluateRollout(model, model.ZeroPb(), EvalSim(ctx), steps);
  ctx.Write(ArtifactPath(ctx.out, "eval", "p0", "trace"), MetricTable(base).ToString());
  *ctx.log << "dataset teacher-forced mse " << FormatNumber(DatasetMse(model, data))
           << "\n";
}

void Online(const Context& ctx) {
  const RnnpbModel model = LoadModelFor(ctx);
  for (const AdaptVariant& v : SelectVariants(ctx, ctx.config.online_variants)) {
    const OnlineReport rep = RunOnlineExperiment(
        model, v, EvalSim(ctx), ctx.config.experiment.online_steps,
        model.ZeroPb(), ctx.config.adapt.online_epochs_per_push);
    CsvTable p(Concat({"step"}, Numbered("p_", model.layout.p_dim)));
    for (std::size_t i = 0; i < rep.update_steps.size(); ++i) {
      std::vector<double> row{static_cast<double>(rep.update_steps[i])};
      const std::vector<double> values = PRow(rep.p_history[i]);
      row.insert(row.end(), values.begin(), values.end());
      p.AddRow(row);
    }
    ctx.Write(ArtifactPath(ctx.out, "online", v.name, "pb"), p.ToString());
    ctx.Write(ArtifactPath(ctx.out, "online", v.name, "trace"),
              MetricTable(rep.trace).ToString());
    *ctx.log << v.name << ": " << rep.update_steps.size() << " updates\n";
  }
}

void Pca(const Context& ctx) {
  const RnnpbModel model = LoadModelFor(ctx);
  const std::vector<Demonstration> data = LoadDatasetFor(ctx);
  const int dims = std::min(2, model.layout.p_dim);
  const PcaResult pca = PcaProject(PbMatrix(model, data), dims);
  CsvTable coords(Concat({"id", "r", "f_style", "beta"}, Numbered("pc", dims)));
  for (std::size_t k = 0; k < data.size(); ++k) {
    std::vector<double> row{static_cast<double>(data[k].id), data[k].meta.r,
                            data[k].meta.f_style, data[k].meta.beta};
    for (int j = 0; j < dims; ++j) row.push_back(pca.coordinates(k, j));
    coords.AddRow(row);
  }
  ctx.Write(ArtifactPath(ctx.out, "pca", "pb", "coordinates"), coords.ToString());
  CsvTable axes(Concat({"component", "explained_variance_ratio"},
                       Numbered("loading_", model.layout.p_dim)));
  for (int j = 0; j < dims; ++j) {
    std::vector<double> row{static_cast<double>(j + 1),
                            pca.explained_variance_ratio[j]};
    for (Eigen::Index i = 0; i < pca.components.rows(); ++i) {
      row.push_back(pca.components(i, j));
    }
    axes.AddRow(row);
  }
  ctx.Write(ArtifactPath(ctx.out, "pca", "pb", "components"), axes.ToString());
}

void Probe(const Context& ctx) {
  const RnnpbModel model = LoadModelFor(ctx);
  const std::vector<Demonstration> data = LoadDatasetFor(ctx);
  CsvTable table({"attribute", "r2", "degenerate"});
  for (const auto& [name, result] : ProbePb(model, data)) {
    table.AddRow({name, result.degenerate ? "" : FormatNumber(result.r2),
                  result.degenerate ? "true" : "false"});
    *ctx.log << name << ": "
             << (result.degenerate ? "degenerate" : "R2 " + FormatNumber(result.r2))
             << "\n";
  }
  ctx.Write(ArtifactPath(ctx.out, "probe", "pb", "r2"), table.ToString());
}

// Central differences on an evenly strided subset of at most `budget`
// components.
GradientCheckReport StridedCheck(const std::function<double(const VectorXd&)>& loss,
                                 const VectorXd& params, const VectorXd& analytic,
                                 double h, double tol, int budget) {
  GradientCheckReport report;
  const Eigen::Index stride =
      std::max<Eigen::Index>(1, (params.size() + budget - 1) / budget);
  VectorXd probe = params;
  for (Eigen::Index i = 0; i < params.size(); i += stride) {
    probe[i] = params[i] + h;
    const double up = loss(probe);
    probe[i] = params[i] - h;
    const double down = loss(probe);
    probe[i] = params[i];
    const double err = RelativeError(analytic[i], (up - down) / (2 * h));
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

bool GradCheck(const Context& ctx) {
  const StateLayout layout = StateLayout::TendonArm(ctx.config.p_dim);
  RnnpbModel model;
  model.layout = layout;
  model.net = Network<double>(
      StackLayers(UnitsForLayout(layout, ctx.config.train.hidden_units)),
      ctx.config.seed);
  model.norm = NormStats::Identity(layout.x_dim());
  const CounterRng rng(ctx.config.seed, 9001);
  std::uint64_t c = 0;
  constexpr int kSteps = 5;
  std::vector<VectorXd> inputs, targets;
  Trajectory traj;
  for (int t = 0; t < kSteps; ++t) {
    VectorXd x(layout.x_dim()), y(layout.x_dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.Uniform(c++, -1, 1);
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.Uniform(c++, -1, 1);
    inputs.push_back(x);
    targets.push_back(y);
    traj.push_back(Split(x, layout));
  }
  VectorXd p(layout.p_dim);
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = rng.Uniform(c++, -1, 1);

  const SequenceLossResult<double> tape =
      SequenceLossAndGradients<double>(model.net, inputs, targets, p);
  Network<double> scratch = model.net;
  const GradientCheckReport train = StridedCheck(
      [&](const VectorXd& w) {
        scratch.mutable_weights() = w;
        return SequenceLoss<double>(scratch, inputs, targets, p);
      },
      model.net.weights(), tape.grad_net, 1e-6, 1e-5, 20000);

  AdaptVariant variant;
  variant.name = "AB";
  variant.constraints = {ConstraintSpec::Tension(0.1),
                         ConstraintSpec::JointVelocity(-0.1),
                         ConstraintSpec::MuscleLengthVelocity(0.1),
                         ConstraintSpec::PbNorm(0.05)};
  const GradientCheckReport adapt =
      AdaptationGradientCheck(model, traj, variant, p, 1e-6, 1e-4);

  CsvTable table({"check", "max_rel_err", "tolerance", "num_checked",
                  "parameters", "passed"});
  table.AddRow({"training_loss_wrt_weights", FormatNumber(train.max_rel_err),
                "1e-05", std::to_string(train.num_checked),
                std::to_string(model.net.num_parameters()),
                train.passed ? "true" : "false"});
  table.AddRow({"adaptation_loss_wrt_p", FormatNumber(adapt.max_rel_err), "0.0001",
                std::to_string(adapt.num_checked), std::to_string(layout.p_dim),
                adapt.passed ? "true" : "false"});
  ctx.Write(ArtifactPath(ctx.out, "gradcheck",
                         std::string(PresetName(ctx.config.preset)), "report"),
            table.ToString());
  *ctx.log << "training max_rel_err " << FormatNumber(train.max_rel_err)
           << ", adaptation max_rel_err " << FormatNumber(adapt.max_rel_err) << "\n";
  return train.passed && adapt.passed;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Parametric-bias imitation learning on a simulated tendon arm",
               "stylebias"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config_path, "JSON run configuration");
  app.add_option("--out", opt.out_dir, "output directory (overrides output_dir)");
  app.add_option("--seed", opt.seed, "override the configured seed");
  app.add_option("--variant", opt.variant, "restrict to one adaptation variant");
  app.add_option("--preset", opt.preset, "desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}));

  using Action = std::function<int(const Context&)>;
  const std::vector<std::pair<std::string, std::string>> names = {
      {"gen-data", "record grid demonstrations"},
      {"train", "fit the model to the dataset"},
      {"adapt", "offline parametric-bias adaptation variants"},
      {"rollout", "closed-loop and model-only rollouts"},
      {"eval", "evaluate every trained parametric bias"},
      {"online", "online adaptation variants"},
      {"pca", "principal components of the parametric biases"},
      {"probe", "linear probes from parametric bias to grid attributes"},
      {"gradcheck", "finite-difference gradient oracle"}};
  const std::map<std::string, Action> actions = {
      {"gen-data", [](const Context& c) { GenData(c); return kExitOk; }},
      {"train", [](const Context& c) { Train(c); return kExitOk; }},
      {"adapt", [](const Context& c) { Adapt(c); return kExitOk; }},
      {"rollout", [](const Context& c) { Rollout(c); return kExitOk; }},
      {"eval", [](const Context& c) { Eval(c); return kExitOk; }},
      {"online", [](const Context& c) { Online(c); return kExitOk; }},
      {"pca", [](const Context& c) { Pca(c); return kExitOk; }},
      {"probe", [](const Context& c) { Probe(c); return kExitOk; }},
      {"gradcheck",
       [](const Context& c) { return GradCheck(c) ? kExitOk : kExitRuntime; }}};
  for (const auto& [name, help] : names) {
    app.add_subcommand(name, help)->fallthrough();
  }

  // Every global option takes a value, so the first bare word that is not
  // an option value names the subcommand.
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) == 0) {
      if (a.find('=') == std::string::npos && a != "--help") ++i;
      continue;
    }
    if (a.rfind("-", 0) == 0) continue;
    if (!actions.contains(a)) {
      err << "error: unknown subcommand '" << a << "'\n\n" << app.help();
      return kExitValidation;
    }
    break;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    RunConfig config = ResolveConfig(opt);
    if (!opt.out_dir.empty()) config.output_dir = opt.out_dir;
    const fs::path out_dir(config.output_dir);
    Context ctx{std::move(config), out_dir, opt.variant, &out};
    return actions.at(sub)(ctx);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SpecificationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const RangeError& e) {
    err << "out of range: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime fault: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace stylebias
