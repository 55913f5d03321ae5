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

#include "stylebias/cli_io/config.h"

#include <set>
#include <utility>

#include "stylebias/errors.h"
#include "stylebias/expharness/experiments.h"
#include "stylebias/expharness/report.h"

namespace stylebias {

using nlohmann::json;

std::string_view PresetName(Preset preset) {
  return preset == Preset::kPaper ? "paper" : "desk";
}

Preset ParsePreset(std::string_view name) {
  if (name == "desk") return Preset::kDesk;
  if (name == "paper") return Preset::kPaper;
  throw ConfigError("unknown preset '" + std::string(name) +
                    "' (expected desk or paper)");
}

namespace {

// Typed access to one JSON object; remembers which keys were read so the
// rest can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path)
      : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigError(Where("") + " must be an object");
  }

  bool Has(const std::string& key) {
    known_.insert(key);
    return object_.contains(key);
  }

  template <typename T>
  void Read(const std::string& key, T* out) {
    if (!Has(key)) return;
    *out = Convert<T>(object_.at(key), Where(key));
  }

  const json& At(const std::string& key) {
    known_.insert(key);
    return object_.at(key);
  }

  std::string Where(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "config" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  // Throws ConfigError naming the first unread key.
  void Finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!known_.count(key)) throw ConfigError("unknown key '" + Where(key) + "'");
    }
  }

  template <typename T>
  static T Convert(const json& v, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(where + " must be a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
        if (v.get<std::int64_t>() < 0) {
          throw ConfigError(where + " must be non-negative");
        }
      }
      return v.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(where + " must be a number");
      return v.get<T>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(where + " must be a string");
      return v.get<std::string>();
    } else {
      if (!v.is_array()) throw ConfigError(where + " must be an array");
      T out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(Convert<typename T::value_type>(
            v[i], where + "[" + std::to_string(i) + "]"));
      }
      return out;
    }
  }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string> known_;
};

AdaptVariant ParseVariant(const json& v, const std::string& where,
                          const AdaptDefaults& defaults) {
  ObjectReader r(v, where);
  AdaptVariant out;
  out.learning_rate = defaults.learning_rate;
  out.epochs = defaults.epochs;
  out.momentum = defaults.momentum;
  out.rollout_steps = defaults.rollout_steps;
  out.pb_clamp = defaults.pb_clamp;
  if (!r.Has("name")) throw ConfigError(r.Where("name") + " is required");
  r.Read("name", &out.name);
  r.Read("matching", &out.use_matching_term);
  r.Read("learning_rate", &out.learning_rate);
  r.Read("epochs", &out.epochs);
  r.Read("momentum", &out.momentum);
  r.Read("rollout_steps", &out.rollout_steps);
  r.Read("pb_clamp", &out.pb_clamp);
  if (r.Has("constraints")) {
    const json& list = r.At("constraints");
    if (!list.is_array()) throw ConfigError(r.Where("constraints") + " must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      ObjectReader c(list[i], r.Where("constraints") + "[" + std::to_string(i) + "]");
      std::string kind_name;
      if (!c.Has("kind")) throw ConfigError(c.Where("kind") + " is required");
      c.Read("kind", &kind_name);
      ConstraintSpec spec;
      try {
        const ConstraintKind kind = ParseConstraintKind(kind_name);
        switch (kind) {
          case ConstraintKind::kTension: spec = ConstraintSpec::Tension(0); break;
          case ConstraintKind::kMuscleLengthVelocity:
            spec = ConstraintSpec::MuscleLengthVelocity(0);
            break;
          case ConstraintKind::kJointVelocity:
            spec = ConstraintSpec::JointVelocity(0);
            break;
          case ConstraintKind::kPbNorm: spec = ConstraintSpec::PbNorm(0); break;
        }
      } catch (const SpecificationError& e) {
        throw ConfigError(c.Where("kind") + ": " + e.what());
      }
      c.Read("weight", &spec.weight);
      c.Read("channel", &spec.channel);
      c.Finish();
      out.constraints.push_back(std::move(spec));
    }
  }
  r.Finish();
  return out;
}

json VariantToJson(const AdaptVariant& v) {
  json constraints = json::array();
  for (const ConstraintSpec& c : v.constraints) {
    constraints.push_back({{"kind", std::string(ConstraintKindName(c.kind))},
                           {"weight", c.weight},
                           {"channel", c.channel}});
  }
  return {{"name", v.name},
          {"matching", v.use_matching_term},
          {"constraints", constraints},
          {"learning_rate", v.learning_rate},
          {"epochs", v.epochs},
          {"momentum", v.momentum},
          {"rollout_steps", v.rollout_steps},
          {"pb_clamp", v.pb_clamp}};
}

void ApplyAdaptDefaults(const AdaptDefaults& a, std::vector<AdaptVariant>* vs) {
  for (AdaptVariant& v : *vs) {
    v.learning_rate = a.learning_rate;
    v.epochs = a.epochs;
    v.momentum = a.momentum;
    v.rollout_steps = a.rollout_steps;
    v.pb_clamp = a.pb_clamp;
  }
}

}  // namespace

void RunConfig::Validate() const {
  try {
    grid.Validate();
    train.Validate();
    for (const AdaptVariant& v : variants) v.Validate();
    for (const AdaptVariant& v : online_variants) v.Validate();
  } catch (const SpecificationError& e) {
    throw ConfigError(e.what());
  }
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (p_dim < 1) throw ConfigError("network.p_dim must be >= 1");
  if (!(sim.control_period > 0) || !(sim.settings.substep > 0)) {
    throw ConfigError("sim.control_period and sim.substep must be > 0");
  }
  if (!(experiment.eval_r > 0)) throw ConfigError("experiment.eval_r must be > 0");
  if (experiment.eval_steps < 2 || experiment.online_steps < 2) {
    throw ConfigError("experiment step counts must be >= 2");
  }
  if (adapt.online_epochs_per_push < 1) {
    throw ConfigError("adapt.online_epochs_per_push must be >= 1");
  }
  std::set<std::string> names;
  for (const auto* list : {&variants, &online_variants}) {
    for (const AdaptVariant& v : *list) {
      if (v.name.empty()) throw ConfigError("variant names must be non-empty");
      if (!names.insert(v.name).second) {
        throw ConfigError("duplicate variant name '" + v.name + "'");
      }
    }
  }
}

const AdaptVariant& RunConfig::Variant(std::string_view name) const {
  for (const auto* list : {&variants, &online_variants}) {
    for (const AdaptVariant& v : *list) {
      if (v.name == name) return v;
    }
  }
  throw ConfigError("unknown variant '" + std::string(name) + "'");
}

RunConfig PresetConfig(Preset preset) {
  RunConfig c;
  c.preset = preset;
  if (preset == Preset::kPaper) {
    c.grid.f_style_values = {10, 50, 100, 150, 200};
    c.grid.steps_per_demo = 60;
    c.train.hidden_units = PaperHiddenUnits();
    c.experiment.eval_steps = 60;
    c.experiment.online_steps = 60;
  }
  c.variants = StandardVariants(c.adapt.alpha);
  c.online_variants = OnlineVariants(c.adapt.alpha);
  ApplyAdaptDefaults(c.adapt, &c.variants);
  ApplyAdaptDefaults(c.adapt, &c.online_variants);
  return c;
}

RunConfig ConfigFromJson(const json& overrides, Preset fallback) {
  ObjectReader root(overrides, "");
  Preset preset = fallback;
  if (root.Has("preset")) {
    std::string name;
    root.Read("preset", &name);
    preset = ParsePreset(name);
  }
  RunConfig c = PresetConfig(preset);
  root.Read("seed", &c.seed);
  root.Read("output_dir", &c.output_dir);

  if (root.Has("grid")) {
    ObjectReader g(root.At("grid"), "grid");
    g.Read("r_values", &c.grid.r_values);
    g.Read("f_style_values", &c.grid.f_style_values);
    g.Read("beta_values", &c.grid.beta_values);
    g.Read("steps_per_demo", &c.grid.steps_per_demo);
    g.Read("repeats", &c.grid.repeats);
    g.Finish();
  }
  if (root.Has("sim")) {
    ObjectReader s(root.At("sim"), "sim");
    ArmGeometry& geom = c.sim.geometry;
    MuscleParams& mp = c.sim.muscle;
    s.Read("control_period", &c.sim.control_period);
    s.Read("substep", &c.sim.settings.substep);
    s.Read("gravity", &c.sim.settings.gravity);
    s.Read("slew_rate", &c.sim.settings.slew_rate);
    double l0 = geom.rest_path_lengths[0];
    s.Read("rest_path_length", &l0);
    geom.rest_path_lengths.setConstant(l0);
    s.Read("inertia", &geom.inertia);
    s.Read("mass", &geom.mass);
    s.Read("com_distance", &geom.com_distance);
    s.Read("joint_damping", &geom.joint_damping);
    s.Read("elastic_scale", &mp.elastic_scale);
    s.Read("elastic_rate", &mp.elastic_rate);
    s.Read("viscous", &mp.viscous);
    s.Read("coulomb", &mp.coulomb);
    s.Finish();
  }
  if (root.Has("network")) {
    ObjectReader n(root.At("network"), "network");
    n.Read("p_dim", &c.p_dim);
    if (n.Has("hidden_units")) {
      const json& list = n.At("hidden_units");
      if (!list.is_array()) throw ConfigError("network.hidden_units must be an array");
      c.train.hidden_units.clear();
      for (std::size_t i = 0; i < list.size(); ++i) {
        ObjectReader u(list[i], "network.hidden_units[" + std::to_string(i) + "]");
        UnitSpec unit;
        u.Read("width", &unit.width);
        u.Read("lstm", &unit.lstm);
        u.Finish();
        if (unit.width < 1) throw ConfigError(u.Where("width") + " must be >= 1");
        c.train.hidden_units.push_back(unit);
      }
    }
    n.Finish();
  }
  if (root.Has("train")) {
    ObjectReader t(root.At("train"), "train");
    t.Read("learning_rate", &c.train.learning_rate);
    t.Read("max_epochs", &c.train.max_epochs);
    t.Read("early_stop_mse", &c.train.early_stop_mse);
    t.Read("clip_norm", &c.train.clip_norm);
    t.Read("shards", &c.train.shards);
    t.Finish();
  }
  if (root.Has("adapt")) {
    ObjectReader a(root.At("adapt"), "adapt");
    a.Read("learning_rate", &c.adapt.learning_rate);
    a.Read("epochs", &c.adapt.epochs);
    a.Read("momentum", &c.adapt.momentum);
    a.Read("rollout_steps", &c.adapt.rollout_steps);
    a.Read("pb_clamp", &c.adapt.pb_clamp);
    a.Read("alpha", &c.adapt.alpha);
    a.Read("online_epochs_per_push", &c.adapt.online_epochs_per_push);
    a.Finish();
    c.variants = StandardVariants(c.adapt.alpha);
    c.online_variants = OnlineVariants(c.adapt.alpha);
    ApplyAdaptDefaults(c.adapt, &c.variants);
    ApplyAdaptDefaults(c.adapt, &c.online_variants);
  }
  if (root.Has("experiment")) {
    ObjectReader e(root.At("experiment"), "experiment");
    e.Read("eval_steps", &c.experiment.eval_steps);
    e.Read("eval_r", &c.experiment.eval_r);
    e.Read("online_steps", &c.experiment.online_steps);
    e.Finish();
  }
  for (const auto& [key, target] :
       {std::pair{"variants", &c.variants},
        std::pair{"online_variants", &c.online_variants}}) {
    if (!root.Has(key)) continue;
    const json& list = root.At(key);
    if (!list.is_array()) throw ConfigError(std::string(key) + " must be an array");
    target->clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      target->push_back(ParseVariant(
          list[i], std::string(key) + "[" + std::to_string(i) + "]", c.adapt));
    }
  }
  root.Finish();
  c.train.seed = c.seed;
  c.Validate();
  return c;
}

RunConfig LoadConfig(const std::filesystem::path& path, Preset fallback) {
  const std::string text = ReadTextFile(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return ConfigFromJson(j, fallback);
}

json ConfigToJson(const RunConfig& c) {
  json units = json::array();
  for (const UnitSpec& u : c.train.hidden_units) {
    units.push_back({{"width", u.width}, {"lstm", u.lstm}});
  }
  json variants = json::array(), online = json::array();
  for (const AdaptVariant& v : c.variants) variants.push_back(VariantToJson(v));
  for (const AdaptVariant& v : c.online_variants) online.push_back(VariantToJson(v));
  const ArmGeometry& geom = c.sim.geometry;
  const MuscleParams& mp = c.sim.muscle;
  return {
      {"seed", c.seed},
      {"output_dir", c.output_dir},
      {"preset", std::string(PresetName(c.preset))},
      {"grid",
       {{"r_values", c.grid.r_values},
        {"f_style_values", c.grid.f_style_values},
        {"beta_values", c.grid.beta_values},
        {"steps_per_demo", c.grid.steps_per_demo},
        {"repeats", c.grid.repeats}}},
      {"sim",
       {{"control_period", c.sim.control_period},
        {"substep", c.sim.settings.substep},
        {"gravity", c.sim.settings.gravity},
        {"slew_rate", c.sim.settings.slew_rate},
        {"rest_path_length", geom.rest_path_lengths[0]},
        {"inertia", geom.inertia},
        {"mass", geom.mass},
        {"com_distance", geom.com_distance},
        {"joint_damping", geom.joint_damping},
        {"elastic_scale", mp.elastic_scale},
        {"elastic_rate", mp.elastic_rate},
        {"viscous", mp.viscous},
        {"coulomb", mp.coulomb}}},
      {"network", {{"hidden_units", units}, {"p_dim", c.p_dim}}},
      {"train",
       {{"learning_rate", c.train.learning_rate},
        {"max_epochs", c.train.max_epochs},
        {"early_stop_mse", c.train.early_stop_mse},
        {"clip_norm", c.train.clip_norm},
        {"shards", c.train.shards}}},
      {"adapt",
       {{"learning_rate", c.adapt.learning_rate},
        {"epochs", c.adapt.epochs},
        {"momentum", c.adapt.momentum},
        {"rollout_steps", c.adapt.rollout_steps},
        {"pb_clamp", c.adapt.pb_clamp},
        {"alpha", c.adapt.alpha},
        {"online_epochs_per_push", c.adapt.online_epochs_per_push}}},
      {"experiment",
       {{"eval_steps", c.experiment.eval_steps},
        {"eval_r", c.experiment.eval_r},
        {"online_steps", c.experiment.online_steps}}},
      {"variants", variants},
      {"online_variants", online},
  };
}

}  // namespace stylebias
