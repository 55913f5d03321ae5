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

// Run configuration.
//
// A config file is a JSON object whose keys override the chosen preset;
// every key is optional and unknown keys are rejected by name. Layout:
//
//   {
//     "seed": 1,
//     "output_dir": "out",                   // --out takes precedence
//     "preset": "desk",                      // or "paper"
//     "grid":  {"r_values": [...], "f_style_values": [...],
//               "beta_values": [...], "steps_per_demo": 30, "repeats": 1},
//     "sim":   {"control_period": 0.2, "substep": 0.01, "gravity": 9.81,
//               "slew_rate": 0.1, "rest_path_length": 0.3, "inertia": 0.05,
//               "mass": 1.0, "com_distance": 0.3, "joint_damping": 0.1,
//               "elastic_scale": 20, "elastic_rate": 50, "viscous": 50,
//               "coulomb": 1},
//     "network": {"hidden_units": [{"width": 64, "lstm": false}, ...],
//                 "p_dim": 2},
//     "train": {"learning_rate": 1e-3, "max_epochs": 5000,
//               "early_stop_mse": 1e-4, "clip_norm": 5, "shards": 1},
//     "adapt": {"learning_rate": 0.01, "epochs": 30, "momentum": 0.9,
//               "rollout_steps": 60, "pb_clamp": 3, "alpha": 0.1,
//               "online_epochs_per_push": 3},
//     "experiment": {"eval_steps": 30, "eval_r": 0.03, "online_steps": 40},
//     "variants": [{"name": "B-min", "matching": false,
//                   "constraints": [{"kind": "tension", "weight": 0.1,
//                                    "channel": "tension"}]}],
//     "online_variants": [...]
//   }
//
// Without "variants" the five tension variants (A, B-min, B-max, AB-min,
// AB-max) are generated from adapt.alpha; without "online_variants" the
// two joint-velocity variants are. Variant entries may also set
// learning_rate, epochs, momentum, rollout_steps and pb_clamp; missing
// ones come from "adapt".

#ifndef STYLEBIAS_CLI_IO_CONFIG_H_
#define STYLEBIAS_CLI_IO_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stylebias/expharness/dataset.h"
#include "stylebias/rnnpb/adapt.h"
#include "stylebias/rnnpb/fit.h"

namespace stylebias {

enum class Preset { kDesk, kPaper };

std::string_view PresetName(Preset preset);
// Throws ConfigError naming the value.
Preset ParsePreset(std::string_view name);

struct AdaptDefaults {
  double learning_rate = 0.01;
  int epochs = 30;
  double momentum = 0.9;
  int rollout_steps = 60;
  double pb_clamp = 3.0;
  double alpha = 0.1;
  int online_epochs_per_push = 3;
};

struct ExperimentSettings {
  int eval_steps = 30;     // closed-loop length
  double eval_r = 0.03;    // joint radius the robot is switched to
  int online_steps = 40;
};

struct RunConfig {
  std::uint64_t seed = 1;
  Preset preset = Preset::kDesk;
  std::string output_dir = "out";
  GridConfig grid;
  SimConfig sim;
  int p_dim = 2;
  TrainConfig train;
  AdaptDefaults adapt;
  ExperimentSettings experiment;
  // offline (A/B/AB) and online adaptation variants
  std::vector<AdaptVariant> variants;
  std::vector<AdaptVariant> online_variants;

  // Throws ConfigError on inconsistent values.
  void Validate() const;
  // Throws ConfigError for unknown names.
  const AdaptVariant& Variant(std::string_view name) const;
};

// Full defaults for a preset, variants included.
RunConfig PresetConfig(Preset preset);

// Applies `overrides` on top of the preset named by its "preset" key (or
// `fallback`). Throws ConfigError naming the offending key path, e.g.
// "grid.r_vals".
RunConfig ConfigFromJson(const nlohmann::json& overrides,
                         Preset fallback = Preset::kDesk);

// Reads and parses a config file. Throws IoError for a missing file and
// ParseError for malformed JSON.
RunConfig LoadConfig(const std::filesystem::path& path,
                     Preset fallback = Preset::kDesk);

// Complete serialization; parsing the result reproduces `config`.
nlohmann::json ConfigToJson(const RunConfig& config);

}  // namespace stylebias

#endif  // STYLEBIAS_CLI_IO_CONFIG_H_
