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

// Versioned JSON model files and JSON-Lines datasets.
//
// Doubles are written in the shortest decimal form that parses back to the
// same bits, so load(save(x)) reproduces every weight, p_k and sample
// exactly. Loaders either return a complete object or throw ParseError.

#ifndef STYLEBIAS_CLI_IO_PERSIST_H_
#define STYLEBIAS_CLI_IO_PERSIST_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stylebias/rnnpb/demonstration.h"
#include "stylebias/rnnpb/model.h"

namespace stylebias {

inline constexpr int kModelFormatVersion = 1;
inline constexpr int kDatasetFormatVersion = 1;

nlohmann::json ModelToJson(const RnnpbModel& model);
RnnpbModel ModelFromJson(const nlohmann::json& j);

std::string SerializeModel(const RnnpbModel& model);
RnnpbModel DeserializeModel(std::string_view text);

void SaveModel(const std::filesystem::path& path, const RnnpbModel& model);
RnnpbModel LoadModel(const std::filesystem::path& path);

// One demonstration per line.
std::string SerializeDataset(std::span<const Demonstration> dataset);
std::vector<Demonstration> DeserializeDataset(std::string_view text);

void SaveDataset(const std::filesystem::path& path,
                 std::span<const Demonstration> dataset);
std::vector<Demonstration> LoadDataset(const std::filesystem::path& path);

}  // namespace stylebias

#endif  // STYLEBIAS_CLI_IO_PERSIST_H_
