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

#include "stylebias/cli_io/persist.h"

#include <sstream>

#include "stylebias/errors.h"
#include "stylebias/expharness/report.h"

namespace stylebias {

using nlohmann::json;

namespace {

constexpr char kModelFormat[] = "stylebias-model";

json VectorToJson(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd VectorFromJson(const json& j) {
  const std::vector<double> v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

json ChannelsToJson(const std::vector<Channel>& channels) {
  json out = json::array();
  for (const Channel& c : channels) {
    out.push_back({{"name", c.name}, {"width", c.width}});
  }
  return out;
}

std::vector<Channel> ChannelsFromJson(const json& j) {
  std::vector<Channel> out;
  for (const json& c : j) {
    out.push_back({c.at("name").get<std::string>(), c.at("width").get<int>()});
  }
  return out;
}

void CheckVersion(const json& j, int expected, std::string_view what) {
  if (!j.contains("version")) {
    throw ParseError(std::string(what) + " has no version field");
  }
  const int version = j.at("version").get<int>();
  if (version != expected) {
    throw ParseError(std::string(what) + " version " + std::to_string(version) +
                     " is not supported (expected " + std::to_string(expected) +
                     ")");
  }
}

}  // namespace

json ModelToJson(const RnnpbModel& model) {
  json layers = json::array();
  for (const LayerSpec& l : model.net.layers()) {
    layers.push_back({{"kind", std::string(LayerKindName(l.kind))},
                      {"input_width", l.input_width},
                      {"output_width", l.output_width},
                      {"activation", std::string(ActivationName(l.activation))}});
  }
  json pb = json::array();
  for (const auto& [id, p] : model.pb_table) {
    pb.push_back({{"id", id}, {"p", VectorToJson(p)}});
  }
  return {{"format", kModelFormat},
          {"version", kModelFormatVersion},
          {"layout",
           {{"sensors", ChannelsToJson(model.layout.sensors)},
            {"commands", ChannelsToJson(model.layout.commands)},
            {"p_dim", model.layout.p_dim}}},
          {"layers", layers},
          {"seed", model.net.seed()},
          {"weights", VectorToJson(model.net.weights())},
          {"pb_table", pb},
          {"norm",
           {{"mean", VectorToJson(model.norm.mean)},
            {"std", VectorToJson(model.norm.std)}}}};
}

RnnpbModel ModelFromJson(const json& j) {
  try {
    if (!j.is_object() || j.value("format", "") != kModelFormat) {
      throw ParseError("not a model file");
    }
    CheckVersion(j, kModelFormatVersion, "model file");
    RnnpbModel model;
    const json& layout = j.at("layout");
    model.layout.sensors = ChannelsFromJson(layout.at("sensors"));
    model.layout.commands = ChannelsFromJson(layout.at("commands"));
    model.layout.p_dim = layout.at("p_dim").get<int>();
    std::vector<LayerSpec> layers;
    for (const json& l : j.at("layers")) {
      layers.push_back({ParseLayerKind(l.at("kind").get<std::string>()),
                        l.at("input_width").get<int>(),
                        l.at("output_width").get<int>(),
                        ParseActivation(l.at("activation").get<std::string>())});
    }
    model.net = Network<double>(std::move(layers),
                                VectorFromJson(j.at("weights")),
                                j.at("seed").get<std::uint64_t>());
    for (const json& entry : j.at("pb_table")) {
      const int id = entry.at("id").get<int>();
      if (!model.pb_table.emplace(id, VectorFromJson(entry.at("p"))).second) {
        throw ParseError("duplicate parametric bias id " + std::to_string(id));
      }
    }
    model.norm.mean = VectorFromJson(j.at("norm").at("mean"));
    model.norm.std = VectorFromJson(j.at("norm").at("std"));
    model.Validate();
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  } catch (const SpecificationError& e) {
    throw ParseError(std::string("inconsistent model file: ") + e.what());
  }
}

std::string SerializeModel(const RnnpbModel& model) {
  return ModelToJson(model).dump(1) + "\n";
}

RnnpbModel DeserializeModel(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  return ModelFromJson(j);
}

void SaveModel(const std::filesystem::path& path, const RnnpbModel& model) {
  WriteTextFile(path, SerializeModel(model));
}

RnnpbModel LoadModel(const std::filesystem::path& path) {
  try {
    return DeserializeModel(ReadTextFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string SerializeDataset(std::span<const Demonstration> dataset) {
  std::string out;
  for (const Demonstration& d : dataset) {
    json s = json::array(), u = json::array();
    for (const Sample& sample : d.steps) {
      s.push_back(VectorToJson(sample.s));
      u.push_back(VectorToJson(sample.u));
    }
    const json line = {
        {"version", kDatasetFormatVersion},
        {"id", d.id},
        {"meta",
         {{"r", d.meta.r}, {"f_style", d.meta.f_style}, {"beta", d.meta.beta}}},
        {"s", s},
        {"u", u}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<Demonstration> DeserializeDataset(std::string_view text) {
  std::vector<Demonstration> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "dataset line " + std::to_string(line_no);
    try {
      const json j = json::parse(line);
      CheckVersion(j, kDatasetFormatVersion, where);
      Demonstration d;
      d.id = j.at("id").get<int>();
      const json& meta = j.at("meta");
      d.meta = {meta.at("r").get<double>(), meta.at("f_style").get<double>(),
                meta.at("beta").get<double>()};
      const json& s = j.at("s");
      const json& u = j.at("u");
      if (s.size() != u.size()) throw ParseError(where + ": s and u lengths differ");
      for (std::size_t t = 0; t < s.size(); ++t) {
        d.steps.push_back({VectorFromJson(s[t]), VectorFromJson(u[t])});
      }
      out.push_back(std::move(d));
    } catch (const json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (out.empty()) throw ParseError("dataset is empty");
  return out;
}

void SaveDataset(const std::filesystem::path& path,
                 std::span<const Demonstration> dataset) {
  WriteTextFile(path, SerializeDataset(dataset));
}

std::vector<Demonstration> LoadDataset(const std::filesystem::path& path) {
  try {
    return DeserializeDataset(ReadTextFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace stylebias
