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

#include "stylebias/rnnpb/state_layout.h"

#include <set>
#include <string>

#include "stylebias/errors.h"

namespace stylebias {
namespace {

int TotalWidth(const std::vector<Channel>& channels) {
  int total = 0;
  for (const Channel& c : channels) total += c.width;
  return total;
}

}  // namespace

int StateLayout::s_dim() const { return TotalWidth(sensors); }
int StateLayout::u_dim() const { return TotalWidth(commands); }

ChannelSlice StateLayout::Slice(std::string_view name) const {
  int offset = 0;
  for (const Channel& c : sensors) {
    if (c.name == name) return {offset, c.width, true};
    offset += c.width;
  }
  for (const Channel& c : commands) {
    if (c.name == name) return {offset, c.width, false};
    offset += c.width;
  }
  throw SpecificationError("layout has no channel named '" +
                           std::string(name) + "'");
}

bool StateLayout::Has(std::string_view name) const {
  for (const auto* group : {&sensors, &commands}) {
    for (const Channel& c : *group) {
      if (c.name == name) return true;
    }
  }
  return false;
}

void StateLayout::Validate() const {
  std::set<std::string> seen;
  for (const auto* group : {&sensors, &commands}) {
    for (const Channel& c : *group) {
      if (c.width < 1) {
        throw SpecificationError("channel '" + c.name + "' has width < 1");
      }
      if (!seen.insert(c.name).second) {
        throw SpecificationError("duplicate channel '" + c.name + "'");
      }
    }
  }
  if (sensors.empty()) throw SpecificationError("layout has no sensors");
  if (p_dim < 0) throw SpecificationError("p_dim must be >= 0");
}

StateLayout StateLayout::TendonArm(int p_dim) {
  StateLayout layout;
  layout.sensors = {{"theta", 1}, {"tension", 3}};
  layout.commands = {{"muscle_length_cmd", 3}};
  layout.p_dim = p_dim;
  return layout;
}

}  // namespace stylebias
