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

#ifndef STYLEBIAS_RNNPB_STATE_LAYOUT_H_
#define STYLEBIAS_RNNPB_STATE_LAYOUT_H_

#include <string>
#include <string_view>
#include <vector>

namespace stylebias {

struct Channel {
  std::string name;
  int width = 1;

  bool operator==(const Channel&) const = default;
};

// Where a named channel sits inside x = (s, u).
struct ChannelSlice {
  int offset = 0;
  int width = 0;
  bool is_sensor = false;
};

// Names the sensor (s) and command (u) channels of the model state
// x = (s, u) and the width of the parametric bias p. The network sees
// (x, p) and predicts the next x.
struct StateLayout {
  std::vector<Channel> sensors;
  std::vector<Channel> commands;
  int p_dim = 2;

  int s_dim() const;
  int u_dim() const;
  int x_dim() const { return s_dim() + u_dim(); }
  int input_width() const { return x_dim() + p_dim; }
  int output_width() const { return x_dim(); }

  // Throws SpecificationError for unknown names.
  ChannelSlice Slice(std::string_view name) const;
  bool Has(std::string_view name) const;

  // Throws SpecificationError on duplicate names or non-positive widths.
  void Validate() const;

  // s = (theta, tension[3]), u = muscle_length_cmd[3]
  static StateLayout TendonArm(int p_dim = 2);

  bool operator==(const StateLayout&) const = default;
};

}  // namespace stylebias

#endif  // STYLEBIAS_RNNPB_STATE_LAYOUT_H_
