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

#ifndef STYLEBIAS_ERRORS_H_
#define STYLEBIAS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace stylebias {

// invalid shapes, widths, or argument combinations
class SpecificationError : public std::invalid_argument {
 public:
  explicit SpecificationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// argument outside a documented operating range
class RangeError : public std::out_of_range {
 public:
  explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

// non-finite simulator state
class SimulationFault : public std::runtime_error {
 public:
  explicit SimulationFault(const std::string& what)
      : std::runtime_error(what) {}
};

// malformed config, model, or dataset file
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// configuration failed validation (unknown key, type mismatch)
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what)
      : std::invalid_argument(what) {}
};

// file could not be read or written
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stylebias

#endif  // STYLEBIAS_ERRORS_H_
