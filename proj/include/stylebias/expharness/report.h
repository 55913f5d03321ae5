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

// CSV tables and SVG line charts for experiment artifacts.

#ifndef STYLEBIAS_EXPHARNESS_REPORT_H_
#define STYLEBIAS_EXPHARNESS_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stylebias {

// Shortest-safe decimal for a double: 17 significant digits.
std::string FormatNumber(double value);

// RFC 4180 field quoting.
std::string EscapeCsvField(std::string_view field);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  // Throws SpecificationError when the width differs from the header.
  void AddRow(std::vector<std::string> row);
  void AddRow(const std::vector<double>& row);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t num_rows() const { return rows_.size(); }

  // CRLF line endings, header first.
  std::string ToString() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Series {
  std::string label;
  std::vector<double> y;  // plotted against the 1-based index
};

// Minimal polyline chart with axes, ticks at the data range, and a legend.
std::string SvgLineChart(std::string_view title, std::string_view y_label,
                         const std::vector<Series>& series);

// Writes `content` to `path`, creating parent directories. Throws IoError.
void WriteTextFile(const std::filesystem::path& path, std::string_view content);

// Reads a whole file. Throws IoError.
std::string ReadTextFile(const std::filesystem::path& path);

// `<root>/<experiment>/<variant>/<name>.csv`
std::filesystem::path ArtifactPath(const std::filesystem::path& root,
                                   std::string_view experiment,
                                   std::string_view variant,
                                   std::string_view name,
                                   std::string_view extension = "csv");

}  // namespace stylebias

#endif  // STYLEBIAS_EXPHARNESS_REPORT_H_
