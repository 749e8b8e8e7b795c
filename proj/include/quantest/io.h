// Copyright 2026 The quantest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CSV ingestion and atomic file output.
//
// Input is UTF-8, comma separated, with '.' as the decimal point. A first
// row whose value cell is not numeric is treated as a header. Blank lines are
// ignored. Two layouts are accepted:
//
//   one file per group   a single numeric column; the group label is the
//                        file stem and groups follow argument order
//   grouped file         two columns (group, value); groups are ordered by
//                        first appearance
//
// Group order defines the rows of the contrast matrix.

#ifndef QUANTEST_IO_H_
#define QUANTEST_IO_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quantest/core.h"

namespace quantest {

// Parse errors name the source, 1-based row and column.
std::vector<double> ParseSingleColumnCsv(std::string_view text, std::string_view source);

struct GroupedValues {
  std::string label;
  std::vector<double> values;
};
std::vector<GroupedValues> ParseGroupedCsv(std::string_view text, std::string_view source);

// Throws FileNotFound or IoError.
std::string ReadFile(const std::string& path);

// Loads one group per file; throws TooFewGroups for fewer than two files.
std::vector<Sample> LoadSampleFiles(std::span<const std::string> paths);
std::vector<Sample> LoadGroupedFile(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`, so a failed
// run never leaves partial output behind.
void WriteFileAtomic(const std::string& path, std::string_view content);

}  // namespace quantest

#endif  // QUANTEST_IO_H_
