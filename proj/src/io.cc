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

#include "quantest/io.h"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace quantest {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> ParseNumber(std::string_view cell) {
  cell = Trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Calls fn(row_number, cells) for every nonblank line.
template <typename Fn>
void ForEachRow(std::string_view text, Fn&& fn) {
  std::size_t row = 0;
  std::size_t start = 0;
  if (text.starts_with("\xEF\xBB\xBF")) start = 3;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++row;
    const std::string_view line = Trim(text.substr(start, end - start));
    if (!line.empty()) fn(row, SplitCells(line));
    start = end + 1;
  }
}

[[noreturn]] void ThrowParse(std::string_view source, std::size_t row, std::size_t col,
                             const std::string& what) {
  std::ostringstream msg;
  msg << source << ": row " << row << ", column " << col << ": " << what;
  throw Error(ErrorCode::kParseError, msg.str());
}

}  // namespace

std::vector<double> ParseSingleColumnCsv(std::string_view text, std::string_view source) {
  std::vector<double> values;
  bool first = true;
  ForEachRow(text, [&](std::size_t row, const std::vector<std::string_view>& cells) {
    const bool header_candidate = first;
    first = false;
    if (cells.size() != 1) {
      if (header_candidate && !ParseNumber(cells[0])) return;
      ThrowParse(source, row, 2, "expected a single column, found " +
                                     std::to_string(cells.size()));
    }
    const auto v = ParseNumber(cells[0]);
    if (!v) {
      if (header_candidate) return;
      ThrowParse(source, row, 1, "not a number: '" + std::string(Trim(cells[0])) + "'");
    }
    values.push_back(*v);
  });
  return values;
}

std::vector<GroupedValues> ParseGroupedCsv(std::string_view text, std::string_view source) {
  std::vector<GroupedValues> groups;
  bool first = true;
  ForEachRow(text, [&](std::size_t row, const std::vector<std::string_view>& cells) {
    const bool header_candidate = first;
    first = false;
    if (cells.size() != 2) {
      if (header_candidate && (cells.size() < 2 || !ParseNumber(cells[1]))) return;
      ThrowParse(source, row, cells.size() < 2 ? 2 : 3,
                 "expected two columns (group, value), found " +
                     std::to_string(cells.size()));
    }
    const auto v = ParseNumber(cells[1]);
    if (!v) {
      if (header_candidate) return;
      ThrowParse(source, row, 2, "not a number: '" + std::string(Trim(cells[1])) + "'");
    }
    const std::string label(Trim(cells[0]));
    if (label.empty()) ThrowParse(source, row, 1, "empty group label");
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const GroupedValues& g) { return g.label == label; });
    if (it == groups.end()) {
      groups.push_back({label, {}});
      it = groups.end() - 1;
    }
    it->values.push_back(*v);
  });
  return groups;
}

std::string ReadFile(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, "cannot open '" + path + "'");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "error reading '" + path + "'");
  return buf.str();
}

std::vector<Sample> LoadSampleFiles(std::span<const std::string> paths) {
  std::vector<Sample> samples;
  samples.reserve(paths.size());
  for (const std::string& path : paths) {
    std::vector<double> values = ParseSingleColumnCsv(ReadFile(path), path);
    samples.emplace_back(std::filesystem::path(path).stem().string(), std::move(values));
  }
  return ValidateSamples(std::move(samples));
}

std::vector<Sample> LoadGroupedFile(const std::string& path) {
  std::vector<Sample> samples;
  for (GroupedValues& g : ParseGroupedCsv(ReadFile(path), path)) {
    samples.emplace_back(std::move(g.label), std::move(g.values));
  }
  return ValidateSamples(std::move(samples));
}

void WriteFileAtomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + tmp + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::kIoError, "error writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot move output into '" + path + "'");
  }
}

}  // namespace quantest
