// Copyright 2026 The Authors.
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

#include "rddpp/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rddpp/error.hpp"

namespace rddpp::io {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      return cells;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> ParseDouble(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  // Strip a UTF-8 byte-order mark.
  if (!lines.empty() && lines.front().rfind("\xEF\xBB\xBF", 0) == 0) {
    lines.front().erase(0, 3);
  }
  return lines;
}

bool AllNumeric(const std::vector<std::string_view>& cells) {
  for (auto cell : cells) {
    if (!ParseDouble(cell)) return false;
  }
  return true;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Matrix ReadCsvRows(const std::string& path) {
  const std::vector<std::string> lines = ReadLines(path);
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (Trim(lines[ln]).empty()) continue;
    const auto cells = SplitCells(lines[ln]);
    if (rows.empty() && width == 0 && !AllNumeric(cells)) {
      width = cells.size();  // header row
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      Fail(ErrorKind::kParse, path + ": line " + std::to_string(ln + 1) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(width) + " (ragged row)");
    }
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto value = ParseDouble(cells[c]);
      if (!value) {
        Fail(ErrorKind::kParse, path + ": line " + std::to_string(ln + 1) + ", column " +
                                    std::to_string(c + 1) + ": non-numeric cell '" +
                                    std::string(cells[c]) + "'");
      }
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) Fail(ErrorKind::kParse, path + ": no data rows");
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return out;
}

std::vector<int> ReadLabels(const std::string& path) {
  const std::vector<std::string> lines = ReadLines(path);
  std::vector<int> labels;
  bool first = true;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view cell = Trim(lines[ln]);
    if (cell.empty()) continue;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    const bool ok = ec == std::errc() && ptr == cell.data() + cell.size();
    if (!ok) {
      if (first && !ParseDouble(cell)) {  // header
        first = false;
        continue;
      }
      Fail(ErrorKind::kParse, path + ": line " + std::to_string(ln + 1) +
                                  ": label '" + std::string(cell) + "' is not an integer");
    }
    if (value < 0) {
      Fail(ErrorKind::kParse, path + ": line " + std::to_string(ln + 1) + ": negative label");
    }
    first = false;
    labels.push_back(value);
  }
  return labels;
}

FeatureMatrix LoadFeatures(const std::string& path,
                           const std::optional<std::string>& label_path) {
  Matrix data = ReadCsvRows(path).transpose();
  if (!label_path) return FeatureMatrix(std::move(data));
  std::vector<int> labels = ReadLabels(*label_path);
  if (labels.size() != static_cast<std::size_t>(data.cols())) {
    Fail(ErrorKind::kParse, *label_path + ": " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(data.cols()) +
                                " samples in " + path);
  }
  return FeatureMatrix(std::move(data), std::move(labels));
}

void WriteCsvRows(std::ostream& out, const Matrix& rows) {
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      if (c > 0) out << ',';
      out << FormatDouble(rows(r, c));
    }
    out << '\n';
  }
}

void SaveFeatures(const std::string& path, const FeatureMatrix& z) {
  std::ostringstream out;
  WriteCsvRows(out, z.data().transpose());
  WriteFile(path, out.str());
}

void SaveLabels(const std::string& path, const std::vector<int>& labels) {
  std::ostringstream out;
  for (int l : labels) out << l << '\n';
  WriteFile(path, out.str());
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot write '" + path + "'");
  out << contents;
  if (!out) Fail(ErrorKind::kIo, "write to '" + path + "' failed");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace rddpp::io
