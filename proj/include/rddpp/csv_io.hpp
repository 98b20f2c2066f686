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

#pragma once

// Feature CSV contract: UTF-8, comma separated, one sample per row, optional
// single header row (detected by a non-numeric first row). Labels live in a
// separate single-column file of integers. Doubles are written with 17
// significant digits so that a save/load cycle is exact.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rddpp/feature_matrix.hpp"

namespace rddpp::io {

// Rows are samples. Throws kParse naming the 1-based line and column.
Matrix ReadCsvRows(const std::string& path);
std::vector<int> ReadLabels(const std::string& path);

// d x n feature matrix (file rows transposed to columns), labels optional.
FeatureMatrix LoadFeatures(const std::string& path,
                           const std::optional<std::string>& label_path = std::nullopt);

void WriteCsvRows(std::ostream& out, const Matrix& rows);
void SaveFeatures(const std::string& path, const FeatureMatrix& z);
void SaveLabels(const std::string& path, const std::vector<int>& labels);

// "%.17g"
std::string FormatDouble(double value);

// Opens for writing or throws kIo naming the path.
void WriteFile(const std::string& path, const std::string& contents);
std::string ReadFile(const std::string& path);

}  // namespace rddpp::io
