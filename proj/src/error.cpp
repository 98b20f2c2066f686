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

#include "rddpp/error.hpp"

namespace rddpp {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "invalid input";
    case ErrorKind::kInvalidArgument:
      return "invalid argument";
    case ErrorKind::kNumerical:
      return "numerical error";
    case ErrorKind::kEmptyClass:
      return "empty class";
    case ErrorKind::kInstanceTooLarge:
      return "instance too large";
    case ErrorKind::kConfiguration:
      return "configuration error";
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kDegenerateModel:
      return "degenerate model";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind) {}

void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace rddpp
