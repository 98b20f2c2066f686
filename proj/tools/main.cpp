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

#include <iostream>

#include "commands.hpp"
#include "rddpp/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"RD-DPP sample selection: generation, packets, phase scans, selection, evaluation"};
  app.require_subcommand(1);
  rddpp::cli::AddGen(app);
  rddpp::cli::AddPackets(app);
  rddpp::cli::AddPhaseScan(app);
  rddpp::cli::AddSelect(app);
  rddpp::cli::AddEval(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const rddpp::Error& e) {
    // what() already starts with the error kind.
    std::cerr << "rddpp: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "rddpp: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
