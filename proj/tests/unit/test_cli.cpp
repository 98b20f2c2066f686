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

#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "rddpp/csv_io.hpp"
#include "rddpp/data.hpp"
#include "support/process.hpp"

namespace rddpp {
namespace {

using testing::CommandResult;
using testing::RunCommand;
using testing::ScratchDir;

const std::string kCli = RDDPP_CLI_PATH;

CommandResult Cli(const std::string& args) { return RunCommand(kCli + " " + args); }

bool Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST_CASE("help and usage errors") {
  CHECK(Cli("--help").exit_code == 0);
  for (const char* sub : {"gen", "packets", "phase-scan", "select", "eval"}) {
    const CommandResult r = Cli(std::string(sub) + " --help");
    CHECK(r.exit_code == 0);
    CHECK(Contains(r.output, "--"));
  }
  CHECK(Cli("").exit_code != 0);
  CHECK(Cli("frobnicate").exit_code != 0);
  CHECK(Cli("select --budget 3").exit_code != 0);  // missing --features
}

TEST_CASE("end-to-end pipeline") {
  ScratchDir dir("rddpp_cli");
  auto f = [&](const std::string& name) { return dir.File(name); };
  REQUIRE(Cli("gen --dist mixture --n 150 --d 8 --classes 3 --seed 2 --test-n 90 --out " +
              f("x.csv") + " --labels-out " + f("y.csv") + " --test-out " + f("tx.csv") +
              " --test-labels-out " + f("ty.csv"))
              .exit_code == 0);
  const FeatureMatrix train = io::LoadFeatures(f("x.csv"), f("y.csv"));
  CHECK(train.size() == 150);
  CHECK(train.dim() == 8);
  CHECK(io::LoadFeatures(f("tx.csv"), f("ty.csv")).size() == 90);

  const CommandResult packets =
      Cli("packets --features " + f("x.csv") + " --labels " + f("y.csv") +
          " --n-clusters 12 --per-packet 3 --seed 1 --out " + f("p.txt"));
  REQUIRE(packets.exit_code == 0);
  const data::PacketSet set = data::ParsePackets(io::ReadFile(f("p.txt")));
  CHECK(set.per_packet == 3);
  CHECK(!set.packets.empty());

  for (const char* strategy : {"rd-dpp", "rd-dpp-diversity-only", "marginal-rate-gain", "entropy",
                               "min-margin", "k-center", "dpp-coreset", "random"}) {
    CAPTURE(strategy);
    const std::string sel = f(std::string(strategy) + ".json");
    const CommandResult s = Cli("select --features " + f("x.csv") + " --labels " + f("y.csv") +
                                " --packets " + f("p.txt") + " --strategy " + strategy +
                                " --budget 6 --k 2 --replicates 3 --seed 5 --out " + sel);
    REQUIRE_MESSAGE(s.exit_code == 0, s.output);
    const auto doc = nlohmann::json::parse(io::ReadFile(sel));
    CHECK(doc["kind"] == "selection");
    CHECK(doc["pool"]["type"] == "packets");
    REQUIRE(doc["replicates"].size() == 3);
    for (const auto& rep : doc["replicates"]) CHECK(rep["selected"].size() == 6);
    CHECK(doc["replicates"][1]["seed"] == 6);

    const std::string metrics = f(std::string(strategy) + "_m.json");
    const CommandResult e =
        Cli("eval --train-features " + f("x.csv") + " --train-labels " + f("y.csv") +
            " --test-features " + f("tx.csv") + " --test-labels " + f("ty.csv") +
            " --selection " + sel + " --packets " + f("p.txt") + " --out " + metrics);
    REQUIRE_MESSAGE(e.exit_code == 0, e.output);
    const auto m = nlohmann::json::parse(io::ReadFile(metrics));
    CHECK(m["summary"]["count"] == 3);
    const double auroc = m["summary"]["auroc_macro_ovr"]["mean"].get<double>();
    CHECK(auroc >= 0.0);
    CHECK(auroc <= 1.0);
  }

  SUBCASE("selection over samples and full-set evaluation") {
    const CommandResult s = Cli("select --features " + f("x.csv") + " --labels " + f("y.csv") +
                                " --init-indices 0,1,2 --budget 10 --k 3 --out " + f("s.json"));
    REQUIRE_MESSAGE(s.exit_code == 0, s.output);
    const auto doc = nlohmann::json::parse(io::ReadFile(f("s.json")));
    CHECK(doc["pool"]["type"] == "samples");
    CHECK(doc["replicates"][0]["initial"] == nlohmann::json::array({0, 1, 2}));
    const CommandResult full =
        Cli("eval --train-features " + f("x.csv") + " --train-labels " + f("y.csv") +
            " --test-features " + f("tx.csv") + " --test-labels " + f("ty.csv") + " --out " +
            f("full.json"));
    REQUIRE(full.exit_code == 0);
    const auto m = nlohmann::json::parse(io::ReadFile(f("full.json")));
    CHECK(m["replicates"][0]["source"] == "full-training-set");
    CHECK(m["replicates"][0]["train_samples"] == 150);
  }

  SUBCASE("phase scan") {
    REQUIRE(Cli("gen --dist uniform --n 25 --d 6 --seed 1 --out " + f("u.csv")).exit_code == 0);
    const CommandResult r = Cli("phase-scan --features " + f("u.csv") +
                                " --shuffles 4 --exact-stride 5 --out " + f("ph.csv") +
                                " --summary " + f("sum.txt"));
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    CHECK(Contains(r.output, "alpha="));
    const Matrix rows = io::ReadCsvRows(f("ph.csv"));
    CHECK(rows.rows() == 25);
    CHECK(rows.cols() == 5);
    CHECK(std::isnan(rows(1, 2)));
    CHECK(rows(24, 1) == rows(24, 3));
    CHECK(Contains(io::ReadFile(f("sum.txt")), "n=25,d=6"));
  }

  SUBCASE("error reporting") {
    CommandResult r = Cli("select --features " + f("x.csv") + " --budget 3 --out " + f("z.json"));
    CHECK(r.exit_code != 0);
    CHECK(Contains(r.output, "--labels"));
    r = Cli("select --features " + f("x.csv") + " --labels " + f("y.csv") +
            " --strategy magic --budget 3 --out " + f("z.json"));
    CHECK(r.exit_code == 1);
    CHECK(Contains(r.output, "unknown strategy 'magic'"));
    io::WriteFile(f("bad.csv"), "1,2\n3\n");
    r = Cli("select --features " + f("bad.csv") + " --labels " + f("y.csv") +
            " --budget 3 --out " + f("z.json"));
    CHECK(r.exit_code == 1);
    CHECK(Contains(r.output, "parse error"));
    CHECK(Contains(r.output, "line 2"));
    r = Cli("select --features " + f("x.csv") + " --labels " + f("y.csv") +
            " --init 5 --budget 3 --out " + f("z.json"));
    CHECK(r.exit_code == 1);
    io::WriteFile(f("junk.json"), "{}");
    r = Cli("eval --train-features " + f("x.csv") + " --train-labels " + f("y.csv") +
            " --test-features " + f("tx.csv") + " --test-labels " + f("ty.csv") +
            " --selection " + f("junk.json") + " --out " + f("m.json"));
    CHECK(r.exit_code == 1);
    CHECK(Contains(r.output, "parse error"));
  }
}

}  // namespace
}  // namespace rddpp
