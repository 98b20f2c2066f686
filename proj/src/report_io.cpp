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

#include "rddpp/report_io.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

#include "rddpp/error.hpp"

namespace rddpp::io {
namespace {

using Json = nlohmann::ordered_json;

Json Number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

double ReadNumber(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

Json ConfigJson(const SchedulerConfig& cfg) {
  Json j;
  j["strategy"] = ToString(cfg.strategy);
  j["phi0"] = Number(cfg.phi0);
  j["k"] = cfg.k;
  j["budget"] = cfg.budget;
  j["eps2"] = cfg.rate.eps2;
  j["quality_mode"] = ToString(cfg.quality_mode);
  j["uncertainty_mode"] = ToString(cfg.uncertainty_mode);
  j["bootstrap_cap"] = cfg.bootstrap_cap;
  j["seed"] = cfg.seed;
  return j;
}

SchedulerConfig ConfigFromJson(const Json& j) {
  SchedulerConfig cfg;
  cfg.strategy = ParseStrategy(j.at("strategy").get<std::string>());
  // phi0 may be +-infinity, written as null; keep the sign in phi0_sign.
  cfg.phi0 = j.at("phi0").is_null() ? std::numeric_limits<double>::infinity()
                                    : j.at("phi0").get<double>();
  if (j.contains("phi0_sign") && j.at("phi0_sign").get<int>() < 0) cfg.phi0 = -cfg.phi0;
  cfg.k = j.at("k").get<Index>();
  cfg.budget = j.at("budget").get<Index>();
  cfg.rate.eps2 = j.at("eps2").get<double>();
  cfg.quality_mode = ParseQualityMode(j.at("quality_mode").get<std::string>());
  cfg.uncertainty_mode = ParseUncertaintyMode(j.at("uncertainty_mode").get<std::string>());
  cfg.bootstrap_cap = j.at("bootstrap_cap").get<Index>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

Json ReportJson(const SelectionReport& r) {
  Json j;
  j["seed"] = r.seed;
  Json cfg = ConfigJson(r.config);
  if (std::isinf(r.config.phi0)) cfg["phi0_sign"] = r.config.phi0 > 0 ? 1 : -1;
  j["config"] = std::move(cfg);
  j["statistic"] = r.statistic;
  j["initial"] = r.initial;
  j["selected"] = r.selected;
  j["transition_round"] =
      r.transition_round ? Json(*r.transition_round) : Json(nullptr);
  Json rounds = Json::array();
  for (const RoundRecord& round : r.rounds) {
    Json rj;
    rj["round_index"] = round.round_index;
    rj["mode"] = ToString(round.mode);
    rj["chosen"] = round.chosen;
    rj["sdiv_before"] = Number(round.sdiv_before);
    rj["sdiv_after"] = Number(round.sdiv_after);
    rj["rank_exhausted"] = round.rank_exhausted;
    rj["fill"] = ToString(round.fill);
    rounds.push_back(std::move(rj));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

SelectionReport ReportFromJson(const Json& j) {
  SelectionReport r;
  r.seed = j.at("seed").get<std::uint64_t>();
  Json cfg = j.at("config");
  r.config = ConfigFromJson(cfg);
  r.statistic = j.at("statistic").get<std::string>();
  r.initial = j.at("initial").get<IndexList>();
  r.selected = j.at("selected").get<IndexList>();
  if (!j.at("transition_round").is_null()) {
    r.transition_round = j.at("transition_round").get<Index>();
  }
  for (const Json& rj : j.at("rounds")) {
    RoundRecord round;
    round.round_index = rj.at("round_index").get<Index>();
    round.mode = ParseMode(rj.at("mode").get<std::string>());
    round.chosen = rj.at("chosen").get<IndexList>();
    round.sdiv_before = ReadNumber(rj.at("sdiv_before"));
    round.sdiv_after = ReadNumber(rj.at("sdiv_after"));
    round.rank_exhausted = rj.at("rank_exhausted").get<bool>();
    round.fill = ParseRoundFill(rj.at("fill").get<std::string>());
    r.rounds.push_back(std::move(round));
  }
  return r;
}

Json MeanStdJson(const std::vector<double>& values) {
  const MeanStd s = Summarize(values);
  Json j;
  j["mean"] = Number(s.mean);
  j["std"] = Number(s.std);
  return j;
}

}  // namespace

const char* ToString(PoolType type) {
  return type == PoolType::kPackets ? "packets" : "samples";
}

std::string FormatSelectionFile(const SelectionFile& file) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "selection";
  j["pool"] = {{"type", ToString(file.pool_type)}, {"size", file.pool_size}};
  Json reps = Json::array();
  for (const SelectionReport& r : file.replicates) reps.push_back(ReportJson(r));
  j["replicates"] = std::move(reps);
  return j.dump(2) + "\n";
}

SelectionFile ParseSelectionFile(const std::string& text, const std::string& origin) {
  try {
    const Json j = Json::parse(text);
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      Fail(ErrorKind::kParse, origin + ": unsupported schema_version");
    }
    if (j.at("kind").get<std::string>() != "selection") {
      Fail(ErrorKind::kParse, origin + ": not a selection document");
    }
    SelectionFile file;
    const std::string type = j.at("pool").at("type").get<std::string>();
    if (type == "packets") {
      file.pool_type = PoolType::kPackets;
    } else if (type == "samples") {
      file.pool_type = PoolType::kSamples;
    } else {
      Fail(ErrorKind::kParse, origin + ": unknown pool type '" + type + "'");
    }
    file.pool_size = j.at("pool").at("size").get<Index>();
    for (const Json& r : j.at("replicates")) file.replicates.push_back(ReportFromJson(r));
    return file;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kParse, origin + ": " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw;
    Fail(ErrorKind::kParse, origin + ": " + e.what());
  }
}

MeanStd Summarize(const std::vector<double>& values) {
  MeanStd s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::string FormatMetricFile(const std::vector<MetricEntry>& entries) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "metrics";
  j["auroc_averaging"] = "macro-one-vs-rest";
  Json reps = Json::array();
  std::vector<double> acc, f1, auroc;
  for (const MetricEntry& e : entries) {
    const eval::MetricReport& m = e.metrics;
    Json rj;
    rj["source"] = e.source;
    rj["replicate"] = e.replicate;
    rj["seed"] = e.seed;
    rj["train_items"] = e.train_items;
    rj["train_samples"] = e.train_samples;
    rj["prior_only_model"] = e.prior_only;
    rj["accuracy"] = Number(m.accuracy);
    rj["macro_f1"] = Number(m.macro_f1);
    rj["auroc_macro_ovr"] = Number(m.auroc_macro_ovr);
    Json per_class = Json::array();
    for (const eval::ClassMetrics& c : m.per_class) {
      Json cj;
      cj["label"] = c.label;
      cj["support"] = c.support;
      cj["auroc"] = c.auroc ? Number(*c.auroc) : Json(nullptr);
      cj["f1"] = Number(c.f1);
      cj["f1_undefined"] = c.f1_undefined;
      per_class.push_back(std::move(cj));
    }
    rj["per_class"] = std::move(per_class);
    rj["auroc_excluded"] = m.auroc_excluded;
    rj["f1_undefined"] = m.f1_undefined;
    reps.push_back(std::move(rj));
    acc.push_back(m.accuracy);
    f1.push_back(m.macro_f1);
    auroc.push_back(m.auroc_macro_ovr);
  }
  j["replicates"] = std::move(reps);
  j["summary"] = {{"count", entries.size()},
                  {"accuracy", MeanStdJson(acc)},
                  {"macro_f1", MeanStdJson(f1)},
                  {"auroc_macro_ovr", MeanStdJson(auroc)}};
  return j.dump(2) + "\n";
}

}  // namespace rddpp::io
