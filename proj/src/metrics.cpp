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

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "rddpp/error.hpp"
#include "rddpp/eval.hpp"

namespace rddpp::eval {

std::optional<double> BinaryAuroc(std::span<const double> scores,
                                  std::span<const char> positive) {
  if (scores.size() != positive.size()) {
    Fail(ErrorKind::kInvalidArgument, "scores and positive flags differ in length");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of midranks (1-based) of the positive items.
  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    const double midrank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t i = start; i < end; ++i) {
      if (positive[order[i]]) {
        rank_sum += midrank;
        ++n_pos;
      }
    }
    start = end;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  const double p = static_cast<double>(n_pos);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(n_neg));
}

double AurocMacroOvr(std::span<const int> labels, const Matrix& probs,
                     std::vector<ClassMetrics>* per_class, std::vector<int>* excluded) {
  if (static_cast<Eigen::Index>(labels.size()) != probs.cols()) {
    Fail(ErrorKind::kInvalidArgument, "label count does not match probability columns");
  }
  const std::set<int> present(labels.begin(), labels.end());
  if (present.size() < 2) {
    Fail(ErrorKind::kInvalidArgument, "AUROC needs at least two classes among the labels");
  }
  double sum = 0.0;
  int used = 0;
  std::vector<double> scores(labels.size());
  std::vector<char> positive(labels.size());
  for (int c : present) {
    ClassMetrics metrics;
    metrics.label = c;
    if (c < 0 || c >= probs.rows()) {
      // No probability row: the class cannot be scored.
      if (excluded) excluded->push_back(c);
      if (per_class) per_class->push_back(metrics);
      continue;
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
      scores[j] = probs(c, static_cast<Eigen::Index>(j));
      positive[j] = labels[j] == c;
      metrics.support += labels[j] == c ? 1 : 0;
    }
    metrics.auroc = BinaryAuroc(scores, positive);
    if (metrics.auroc) {
      sum += *metrics.auroc;
      ++used;
    } else if (excluded) {
      excluded->push_back(c);
    }
    if (per_class) per_class->push_back(metrics);
  }
  if (used == 0) Fail(ErrorKind::kInvalidArgument, "no class admits an AUROC");
  return sum / used;
}

AccuracyF1 AccuracyAndF1(std::span<const int> labels, std::span<const int> predictions) {
  if (labels.size() != predictions.size()) {
    Fail(ErrorKind::kInvalidArgument, "labels and predictions differ in length (" +
                                          std::to_string(labels.size()) + " vs " +
                                          std::to_string(predictions.size()) + ")");
  }
  if (labels.empty()) Fail(ErrorKind::kInvalidArgument, "no samples to score");
  AccuracyF1 out;
  std::set<int> classes(labels.begin(), labels.end());
  classes.insert(predictions.begin(), predictions.end());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) correct += labels[i] == predictions[i];
  out.accuracy = static_cast<double>(correct) / static_cast<double>(labels.size());
  double sum = 0.0;
  for (int c : classes) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const bool truth = labels[i] == c;
      const bool pred = predictions[i] == c;
      tp += truth && pred;
      fp += !truth && pred;
      fn += truth && !pred;
    }
    const double f1 = tp == 0 ? 0.0 : 2.0 * tp / (2.0 * tp + fp + fn);
    // Precision or recall is 0/0 for a class never predicted or never true.
    if (tp + fp == 0 || tp + fn == 0) out.undefined.push_back(c);
    out.classes.push_back(c);
    out.f1.push_back(f1);
    sum += f1;
  }
  out.macro_f1 = sum / static_cast<double>(classes.size());
  return out;
}

MetricReport Evaluate(std::span<const int> labels, const Matrix& probs) {
  MetricReport report;
  std::vector<int> predictions(static_cast<std::size_t>(probs.cols()));
  for (Eigen::Index j = 0; j < probs.cols(); ++j) {
    Eigen::Index best = 0;
    probs.col(j).maxCoeff(&best);
    predictions[static_cast<std::size_t>(j)] = static_cast<int>(best);
  }
  const AccuracyF1 af = AccuracyAndF1(labels, predictions);
  report.accuracy = af.accuracy;
  report.macro_f1 = af.macro_f1;
  report.f1_undefined = af.undefined;
  report.auroc_macro_ovr =
      AurocMacroOvr(labels, probs, &report.per_class, &report.auroc_excluded);
  for (ClassMetrics& m : report.per_class) {
    const auto it = std::find(af.classes.begin(), af.classes.end(), m.label);
    if (it != af.classes.end()) {
      const auto idx = static_cast<std::size_t>(it - af.classes.begin());
      m.f1 = af.f1[idx];
      m.f1_undefined = std::find(af.undefined.begin(), af.undefined.end(), m.label) !=
                       af.undefined.end();
    }
  }
  return report;
}

}  // namespace rddpp::eval
