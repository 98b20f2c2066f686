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
#include <charconv>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "rddpp/csv_io.hpp"
#include "rddpp/data.hpp"
#include "rddpp/error.hpp"
#include "rddpp/selection.hpp"

namespace rddpp::data {

Packet MakePacket(const FeatureMatrix& z, IndexList sample_indices) {
  if (!z.has_labels()) Fail(ErrorKind::kInvalidInput, "packets need labelled samples");
  if (sample_indices.empty()) Fail(ErrorKind::kInvalidArgument, "empty packet");
  const Index d = z.dim();
  const auto classes = static_cast<Index>(z.num_classes());
  Packet packet;
  packet.class_counts.assign(classes, 0);
  packet.feature = Vector::Zero(static_cast<Eigen::Index>(d * classes));
  for (Index s : sample_indices) {
    if (s >= z.size()) Fail(ErrorKind::kInvalidArgument, "packet member out of range");
    const auto c = static_cast<Index>(z.label(s));
    ++packet.class_counts[c];
    packet.feature.segment(static_cast<Eigen::Index>(c * d), static_cast<Eigen::Index>(d)) +=
        z.column(s);
  }
  for (Index c = 0; c < classes; ++c) {
    if (packet.class_counts[c] == 0) continue;
    packet.feature.segment(static_cast<Eigen::Index>(c * d), static_cast<Eigen::Index>(d)) /=
        static_cast<double>(packet.class_counts[c]);
  }
  const double norm = packet.feature.norm();
  if (norm > 0.0) {
    packet.feature /= norm;
  } else {
    packet.zero_feature = true;
  }
  packet.label = static_cast<int>(
      std::max_element(packet.class_counts.begin(), packet.class_counts.end()) -
      packet.class_counts.begin());
  packet.sample_indices = std::move(sample_indices);
  return packet;
}

PacketSet BuildPackets(const FeatureMatrix& z, const std::vector<int>& assignment,
                       Index per_packet, std::uint64_t seed) {
  if (per_packet == 0) Fail(ErrorKind::kInvalidArgument, "per_packet must be positive");
  if (assignment.size() != z.size()) {
    Fail(ErrorKind::kInvalidArgument, "assignment length does not match sample count");
  }
  if (!z.has_labels()) Fail(ErrorKind::kInvalidInput, "packets need labelled samples");
  std::map<int, IndexList> clusters;
  for (Index j = 0; j < assignment.size(); ++j) clusters[assignment[j]].push_back(j);

  PacketSet set;
  set.dim = z.dim();
  set.num_classes = z.num_classes();
  set.per_packet = per_packet;
  std::mt19937_64 rng(seed);
  for (const auto& [cluster, members] : clusters) {
    if (members.size() < per_packet) {
      set.skipped_clusters.push_back(cluster);
      continue;
    }
    IndexList drawn = SelectRandom(members, per_packet, rng);
    std::sort(drawn.begin(), drawn.end());
    Packet packet = MakePacket(z, std::move(drawn));
    if (packet.zero_feature) {
      std::clog << "rddpp: packet from cluster " << cluster << " has an all-zero feature\n";
    }
    set.packets.push_back(std::move(packet));
  }
  if (!set.skipped_clusters.empty()) {
    std::clog << "rddpp: skipped " << set.skipped_clusters.size()
              << " cluster(s) with fewer than " << per_packet << " members:";
    for (int c : set.skipped_clusters) std::clog << ' ' << c;
    std::clog << '\n';
  }
  return set;
}

FeatureMatrix PacketPool(const PacketSet& set) {
  const Index len = set.dim * static_cast<Index>(set.num_classes);
  Matrix features(static_cast<Eigen::Index>(len),
                  static_cast<Eigen::Index>(set.packets.size()));
  std::vector<int> labels;
  for (Index p = 0; p < set.packets.size(); ++p) {
    features.col(static_cast<Eigen::Index>(p)) = set.packets[p].feature;
    labels.push_back(set.packets[p].label);
  }
  return FeatureMatrix(std::move(features), std::move(labels), set.num_classes);
}

// Line 1: d=<d>,c_T=<classes>,per_packet=<p>,packets=<count>
// Then one line per packet: <members space separated>;<label>;<feature csv>
std::string FormatPackets(const PacketSet& set) {
  std::ostringstream out;
  out << "d=" << set.dim << ",c_T=" << set.num_classes << ",per_packet=" << set.per_packet
      << ",packets=" << set.packets.size() << '\n';
  for (const Packet& p : set.packets) {
    for (Index i = 0; i < p.sample_indices.size(); ++i) {
      if (i > 0) out << ' ';
      out << p.sample_indices[i];
    }
    out << ';' << p.label << ';';
    for (Eigen::Index i = 0; i < p.feature.size(); ++i) {
      if (i > 0) out << ',';
      out << io::FormatDouble(p.feature[i]);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

template <typename T>
T ParseNumber(std::string_view text, const std::string& where) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(ErrorKind::kParse, where + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

PacketSet ParsePackets(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorKind::kParse, origin + ": empty packets file");
  PacketSet set;
  Index expected = 0;
  for (std::string_view field : Split(line, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) {
      Fail(ErrorKind::kParse, origin + ": line 1: malformed header field");
    }
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    const std::string where = origin + ": line 1";
    if (key == "d") {
      set.dim = ParseNumber<Index>(value, where);
    } else if (key == "c_T") {
      set.num_classes = ParseNumber<int>(value, where);
    } else if (key == "per_packet") {
      set.per_packet = ParseNumber<Index>(value, where);
    } else if (key == "packets") {
      expected = ParseNumber<Index>(value, where);
    } else {
      Fail(ErrorKind::kParse, where + ": unknown header field '" + std::string(key) + "'");
    }
  }
  const Index len = set.dim * static_cast<Index>(set.num_classes);
  Index line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = origin + ": line " + std::to_string(line_no);
    const auto parts = Split(line, ';');
    if (parts.size() != 3) Fail(ErrorKind::kParse, where + ": expected 3 ';' fields");
    Packet p;
    for (auto tok : Split(parts[0], ' ')) {
      if (!tok.empty()) p.sample_indices.push_back(ParseNumber<Index>(tok, where));
    }
    p.label = ParseNumber<int>(parts[1], where);
    const auto cells = Split(parts[2], ',');
    if (cells.size() != len) {
      Fail(ErrorKind::kParse, where + ": feature has " + std::to_string(cells.size()) +
                                  " entries, expected d*c_T = " + std::to_string(len));
    }
    p.feature.resize(static_cast<Eigen::Index>(len));
    for (Index i = 0; i < len; ++i) {
      p.feature[static_cast<Eigen::Index>(i)] = ParseNumber<double>(cells[i], where);
    }
    p.zero_feature = p.feature.squaredNorm() == 0.0;
    set.packets.push_back(std::move(p));
  }
  if (set.packets.size() != expected) {
    Fail(ErrorKind::kParse, origin + ": header announces " + std::to_string(expected) +
                                " packets, found " + std::to_string(set.packets.size()));
  }
  return set;
}

}  // namespace rddpp::data
