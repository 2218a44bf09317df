// Copyright 2026 The LCIM Authors.
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

#include "lcim/instance.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lcim {

int64_t NodeView::TotalWeight() const {
  int64_t total = 0;
  for (const Neighbor& nb : in) total += nb.weight;
  return total;
}

NodeView MakeNodeView(int64_t threshold, const std::vector<int64_t>& weights) {
  NodeView view;
  view.node = static_cast<int>(weights.size());
  view.threshold = threshold;
  for (size_t j = 0; j < weights.size(); ++j) {
    view.in.push_back({static_cast<int>(j), weights[j], -1});
  }
  return view;
}

Instance::Instance(int num_nodes, int64_t coverage,
                   std::vector<int64_t> thresholds, std::vector<Arc> arcs)
    : coverage_(coverage),
      thresholds_(std::move(thresholds)),
      arcs_(std::move(arcs)) {
  if (num_nodes < 1) throw std::invalid_argument("instance needs n >= 1");
  if (static_cast<int>(thresholds_.size()) != num_nodes) {
    throw std::invalid_argument("threshold count differs from n");
  }
  if (coverage_ < 1) throw std::invalid_argument("coverage b must be >= 1");
  for (int64_t h : thresholds_) {
    if (h < 1) throw std::invalid_argument("thresholds must be positive");
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
  });
  for (size_t a = 0; a < arcs_.size(); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.tail < 0 || arc.tail >= num_nodes || arc.head < 0 ||
        arc.head >= num_nodes) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (arc.tail == arc.head) throw std::invalid_argument("self-loop");
    if (arc.weight < 1) throw std::invalid_argument("weights must be positive");
    if (a > 0 && arcs_[a - 1].tail == arc.tail &&
        arcs_[a - 1].head == arc.head) {
      throw std::invalid_argument("duplicate arc");
    }
  }
  in_arcs_.assign(num_nodes, {});
  out_arcs_.assign(num_nodes, {});
  reverse_.assign(arcs_.size(), -1);
  for (size_t a = 0; a < arcs_.size(); ++a) {
    in_arcs_[arcs_[a].head].push_back(static_cast<int>(a));
    out_arcs_[arcs_[a].tail].push_back(static_cast<int>(a));
  }
  for (size_t a = 0; a < arcs_.size(); ++a) {
    reverse_[a] = FindArc(arcs_[a].head, arcs_[a].tail);
    if (reverse_[a] < 0) throw std::invalid_argument("asymmetric arc set");
  }
}

int Instance::FindArc(int tail, int head) const {
  if (tail < 0 || tail >= num_nodes()) return -1;
  for (int a : out_arcs_[tail]) {
    if (arcs_[a].head == head) return a;
  }
  return -1;
}

NodeView Instance::View(int node) const {
  NodeView view;
  view.node = node;
  view.threshold = thresholds_[node];
  for (int a : in_arcs_[node]) {
    view.in.push_back({arcs_[a].tail, arcs_[a].weight, a});
  }
  return view;
}

bool Instance::IsPreprocessed() const {
  for (const Arc& arc : arcs_) {
    if (arc.weight > thresholds_[arc.head]) return false;
  }
  return true;
}

Instance Instance::WithCoverage(int64_t coverage) const {
  return Instance(num_nodes(), coverage, thresholds_, arcs_);
}

Instance Preprocess(const Instance& instance) {
  std::vector<Arc> arcs = instance.arcs();
  for (Arc& arc : arcs) {
    arc.weight = std::min(arc.weight, instance.threshold(arc.head));
  }
  return Instance(instance.num_nodes(), instance.coverage(),
                  instance.thresholds(), std::move(arcs));
}

int64_t CoverageForRate(double rate, int num_nodes) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("penetration rate must lie in (0, 1]");
  }
  // Guard against 0.1 * 50 = 5.000000000000001 style round-up.
  double raw = rate * num_nodes;
  double nearest = std::round(raw);
  if (std::abs(raw - nearest) < 1e-9) return static_cast<int64_t>(nearest);
  return static_cast<int64_t>(std::ceil(raw));
}

ParseError::ParseError(int line, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason),
      line_(line) {}

std::string FormatInstance(const Instance& instance) {
  std::ostringstream out;
  out << "lcim 1\n";
  out << instance.num_nodes() << ' ' << instance.num_arcs() << ' '
      << instance.coverage() << '\n';
  for (int i = 0; i < instance.num_nodes(); ++i) {
    out << i + 1 << ' ' << instance.threshold(i) << '\n';
  }
  for (const Arc& arc : instance.arcs()) {
    out << arc.tail + 1 << ' ' << arc.head + 1 << ' ' << arc.weight << '\n';
  }
  return out.str();
}

namespace {

// Splits the next significant line into integer fields.
class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  int line() const { return line_; }

  // Returns false at end of input.
  bool Next(std::vector<std::string>* fields) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      std::istringstream tokens(raw);
      fields->clear();
      std::string token;
      while (tokens >> token) fields->push_back(token);
      if (!fields->empty()) return true;
    }
    return false;
  }

 private:
  std::istringstream in_;
  int line_ = 0;
};

int64_t ToInt(const std::string& token, int line) {
  size_t used = 0;
  int64_t value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + token + "'");
  }
  if (used != token.size()) {
    throw ParseError(line, "expected integer, got '" + token + "'");
  }
  return value;
}

void Expect(bool ok, int line, const std::string& reason) {
  if (!ok) throw ParseError(line, reason);
}

}  // namespace

Instance ParseInstance(const std::string& text) {
  LineReader reader(text);
  std::vector<std::string> f;
  Expect(reader.Next(&f), reader.line(), "empty file");
  Expect(f.size() == 2 && f[0] == "lcim", reader.line(),
         "missing 'lcim 1' header");
  Expect(f[1] == "1", reader.line(), "unsupported version " + f[1]);

  Expect(reader.Next(&f), reader.line(), "missing size line");
  Expect(f.size() == 3, reader.line(), "size line needs 'n m b'");
  const int64_t n = ToInt(f[0], reader.line());
  const int64_t m = ToInt(f[1], reader.line());
  const int64_t b = ToInt(f[2], reader.line());
  Expect(n >= 1 && n <= 10'000'000, reader.line(), "bad node count");
  Expect(m >= 0, reader.line(), "bad arc count");
  Expect(b >= 1, reader.line(), "coverage b must be >= 1");

  std::vector<int64_t> thresholds(n, 0);
  std::vector<bool> seen(n, false);
  for (int64_t k = 0; k < n; ++k) {
    Expect(reader.Next(&f), reader.line(), "missing node line");
    Expect(f.size() == 2, reader.line(), "node line needs 'id h'");
    const int64_t id = ToInt(f[0], reader.line());
    const int64_t h = ToInt(f[1], reader.line());
    Expect(id >= 1 && id <= n, reader.line(), "node id out of range");
    Expect(!seen[id - 1], reader.line(), "duplicate node id");
    Expect(h >= 1, reader.line(), "threshold must be positive");
    seen[id - 1] = true;
    thresholds[id - 1] = h;
  }

  std::vector<Arc> arcs;
  std::vector<int> arc_line;
  for (int64_t k = 0; k < m; ++k) {
    Expect(reader.Next(&f), reader.line(), "missing arc line");
    Expect(f.size() == 3, reader.line(), "arc line needs 'i j d'");
    const int64_t i = ToInt(f[0], reader.line());
    const int64_t j = ToInt(f[1], reader.line());
    const int64_t d = ToInt(f[2], reader.line());
    Expect(i >= 1 && i <= n && j >= 1 && j <= n, reader.line(),
           "arc endpoint out of range");
    Expect(i != j, reader.line(), "self-loop");
    Expect(d >= 1, reader.line(), "weight must be positive");
    arcs.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), d});
    arc_line.push_back(reader.line());
  }
  Expect(!reader.Next(&f), reader.line(), "trailing content");

  // Symmetry and duplicates, reported against the offending line.
  std::vector<std::pair<std::pair<int, int>, int>> keys;
  for (size_t a = 0; a < arcs.size(); ++a) {
    keys.push_back({{arcs[a].tail, arcs[a].head}, arc_line[a]});
  }
  std::sort(keys.begin(), keys.end());
  for (size_t a = 1; a < keys.size(); ++a) {
    Expect(keys[a].first != keys[a - 1].first, keys[a].second,
           "duplicate arc");
  }
  for (const auto& [key, line] : keys) {
    auto it = std::lower_bound(
        keys.begin(), keys.end(),
        std::pair(std::pair(key.second, key.first), 0));
    Expect(it != keys.end() && it->first == std::pair(key.second, key.first),
           line, "asymmetric arc set");
  }
  return Instance(static_cast<int>(n), b, std::move(thresholds),
                  std::move(arcs));
}

void SaveInstance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << FormatInstance(instance);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Instance LoadInstance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

std::vector<int> NodesWithoutSlack(const Instance& instance) {
  std::vector<int> nodes;
  for (int i = 0; i < instance.num_nodes(); ++i) {
    if (instance.degree(i) < 2) continue;
    if (instance.View(i).TotalWeight() <= instance.threshold(i)) {
      nodes.push_back(i);
    }
  }
  return nodes;
}

}  // namespace lcim
