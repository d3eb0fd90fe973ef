// Copyright 2026 The tomscore Authors.
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

#include "support/oracles.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>

namespace tomscore::testing {
namespace {

OracleScore FromCounts(double overlap, double gen_total, double ref_total) {
  OracleScore s;
  s.precision = gen_total == 0 ? 0.0 : overlap / gen_total;
  s.recall = ref_total == 0 ? 0.0 : overlap / ref_total;
  if (s.precision + s.recall > 0) {
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

std::map<std::vector<int>, int> CountGrams(const std::vector<int>& seq, std::size_t n) {
  std::map<std::vector<int>, int> counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    counts[std::vector<int>(seq.begin() + i, seq.begin() + i + n)]++;
  }
  return counts;
}

bool IsSubsequence(const std::vector<int>& needle, const std::vector<int>& hay) {
  std::size_t j = 0;
  for (int x : hay) {
    if (j < needle.size() && needle[j] == x) ++j;
  }
  return j == needle.size();
}

}  // namespace

OracleScore OracleRougeN(const std::vector<int>& gen, const std::vector<int>& ref,
                         std::size_t n) {
  if (ref.size() < n) {
    if (gen.size() < n && gen == ref) return {1.0, 1.0, 1.0};
    return {};
  }
  if (gen.size() < n) return {};
  const auto g = CountGrams(gen, n);
  const auto r = CountGrams(ref, n);
  int overlap = 0;
  for (const auto& [gram, count] : g) {
    auto it = r.find(gram);
    if (it != r.end()) overlap += std::min(count, it->second);
  }
  return FromCounts(overlap, static_cast<double>(gen.size() - n + 1),
                    static_cast<double>(ref.size() - n + 1));
}

std::size_t OracleLcs(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t best = 0;
  const std::size_t subsets = std::size_t{1} << a.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<int> pick;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask & (std::size_t{1} << i)) pick.push_back(a[i]);
    }
    if (pick.size() > best && IsSubsequence(pick, b)) best = pick.size();
  }
  return best;
}

OracleScore OracleRougeL(const std::vector<int>& gen, const std::vector<int>& ref) {
  if (gen.empty() && ref.empty()) return {1.0, 1.0, 1.0};
  if (gen.empty() || ref.empty()) return {};
  return FromCounts(static_cast<double>(OracleLcs(gen, ref)),
                    static_cast<double>(gen.size()), static_cast<double>(ref.size()));
}

std::vector<double> OracleAdvantages(const std::vector<double>& rewards,
                                     double std_floor) {
  long double sum = 0;
  for (double r : rewards) sum += r;
  const long double mean = sum / rewards.size();
  long double sq = 0;
  for (double r : rewards) sq += (r - mean) * (r - mean);
  const long double sd = std::sqrt(sq / rewards.size());
  std::vector<double> out;
  for (double r : rewards) {
    if (sq == 0) {
      out.push_back(0.0);
    } else {
      out.push_back(static_cast<double>((r - mean) / std::max<long double>(sd, std_floor)));
    }
  }
  return out;
}

int OracleFormatReward(const std::string& source) {
  static const std::regex kTag("<(Perception|Belief|Desire|Intention|Decision|Action)>");
  std::string skeleton;
  for (auto it = std::sregex_iterator(source.begin(), source.end(), kTag);
       it != std::sregex_iterator(); ++it) {
    skeleton += (*it)[1].str() + ";";
  }
  static const std::regex kFull("Perception;Belief;Desire;Intention;Decision;Action;");
  return std::regex_match(skeleton, kFull) ? 1 : 0;
}

}  // namespace tomscore::testing
