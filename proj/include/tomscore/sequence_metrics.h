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

#ifndef TOMSCORE_SEQUENCE_METRICS_H_
#define TOMSCORE_SEQUENCE_METRICS_H_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tomscore/error.h"

namespace tomscore {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore FromCounts(double matched, double gen_total, double ref_total);
  static RougeScore Perfect() { return {1.0, 1.0, 1.0}; }

  bool operator==(const RougeScore&) const = default;
};

// Which ROUGE component feeds rewards and metrics.
enum class ScoreSelect { kF1, kRecall };

inline double Select(const RougeScore& score, ScoreSelect select) {
  return select == ScoreSelect::kF1 ? score.f1 : score.recall;
}

inline RougeScore RougeScore::FromCounts(double matched, double gen_total,
                                         double ref_total) {
  RougeScore s;
  s.precision = gen_total > 0 ? matched / gen_total : 0.0;
  s.recall = ref_total > 0 ? matched / ref_total : 0.0;
  s.f1 = s.precision + s.recall > 0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

namespace internal {

template <typename T, typename Eq>
bool SequencesEqual(std::span<const T> a, std::span<const T> b, Eq& eq) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace internal

// ROUGE-N with clipped multiset counting. Items only need an equality
// predicate, so n-grams are grouped by pairwise comparison rather than
// hashing; sequences here are short.
//
// Edge rules: when `ref` has fewer than n items the score is 1 if `gen` also
// has fewer than n items and equals `ref`, else 0. When only `gen` is
// shorter than n the score is 0.
template <typename T, typename Eq = std::equal_to<T>>
RougeScore RougeN(std::span<const T> gen, std::span<const T> ref, std::size_t n,
                  Eq eq = Eq()) {
  if (n == 0) throw Error(ErrorCode::kInvalidN, "ROUGE-N requires n >= 1");
  if (ref.size() < n) {
    if (gen.size() < n && internal::SequencesEqual(gen, ref, eq)) {
      return RougeScore::Perfect();
    }
    return {};
  }
  if (gen.size() < n) return {};

  const std::size_t gen_count = gen.size() - n + 1;
  const std::size_t ref_count = ref.size() - n + 1;
  auto gram_eq = [&](std::span<const T> a, std::size_t i, std::span<const T> b,
                     std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!eq(a[i + k], b[j + k])) return false;
    }
    return true;
  };

  // For each distinct generated n-gram (first occurrence), clip its count
  // against the reference count.
  std::size_t overlap = 0;
  for (std::size_t i = 0; i < gen_count; ++i) {
    bool seen_before = false;
    for (std::size_t p = 0; p < i && !seen_before; ++p) {
      seen_before = gram_eq(gen, p, gen, i);
    }
    if (seen_before) continue;
    std::size_t in_gen = 0;
    for (std::size_t p = i; p < gen_count; ++p) in_gen += gram_eq(gen, p, gen, i);
    std::size_t in_ref = 0;
    for (std::size_t q = 0; q < ref_count; ++q) in_ref += gram_eq(ref, q, gen, i);
    overlap += std::min(in_gen, in_ref);
  }
  return RougeScore::FromCounts(static_cast<double>(overlap),
                                static_cast<double>(gen_count),
                                static_cast<double>(ref_count));
}

// Length of the longest common subsequence under `eq`.
template <typename T, typename Eq = std::equal_to<T>>
std::size_t LcsLength(std::span<const T> a, std::span<const T> b, Eq eq = Eq()) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = eq(a[i - 1], b[j - 1]) ? prev[j - 1] + 1
                                      : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// ROUGE-L. Both empty scores 1; exactly one empty scores 0.
template <typename T, typename Eq = std::equal_to<T>>
RougeScore RougeL(std::span<const T> gen, std::span<const T> ref, Eq eq = Eq()) {
  if (gen.empty() && ref.empty()) return RougeScore::Perfect();
  if (gen.empty() || ref.empty()) return {};
  const std::size_t lcs = LcsLength(gen, ref, eq);
  return RougeScore::FromCounts(static_cast<double>(lcs),
                                static_cast<double>(gen.size()),
                                static_cast<double>(ref.size()));
}

// ROUGE-1, ROUGE-2 and ROUGE-L for one pair of sequences.
struct RougeTriple {
  RougeScore r1;
  RougeScore r2;
  RougeScore rl;
};

// ROUGE-2 falls back to ROUGE-1 when the reference has a single item, since
// it has no adjacent pairs.
template <typename T, typename Eq = std::equal_to<T>>
RougeTriple RougeComponents(std::span<const T> gen, std::span<const T> ref,
                            Eq eq = Eq()) {
  RougeTriple t;
  t.r1 = RougeN(gen, ref, 1, eq);
  t.r2 = ref.size() == 1 ? t.r1 : RougeN(gen, ref, 2, eq);
  t.rl = RougeL(gen, ref, eq);
  return t;
}

template <typename T, typename Eq = std::equal_to<T>>
RougeScore RougeN(const std::vector<T>& gen, const std::vector<T>& ref,
                  std::size_t n, Eq eq = Eq()) {
  return RougeN(std::span<const T>(gen), std::span<const T>(ref), n, eq);
}

template <typename T, typename Eq = std::equal_to<T>>
RougeScore RougeL(const std::vector<T>& gen, const std::vector<T>& ref,
                  Eq eq = Eq()) {
  return RougeL(std::span<const T>(gen), std::span<const T>(ref), eq);
}

template <typename T, typename Eq = std::equal_to<T>>
RougeTriple RougeComponents(const std::vector<T>& gen, const std::vector<T>& ref,
                            Eq eq = Eq()) {
  return RougeComponents(std::span<const T>(gen), std::span<const T>(ref), eq);
}

}  // namespace tomscore

#endif  // TOMSCORE_SEQUENCE_METRICS_H_
