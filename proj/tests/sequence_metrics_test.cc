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

#include "tomscore/sequence_metrics.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support/generators.h"
#include "support/oracles.h"
#include "tomscore/error.h"

namespace tomscore {
namespace {

using testing::Gen;
using Seq = std::vector<std::string>;

constexpr double kTol = 1e-12;

TEST(RougeNTest, UnigramExample) {
  const RougeScore s = RougeN(Seq{"a", "b", "c"}, Seq{"a", "b", "d"}, 1);
  EXPECT_NEAR(s.precision, 2.0 / 3, kTol);
  EXPECT_NEAR(s.recall, 2.0 / 3, kTol);
  EXPECT_NEAR(s.f1, 2.0 / 3, kTol);
}

TEST(RougeNTest, BigramExample) {
  const RougeScore s = RougeN(Seq{"a", "b", "c"}, Seq{"a", "b", "d"}, 2);
  EXPECT_NEAR(s.f1, 0.5, kTol);
}

TEST(RougeNTest, ClippedCounts) {
  // gen repeats "walk" three times, ref twice: clipped overlap 2.
  const RougeScore s = RougeN(Seq{"walk", "walk", "walk"}, Seq{"walk", "open", "walk"}, 1);
  EXPECT_NEAR(s.precision, 2.0 / 3, kTol);
  EXPECT_NEAR(s.recall, 2.0 / 3, kTol);
}

TEST(RougeNTest, InvalidN) {
  try {
    RougeN(Seq{"a"}, Seq{"a"}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidN);
  }
}

TEST(RougeNTest, ShortSequenceRules) {
  EXPECT_EQ(RougeN(Seq{"a"}, Seq{"a"}, 2), RougeScore::Perfect());
  EXPECT_EQ(RougeN(Seq{}, Seq{}, 1), RougeScore::Perfect());
  EXPECT_EQ(RougeN(Seq{"b"}, Seq{"a"}, 2), RougeScore{});
  EXPECT_EQ(RougeN(Seq{"a", "b"}, Seq{"a"}, 2), RougeScore{});
  EXPECT_EQ(RougeN(Seq{"a"}, Seq{"a", "b"}, 2), RougeScore{});
}

TEST(RougeLTest, Examples) {
  const RougeScore s = RougeL(Seq{"a", "c", "b", "d"}, Seq{"a", "b", "c", "d"});
  EXPECT_NEAR(s.precision, 0.75, kTol);
  EXPECT_NEAR(s.recall, 0.75, kTol);
  EXPECT_NEAR(s.f1, 0.75, kTol);
  EXPECT_EQ(RougeL(Seq{"x", "y"}, Seq{"a", "b"}), RougeScore{});
  EXPECT_EQ(RougeL(Seq{}, Seq{}), RougeScore::Perfect());
  EXPECT_EQ(RougeL(Seq{"a"}, Seq{}), RougeScore{});
  EXPECT_EQ(RougeL(Seq{}, Seq{"a"}), RougeScore{});
}

TEST(RougeComponentsTest, SingleItemReferenceFallsBack) {
  const RougeTriple t = RougeComponents(Seq{"a", "b"}, Seq{"a"});
  EXPECT_EQ(t.r2, t.r1);
  EXPECT_NEAR(t.r1.recall, 1.0, kTol);
}

TEST(RougeTest, CustomEquality) {
  auto ci = [](const std::string& a, const std::string& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(),
                      [](char x, char y) { return std::tolower(x) == std::tolower(y); });
  };
  EXPECT_EQ(RougeN(Seq{"A", "b"}, Seq{"a", "B"}, 2, ci), RougeScore::Perfect());
  EXPECT_EQ(RougeL(Seq{"A", "b"}, Seq{"a", "B"}, ci), RougeScore::Perfect());
}

void ExpectMatches(const RougeScore& got, const testing::OracleScore& want) {
  EXPECT_NEAR(got.precision, want.precision, kTol);
  EXPECT_NEAR(got.recall, want.recall, kTol);
  EXPECT_NEAR(got.f1, want.f1, kTol);
}

TEST(RougePropertyTest, MatchesOracles) {
  Gen g(1);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto gen = testing::IntSequence(g, 8, 5);
    const auto ref = testing::IntSequence(g, 8, 5);
    ExpectMatches(RougeN(gen, ref, 1), testing::OracleRougeN(gen, ref, 1));
    ExpectMatches(RougeN(gen, ref, 2), testing::OracleRougeN(gen, ref, 2));
    ExpectMatches(RougeN(gen, ref, 3), testing::OracleRougeN(gen, ref, 3));
    ExpectMatches(RougeL(gen, ref), testing::OracleRougeL(gen, ref));
    EXPECT_EQ(LcsLength(std::span<const int>(gen), std::span<const int>(ref)),
              testing::OracleLcs(gen, ref));
  }
}

TEST(RougePropertyTest, SymmetryAndBounds) {
  Gen g(2);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto a = testing::IntSequence(g, 8, 4);
    const auto b = testing::IntSequence(g, 8, 4);
    for (std::size_t n = 1; n <= 2; ++n) {
      const RougeScore ab = RougeN(a, b, n);
      const RougeScore ba = RougeN(b, a, n);
      EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
      EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
      for (double v : {ab.precision, ab.recall, ab.f1}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
    const RougeScore l = RougeL(a, b);
    EXPECT_DOUBLE_EQ(l.f1, RougeL(b, a).f1);
    EXPECT_LE(LcsLength(std::span<const int>(a), std::span<const int>(b)),
              std::min(a.size(), b.size()));
    if (!a.empty()) {
      EXPECT_EQ(RougeN(a, a, 1).f1, 1.0);
      EXPECT_EQ(RougeL(a, a).f1, 1.0);
      if (a.size() >= 2) {
        EXPECT_EQ(RougeN(a, a, 2).f1, 1.0);
      }
    }
  }
}

}  // namespace
}  // namespace tomscore
