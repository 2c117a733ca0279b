// Copyright 2026 The pcm-weights Authors.
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
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pcmw/error.hpp"
#include "pcmw/pcm.hpp"
#include "support/oracles.hpp"

namespace pcmw {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no pcmw::Error thrown";
  return ErrorCode::kInvalidParameters;
}

TEST(Validate, ExactReciprocalPair) {
  const std::vector<RawEntry> raw{{0, 1, 2.0}, {1, 0, 0.5}};
  const IncompletePCM pcm = validate(2, raw);
  ASSERT_EQ(pcm.comparison_count(), 1u);
  EXPECT_EQ(*pcm.value(0, 1), 2.0);
  EXPECT_EQ(*pcm.value(1, 0), 0.5);
  EXPECT_EQ(*pcm.value(0, 0), 1.0);
}

TEST(Validate, ReciprocityViolationReportsPairAndProduct) {
  const std::vector<RawEntry> raw{{0, 1, 2.0}, {1, 0, 0.4}};
  try {
    validate(2, raw);
    FAIL() << "expected ReciprocityViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kReciprocityViolation);
    EXPECT_NE(std::string(e.what()).find("(1,2)"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("0.8"), std::string::npos);
  }
}

TEST(Validate, ReciprocityToleranceIsOneInABillion) {
  // 1/3 rounded to 12 digits is within 1e-9; rounded to 2 digits it is not.
  const std::vector<RawEntry> fine{{0, 1, 3.0}, {1, 0, 0.333333333333}};
  EXPECT_EQ(*validate(2, fine).value(0, 1), 3.0);
  const std::vector<RawEntry> coarse{{0, 1, 3.0}, {1, 0, 0.33}};
  EXPECT_EQ(code_of([&] { validate(2, coarse); }), ErrorCode::kReciprocityViolation);
}

TEST(Validate, SixNodeExamplePatternHasSevenComparisons) {
  std::vector<RawEntry> raw;
  for (auto [i, j] : std::vector<std::pair<NodeId, NodeId>>{
           {0, 1}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {2, 3}, {3, 4}}) {
    raw.push_back({i, j, 1.5 + static_cast<double>(i + j)});
    raw.push_back({j, i, 1.0 / (1.5 + static_cast<double>(i + j))});
  }
  const IncompletePCM pcm = validate(6, raw);
  EXPECT_EQ(pcm.comparison_count(), 7u);
  EXPECT_FALSE(pcm.known(0, 2));
  EXPECT_TRUE(pcm.known(4, 3));
}

TEST(Validate, LowerTriangleOnlyIsStoredCanonically) {
  const std::vector<RawEntry> raw{{2, 0, 4.0}};
  const IncompletePCM pcm = validate(3, raw);
  ASSERT_EQ(pcm.comparison_count(), 1u);
  const Comparison c = pcm.comparisons()[0];
  EXPECT_EQ(c.i, 0u);
  EXPECT_EQ(c.j, 2u);
  EXPECT_EQ(c.value, 0.25);
  EXPECT_EQ(*pcm.value(2, 0), 4.0);
}

TEST(Validate, RejectsNonPositiveAndNonFinite) {
  for (double bad : {0.0, -1.0, std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::infinity()}) {
    const std::vector<RawEntry> raw{{0, 1, bad}};
    EXPECT_EQ(code_of([&] { validate(2, raw); }), ErrorCode::kNonPositiveEntry) << bad;
  }
}

TEST(Validate, RejectsOutOfRangeIndex) {
  const std::vector<RawEntry> raw{{0, 3, 2.0}};
  EXPECT_EQ(code_of([&] { validate(3, raw); }), ErrorCode::kIndexOutOfRange);
}

TEST(Validate, RejectsConflictingDuplicates) {
  const std::vector<RawEntry> raw{{0, 1, 2.0}, {0, 1, 3.0}};
  EXPECT_EQ(code_of([&] { validate(2, raw); }), ErrorCode::kDuplicateConflictingEntry);
  const std::vector<RawEntry> same{{0, 1, 2.0}, {0, 1, 2.0}};
  EXPECT_EQ(validate(2, same).comparison_count(), 1u);
}

TEST(Validate, DiagonalOnesAreDroppedOthersRejected) {
  const std::vector<RawEntry> ones{{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, 2.0}};
  EXPECT_EQ(validate(2, ones).comparison_count(), 1u);
  const std::vector<RawEntry> bad{{0, 0, 2.0}};
  EXPECT_EQ(code_of([&] { validate(2, bad); }), ErrorCode::kReciprocityViolation);
}

TEST(Validate, SizeMustBeAtLeastTwo) {
  EXPECT_EQ(code_of([] { validate(1, {}); }), ErrorCode::kInvalidParameters);
}

TEST(Validate, StoredReciprocityAndIdempotence) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const IncompletePCM pcm = testing::random_pcm(2 + trial % 7, 0.5, rng);
    for (NodeId i = 0; i < pcm.size(); ++i) {
      for (NodeId j = 0; j < pcm.size(); ++j) {
        if (!pcm.known(i, j)) continue;
        EXPECT_EQ(*pcm.log_value(i, j), -*pcm.log_value(j, i));
        EXPECT_NEAR(*pcm.value(i, j) * *pcm.value(j, i), 1.0, 1e-15);
      }
    }
    const auto again = pcm.entries();
    EXPECT_EQ(validate(pcm.size(), again), pcm);
  }
}

TEST(Normalization, Spellings) {
  EXPECT_EQ(parse_normalization("first1"), Normalization::kFirstOne);
  EXPECT_EQ(parse_normalization("sum1"), Normalization::kSumOne);
  EXPECT_EQ(parse_normalization("prod1"), Normalization::kProductOne);
  EXPECT_FALSE(parse_normalization("l2"));
  EXPECT_EQ(kDefaultNormalization, Normalization::kProductOne);
}

TEST(WeightVectorTest, EnforcesPositivityAndNormalization) {
  EXPECT_NO_THROW(WeightVector({1.0, 2.0}, Normalization::kFirstOne));
  EXPECT_THROW(WeightVector({2.0, 2.0}, Normalization::kFirstOne), Error);
  EXPECT_THROW(WeightVector({0.5, 0.6}, Normalization::kSumOne), Error);
  EXPECT_THROW(WeightVector({1.0, -1.0}, Normalization::kProductOne), Error);
  EXPECT_NO_THROW(WeightVector({0.5, 2.0}, Normalization::kProductOne));
  EXPECT_THROW(LogWeightVector({0.0, std::numeric_limits<double>::infinity()}), Error);
}

TEST(WeightVectorTest, LogRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> y(6);
    for (double& v : y) v = u(rng);
    for (Normalization norm : {Normalization::kFirstOne, Normalization::kSumOne,
                               Normalization::kProductOne}) {
      const WeightVector w = to_weights(LogWeightVector(y), norm);
      const LogWeightVector back = to_log(w);
      const WeightVector again = to_weights(back, norm);
      for (std::size_t k = 0; k < y.size(); ++k) {
        EXPECT_NEAR(back[k] - back[0], y[k] - y[0], 1e-12);
        EXPECT_NEAR(again[k], w[k], 1e-12 * w[k]);
      }
    }
  }
}

}  // namespace
}  // namespace pcmw
