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

#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "pcmw/error.hpp"
#include "pcmw/graph.hpp"
#include "pcmw/pcm_io.hpp"
#include "pcmw/verify.hpp"
#include "support/oracles.hpp"

namespace pcmw {
namespace {

ErrorCode parse_code(std::string_view text, PcmFormat format, std::string* what = nullptr) {
  try {
    parse_pcm(text, format);
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return ErrorCode::kInvalidParameters;
}

TEST(PcmJson, SinglePair) {
  const IncompletePCM pcm = parse_pcm(R"({"n":2, "entries":[[1,2,2.0]]})", PcmFormat::kJson);
  EXPECT_EQ(pcm.size(), 2u);
  EXPECT_EQ(*pcm.value(0, 1), 2.0);
  EXPECT_EQ(*pcm.value(1, 0), 0.5);
}

TEST(PcmJson, SixNodeExampleFileHasSevenEdges) {
  const IncompletePCM pcm =
      read_pcm(std::filesystem::path(PCMW_TEST_DATA_DIR) / "example1.json", PcmFormat::kJson);
  EXPECT_EQ(build_graph(pcm).edge_count(), 7u);
  EXPECT_EQ(pcm, testing::example1());
}

TEST(PcmJson, CanonicalOutput) {
  const std::vector<RawEntry> raw{{0, 1, 3.0}};
  const std::string text = format_pcm(validate(2, raw), PcmFormat::kJson);
  EXPECT_EQ(text, "{\"n\":2,\"entries\":[[1,2,3.0]]}\n");

  const auto doc = nlohmann::json::parse(format_pcm(testing::example1(), PcmFormat::kJson));
  EXPECT_EQ(doc["entries"].size(), 7u);
  for (const auto& triple : doc["entries"]) {
    EXPECT_EQ(triple.size(), 3u);
    EXPECT_LT(triple[0].get<int>(), triple[1].get<int>());
  }
}

TEST(PcmJson, Errors) {
  std::string what;
  EXPECT_EQ(parse_code("{\"n\":2,", PcmFormat::kJson, &what), ErrorCode::kParseError);
  EXPECT_NE(what.find("json"), std::string::npos);
  EXPECT_EQ(parse_code(R"({"n":2,"entries":[[1,2,NaN]]})", PcmFormat::kJson),
            ErrorCode::kParseError);
  EXPECT_EQ(parse_code(R"({"n":2,"entries":[[1,2]]})", PcmFormat::kJson, &what),
            ErrorCode::kParseError);
  EXPECT_NE(what.find("entries[0]"), std::string::npos);
  EXPECT_EQ(parse_code(R"({"n":"2","entries":[]})", PcmFormat::kJson), ErrorCode::kParseError);
  EXPECT_EQ(parse_code(R"({"n":2,"entries":[[1,3,2.0]]})", PcmFormat::kJson),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(parse_code(R"({"n":2,"entries":[[1,2,-2.0]]})", PcmFormat::kJson),
            ErrorCode::kNonPositiveEntry);
}

TEST(PcmCsv, MissingCellsAreMissingComparisons) {
  const IncompletePCM pcm = parse_pcm(
      "1,2,\n"
      "0.5,1,4\n"
      ",0.25,1\n",
      PcmFormat::kCsv);
  EXPECT_EQ(pcm.size(), 3u);
  EXPECT_EQ(pcm.comparison_count(), 2u);
  EXPECT_FALSE(pcm.known(0, 2));
  EXPECT_EQ(*pcm.value(1, 2), 4.0);
}

TEST(PcmCsv, EmptyDiagonalAndWhitespaceAccepted) {
  const IncompletePCM pcm = parse_pcm(" , 2 \r\n 0.5 , \r\n", PcmFormat::kCsv);
  EXPECT_EQ(*pcm.value(0, 1), 2.0);
}

TEST(PcmCsv, Errors) {
  std::string what;
  EXPECT_EQ(parse_code("1,2\n0.5\n", PcmFormat::kCsv, &what), ErrorCode::kParseError);
  EXPECT_NE(what.find("line 2"), std::string::npos);
  EXPECT_EQ(parse_code("1,nan\n,1\n", PcmFormat::kCsv, &what), ErrorCode::kParseError);
  EXPECT_NE(what.find("field 2"), std::string::npos);
  EXPECT_EQ(parse_code("1,inf\n,1\n", PcmFormat::kCsv), ErrorCode::kParseError);
  EXPECT_EQ(parse_code("1,abc\n,1\n", PcmFormat::kCsv), ErrorCode::kParseError);
  EXPECT_EQ(parse_code("1\n", PcmFormat::kCsv), ErrorCode::kParseError);
  EXPECT_EQ(parse_code("2,2\n0.5,1\n", PcmFormat::kCsv), ErrorCode::kReciprocityViolation);
  EXPECT_EQ(parse_code("1,2\n0.4,1\n", PcmFormat::kCsv), ErrorCode::kReciprocityViolation);
}

TEST(PcmIo, RoundTripIsIdentity) {
  testing::TempDir dir;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const GeneratedInstance inst = gen_random_pcm(
        {static_cast<std::size_t>(2 + trial % 8), 0, 0.7, static_cast<std::uint64_t>(trial)});
    const IncompletePCM pcm = trial % 2 ? inst.pcm : testing::random_pcm(2 + trial % 6, 0.6, rng);
    for (PcmFormat format : {PcmFormat::kJson, PcmFormat::kCsv}) {
      const auto path = dir / ("m." + std::string(to_string(format)));
      write_pcm(pcm, path, format);
      EXPECT_EQ(read_pcm(path, format), pcm);
    }
  }
}

TEST(PcmIo, MissingFileIsIoError) {
  try {
    read_pcm("/nonexistent/dir/m.json", PcmFormat::kJson);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
  EXPECT_THROW(write_pcm(testing::example1(), "/nonexistent/dir/m.json", PcmFormat::kJson),
               Error);
}

TEST(PcmIo, FormatFromExtension) {
  EXPECT_EQ(format_from_extension("a/b.JSON"), PcmFormat::kJson);
  EXPECT_EQ(format_from_extension("b.csv"), PcmFormat::kCsv);
  EXPECT_FALSE(format_from_extension("b.txt"));
  EXPECT_EQ(parse_format("csv"), PcmFormat::kCsv);
}

}  // namespace
}  // namespace pcmw
