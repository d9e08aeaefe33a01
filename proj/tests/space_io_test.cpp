// Copyright 2026 The Urysohn Authors
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

#include <gtest/gtest.h>

#include "urysohn/random.hpp"
#include "urysohn/space_io.hpp"

namespace ury {
namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_space(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kOracleFailure;  // stands for "no error"
}

TEST(SpaceIo, RoundTripIsByteIdentical) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = derive_rng(seed, 0);
    auto s = random_space(4, 12, rng);
    auto text = serialize_space(s);
    auto back = parse_space(text);
    EXPECT_EQ(back, s);
    EXPECT_EQ(serialize_space(back), text);
  }
}

TEST(SpaceIo, NormalizesRationals) {
  auto s = parse_space(R"({"points": ["a", "b"], "dist": [["0", "3/6"], ["3/6", "0"]]})");
  EXPECT_NE(serialize_space(s).find("\"1/2\""), std::string::npos);
  EXPECT_EQ(serialize_space(s).find("3/6"), std::string::npos);
}

TEST(SpaceIo, ErrorsCarryPositions) {
  try {
    parse_space(R"({"points": ["a", "b"], "dist": [["0", "1"], ["1"]]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
    EXPECT_NE(std::string(e.what()).find("dist[1]"), std::string::npos) << e.what();
  }
  try {
    parse_space(R"({"points": ["a", "b"], "dist": [["0", "x"], ["1", "0"]]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("dist[0][1]"), std::string::npos) << e.what();
  }
}

TEST(SpaceIo, MalformedInputs) {
  EXPECT_EQ(kind_of("{"), ErrorKind::kParseError);
  EXPECT_EQ(kind_of("[]"), ErrorKind::kParseError);
  EXPECT_EQ(kind_of(R"({"points": ["a"]})"), ErrorKind::kParseError);
  EXPECT_EQ(kind_of(R"({"points": ["a"], "dist": [[0]]})"), ErrorKind::kParseError);
  EXPECT_EQ(kind_of(R"({"points": ["a","b"], "dist": [["0","1/4"],["1/4","0"]]})"), ErrorKind::kOracleFailure);
  EXPECT_EQ(kind_of(R"({"points": ["a","b"], "dist": [["0","5/4"],["5/4","0"]]})"), ErrorKind::kMetricViolation);
}

}  // namespace
}  // namespace ury
