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

#include "urysohn/rational.hpp"

namespace ury {
namespace {

TEST(Rational, NormalizesToLowestTerms) {
  EXPECT_EQ(Rational::parse("3/6").str(), "1/2");
  EXPECT_EQ(Rational::parse("4/2").str(), "2");
  EXPECT_EQ(Rational(6, -8).str(), "-3/4");
  EXPECT_EQ(Rational(0, 5).str(), "0");
  EXPECT_EQ(Rational::parse("-10/4").denominator_u64(), 2u);
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/", "/2", "1.5", "1/0", " 1", "a", "1/2/3", "+1", "0x1"}) {
    EXPECT_THROW(Rational::parse(bad), Error) << bad;
  }
  try {
    Rational::parse("1/0");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
  }
}

TEST(Rational, ExactArithmetic) {
  Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  // a sum that floating point gets wrong
  Rational s;
  for (int i = 0; i < 10; ++i) s += Rational(1, 10);
  EXPECT_EQ(s, one());
}

TEST(Rational, OrderingAndHelpers) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(3, 4), Rational(2, 3));
  EXPECT_EQ(min(Rational(1, 3), Rational(1, 2)), Rational(1, 3));
  EXPECT_EQ(max(Rational(1, 3), Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(abs(Rational(-2, 5)), Rational(2, 5));
  EXPECT_EQ(ceil_to_long(Rational(7, 3)), 3);
  EXPECT_EQ(ceil_to_long(Rational(3)), 3);
  EXPECT_EQ(ceil_to_long(one() / Rational(1, 10)), 10);
  EXPECT_EQ(Rational(-1, 2).sign(), -1);
  EXPECT_TRUE(Rational(0).is_zero());
}

TEST(Rational, BeyondMachineIntegers) {
  auto big = Rational::parse("123456789012345678901234567890/987654321098765432109876543210");
  EXPECT_EQ(big.str(), "13717421/109739369");
  EXPECT_EQ(big * Rational::parse("109739369/13717421"), one());
}

}  // namespace
}  // namespace ury
