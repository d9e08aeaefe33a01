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
#include "support/oracles.hpp"

namespace ury {
namespace {

FiniteMetricSpace pair_at(const char* d) {
  return validate_space({"x", "y"}, {{Rational(0), Rational::parse(d)}, {Rational::parse(d), Rational(0)}});
}

TEST(Katetov, SinglePoint) {
  auto base = validate_space({"x"}, {{Rational(0)}});
  EXPECT_TRUE(is_katetov(base, {{"x", one()}}).admissible);
  EXPECT_FALSE(is_katetov(base, {{"x", Rational(3, 2)}}).admissible);
}

TEST(Katetov, LowerBoundViolation) {
  auto c = is_katetov(pair_at("1"), {{"x", Rational(1, 4)}, {"y", Rational(1, 4)}});
  ASSERT_FALSE(c.admissible);
  ASSERT_EQ(c.violations.size(), 1u);
  EXPECT_EQ(c.violations[0].kind, "lower");
}

TEST(Katetov, LipschitzViolationIsTheOnlyOne) {
  auto c = is_katetov(pair_at("1/2"), {{"x", Rational(1, 8)}, {"y", Rational(3, 4)}});
  ASSERT_FALSE(c.admissible);
  ASSERT_EQ(c.violations.size(), 1u);
  EXPECT_EQ(c.violations[0].kind, "lipschitz");
  EXPECT_EQ(c.violations[0].points, (std::vector<std::string>{"x", "y"}));
}

TEST(Katetov, DomainMismatch) {
  EXPECT_THROW(is_katetov(pair_at("1/2"), {{"x", one()}}), Error);
  EXPECT_THROW(is_katetov(pair_at("1/2"), {{"x", one()}, {"z", one()}}), Error);
}

TEST(Katetov, AtMostOneZero) {
  auto c = is_katetov(pair_at("1/2"), {{"x", Rational(0)}, {"y", Rational(0)}});
  EXPECT_FALSE(c.admissible);
  EXPECT_TRUE(is_katetov(pair_at("1/2"), {{"x", Rational(0)}, {"y", Rational(1, 2)}}).admissible);
}

TEST(Katetov, ExtendWithPoint) {
  auto a = validate_space({"a"}, {{Rational(0)}});
  auto e = extend_with_point(a, KatetovFunction::make(a, {Rational(1, 2)}), "b");
  EXPECT_TRUE(e.fresh);
  EXPECT_EQ(e.space.distance("a", "b"), Rational(1, 2));

  auto ab = validate_space({"a", "b"}, {{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(0)}});
  auto z = extend_with_point(ab, KatetovFunction::make(ab, {Rational(0), Rational(1, 2)}), "c");
  EXPECT_FALSE(z.fresh);
  EXPECT_EQ(z.realization, "a");
  EXPECT_EQ(z.space, ab);

  auto far = validate_space({"a", "b"}, {{Rational(0), one()}, {one(), Rational(0)}});
  auto t = extend_with_point(far, KatetovFunction::make(far, {Rational(1, 3), one()}), "c");
  EXPECT_TRUE(oracle::is_metric(t.space.matrix()));
  EXPECT_EQ(t.space.size(), 3u);
}

TEST(Katetov, ExtensionErrors) {
  auto ab = validate_space({"a", "b"}, {{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(0)}});
  try {
    KatetovFunction::make(ab, {Rational(1, 8), Rational(7, 8)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInadmissible);
  }
  auto f = KatetovFunction::make(ab, {Rational(1, 2), Rational(1, 2)});
  try {
    extend_with_point(ab, f, "a");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLabelCollision);
  }
}

TEST(Katetov, DistanceOfType) {
  auto f = KatetovFunction::make(pair_at("1/2"), {Rational(1, 2), Rational(3, 4)});
  EXPECT_EQ(distance_of_type(f), Rational(1, 2));
  EXPECT_EQ(distance_of_type(KatetovFunction::make(pair_at("1"), {one(), one()})), one());
  EXPECT_THROW(distance_of_type(KatetovFunction::make(FiniteMetricSpace{}, std::vector<Rational>{})), Error);
}

TEST(Katetov, RestrictType) {
  auto f = KatetovFunction::make(pair_at("1/2"), {Rational(1, 2), Rational(3, 4)});
  std::vector<Label> all{"x", "y"}, one_pt{"x"}, none;
  EXPECT_EQ(restrict_type(f, all), f);
  EXPECT_EQ(restrict_type(f, one_pt).values(), std::vector<Rational>{Rational(1, 2)});
  EXPECT_THROW(restrict_type(f, none), Error);
}

// Admissibility of a positive profile is the same as the extended matrix
// being a metric, checked against the direct axiom reading.
TEST(KatetovProperty, AdmissibleIffExtensionIsMetric) {
  Rng rng(5);
  int admissible = 0, total = 0;
  for (long den = 2; den <= 12; ++den)
    for (std::size_t n = 1; n <= 6; ++n)
      for (int rep = 0; rep < 20; ++rep) {
        auto s = random_space(n, den, rng);
        std::vector<Rational> f(n);
        for (auto& v : f) v = Rational(uniform_int(rng, 1, den + 1), den);
        if (rep % 2) f = random_katetov_values(s, den, rng, Rational(1, den));
        const bool expected = oracle::is_metric(oracle::with_point(s, f));
        EXPECT_EQ(check_katetov(s, f).admissible, expected);
        admissible += expected;
        ++total;
      }
  EXPECT_GT(admissible, total / 3);
}

TEST(KatetovProperty, ExtensionValidatesAndRestrictionKeepsAdmissibility) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng = derive_rng(seed, 3);
    const long den = uniform_int(rng, 2, 24);
    auto s = random_space(6, den, rng);
    auto f = random_type(s, den, rng);
    auto e = extend_with_point(s, f, "new");
    EXPECT_TRUE(oracle::is_metric(e.space.matrix()));
    std::vector<Label> sub{"p1", "p3", "p4"};
    auto r = restrict_type(f, sub);
    EXPECT_TRUE(check_katetov(r.base(), r.values()).admissible);
    EXPECT_GE(distance_of_type(r), distance_of_type(f));
  }
}

TEST(KatetovProperty, PinnedDistance) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = derive_rng(seed, 4);
    auto s = random_space(5, 12, rng);
    Rational d(uniform_int(rng, 1, 12), 12);
    EXPECT_EQ(distance_of_type(random_type_of_distance(s, d, 12, rng)), d);
  }
}

}  // namespace
}  // namespace ury
