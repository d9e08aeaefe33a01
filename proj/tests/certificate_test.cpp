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

#include "urysohn.hpp"
#include "support/tamper.hpp"

namespace ury {
namespace {

std::vector<Certificate> sample_certificates() {
  std::vector<Certificate> out;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto m = move1_scene(Rational(1, 3), seed);
    out.push_back(move1_conjugators(*m.g, "a", seed).certificate);
    auto s = sphere_scene(3, 12, seed, seed % 2 ? StrategyKind::kTight : StrategyKind::kFree);
    out.push_back(sphere_witness(*s.g, s.base, s.base[0]).certificate);
    Rng rng = derive_rng(seed, 1);
    auto a = make_scene(random_space(3, 12, rng, "x"), seed);
    auto p = random_type_of_distance(a.universe->space(), Rational(1, 2), 12, rng);
    out.push_back(alltypes_witness(*a.g, generic_oracle(), Rational(3, 4), p).certificate);
    LazyIsometry h(*a.universe, "h", StrategyKind::kFree, seed + 100);
    for (const auto& x : a.base) h.apply(x);
    out.push_back(two_kd_extension_step(*a.g, generic_oracle(), Rational(1, 4), h, p).certificate);
  }
  out.push_back(ladder_symbolic().certificate);
  return out;
}

TEST(Certificate, EmittedCertificatesVerify) {
  for (const auto& c : sample_certificates()) {
    auto rep = verify_certificate(c);
    EXPECT_TRUE(rep.ok) << c.kind << ": " << rep.str();
    EXPECT_EQ(rep.lines_checked, c.trace.size());
  }
}

TEST(Certificate, SerializationRoundTrip) {
  for (const auto& c : sample_certificates()) {
    auto text = c.serialize();
    auto back = Certificate::parse(text);
    EXPECT_EQ(back.serialize(), text);
    EXPECT_TRUE(verify_certificate(back).ok);
  }
}

TEST(Certificate, EverySingleLineTamperIsCaughtAtThatLine) {
  std::size_t mutants = 0;
  std::set<std::string> classes;
  for (const auto& c : sample_certificates())
    for (const auto& m : tamper::mutants(c)) {
      auto rep = verify_certificate(Certificate::parse(m.cert.serialize()));
      EXPECT_FALSE(rep.ok) << m.what << ": " << m.cert.trace[m.line];
      ASSERT_TRUE(rep.line.has_value()) << rep.str();
      EXPECT_EQ(*rep.line, m.line) << m.what << ": " << rep.str();
      ++mutants;
      classes.insert(m.what);
    }
  EXPECT_GT(mutants, 100u);
  EXPECT_EQ(classes, (std::set<std::string>{"count", "endpoint", "flip", "indep", "value"}));
}

TEST(Certificate, DisplacementClaimAgainstTheTrace) {
  auto m = move1_scene(Rational(1, 4), 0);
  auto c = move1_conjugators(*m.g, "a", 0).certificate;
  auto it = std::find_if(c.trace.begin(), c.trace.end(),
                         [](const std::string& t) { return t.rfind("claim ", 0) == 0; });
  ASSERT_NE(it, c.trace.end());
  ASSERT_EQ(it->substr(it->size() - 4), " = 1");
  *it = it->substr(0, it->size() - 1) + "7/8";
  auto rep = verify_certificate(c);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(*rep.line, static_cast<std::size_t>(it - c.trace.begin()));
}

TEST(Certificate, TableAndSpaceDamageIsLocated) {
  auto m = move1_scene(Rational(1, 2), 0);
  auto c = move1_conjugators(*m.g, "a", 0).certificate;
  auto bad_table = c;
  auto& pairs = bad_table.isometries.at("g");
  ASSERT_GE(pairs.size(), 1u);
  pairs.push_back({pairs[0].first, pairs[0].first == "a" ? "a3" : "a"});
  auto rep = verify_certificate(bad_table);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.location.rfind("isometries.g[", 0), 0u) << rep.str();

  auto bad_space = c;
  bad_space.space["dist"][0][1] = "5/4";
  bad_space.space["dist"][1][0] = "5/4";
  rep = verify_certificate(bad_space);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.location, "space");
}

TEST(Certificate, StructuralDamageIsAParseError) {
  for (const char* text : {"", "{", "[]", R"({"format": "other"})",
                           R"({"format": "urysohn-certificate/1", "kind": "x"})"}) {
    try {
      Certificate::parse(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParseError) << text;
    }
  }
}

TEST(Certificate, UnknownDirectiveAndPoint) {
  Certificate c;
  c.kind = "manual";
  c.space = space_to_json(validate_space({"a", "b"}, {{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(0)}}));
  c.trace = {"assert d(a,b) = 1/2", "assert 2*d(a,b) - 1 = 0", "claim d(a,b) + d(b,a) <= 1", "frobnicate"};
  auto rep = verify_certificate(c);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(*rep.line, 3u);
  c.trace = {"assert d(a,zz) = 1"};
  EXPECT_FALSE(verify_certificate(c).ok);
  c.trace = {"assert indep {a} | {} | {b}"};
  EXPECT_FALSE(verify_certificate(c).ok);
}

}  // namespace
}  // namespace ury
