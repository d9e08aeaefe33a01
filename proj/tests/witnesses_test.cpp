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

#include <map>

#include "urysohn.hpp"
#include "support/oracles.hpp"

namespace ury {
namespace {

using L = std::vector<Label>;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kOracleFailure;
}

TEST(Move1Chain, ShapeAndEndpoints) {
  for (auto k : {Rational(1), Rational(1, 3), Rational(2, 5), Rational(1, 10), Rational(3, 7)}) {
    auto c = move1_chain(k);
    const auto m = static_cast<std::size_t>(ceil_to_long(one() / k));
    EXPECT_EQ(c.steps, m);
    ASSERT_EQ(c.points.size(), m + 1);
    EXPECT_TRUE(oracle::is_metric(c.space.matrix()));
    EXPECT_EQ(c.space.distance(c.points.front(), c.points.back()), one());
    EXPECT_EQ(c.space.distance(c.points[0], c.points[1]), k);
  }
  EXPECT_EQ(kind_of([] { move1_chain(Rational(0)); }), ErrorKind::kOutOfRange);
  EXPECT_EQ(kind_of([] { move1_chain(Rational(3, 2)); }), ErrorKind::kOutOfRange);
}

TEST(Move1, UsesCeilOneOverKConjugates) {
  for (long n = 1; n <= 10; ++n) {
    auto scene = move1_scene(Rational(1, n), n);
    auto r = move1_conjugators(*scene.g, "a", n);
    EXPECT_EQ(r.conjugates, static_cast<std::size_t>(n));
    EXPECT_EQ(scene.universe->distance(r.start, r.end), one());
    EXPECT_EQ(r.end, r.chain.back());
    auto rep = verify_certificate(r.certificate);
    EXPECT_TRUE(rep.ok) << rep.str();
    EXPECT_NE(std::find(r.certificate.trace.begin(), r.certificate.trace.end(), "count w:g " + std::to_string(n)),
              r.certificate.trace.end());
  }
  auto scene = move1_scene(Rational(2, 5), 1);
  auto r = move1_conjugators(*scene.g, "a", 1);
  EXPECT_EQ(r.conjugates, 3u);
  EXPECT_EQ(scene.universe->distance(r.start, r.end), one());
}

TEST(Move1, FixedPointIsRejected) {
  Universe u(validate_space({"a"}, {{Rational(0)}}));
  LazyIsometry id(u, "g", StrategyKind::kIdentity);
  EXPECT_EQ(kind_of([&] { move1_conjugators(id, "a"); }), ErrorKind::kPreconditionFailed);
}

TEST(ConjugateCount, MultiplesOf512) {
  for (std::int64_t n = 1; n <= 10; ++n) EXPECT_EQ(conjugate_count(n), static_cast<std::uint64_t>(n) * 512u);
  EXPECT_EQ(conjugate_count(4), 2048u);
  EXPECT_EQ(kind_of([] { conjugate_count(0); }), ErrorKind::kOutOfRange);
}

TEST(Sphere, BoundsHoldExactly) {
  std::map<std::string, int> gaps;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto kind = seed % 2 ? StrategyKind::kTight : StrategyKind::kFree;
    auto scene = sphere_scene(2 + seed % 4, 12, seed, kind);
    auto& u = *scene.universe;
    auto r = sphere_witness(*scene.g, scene.base, scene.base[0]);
    for (const auto& c : scene.base) EXPECT_EQ(u.distance(r.x, c), one());
    EXPECT_GE(u.distance(r.x, r.gx), Rational(1, 2));
    EXPECT_LE(u.distance(r.x, r.gb), Rational(1, 2));
    EXPECT_EQ(u.distance(r.x, r.gb), r.gb_gap);
    if (r.gb_gap.is_zero()) {
      EXPECT_EQ(r.x, r.gb);
    }
    EXPECT_TRUE(verify_certificate(r.certificate).ok);
    ++gaps[r.gb_gap.is_zero() ? "zero" : "positive"];
  }
  EXPECT_GT(gaps["zero"], 0);
  EXPECT_GT(gaps["positive"], 0);
}

TEST(Sphere, Preconditions) {
  auto scene = sphere_scene(3, 12, 1);
  EXPECT_EQ(kind_of([&] { sphere_witness(*scene.g, scene.base, "zz"); }), ErrorKind::kPreconditionFailed);
  auto m = move1_scene(Rational(1, 2), 1);
  EXPECT_EQ(kind_of([&] { sphere_witness(*m.g, m.base, "a"); }), ErrorKind::kPreconditionFailed);
}

struct TypeScene {
  Scene scene;
  KatetovFunction p;
};

TypeScene type_scene(std::uint64_t seed, const Rational& d, StrategyKind kind = StrategyKind::kFree) {
  Rng rng = derive_rng(seed, 1);
  auto s = make_scene(random_space(static_cast<std::size_t>(uniform_int(rng, 1, 4)), 12, rng, "x"), seed, kind);
  auto p = random_type_of_distance(s.universe->space(), d, 12, rng);
  return {std::move(s), std::move(p)};
}

TEST(Alltypes, EqualDistanceNeedsNoProlongation) {
  auto t = type_scene(1, Rational(1, 2));
  auto r = alltypes_witness(*t.scene.g, generic_oracle(), Rational(1, 2), t.p);
  EXPECT_TRUE(r.outcome.almost_maximal());
  EXPECT_EQ(r.outcome.realization, r.z);
  EXPECT_EQ(r.bound, one());
}

TEST(Alltypes, DisplacementBranchAtThreeQuarters) {
  // d0 = 1: z is moved to distance 1, so y is moved by at least 1/2
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto t = type_scene(seed, Rational(3, 4));
    auto r = alltypes_witness(*t.scene.g, generic_oracle(), one(), t.p);
    EXPECT_EQ(r.bound, Rational(1, 2));
    auto& u = *t.scene.universe;
    if (r.displacement_branch) {
      EXPECT_GE(u.distance(r.outcome.realization, r.outcome.image), Rational(1, 2));
    }
    EXPECT_TRUE(verify_certificate(r.certificate).ok);
  }
}

TEST(Alltypes, DisjunctionOnRandomTrials) {
  const std::vector<Rational> d0s{one(), Rational(3, 4), Rational(1, 2), Rational(1, 4)};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Rational d0 = d0s[seed % 4];
    Rng rng = derive_rng(seed, 2);
    const Rational d = d0 - Rational(uniform_int(rng, 0, ceil_to_long(d0 * Rational(12)) - 1), 12);
    auto t = type_scene(seed, d);
    auto r = alltypes_witness(*t.scene.g, generic_oracle(), d0, t.p);
    const auto& u = *t.scene.universe;
    const bool am = is_independent(u.space(), L{r.outcome.realization}, t.p.base().labels(), L{r.outcome.image})
                        .independent;
    EXPECT_TRUE(am || u.distance(r.outcome.realization, r.outcome.image) >= r.bound);
    EXPECT_EQ(am, r.outcome.almost_maximal());
    EXPECT_EQ(r.bound, one() - Rational(2) * (d0 - d));
    EXPECT_TRUE(verify_certificate(r.certificate).ok);
  }
}

TEST(Alltypes, OracleMustDeliverAlmostMaximalMoves) {
  auto t = type_scene(2, Rational(1, 4));
  MoverOracle liar = [](Isometry& g, const KatetovFunction& p, CertificateBuilder* c) {
    auto o = move_type(g, p, c);
    o.kind = MoveOutcome::Kind::kDisplacement;
    return o;
  };
  EXPECT_EQ(kind_of([&] { alltypes_witness(*t.scene.g, liar, Rational(1, 2), t.p); }), ErrorKind::kOracleFailure);
  EXPECT_EQ(kind_of([&] { alltypes_witness(*t.scene.g, generic_oracle(), Rational(1, 8), t.p); }),
            ErrorKind::kPreconditionFailed);
}

struct TwoKdScene {
  TypeScene t;
  std::unique_ptr<LazyIsometry> h;
};

TwoKdScene two_kd_scene(std::uint64_t seed, const Rational& d, StrategyKind kind) {
  TwoKdScene s{type_scene(seed, d, kind), nullptr};
  s.h = std::make_unique<LazyIsometry>(*s.t.scene.universe, "h", StrategyKind::kFree, seed + 1000);
  for (const auto& x : s.t.scene.base) s.h->apply(x);
  return s;
}

TEST(TwoKd, GenericMoverGivesIndependence) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto s = two_kd_scene(seed, Rational(1 + long(seed % 12), 12), StrategyKind::kFree);
    auto r = two_kd_extension_step(*s.t.scene.g, generic_oracle(), Rational(1, 4), *s.h, s.t.p);
    EXPECT_EQ(r.proof_case, 2);
    EXPECT_TRUE(r.outcome.almost_maximal());
    const auto& u = *s.t.scene.universe;
    std::vector<std::size_t> ai{u.space().index(r.outcome.realization)}, ci{u.space().index(r.outcome.image)}, bi;
    for (const auto& x : s.t.p.base().labels()) bi.push_back(u.space().index(x));
    EXPECT_TRUE(oracle::independent(u.space().matrix(), ai, bi, ci));
    EXPECT_EQ(s.h->apply(r.a), r.b);
    EXPECT_TRUE(s.h->table().verify(u.space()).empty());
    EXPECT_TRUE(verify_certificate(r.certificate).ok);
  }
}

// A mover that keeps images close reaches the displacement case; there the
// commutator moves a by d(a,g(a)) + d(b,g(b)).
TEST(TwoKd, DisplacementsAddUp) {
  std::map<int, int> cases;
  int displaced = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto s = two_kd_scene(seed, Rational(1 + long(seed % 6), 12), StrategyKind::kTight);
    auto& g = *s.t.scene.g;
    auto r = two_kd_extension_step(g, generic_oracle(), Rational(0), *s.h, s.t.p);
    ++cases[r.proof_case];
    const auto& u = *s.t.scene.universe;
    EXPECT_TRUE(s.h->table().verify(u.space()).empty());
    EXPECT_TRUE(verify_certificate(r.certificate).ok) << verify_certificate(r.certificate).str();
    if (!r.outcome.almost_maximal()) {
      ++displaced;
      const Rational da = u.distance(r.a, *g.table().forward(r.a));
      const Rational db = u.distance(r.b, *g.table().forward(r.b));
      EXPECT_EQ(r.outcome.displacement, da + db);
    }
  }
  EXPECT_GT(cases[1], 0);
  EXPECT_GT(displaced, 0);
}

TEST(TwoKd, FloorAndDomainPreconditions) {
  auto s = two_kd_scene(4, Rational(1, 2), StrategyKind::kTight);
  LazyIsometry empty_h(*s.t.scene.universe, "k", StrategyKind::kFree, 1);
  EXPECT_EQ(kind_of([&] { two_kd_extension_step(*s.t.scene.g, generic_oracle(), Rational(0), empty_h, s.t.p); }),
            ErrorKind::kPreconditionFailed);
  // a floor no displacement reaches, with a mover that never moves maximally
  MoverOracle never = [](Isometry& g, const KatetovFunction& p, CertificateBuilder* c) {
    auto o = move_type(g, p, c);
    o.kind = MoveOutcome::Kind::kDisplacement;
    return o;
  };
  EXPECT_EQ(kind_of([&] { two_kd_extension_step(*s.t.scene.g, never, Rational(2), *s.h, s.t.p); }),
            ErrorKind::kOracleFailure);
}

TEST(MoveType, FreeMoverIsAlmostMaximal) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = derive_rng(seed, 5);
    auto t = type_scene(seed, Rational(uniform_int(rng, 1, 12), 12));
    auto o = move_type(*t.scene.g, t.p);
    EXPECT_TRUE(o.almost_maximal());
    EXPECT_EQ(o.base, t.p.base().labels());
  }
}

}  // namespace
}  // namespace ury
