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

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "urysohn/move.hpp"

namespace ury {

inline constexpr std::uint64_t kConjugatesPerAlmostMaximalMover = 16;  // 2^4, applied symbolically
inline constexpr std::uint64_t kConjugatesFromDistanceOne = 512;       // 2^9

namespace detail {

inline void append_unique(std::vector<Label>& out, const Label& l) {
  if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
}

/// Restriction to `base` of the independent extension of p over the
/// universe: the type over `base` of a point independent from it over X.
inline KatetovFunction independent_type_over(const Universe& u, const KatetovFunction& p,
                                             const std::vector<Label>& base) {
  auto profile = canonical_profile(p, u.space());
  std::vector<Rational> values;
  for (const auto& l : base) values.push_back(profile[u.space().index(l)]);
  return KatetovFunction::make(u.space().restrict_to(base), std::move(values));
}

inline Word word_of(Isometry& g) {
  if (auto* lazy = dynamic_cast<LazyIsometry*>(&g)) return Word::leaf(*lazy);
  if (auto* w = dynamic_cast<WordIsometry*>(&g)) return w->word();
  throw Error(ErrorKind::kPreconditionFailed, "isometry '" + g.name() + "' has no word form");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Moving some point by distance 1 with a product of conjugates.

struct ChainSpace {
  FiniteMetricSpace space;
  std::vector<Label> points;  // a_0 .. a_m
  std::size_t steps = 0;      // m = ceil(1/k)
};

/// Truncated path a_0..a_m with d(a_i,a_j) = min(1, |i-j| k), m = ceil(1/k).
inline ChainSpace move1_chain(const Rational& k, const std::vector<Label>& labels = {}) {
  if (k.sign() <= 0 || k > one()) throw Error(ErrorKind::kOutOfRange, "step " + k.str() + " outside (0,1]");
  const auto m = static_cast<std::size_t>(ceil_to_long(one() / k));
  ChainSpace out;
  out.steps = m;
  for (std::size_t i = 0; i <= m; ++i)
    out.points.push_back(i < labels.size() ? labels[i] : "a" + std::to_string(i));
  Matrix d(m + 1, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j <= m; ++j) {
      long gap = static_cast<long>(i > j ? i - j : j - i);
      d[i][j] = min(one(), Rational(gap) * k);
    }
  out.space = validate_space(out.points, std::move(d));
  return out;
}

struct Move1Result {
  Rational k;
  std::vector<Label> chain;  // a = a_0, a_1, ..., a_m
  std::size_t conjugates = 0;
  Label start, end;
  Certificate certificate;
};

/// Given d(a, g(a)) = k > 0, builds h_1..h_m with h_i(a) = a_{i-1} and
/// h_i(g(a)) = a_i along a chain from a to a point at distance 1; then the
/// product of the conjugates g^{h_i} maps a to a_m.
inline Move1Result move1_conjugators(LazyIsometry& g, const Label& a, std::uint64_t seed = 0) {
  Universe& u = g.universe();
  CertificateBuilder cert("move1");
  Label ga = cert.apply(g, a);
  const Rational k = u.distance(a, ga);
  if (k.is_zero()) throw Error(ErrorKind::kPreconditionFailed, "g fixes " + a);
  cert.param("k", k.str());

  // Chain a_0 = a, a_1 = g(a), fresh a_2..a_m, glued freely over {a, g(a)}.
  std::vector<Label> labels{a, ga};
  const auto m = static_cast<std::size_t>(ceil_to_long(one() / k));
  for (std::size_t i = 2; i <= m; ++i) {
    Label l = u.unique_label("a" + std::to_string(i));
    while (std::find(labels.begin(), labels.end(), l) != labels.end()) l += "_";
    labels.push_back(l);
  }
  auto chain = move1_chain(k, labels);
  try {
    std::vector<Label> base{a, ga};
    u.adopt(amalgamate(u.space(), chain.space, base));
  } catch (const Error& e) {
    throw Error(ErrorKind::kInconsistentChain, e.what());
  }
  cert.param("m", std::to_string(m));
  cert.note("chain a_0..a_m with d(a_i,a_j) = min(1, |i-j| k)");

  std::vector<std::unique_ptr<LazyIsometry>> hs;
  std::vector<Word> factors;
  for (std::size_t i = 1; i <= m; ++i) {
    auto kind = i == 1 ? StrategyKind::kIdentity : StrategyKind::kFree;
    hs.push_back(std::make_unique<LazyIsometry>(u, "h" + std::to_string(i), kind, seed + i));
    hs.back()->force(a, chain.points[i - 1]);
    hs.back()->force(ga, chain.points[i]);
    factors.push_back(Word::conjugate(Word::leaf(g), Word::leaf(*hs.back())));
    cert.check(d_term(chain.points[i - 1], chain.points[i]) + " = " + d_term(a, ga));
  }
  WordIsometry product(u, "w", Word::product(factors));
  Label end = cert.apply(product, a);
  cert.line("count w:" + g.name() + " " + std::to_string(m));
  cert.claim(d_term(a, end) + " = 1");

  Move1Result out;
  out.k = k;
  out.chain = chain.points;
  out.conjugates = m;
  out.start = a;
  out.end = end;
  out.certificate = cert.finish(u);
  return out;
}

/// n * 2^9: conjugates of g and g^-1 needed once some point moves by >= 1/n.
inline std::uint64_t conjugate_count(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::kOutOfRange, "n must be positive");
  return static_cast<std::uint64_t>(n) * kConjugatesFromDistanceOne;
}

// ---------------------------------------------------------------------------
// A point at distance 1 from A that is moved by at least 1/2.

struct SphereResult {
  Label a, b, gb, x, gx;
  Rational gb_gap;  // chosen d(x, g(b)), the least admissible value
  Certificate certificate;
};

inline SphereResult sphere_witness(Isometry& g, const std::vector<Label>& A, const Label& a) {
  Universe& u = g.universe();
  if (std::find(A.begin(), A.end(), a) == A.end())
    throw Error(ErrorKind::kPreconditionFailed, a + " is not in A");
  CertificateBuilder cert("sphere");
  cert.param("A", set_term(A));
  Label ga = cert.apply(g, a);
  if (u.distance(a, ga) != one())
    throw Error(ErrorKind::kPreconditionFailed, "d(a,g(a)) = " + u.distance(a, ga).str() + ", not 1");
  cert.check(d_term(a, ga) + " = 1");

  std::vector<Label> Y = A;
  for (const auto& c : A) detail::append_unique(Y, cert.apply_inverse(g, c));

  std::vector<Label> base_a{a};
  auto half = KatetovFunction::make(u.space().restrict_to(base_a), std::vector<Rational>{Rational(1, 2)});
  Label b = u.realize_independent(half, "b");
  cert.check(d_term(b, a) + " = 1/2");
  cert.check("indep {" + b + "} | {" + a + "} | " + set_term(Y));
  Label gb = cert.apply(g, b);

  std::vector<Label> Ab = A;
  detail::append_unique(Ab, b);
  Rational gap;
  for (const auto& c : Ab) {
    gap = max(gap, one() - u.distance(c, gb));
    cert.check(d_term(gb, c) + " >= 1/2");
  }
  std::vector<Label> base = Ab;
  base.push_back(gb);
  std::vector<Rational> values(Ab.size(), one());
  values.push_back(gap);
  auto xt = KatetovFunction::make(u.space().restrict_to(base), std::move(values));
  Label x = u.realize_independent(xt, "x");
  cert.check(d_term(x, gb) + " = " + gap.str());
  cert.check(d_term(x, gb) + " <= 1/2");
  Label gx = cert.apply(g, x);
  for (const auto& c : A) cert.claim(d_term(x, c) + " = 1");
  cert.claim(d_term(x, gx) + " >= 1/2");

  SphereResult out{a, b, gb, x, gx, gap, cert.finish(u)};
  return out;
}

// ---------------------------------------------------------------------------
// From "moves every type of distance d0 almost maximally" to types of
// distance d <= d0.

struct AlltypesResult {
  MoveOutcome outcome;
  bool displacement_branch = false;
  Label z, gz;
  Rational bound;  // 1 - 2(d0 - d)
  Certificate certificate;
};

inline AlltypesResult alltypes_witness(Isometry& g, const MoverOracle& oracle, const Rational& d0,
                                       const KatetovFunction& p) {
  Universe& u = g.universe();
  const Rational d = distance_of_type(p);
  if (d0 > one() || d > d0)
    throw Error(ErrorKind::kPreconditionFailed, "need d = " + d.str() + " <= d0 = " + d0.str() + " <= 1");
  const Rational eps = d0 - d;
  CertificateBuilder cert("alltypes");
  cert.param("d0", d0.str());
  cert.param("d", d.str());

  const auto& X = p.base().labels();
  std::vector<Label> Z = X;
  for (const auto& x : X) detail::append_unique(Z, cert.apply_inverse(g, x));
  auto p_prime = detail::independent_type_over(u, p, Z);
  auto q = prolongation(p_prime, eps);

  auto oz = oracle(g, q, &cert);
  if (!oz.almost_maximal())
    throw Error(ErrorKind::kOracleFailure, "oracle did not move a distance-" + d0.str() +
                                               " type almost maximally");
  const Label z = oz.realization, gz = oz.image;
  cert.check("indep {" + z + "} | " + set_term(Z) + " | {" + gz + "}");

  // y realizes p' at distance eps from z; z then factors through y over Z.
  std::vector<Label> ybase = Z;
  ybase.push_back(z);
  auto yvalues = p_prime.values();
  yvalues.push_back(eps);
  Label y = u.realize_independent(KatetovFunction::make(u.space().restrict_to(ybase), std::move(yvalues)), "y");
  cert.check(d_term(y, z) + " = " + eps.str());
  for (const auto& w : Z)
    if (u.distance(z, w) < one()) cert.check(d_term(z, w) + " = " + d_term(z, y) + " + " + d_term(y, w));
  Label gy = cert.apply(g, y);

  AlltypesResult out;
  out.z = z;
  out.gz = gz;
  out.bound = one() - Rational(2) * eps;
  out.outcome = classify_move(u.space(), y, gy, X);
  if (u.distance(z, gz) == one()) {
    out.displacement_branch = true;
    if (out.outcome.displacement < out.bound)
      throw Error(ErrorKind::kPreconditionFailed,
                  y + " moved by " + out.outcome.displacement.str() + " < " + out.bound.str());
    cert.check(d_term(z, gz) + " = 1");
    cert.check(d_term(gy, gz) + " = " + eps.str());
    cert.claim(d_term(y, gy) + " >= " + out.bound.str());
  } else {
    cert.check("indep {" + z + "} | " + set_term(X) + " | {" + gz + "}");
    for (const auto& b : X)
      if (u.distance(z, gz) == u.distance(z, b) + u.distance(b, gz)) {
        cert.check(d_term(z, gz) + " = " + d_term(z, b) + " + " + d_term(b, gz));
        break;
      }
    if (!out.outcome.almost_maximal())
      throw Error(ErrorKind::kPreconditionFailed, y + " is not moved almost maximally");
    cert.claim("indep {" + y + "} | " + set_term(X) + " | {" + gy + "}");
  }
  out.certificate = cert.finish(u);
  return out;
}

// ---------------------------------------------------------------------------
// One back-and-forth step for h so that [g,h] doubles the displacement floor.

struct TwoKdResult {
  MoveOutcome outcome;  // how [g,h] moves the realization a of p
  int proof_case = 0;   // 1: both displaced >= C, 2: a moved almost maximally, 3: b moved almost maximally
  Label a, b, c;
  Certificate certificate;
};

/// Extends `h` (domain U, range V, with X = base(p) inside U) by a -> b and
/// c -> g(b) such that [g,h] = g^-1 h^-1 g h maps a to g^-1(c), and g^-1(c)
/// is independent from a over X or at distance >= 2C. `oracle` must report
/// either an almost maximal move or a displacement >= C for every type of
/// distance d(p) it is asked about.
inline TwoKdResult two_kd_extension_step(Isometry& g, const MoverOracle& oracle, const Rational& floor_c,
                                         LazyIsometry& h, const KatetovFunction& p) {
  Universe& u = g.universe();
  if (floor_c.sign() < 0) throw Error(ErrorKind::kPreconditionFailed, "C must be >= 0");
  const auto& X = p.base().labels();
  const auto U = h.table().domain();
  const auto V = h.table().range();
  for (const auto& x : X)
    if (!h.table().in_domain(x)) throw Error(ErrorKind::kPreconditionFailed, x + " not in dom(h)");
  const Rational d = distance_of_type(p);

  CertificateBuilder cert("2kd");
  cert.param("d", d.str());
  cert.param("C", floor_c.str());
  cert.declare(h);
  cert.mention(U);
  cert.mention(V);

  std::vector<Label> Y = U;
  for (const auto& x : U) detail::append_unique(Y, cert.apply_inverse(g, x));
  for (const auto& x : X) cert.apply(g, x);

  auto check_floor = [&](const MoveOutcome& o, const char* who) {
    if (!o.almost_maximal() && o.displacement < floor_c)
      throw Error(ErrorKind::kOracleFailure, std::string(who) + " moved by " + o.displacement.str() +
                                                 " < C = " + floor_c.str());
  };

  auto oa = oracle(g, detail::independent_type_over(u, p, Y), &cert);
  check_floor(oa, "a");
  const Label a = oa.realization, ga = oa.image;
  cert.check("indep {" + a + "} | " + set_term(X) + " | " + set_term(Y));

  std::vector<Rational> tv;
  for (const auto& [x, y] : h.table().pairs()) tv.push_back(u.distance(a, x));
  auto transported = KatetovFunction::make(u.space().restrict_to(V), std::move(tv));
  auto ob = oracle(g, transported, &cert);
  check_floor(ob, "b");
  const Label b = ob.realization, gb = ob.image;
  for (const auto& [x, y] : h.table().pairs()) cert.check(d_term(b, y) + " = " + d_term(a, x));

  // c realizes the pull-back of tp(g(b) / V b) over U a, independent from X g(a).
  std::vector<Label> cbase = U;
  std::vector<Rational> cv;
  for (const auto& [x, y] : h.table().pairs()) cv.push_back(u.distance(gb, y));
  detail::append_unique(cbase, a);
  if (cbase.size() > cv.size()) cv.push_back(u.distance(gb, b));
  Label c = u.realize_independent(KatetovFunction::make(u.space().restrict_to(cbase), std::move(cv)), "c");
  std::vector<Label> xga = X;
  detail::append_unique(xga, ga);
  if (std::find(cbase.begin(), cbase.end(), c) == cbase.end())
    cert.check("indep {" + c + "} | " + set_term(cbase) + " | " + set_term(xga));

  h.force(a, b);
  h.force(c, gb);
  if (auto bad = h.table().verify(u.space()); !bad.empty())
    throw Error(ErrorKind::kIsometryViolation, "h lost the isometry property", bad);
  cert.mention(std::vector<Label>{a, b, c, gb});

  WordIsometry comm(u, "comm", Word::commutator(detail::word_of(g), Word::leaf(h)));
  const Label image = cert.apply(comm, a);
  cert.check(d_term(a, image) + " = " + d_term(c, ga));

  TwoKdResult out;
  out.a = a;
  out.b = b;
  out.c = c;
  out.proof_case = oa.almost_maximal() ? 2 : (ob.almost_maximal() ? 3 : 1);
  out.outcome = classify_move(u.space(), a, image, X);
  cert.param("case", std::to_string(out.proof_case));
  if (out.outcome.almost_maximal()) {
    cert.claim("indep {" + a + "} | " + set_term(X) + " | {" + image + "}");
  } else {
    const Rational twice = Rational(2) * floor_c;
    if (out.outcome.displacement < twice)
      throw Error(ErrorKind::kPreconditionFailed,
                  "[g,h] moved " + a + " by " + out.outcome.displacement.str() + " < " + twice.str());
    cert.check(d_term(c, a) + " = " + d_term(b, gb));
    cert.check(d_term(c, ga) + " = " + d_term(c, a) + " + " + d_term(a, ga));
    cert.check(d_term(a, ga) + " >= " + floor_c.str());
    cert.check(d_term(b, gb) + " >= " + floor_c.str());
    cert.claim(d_term(a, image) + " >= " + twice.str());
  }
  out.certificate = cert.finish(u);
  return out;
}

// ---------------------------------------------------------------------------
// Seeded starting configurations for the constructions above.

/// A universe with a lazily built g (free mode unless asked otherwise). The universe is heap-allocated so the
/// scene can be moved while g keeps pointing at it.
struct Scene {
  std::unique_ptr<Universe> universe;
  std::unique_ptr<LazyIsometry> g;
  std::vector<Label> base;  // the starting points
};

inline Scene make_scene(FiniteMetricSpace start, std::uint64_t seed, StrategyKind kind = StrategyKind::kFree) {
  Scene s;
  s.universe = std::make_unique<Universe>(std::move(start));
  s.g = std::make_unique<LazyIsometry>(*s.universe, "g", kind, seed);
  s.base = s.universe->space().labels();
  return s;
}

/// Point a with d(a, g(a)) = k.
inline Scene move1_scene(const Rational& k, std::uint64_t seed) {
  if (k.sign() <= 0 || k > one()) throw Error(ErrorKind::kOutOfRange, "k = " + k.str() + " outside (0,1]");
  Scene s = make_scene(validate_space({"a"}, {{Rational(0)}}), seed);
  auto t = KatetovFunction::make(s.universe->space(), std::vector<Rational>{k});
  s.g->force("a", s.universe->realize(t.values(), "ga"));
  return s;
}

/// Random A of `points` points; g sends its first point to distance 1 from A.
inline Scene sphere_scene(std::size_t points, long den, std::uint64_t seed,
                          StrategyKind kind = StrategyKind::kFree) {
  Rng rng = derive_rng(seed, 0);
  Scene s = make_scene(random_space(points, den, rng, "a"), seed, kind);
  std::vector<Rational> far(points, one());
  auto t = KatetovFunction::make(s.universe->space(), far);
  s.g->force(s.base[0], s.universe->realize(t.values(), "ga"));
  return s;
}

}  // namespace ury
