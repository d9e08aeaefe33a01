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

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "urysohn/witnesses.hpp"

namespace ury {

/// slope * d + offset, printed as "2d-1/2", "4d", "1/2".
struct Affine {
  Rational slope, offset;

  Rational at(const Rational& d) const { return slope * d + offset; }
  Affine doubled() const { return {Rational(2) * slope, Rational(2) * offset}; }
  bool operator==(const Affine&) const = default;

  std::string str() const {
    std::string out;
    if (!slope.is_zero()) out = (slope == one() ? "" : slope.str()) + "d";
    if (offset.is_zero()) return out.empty() ? "0" : out;
    if (out.empty()) return offset.str();
    return out + (offset.sign() > 0 ? "+" + offset.str() : offset.str());
  }
};

/// One doubling step: g_i = [g_{i-1}, h_i] moves every type of distance d
/// almost maximally or by `doubled`(d). All types of distance >= threshold
/// are therefore moved almost maximally; for smaller d the alltypes lemma
/// with d0 = threshold gives `guarantee`(d) = 1 - 2(threshold - d).
struct LadderState {
  int step = 0;
  Affine doubled;
  Rational threshold;
  std::optional<Affine> guarantee;  // absent once every type is moved almost maximally
  std::uint64_t letters = 0;        // conjugates of g and g^-1 in g_i

  bool all_almost_maximal() const { return !guarantee; }
};

struct LadderRun {
  std::vector<LadderState> states;
  std::uint64_t total = 0;  // letters of g_5 times the final 2^4
  std::vector<std::string> anomalies;
  Certificate certificate;

  std::string table() const {
    std::ostringstream os;
    os << "step  doubled  threshold  guarantee  letters\n";
    for (const auto& s : states)
      os << "g" << s.step << "    " << s.doubled.str() << "  " << s.threshold.str() << "  "
         << (s.guarantee ? s.guarantee->str() : "almost-maximal") << "  " << s.letters << "\n";
    os << "total " << total << "\n";
    for (const auto& a : anomalies) os << "anomaly " << a << "\n";
    return os.str();
  }
};

namespace ladder_detail {

struct Expected {
  Rational threshold;
  const char* doubled;
  const char* guarantee;
};

inline std::vector<Expected> expected_chain() {
  return {{one(), "1", "2d-1"},
          {Rational(3, 4), "4d-2", "2d-1/2"},
          {Rational(1, 2), "4d-1", "2d"},
          {Rational(1, 4), "4d", "2d+1/2"},
          {Rational(0), "4d+1", nullptr}};
}

}  // namespace ladder_detail

/// Replays the doubling ladder with exact arithmetic. Starts from "every
/// type of distance 1 is moved by 1/2" and stops once every type is moved
/// almost maximally. Throws LadderBroken if any line deviates from the
/// expected chain.
inline LadderRun ladder_symbolic() {
  LadderRun run;
  CertificateBuilder cert("ladder");
  cert.note("start: every type of distance 1 is moved by 1/2");

  Affine g{Rational(0), Rational(1, 2)};
  Rational domain_lo = one();  // the starting guarantee only covers d = 1
  std::uint64_t letters = 1;
  for (int step = 1; step <= 8; ++step) {
    LadderState st;
    st.step = step;
    st.doubled = g.doubled();
    letters *= 2;
    st.letters = letters;
    // least d >= domain_lo with doubled(d) >= 1
    Rational t;
    if (st.doubled.slope.is_zero()) {
      if (st.doubled.offset < one()) throw Error(ErrorKind::kLadderBroken, "constant guarantee below 1");
      t = domain_lo;
    } else {
      t = max(domain_lo, max(Rational(0), (one() - st.doubled.offset) / st.doubled.slope));
    }
    st.threshold = t;
    const std::string s = "g" + std::to_string(step);
    cert.note(s + ": doubled guarantee " + st.doubled.str() + ", threshold " + t.str());
    cert.check(st.doubled.slope.str() + "*" + t.str() + " + " + st.doubled.offset.str() +
               (t.is_zero() ? " >= 1" : " = 1"));
    if (t.is_zero()) {
      cert.note(s + ": every type is moved almost maximally");
      run.states.push_back(st);
      break;
    }
    st.guarantee = Affine{Rational(2), one() - Rational(2) * t};
    cert.check("1 - 2*" + t.str() + " = " + st.guarantee->offset.str());
    cert.note(s + ": alltypes with d0 = " + t.str() + " gives " + st.guarantee->str());
    if (step == 3) {
      std::string a = "g3: threshold 1/2 is forced by 4d-1 >= 1; alltypes with d0 = 1/4 would not give 2d";
      run.anomalies.push_back(a);
      cert.note("anomaly " + a);
      cert.check("1 - 2*1/4 != 0");
    }
    run.states.push_back(st);
    g = *st.guarantee;
    domain_lo = Rational(0);
  }

  const auto exp = ladder_detail::expected_chain();
  if (run.states.size() != exp.size())
    throw Error(ErrorKind::kLadderBroken, "ladder took " + std::to_string(run.states.size()) + " steps");
  for (std::size_t i = 0; i < exp.size(); ++i) {
    const auto& st = run.states[i];
    const bool ok = st.threshold == exp[i].threshold && st.doubled.str() == exp[i].doubled &&
                    (exp[i].guarantee ? st.guarantee && st.guarantee->str() == exp[i].guarantee : !st.guarantee);
    if (!ok) throw Error(ErrorKind::kLadderBroken, "g" + std::to_string(st.step) + " deviates");
  }

  const auto letters5 = run.states.back().letters;
  run.total = letters5 * kConjugatesPerAlmostMaximalMover;
  auto ex = expand_commutator_word(run.states.size());
  cert.declare_word("g5", ex.nested);
  cert.declare_word("g5_product", ex.product);
  cert.line("count g5:g " + std::to_string(letters5));
  cert.line("count g5_product:g " + std::to_string(letters5));
  cert.claim(std::to_string(letters5) + "*" + std::to_string(kConjugatesPerAlmostMaximalMover) + " = " +
             std::to_string(run.total));
  cert.param("letters", std::to_string(letters5));
  cert.param("total", std::to_string(run.total));
  Universe none;
  run.certificate = cert.finish(none);
  return run;
}

// ---------------------------------------------------------------------------
// Concrete companion: each ladder stage's lemma steps run against a generic g.

struct ConcreteStage {
  int step = 0;
  Rational d;          // distance of the type
  Rational floor_c;    // the previous guarantee at d, the 2kd floor
  AlltypesResult alltypes;
  TwoKdResult two_kd;
};

struct ConcreteLadder {
  std::vector<ConcreteStage> stages;
  std::size_t certified = 0;
  std::size_t failed = 0;
  std::vector<Certificate> certificates;
};

/// For `types` random types per stage, runs alltypes at the stage threshold
/// and one 2kd extension step with the previous guarantee as the floor, all
/// against a free-mode g. Every certificate is verified.
inline ConcreteLadder ladder_concrete(std::uint64_t seed, std::size_t types, long den = 12) {
  auto sym = ladder_symbolic();
  ConcreteLadder out;
  for (std::size_t k = 0; k < types; ++k) {
    for (std::size_t i = 0; i < sym.states.size(); ++i) {
      const auto& st = sym.states[i];
      Rng rng = derive_rng(seed, k * 16 + i);
      Universe u;
      u.adopt(random_space(static_cast<std::size_t>(uniform_int(rng, 2, 4)), den, rng, "x"));
      LazyIsometry g(u, "g", StrategyKind::kFree, seed + k);
      LazyIsometry h(u, "h", StrategyKind::kFree, seed + k + 1);
      const auto X = u.space().labels();
      for (const auto& x : X) h.apply(x);

      // types at or just below the threshold, capped at distance 1
      const Rational d0 = st.threshold.is_zero() ? Rational(1, den) : st.threshold;
      Rational d = d0 - Rational(uniform_int(rng, 0, 2), den);
      if (d.sign() <= 0) d = d0;
      auto p = random_type_of_distance(u.space().restrict_to(X), d, den, rng);
      const Rational floor_c =
          i == 0 ? Rational(1, 2) : max(Rational(0), sym.states[i - 1].guarantee->at(d));

      ConcreteStage cs;
      cs.step = st.step;
      cs.d = d;
      cs.floor_c = floor_c;
      cs.alltypes = alltypes_witness(g, generic_oracle(), d0, p);
      cs.two_kd = two_kd_extension_step(g, generic_oracle(), floor_c, h, p);
      for (auto* c : {&cs.alltypes.certificate, &cs.two_kd.certificate}) {
        c->params.emplace_back("stage", std::to_string(st.step));
        if (verify_certificate(*c).ok) ++out.certified;
        else ++out.failed;
        out.certificates.push_back(*c);
      }
      out.stages.push_back(std::move(cs));
    }
  }
  return out;
}

}  // namespace ury
