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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "urysohn/independence.hpp"
#include "urysohn/random.hpp"
#include "urysohn/space_io.hpp"

namespace ury {

using AmalgamFn =
    std::function<FiniteMetricSpace(const FiniteMetricSpace&, const FiniteMetricSpace&, std::span<const Label>)>;

struct SirConfig {
  std::size_t trials = 1000;
  std::size_t max_points = 8;
  long den_bound = 24;
  std::uint64_t seed = 0;
  AmalgamFn amalgam = [](const FiniteMetricSpace& l, const FiniteMetricSpace& r, std::span<const Label> b) {
    return amalgamate(l, r, b);
  };
};

enum class Axiom { kSymmetry, kMonotonicity, kTransitivity, kExistence, kStationarity, kAmalgamation };
inline constexpr std::array kAllAxioms{Axiom::kSymmetry,  Axiom::kMonotonicity, Axiom::kTransitivity,
                                       Axiom::kExistence, Axiom::kStationarity, Axiom::kAmalgamation};

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::kSymmetry: return "symmetry";
    case Axiom::kMonotonicity: return "monotonicity";
    case Axiom::kTransitivity: return "transitivity";
    case Axiom::kExistence: return "existence";
    case Axiom::kStationarity: return "stationarity";
    case Axiom::kAmalgamation: return "amalgamation";
  }
  return "?";
}

struct Counterexample {
  Axiom axiom{};
  std::size_t trial = 0;
  std::string query;   // the failing statement, in trace syntax
  std::string space;   // serialized configuration
  bool reproduced = false;
};

struct AxiomStats {
  std::size_t checked = 0;
  std::size_t failures = 0;
};

struct SirReport {
  std::size_t trials = 0;
  std::array<AxiomStats, kAllAxioms.size()> stats{};
  std::optional<Counterexample> first;

  const AxiomStats& operator[](Axiom a) const { return stats[static_cast<std::size_t>(a)]; }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& s : stats) n += s.failures;
    return n;
  }
  bool ok() const { return failures() == 0; }

  std::string str() const {
    std::ostringstream os;
    os << "trials " << trials << "\n";
    for (Axiom a : kAllAxioms)
      os << "axiom " << to_string(a) << " checked " << (*this)[a].checked << " failures " << (*this)[a].failures
         << "\n";
    if (first) {
      os << "counterexample " << to_string(first->axiom) << " trial " << first->trial
         << (first->reproduced ? " (reproduced)" : " (NOT reproduced)") << "\n"
         << "query " << first->query << "\n"
         << first->space;
    }
    return os.str();
  }
};

namespace sir_detail {

inline std::string set_str(std::span<const Label> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
  return out + "}";
}

inline std::string query_str(std::span<const Label> a, std::span<const Label> b, std::span<const Label> c) {
  return "indep " + set_str(a) + " | " + set_str(b) + " | " + set_str(c);
}

inline std::vector<Label> join(std::vector<Label> a, const std::vector<Label>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::vector<Label> with_prefix(const FiniteMetricSpace& s, char prefix) {
  std::vector<Label> out;
  for (const auto& l : s.labels())
    if (l[0] == prefix) out.push_back(l);
  return out;
}

inline std::vector<Label> random_subset(const std::vector<Label>& from, Rng& rng, std::size_t min_size) {
  std::vector<Label> out;
  for (const auto& l : from)
    if (uniform_int(rng, 0, 1)) out.push_back(l);
  while (out.size() < min_size) {
    const auto& l = from[static_cast<std::size_t>(uniform_int(rng, 0, long(from.size()) - 1))];
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

inline std::vector<Label> complement(const FiniteMetricSpace& s, const std::vector<Label>& x) {
  std::vector<Label> out;
  for (const auto& l : s.labels())
    if (std::find(x.begin(), x.end(), l) == x.end()) out.push_back(l);
  return out;
}

/// Rational in [lo, hi] chosen from lo, hi and the 1/grid points between.
inline Rational pick_between(const Rational& lo, const Rational& hi, long grid, Rng& rng) {
  std::vector<Rational> options{lo, hi};
  for (long k = 0; k <= grid; ++k) {
    Rational v(k, grid);
    if (lo < v && v < hi) options.push_back(v);
  }
  return options[static_cast<std::size_t>(uniform_int(rng, 0, long(options.size()) - 1))];
}

using Fail = std::function<void(Axiom, std::string, const FiniteMetricSpace&)>;

/// Runs one trial. Every axiom instance checked increments `checked`; each
/// failure is passed to `fail`.
inline void run_trial(const SirConfig& cfg, std::size_t t, std::array<AxiomStats, kAllAxioms.size()>& stats,
                      const Fail& fail) {
  Rng rng = derive_rng(cfg.seed, t);
  const long den = uniform_int(rng, 2, cfg.den_bound);
  auto count = [&](Axiom a, bool ok, std::string q, const FiniteMetricSpace& s) {
    auto& st = stats[static_cast<std::size_t>(a)];
    ++st.checked;
    if (!ok) {
      ++st.failures;
      fail(a, std::move(q), s);
    }
  };
  auto indep = [](const FiniteMetricSpace& s, std::span<const Label> a, std::span<const Label> b,
                  std::span<const Label> c) { return is_independent(s, a, b, c).independent; };

  // Symmetry on a random space and random disjoint-ish subsets.
  {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 3, long(cfg.max_points)));
    auto s = random_space(n, den, rng);
    auto a = random_subset(s.labels(), rng, 1);
    auto b = random_subset(s.labels(), rng, 0);
    auto c = random_subset(s.labels(), rng, 1);
    count(Axiom::kSymmetry, indep(s, a, b, c) == indep(s, c, b, a), query_str(a, b, c), s);
  }

  // Amalgamated configuration B < BC < BCD, A glued over B, then D over BC.
  {
    const std::size_t budget = cfg.max_points;
    const auto nb = static_cast<std::size_t>(uniform_int(rng, 0, std::min<long>(2, long(budget) - 3)));
    const std::size_t rest = budget - nb;
    const auto na = static_cast<std::size_t>(uniform_int(rng, 1, long(rest) - 2));
    const auto nc = static_cast<std::size_t>(uniform_int(rng, 1, long(rest - na) - 1));
    const auto nd = static_cast<std::size_t>(uniform_int(rng, 1, long(rest - na - nc)));
    auto B = extend_randomly(FiniteMetricSpace{}, nb, den, rng, "b");
    auto AB = extend_randomly(B, na, den, rng, "a");
    auto BC = extend_randomly(B, nc, den, rng, "c");
    auto BCD = extend_randomly(BC, nd, den, rng, "d");
    const auto bl = B.labels();
    const auto bcl = BC.labels();
    std::optional<FiniteMetricSpace> ABC, ABCD;
    std::string q = "amalgamate " + set_str(AB.labels()) + " " + set_str(BC.labels()) + " over " + set_str(bl);
    try {
      ABC = cfg.amalgam(AB, BC, bl);
      ABCD = cfg.amalgam(*ABC, BCD, bcl);
    } catch (const Error& e) {
      count(Axiom::kAmalgamation, false, q + ": " + e.what(), AB);
    }
    if (ABC && ABCD) {
      auto A = with_prefix(*ABCD, 'a'), C = with_prefix(*ABCD, 'c'), D = with_prefix(*ABCD, 'd');
      bool restricts = ABC->restrict_to(AB.labels()) == AB && ABC->restrict_to(BC.labels()) == BC;
      count(Axiom::kAmalgamation, restricts && indep(*ABC, A, bl, C), q, *ABC);
      const bool p1 = indep(*ABCD, A, bl, C), p2 = indep(*ABCD, A, bcl, D);
      const auto CD = join(C, D);
      const bool whole = indep(*ABCD, A, bl, CD);
      if (p1 && p2) count(Axiom::kTransitivity, whole, query_str(A, bl, CD), *ABCD);
      if (whole) {
        count(Axiom::kMonotonicity, p1, query_str(A, bl, C), *ABCD);
        count(Axiom::kMonotonicity, p2, query_str(A, bcl, D), *ABCD);
      }
    }
  }

  // Existence and stationarity for a random type over a random subset.
  {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, long(cfg.max_points) - 1));
    auto s = random_space(n, den, rng);
    auto X = random_subset(s.labels(), rng, 1);
    auto p = random_type(s.restrict_to(X), den, rng);
    auto f = canonical_extension(p, s);
    auto outside = complement(s, X);
    auto ext = extend_with_point(s, f, "r");
    std::vector<Label> r{ext.realization};
    std::vector<Label> rest = outside;
    std::erase(rest, ext.realization);
    const bool exists = f.values() == canonical_profile(p, s) &&
                        (rest.empty() || indep(ext.space, r, X, rest));
    count(Axiom::kExistence, exists, query_str(r, X, rest), ext.space);

    // Random admissible extension, filling points left to right; each value
    // is canonical with probability 1/2.
    if (!outside.empty()) {
      std::vector<Label> assigned = X;
      std::vector<Rational> values = p.values();
      for (const auto& z : outside) {
        Rational lo(0), hi = one();
        for (std::size_t i = 0; i < assigned.size(); ++i) {
          const Rational d = s.distance(assigned[i], z);
          lo = max(lo, abs(values[i] - d));
          hi = min(hi, values[i] + d);
        }
        values.push_back(uniform_int(rng, 0, 1) ? hi : pick_between(lo, hi, 2 * den, rng));
        assigned.push_back(z);
      }
      auto ordered = s.restrict_to(assigned);
      auto chk = check_katetov(ordered, values);
      if (chk.admissible) {
        auto cand = KatetovFunction::make(ordered, values);
        auto e = extend_with_point(ordered, cand, "r");
        // a realization identified with some z outside X stays in the
        // right-hand side, where d(z,z) = 0 cannot factor through X
        std::vector<Label> rr{e.realization}, others = outside;
        if (indep(e.space, rr, X, others)) {
          bool same = true;
          for (std::size_t i = 0; i < assigned.size(); ++i)
            same = same && values[i] == f.value(assigned[i]);
          count(Axiom::kStationarity, same, query_str(rr, X, others), e.space);
        }
      }
    }
  }
}

}  // namespace sir_detail

/// Randomized battery for the independence relation: symmetry,
/// monotonicity, transitivity, existence, stationarity, and the free
/// amalgam. Instances whose premises fail are not counted. The first failure
/// is re-derived from its trial seed before it is reported.
inline SirReport check_sir_axioms(const SirConfig& cfg) {
  if (cfg.trials == 0) throw Error(ErrorKind::kOutOfRange, "trial count must be positive");
  if (cfg.max_points < 4) throw Error(ErrorKind::kOutOfRange, "need at least 4 points per trial");
  if (cfg.den_bound < 2) throw Error(ErrorKind::kOutOfRange, "denominator bound must be at least 2");
  SirReport report;
  report.trials = cfg.trials;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const bool had_failure = report.first.has_value();
    sir_detail::run_trial(cfg, t, report.stats, [&](Axiom a, std::string q, const FiniteMetricSpace& s) {
      if (report.first) return;
      report.first = Counterexample{a, t, std::move(q), serialize_space(s), false};
    });
    if (!had_failure && report.first) {
      std::array<AxiomStats, kAllAxioms.size()> scratch{};
      bool again = false;
      sir_detail::run_trial(cfg, t, scratch, [&](Axiom a, const std::string& q, const FiniteMetricSpace&) {
        again = again || (a == report.first->axiom && q == report.first->query);
      });
      report.first->reproduced = again;
    }
  }
  return report;
}

}  // namespace ury
