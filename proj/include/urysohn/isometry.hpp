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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "urysohn/random.hpp"
#include "urysohn/space_io.hpp"
#include "urysohn/universe.hpp"

namespace ury {

/// Finite distance-preserving bijection between two subsets of an ambient
/// space. Pairs are append-only.
class PartialIsometry {
 public:
  std::optional<Label> forward(const Label& x) const {
    auto it = fwd_.find(x);
    if (it == fwd_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Label> backward(const Label& y) const {
    auto it = bwd_.find(y);
    if (it == bwd_.end()) return std::nullopt;
    return it->second;
  }
  bool in_domain(const Label& x) const { return fwd_.count(x) != 0; }
  bool in_range(const Label& y) const { return bwd_.count(y) != 0; }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<std::pair<Label, Label>>& pairs() const { return pairs_; }

  std::vector<Label> domain() const {
    std::vector<Label> out;
    for (const auto& [x, y] : pairs_) out.push_back(x);
    return out;
  }
  std::vector<Label> range() const {
    std::vector<Label> out;
    for (const auto& [x, y] : pairs_) out.push_back(y);
    return out;
  }

  /// Adds x -> y after checking injectivity and d(x,u) = d(y,v) against every
  /// existing pair (u,v). Re-adding an existing pair is a no-op.
  void add(const FiniteMetricSpace& ambient, const Label& x, const Label& y) {
    if (auto cur = forward(x)) {
      if (*cur == y) return;
      throw Error(ErrorKind::kIsometryViolation,
                  x + " already maps to " + *cur + ", not " + y);
    }
    if (auto pre = backward(y))
      throw Error(ErrorKind::kIsometryViolation, y + " already the image of " + *pre);
    const std::size_t ix = ambient.index(x), iy = ambient.index(y);
    std::vector<Violation> bad;
    for (const auto& [u, v] : pairs_) {
      const Rational& du = ambient.distance(ix, ambient.index(u));
      const Rational& dv = ambient.distance(iy, ambient.index(v));
      if (du != dv)
        bad.push_back({"distance", {x, u, y, v}, du.str() + " != " + dv.str()});
    }
    if (!bad.empty())
      throw Error(ErrorKind::kIsometryViolation, "pair " + x + " -> " + y + " breaks isometry",
                  std::move(bad));
    fwd_.emplace(x, y);
    bwd_.emplace(y, x);
    pairs_.emplace_back(x, y);
  }

  /// Full O(n^2) re-check of the invariant.
  std::vector<Violation> verify(const FiniteMetricSpace& ambient) const {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
        const auto& [x, y] = pairs_[i];
        const auto& [u, v] = pairs_[j];
        const Rational& du = ambient.distance(x, u);
        const Rational& dv = ambient.distance(y, v);
        if (du != dv) out.push_back({"distance", {x, u, y, v}, du.str() + " != " + dv.str()});
      }
    if (fwd_.size() != pairs_.size() || bwd_.size() != pairs_.size())
      out.push_back({"injectivity", {}, "duplicate domain or range point"});
    return out;
  }

 private:
  std::vector<std::pair<Label, Label>> pairs_;
  std::unordered_map<Label, Label> fwd_, bwd_;
};

/// Anything that can be evaluated forwards and backwards on points of a
/// shared Universe. When `chain` is given, every intermediate point
/// (excluding the start) is appended in evaluation order.
class Isometry {
 public:
  virtual ~Isometry() = default;
  virtual const std::string& name() const = 0;
  virtual Universe& universe() = 0;
  virtual Label apply(const Label& x, std::vector<Label>* chain = nullptr) = 0;
  virtual Label apply_inverse(const Label& y, std::vector<Label>* chain = nullptr) = 0;
};

enum class Direction { kForward, kBackward };

/// What a strategy sees when a lazy isometry meets an unmapped point. The
/// image must realize the transported profile: d(image, target[i]) =
/// d(query, source[i]) for every known pair, and must not already be a
/// target.
struct ExtensionRequest {
  Universe& universe;
  const std::vector<Label>& source;
  const std::vector<Label>& target;
  const Label& query;
  Rng& rng;
  Label fresh_label;
};

class ExtensionStrategy {
 public:
  virtual ~ExtensionStrategy() = default;
  virtual std::string descriptor() const = 0;
  virtual Label choose(const ExtensionRequest& req) const = 0;
};

namespace detail {

inline std::vector<Rational> transported_profile(const ExtensionRequest& req) {
  const auto& s = req.universe.space();
  const std::size_t q = s.index(req.query);
  std::vector<Rational> out;
  out.reserve(req.source.size());
  for (const auto& src : req.source) out.push_back(s.distance(q, s.index(src)));
  return out;
}

inline bool realizes(const FiniteMetricSpace& s, std::size_t z, const std::vector<std::size_t>& target,
                     const std::vector<Rational>& profile) {
  for (std::size_t i = 0; i < target.size(); ++i)
    if (s.distance(z, target[i]) != profile[i]) return false;
  return true;
}

}  // namespace detail

/// g(x) = x. Only consistent while the table is the identity on the points
/// involved.
class IdentityStrategy final : public ExtensionStrategy {
 public:
  std::string descriptor() const override { return "identity"; }
  Label choose(const ExtensionRequest& req) const override {
    for (const auto& t : req.target)
      if (t == req.query) throw Error(ErrorKind::kStrategyExhausted, req.query + " is already an image");
    const auto& s = req.universe.space();
    std::vector<std::size_t> target;
    for (const auto& t : req.target) target.push_back(s.index(t));
    if (!detail::realizes(s, s.index(req.query), target, detail::transported_profile(req)))
      throw Error(ErrorKind::kStrategyExhausted, "identity image of " + req.query + " is inconsistent");
    return req.query;
  }
};

/// Generic automorphism: the image realizes the canonical (independent)
/// extension of the transported profile over the whole universe, based at
/// the current target side. Always a fresh point.
class FreeStrategy final : public ExtensionStrategy {
 public:
  std::string descriptor() const override { return "free"; }
  Label choose(const ExtensionRequest& req) const override {
    const auto& s = req.universe.space();
    auto profile = detail::transported_profile(req);
    std::vector<std::size_t> target;
    for (const auto& t : req.target) target.push_back(s.index(t));
    std::vector<Rational> values(s.size(), one());
    for (std::size_t z = 0; z < s.size(); ++z) {
      const auto& row = s.row(z);
      for (std::size_t i = 0; i < target.size(); ++i) {
        Rational v = profile[i] + row[target[i]];
        if (v < values[z]) values[z] = std::move(v);
      }
    }
    return req.universe.realize(values, req.fresh_label);
  }
};

/// Non-generic extension: reuse an existing point realizing the transported
/// profile if there is one (seeded choice), else a fresh point whose
/// remaining distances are filled greedily with the smallest-denominator
/// admissible value (seeded tie-break). The tight variant fills with the
/// least positive admissible value instead, keeping images close to what is
/// already known.
class PlainStrategy final : public ExtensionStrategy {
 public:
  explicit PlainStrategy(bool tight = false) : tight_(tight) {}
  std::string descriptor() const override { return tight_ ? "tight" : "plain"; }

  Label choose(const ExtensionRequest& req) const override {
    const auto& s = req.universe.space();
    auto profile = detail::transported_profile(req);
    std::vector<std::size_t> target;
    std::vector<bool> is_target(s.size(), false);
    for (const auto& t : req.target) {
      target.push_back(s.index(t));
      is_target[target.back()] = true;
    }
    std::vector<std::size_t> candidates;
    for (std::size_t z = 0; z < s.size(); ++z)
      if (!is_target[z] && detail::realizes(s, z, target, profile)) candidates.push_back(z);
    if (!candidates.empty()) {
      auto pick = candidates[static_cast<std::size_t>(uniform_int(req.rng, 0, candidates.size() - 1))];
      return s.label(pick);
    }
    std::vector<std::optional<Rational>> values(s.size());
    std::vector<std::size_t> assigned;
    for (std::size_t i = 0; i < target.size(); ++i) {
      values[target[i]] = profile[i];
      assigned.push_back(target[i]);
    }
    for (std::size_t z = 0; z < s.size(); ++z) {
      if (values[z]) continue;
      Rational lo, hi = one();
      for (std::size_t w : assigned) {
        const Rational& d = s.distance(w, z);
        lo = max(lo, abs(*values[w] - d));
        hi = min(hi, *values[w] + d);
      }
      values[z] = tight_ && lo.sign() > 0 ? lo : simplest_in(lo, hi, req.rng);
      assigned.push_back(z);
    }
    std::vector<Rational> flat;
    flat.reserve(values.size());
    for (auto& v : values) flat.push_back(std::move(*v));
    return req.universe.realize(flat, req.fresh_label);
  }

  /// A positive rational of least denominator in [lo, hi]; ties broken by
  /// `rng`. Requires hi > 0 and lo <= hi.
  static Rational simplest_in(const Rational& lo, const Rational& hi, Rng& rng) {
    if (hi.sign() <= 0 || lo > hi)
      throw Error(ErrorKind::kStrategyExhausted, "empty interval [" + lo.str() + "," + hi.str() + "]");
    for (long q = 1;; ++q) {
      Rational qr(q);
      long pmin = std::max<long>(1, ceil_to_long(lo * qr));
      std::vector<long> ps;
      for (long p = pmin; Rational(p, q) <= hi; ++p) ps.push_back(p);
      if (!ps.empty()) return Rational(ps[static_cast<std::size_t>(uniform_int(rng, 0, ps.size() - 1))], q);
    }
  }

 private:
  bool tight_;
};

/// Never extends; used for partial isometries built explicitly step by step.
class FixedStrategy final : public ExtensionStrategy {
 public:
  std::string descriptor() const override { return "fixed"; }
  Label choose(const ExtensionRequest& req) const override {
    throw Error(ErrorKind::kStrategyExhausted, "fixed table has no image for " + req.query);
  }
};

enum class StrategyKind { kIdentity, kFree, kPlain, kTight, kFixed };

inline std::unique_ptr<ExtensionStrategy> make_strategy(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kIdentity: return std::make_unique<IdentityStrategy>();
    case StrategyKind::kFree: return std::make_unique<FreeStrategy>();
    case StrategyKind::kPlain: return std::make_unique<PlainStrategy>();
    case StrategyKind::kTight: return std::make_unique<PlainStrategy>(true);
    case StrategyKind::kFixed: return std::make_unique<FixedStrategy>();
  }
  return nullptr;
}

struct ExtensionEvent {
  Direction direction;
  Label query;
  Label image;
  bool fresh;
};

/// One element of the isometry group, materialized on demand. The table only
/// grows, so a point never gets two different answers; each extension is
/// checked exactly against every existing pair.
class LazyIsometry final : public Isometry {
 public:
  LazyIsometry(Universe& universe, std::string name, StrategyKind kind, std::uint64_t seed = 0)
      : LazyIsometry(universe, std::move(name), make_strategy(kind), seed) {}
  LazyIsometry(Universe& universe, std::string name, std::unique_ptr<ExtensionStrategy> strategy,
               std::uint64_t seed = 0)
      : universe_(&universe), name_(std::move(name)), strategy_(std::move(strategy)),
        seed_(seed), rng_(seed) {
    if (!is_valid_label(name_)) throw Error(ErrorKind::kMalformedInput, "bad isometry name " + name_);
  }

  const std::string& name() const override { return name_; }
  Universe& universe() override { return *universe_; }
  const PartialIsometry& table() const { return table_; }
  const std::vector<ExtensionEvent>& trace() const { return trace_; }
  std::uint64_t seed() const { return seed_; }
  std::string strategy_descriptor() const { return strategy_->descriptor(); }

  /// Forces x -> y into the table (checked).
  void force(const Label& x, const Label& y) {
    universe_->space().index(x);
    universe_->space().index(y);
    table_.add(universe_->space(), x, y);
  }

  Label apply(const Label& x, std::vector<Label>* chain = nullptr) override {
    Label y = extend(x, Direction::kForward);
    if (chain) chain->push_back(y);
    return y;
  }
  Label apply_inverse(const Label& y, std::vector<Label>* chain = nullptr) override {
    Label x = extend(y, Direction::kBackward);
    if (chain) chain->push_back(x);
    return x;
  }

 private:
  Label extend(const Label& q, Direction dir) {
    universe_->space().index(q);
    const bool fwd = dir == Direction::kForward;
    if (auto known = fwd ? table_.forward(q) : table_.backward(q)) return *known;
    auto domain = table_.domain();
    auto range = table_.range();
    const std::size_t before = universe_->size();
    ExtensionRequest req{*universe_, fwd ? domain : range, fwd ? range : domain, q, rng_,
                         next_fresh_label()};
    Label image = strategy_->choose(req);
    if (fwd) table_.add(universe_->space(), q, image);
    else table_.add(universe_->space(), image, q);
    trace_.push_back({dir, q, image, universe_->size() != before});
    return image;
  }

  Label next_fresh_label() {
    for (;;) {
      Label l = name_ + "#" + std::to_string(++fresh_counter_);
      if (!universe_->contains(l)) return l;
    }
  }

  Universe* universe_;
  std::string name_;
  std::unique_ptr<ExtensionStrategy> strategy_;
  std::uint64_t seed_;
  Rng rng_;
  PartialIsometry table_;
  std::vector<ExtensionEvent> trace_;
  std::size_t fresh_counter_ = 0;
};

/// Dump: ambient space, map pairs, strategy descriptor, seed and the
/// extension trace.
inline nlohmann::json dump_isometry(const LazyIsometry& g, const Universe& universe) {
  nlohmann::json map = nlohmann::json::array();
  for (const auto& [x, y] : g.table().pairs()) map.push_back({x, y});
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& e : g.trace())
    trace.push_back({{"direction", e.direction == Direction::kForward ? "forward" : "backward"},
                     {"query", e.query},
                     {"image", e.image},
                     {"fresh", e.fresh}});
  return {{"name", g.name()},
          {"strategy", g.strategy_descriptor()},
          {"seed", g.seed()},
          {"space", space_to_json(universe.space())},
          {"map", std::move(map)},
          {"trace", std::move(trace)}};
}

}  // namespace ury
