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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/katetov.hpp"

namespace ury {

struct IndependenceVerdict {
  bool independent = true;
  std::vector<std::pair<Label, Label>> failing;
  explicit operator bool() const { return independent; }
};

namespace detail {

inline std::vector<std::size_t> indices_of(const FiniteMetricSpace& s, std::span<const Label> set,
                                           const char* name) {
  std::vector<std::size_t> out;
  out.reserve(set.size());
  for (const auto& l : set) {
    auto i = s.find(l);
    if (!i)
      throw Error(ErrorKind::kMalformedQuery,
                  std::string("set ") + name + " contains unknown point '" + l + "'");
    out.push_back(*i);
  }
  return out;
}

/// True iff the pair (i, k) factors through some base point, or is at
/// distance 1.
inline bool pair_factors(const FiniteMetricSpace& s, std::size_t i, std::size_t k,
                         std::span<const std::size_t> base) {
  const Rational& d = s.distance(i, k);
  if (d >= one()) return true;
  for (std::size_t b : base)
    if (s.distance(i, b) + s.distance(b, k) == d) return true;
  return false;
}

}  // namespace detail

/// A and C are independent over B: every cross pair at distance < 1 satisfies
/// d(a,c) = d(a,b) + d(b,c) for some b in B. Over an empty B this means every
/// cross distance is 1.
inline IndependenceVerdict is_independent(const FiniteMetricSpace& space, std::span<const Label> a,
                                          std::span<const Label> b, std::span<const Label> c) {
  if (a.empty() || c.empty())
    throw Error(ErrorKind::kMalformedQuery, "independence query needs nonempty A and C");
  auto ia = detail::indices_of(space, a, "A");
  auto ib = detail::indices_of(space, b, "B");
  auto ic = detail::indices_of(space, c, "C");
  IndependenceVerdict out;
  for (std::size_t i : ia)
    for (std::size_t k : ic)
      if (!detail::pair_factors(space, i, k, ib)) {
        out.independent = false;
        out.failing.emplace_back(space.label(i), space.label(k));
      }
  return out;
}

/// The profile over `ambient` of a point realizing `p` independently from
/// the ambient over p's base: z -> min(1, min_x p(x) + d(x,z)).
inline std::vector<Rational> canonical_profile(const KatetovFunction& p,
                                               const FiniteMetricSpace& ambient) {
  const auto& base = p.base();
  std::vector<std::size_t> idx;
  idx.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto k = ambient.find(base.label(i));
    if (!k) throw Error(ErrorKind::kBaseMismatch, "base point '" + base.label(i) + "' not in ambient");
    idx.push_back(*k);
  }
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (ambient.distance(idx[i], idx[j]) != base.distance(i, j))
        throw Error(ErrorKind::kBaseMismatch, "type base disagrees with ambient on d(" +
                                                  base.label(i) + "," + base.label(j) + ")");
  std::vector<Rational> out(ambient.size(), one());
  for (std::size_t z = 0; z < ambient.size(); ++z) {
    const auto& row = ambient.row(z);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      Rational v = p.at(i) + row[idx[i]];
      if (v < out[z]) out[z] = std::move(v);
    }
  }
  return out;
}

/// The unique extension of `p` to `ambient` whose realization is independent
/// from the ambient over p's base.
inline KatetovFunction canonical_extension(const KatetovFunction& p,
                                           const FiniteMetricSpace& ambient) {
  auto values = canonical_profile(p, ambient);
  auto check = check_katetov(ambient, values);
  if (!check)
    throw Error(ErrorKind::kInadmissible, "canonical extension not admissible (bug)",
                std::move(check.violations));
  return KatetovFunction::make(ambient, std::move(values));
}

/// p + eps: the type of a point at distance eps from a realization of p,
/// taken independently. Pointwise min(1, p + eps).
inline KatetovFunction prolongation(const KatetovFunction& p, const Rational& eps) {
  if (eps.sign() < 0 || eps > one())
    throw Error(ErrorKind::kOutOfRange, "prolongation length " + eps.str() + " outside [0,1]");
  std::vector<Rational> values;
  values.reserve(p.size());
  for (const auto& v : p.values()) values.push_back(min(one(), v + eps));
  return KatetovFunction::make(p.base(), std::move(values));
}

/// Free amalgam of `left` and `right` over their common part `base`: cross
/// distances are shortest paths through the base, capped at 1 (exactly 1
/// when the base is empty). Result lists left's points, then right's new
/// points.
inline FiniteMetricSpace amalgamate(const FiniteMetricSpace& left, const FiniteMetricSpace& right,
                                    std::span<const Label> base) {
  std::vector<std::size_t> lb, rb;
  for (const auto& l : base) {
    auto i = left.find(l), k = right.find(l);
    if (!i || !k) throw Error(ErrorKind::kBaseMismatch, "base point '" + l + "' missing on one side");
    lb.push_back(*i);
    rb.push_back(*k);
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j)
      if (left.distance(lb[i], lb[j]) != right.distance(rb[i], rb[j]))
        throw Error(ErrorKind::kBaseMismatch,
                    "sides disagree on d(" + base[i] + "," + base[j] + ")");
  std::vector<bool> in_base(right.size(), false);
  for (std::size_t k : rb) in_base[k] = true;
  for (std::size_t k = 0; k < right.size(); ++k)
    if (!in_base[k] && left.contains(right.label(k)))
      throw Error(ErrorKind::kBaseMismatch,
                  "point '" + right.label(k) + "' on both sides but not in the base");

  std::vector<Label> labels = left.labels();
  std::vector<std::size_t> right_new;
  for (std::size_t k = 0; k < right.size(); ++k)
    if (!in_base[k]) {
      right_new.push_back(k);
      labels.push_back(right.label(k));
    }
  const std::size_t nl = left.size(), n = labels.size();
  Matrix dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = 0; j < nl; ++j) dist[i][j] = left.distance(i, j);
  for (std::size_t a = 0; a < right_new.size(); ++a)
    for (std::size_t c = 0; c < right_new.size(); ++c)
      dist[nl + a][nl + c] = right.distance(right_new[a], right_new[c]);
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t a = 0; a < right_new.size(); ++a) {
      Rational d = one();
      for (std::size_t t = 0; t < base.size(); ++t)
        d = min(d, left.distance(i, lb[t]) + right.distance(rb[t], right_new[a]));
      dist[i][nl + a] = d;
      dist[nl + a][i] = d;
    }
  return validate_space(std::move(labels), std::move(dist));
}

}  // namespace ury
