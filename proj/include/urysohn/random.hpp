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
#include <random>
#include <string>
#include <vector>

#include "urysohn/katetov.hpp"

namespace ury {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// Derives an independent stream for sub-task `index` of a seeded run.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

/// Random space on the 1/den grid: uniform entries in {1/den, ..., 1}, then
/// metric closure (all-pairs shortest paths), then cap at 1. Labels are
/// prefix0, prefix1, ...
inline FiniteMetricSpace random_space(std::size_t n, long den, Rng& rng,
                                      const std::string& prefix = "p") {
  if (den < 1) throw Error(ErrorKind::kOutOfRange, "denominator bound must be positive");
  Matrix d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational v(uniform_int(rng, 1, den), den);
      d[i][j] = v;
      d[j][i] = v;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
  for (auto& row : d)
    for (auto& v : row) v = min(v, one());
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return validate_space(std::move(labels), std::move(d));
}

/// Random Katetov profile over `base` with values on the 1/den grid (when
/// the base distances are). Built from random anchor radii r made to satisfy
/// r(x) + r(y) >= d(x,y), then f(z) = min(1, min_x r(x) + d(x,z)). When
/// `pinned` is given, that anchor keeps radius `floor` and every other radius
/// is at least `floor`, so the resulting type has distance exactly `floor`.
inline std::vector<Rational> random_katetov_values(const FiniteMetricSpace& base, long den,
                                                   Rng& rng, const Rational& floor,
                                                   std::optional<std::size_t> pinned = {}) {
  const std::size_t n = base.size();
  if (n == 0) return {};
  std::vector<std::size_t> anchors;
  for (std::size_t i = 0; i < n; ++i)
    if ((pinned && i == *pinned) || uniform_int(rng, 0, 2) == 0) anchors.push_back(i);
  if (anchors.empty()) anchors.push_back(static_cast<std::size_t>(uniform_int(rng, 0, n - 1)));
  long kmin = std::max<long>(0, ceil_to_long(floor * Rational(den)));
  std::vector<Rational> r(n);
  for (std::size_t a : anchors) {
    r[a] = (pinned && a == *pinned) ? floor
                                    : max(floor, Rational(uniform_int(rng, std::min(kmin, den), den), den));
  }
  for (std::size_t s = 0; s < anchors.size(); ++s)
    for (std::size_t t = s + 1; t < anchors.size(); ++t) {
      std::size_t x = anchors[s], y = anchors[t];
      Rational gap = base.distance(x, y) - r[x] - r[y];
      if (gap.sign() > 0) {
        if (pinned && y == *pinned) r[x] += gap;
        else r[y] += gap;
      }
    }
  std::vector<Rational> out(n, one());
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t a : anchors) out[z] = min(out[z], r[a] + base.distance(a, z));
  return out;
}

/// Random strictly positive type over `base`.
inline KatetovFunction random_type(const FiniteMetricSpace& base, long den, Rng& rng) {
  return KatetovFunction::make(base, random_katetov_values(base, den, rng, Rational(1, den)));
}

/// Random type over a nonempty `base` whose distance is exactly `d`.
inline KatetovFunction random_type_of_distance(const FiniteMetricSpace& base, const Rational& d,
                                               long den, Rng& rng) {
  if (base.empty()) throw Error(ErrorKind::kEmptyBase, "type over the empty set");
  auto pin = static_cast<std::size_t>(uniform_int(rng, 0, base.size() - 1));
  return KatetovFunction::make(base, random_katetov_values(base, den, rng, d, pin));
}

/// Appends `count` random points, each realizing a random positive type over
/// everything before it.
inline FiniteMetricSpace extend_randomly(FiniteMetricSpace space, std::size_t count, long den,
                                         Rng& rng, const std::string& prefix) {
  for (std::size_t i = 0; i < count; ++i) {
    Label label = prefix + std::to_string(i);
    if (space.empty()) {
      space = validate_space({label}, {{Rational(0)}});
      continue;
    }
    auto f = random_type(space, den, rng);
    space = extend_with_point(space, f, label).space;
  }
  return space;
}

}  // namespace ury
