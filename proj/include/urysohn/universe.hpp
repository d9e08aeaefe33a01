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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "urysohn/independence.hpp"

namespace ury {

/// The finite, append-only piece of the countable model that a construction
/// has materialized so far. Isometries and witnesses sharing one Universe see
/// the same points; nothing is ever removed or re-measured.
class Universe {
 public:
  Universe() = default;
  explicit Universe(FiniteMetricSpace initial) : space_(std::move(initial)) {}

  const FiniteMetricSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  bool contains(std::string_view l) const { return space_.contains(l); }
  const Rational& distance(std::string_view a, std::string_view b) const {
    return space_.distance(a, b);
  }

  /// `hint` itself if unused, otherwise hint#1, hint#2, ...
  Label unique_label(std::string_view hint) {
    std::string h(hint);
    if (!space_.contains(h) && is_valid_label(h)) return h;
    for (;;) {
      Label candidate = h + "#" + std::to_string(++counter_);
      if (!space_.contains(candidate)) return candidate;
    }
  }

  /// Adds a point at the given distances to every current point. A zero entry
  /// returns that existing point instead. The profile is checked exactly.
  Label realize(std::span<const Rational> profile, const Label& label) {
    auto check = check_katetov(space_, profile);
    if (!check)
      throw Error(ErrorKind::kInadmissible, "profile is not a one-point extension",
                  std::move(check.violations));
    for (std::size_t i = 0; i < profile.size(); ++i)
      if (profile[i].is_zero()) return space_.label(i);
    if (!is_valid_label(label)) throw Error(ErrorKind::kMalformedInput, "invalid label '" + label + "'");
    if (space_.contains(label))
      throw Error(ErrorKind::kLabelCollision, "label '" + label + "' already in universe");
    space_.append_unchecked(label, std::vector<Rational>(profile.begin(), profile.end()));
    return label;
  }

  /// Realizes `p` independently from everything present, over p's base.
  Label realize_independent(const KatetovFunction& p, std::string_view hint) {
    auto profile = canonical_profile(p, space_);
    return realize(profile, unique_label(hint));
  }

  /// Appends the points of `superset` beyond the current ones. The first
  /// size() points of `superset` must be exactly this universe.
  void adopt(const FiniteMetricSpace& superset) {
    const std::size_t n = size();
    if (superset.size() < n)
      throw Error(ErrorKind::kBaseMismatch, "superset is smaller than the universe");
    for (std::size_t i = 0; i < n; ++i)
      if (superset.label(i) != space_.label(i))
        throw Error(ErrorKind::kBaseMismatch, "superset does not extend the universe");
    for (std::size_t k = n; k < superset.size(); ++k) {
      const auto& row = superset.row(k);
      realize(std::span<const Rational>(row.data(), k), superset.label(k));
    }
  }

  /// Type of an existing point over `base`.
  KatetovFunction type_of(std::string_view point, std::span<const Label> base) const {
    std::vector<Rational> values;
    const std::size_t i = space_.index(point);
    for (const auto& b : base) values.push_back(space_.distance(i, space_.index(b)));
    return KatetovFunction::make(space_.restrict_to(base), std::move(values));
  }

 private:
  FiniteMetricSpace space_;
  std::size_t counter_ = 0;
};

}  // namespace ury
