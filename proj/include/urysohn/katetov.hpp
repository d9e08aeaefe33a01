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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/metric_space.hpp"

namespace ury {

struct KatetovCheck {
  bool admissible = true;
  std::vector<Violation> violations;
  explicit operator bool() const { return admissible; }
};

/// Checks |f(x) - f(y)| <= d(x,y) <= f(x) + f(y), 0 <= f <= 1 and at most one
/// zero. `values` is aligned with base.labels().
inline KatetovCheck check_katetov(const FiniteMetricSpace& base,
                                  std::span<const Rational> values) {
  if (values.size() != base.size())
    throw Error(ErrorKind::kDomainMismatch, "profile has " + std::to_string(values.size()) +
                                                " values for " + std::to_string(base.size()) +
                                                " points");
  KatetovCheck out;
  auto fail = [&](Violation v) {
    out.admissible = false;
    out.violations.push_back(std::move(v));
  };
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Rational& v = values[i];
    if (v.sign() < 0 || v > one()) fail({"range", {base.label(i)}, "f = " + v.str()});
    if (v.is_zero()) ++zeros;
  }
  if (zeros > 1) fail({"zeros", {}, std::to_string(zeros) + " zero values"});
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const Rational& d = base.distance(i, j);
      if (abs(values[i] - values[j]) > d)
        fail({"lipschitz", {base.label(i), base.label(j)},
              "|" + values[i].str() + " - " + values[j].str() + "| > " + d.str()});
      if (d > values[i] + values[j])
        fail({"lower", {base.label(i), base.label(j)},
              d.str() + " > " + values[i].str() + " + " + values[j].str()});
    }
  return out;
}

inline std::vector<Rational> align_values(const FiniteMetricSpace& base,
                                          const std::map<Label, Rational>& values) {
  if (values.size() != base.size())
    throw Error(ErrorKind::kDomainMismatch, "values must cover exactly the base points");
  std::vector<Rational> out;
  out.reserve(base.size());
  for (const auto& l : base.labels()) {
    auto it = values.find(l);
    if (it == values.end())
      throw Error(ErrorKind::kDomainMismatch, "no value for point '" + l + "'");
    out.push_back(it->second);
  }
  return out;
}

inline KatetovCheck is_katetov(const FiniteMetricSpace& base,
                               const std::map<Label, Rational>& values) {
  auto aligned = align_values(base, values);
  return check_katetov(base, aligned);
}

/// An admissible distance profile over a finite base, i.e. a type tp(a/X).
class KatetovFunction {
 public:
  static KatetovFunction make(FiniteMetricSpace base, std::vector<Rational> values) {
    auto check = check_katetov(base, values);
    if (!check)
      throw Error(ErrorKind::kInadmissible, "not a Katetov function",
                  std::move(check.violations));
    return KatetovFunction(std::move(base), std::move(values));
  }
  static KatetovFunction from_map(FiniteMetricSpace base, const std::map<Label, Rational>& values) {
    auto aligned = align_values(base, values);
    return make(std::move(base), std::move(aligned));
  }

  const FiniteMetricSpace& base() const { return base_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at(std::size_t i) const { return values_[i]; }
  const Rational& value(std::string_view label) const { return values_[base_.index(label)]; }
  std::size_t size() const { return values_.size(); }

  /// The base point the realization coincides with, if any value is zero.
  std::optional<Label> zero_point() const {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i].is_zero()) return base_.label(i);
    return std::nullopt;
  }

  friend bool operator==(const KatetovFunction&, const KatetovFunction&) = default;

 private:
  KatetovFunction(FiniteMetricSpace base, std::vector<Rational> values)
      : base_(std::move(base)), values_(std::move(values)) {}

  FiniteMetricSpace base_;
  std::vector<Rational> values_;
};

/// d(a, X): the least prescribed distance.
inline Rational distance_of_type(const KatetovFunction& f) {
  if (f.size() == 0) throw Error(ErrorKind::kEmptyBase, "type over the empty set");
  Rational best = f.at(0);
  for (const auto& v : f.values()) best = min(best, v);
  return best;
}

inline KatetovFunction restrict_type(const KatetovFunction& f, std::span<const Label> subset) {
  if (subset.empty()) throw Error(ErrorKind::kEmptySubset, "restriction to the empty set");
  std::vector<Rational> values;
  values.reserve(subset.size());
  for (const auto& l : subset) values.push_back(f.value(l));
  return KatetovFunction::make(f.base().restrict_to(subset), std::move(values));
}

struct Extension {
  FiniteMetricSpace space;
  Label realization;
  bool fresh = true;
};

/// Realizes `f` over `space`. A zero value identifies the realization with
/// that existing point; otherwise a fresh point named `label` is appended.
inline Extension extend_with_point(const FiniteMetricSpace& space, const KatetovFunction& f,
                                   const Label& label) {
  if (f.base().labels() != space.labels())
    throw Error(ErrorKind::kDomainMismatch, "type is not over the given space");
  if (!(f.base() == space))
    throw Error(ErrorKind::kBaseMismatch, "type base distances differ from the space");
  if (auto z = f.zero_point()) return Extension{space, *z, false};
  if (!is_valid_label(label))
    throw Error(ErrorKind::kMalformedInput, "invalid label '" + label + "'");
  if (space.contains(label))
    throw Error(ErrorKind::kLabelCollision, "label '" + label + "' already in space");
  Extension out{space, label, true};
  out.space.append_unchecked(label, f.values());
  return out;
}

}  // namespace ury
