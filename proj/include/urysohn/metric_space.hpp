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
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "urysohn/error.hpp"
#include "urysohn/rational.hpp"

namespace ury {

using Label = std::string;
using Matrix = std::vector<std::vector<Rational>>;

/// Labels are opaque, but they appear verbatim in certificate trace lines,
/// so whitespace and the trace punctuation are rejected.
inline bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (static_cast<unsigned char>(c) <= ' ') return false;
    switch (c) {
      case '(': case ')': case ',': case '{': case '}': case '|':
      case '>': case '<': case '=': case ':': case '"': case '*':
        return false;
      default:
        break;
    }
  }
  return true;
}

/// Collects every violated metric-space constraint of a candidate matrix.
inline std::vector<Violation> metric_violations(const std::vector<Label>& labels,
                                                const Matrix& dist) {
  std::vector<Violation> out;
  const std::size_t n = labels.size();
  if (dist.size() != n) {
    out.push_back({"shape", {}, "expected " + std::to_string(n) + " rows, got " +
                                    std::to_string(dist.size())});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      out.push_back({"shape", {labels[i]},
                     "row has " + std::to_string(dist[i].size()) + " entries, expected " +
                         std::to_string(n)});
    }
  }
  if (!out.empty()) return out;

  std::unordered_map<std::string_view, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_valid_label(labels[i])) out.push_back({"label", {labels[i]}, "invalid label"});
    if (!seen.emplace(labels[i], i).second)
      out.push_back({"label", {labels[i]}, "duplicate label"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!dist[i][i].is_zero())
      out.push_back({"diagonal", {labels[i]}, "d(x,x) = " + dist[i][i].str()});
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational& d = dist[i][j];
      if (d != dist[j][i])
        out.push_back({"asymmetry", {labels[i], labels[j]},
                       d.str() + " != " + dist[j][i].str()});
      if (d.sign() <= 0)
        out.push_back({"zero-distance", {labels[i], labels[j]}, "d = " + d.str()});
      if (d > one())
        out.push_back({"diameter", {labels[i], labels[j]}, d.str() + " > 1"});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (i > k) continue;  // each unordered outer pair once
        if (dist[i][k] > dist[i][j] + dist[j][k])
          out.push_back({"triangle", {labels[i], labels[j], labels[k]},
                         "d(" + labels[i] + "," + labels[k] + ") = " + dist[i][k].str() +
                             " > " + dist[i][j].str() + " + " + dist[j][k].str()});
      }
    }
  return out;
}

/// Finite metric space of diameter at most 1 with exact rational distances.
/// Instances are only produced through validation, so every value satisfies
/// the metric axioms. Dense storage; spaces in use stay small.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(std::size_t i) const { return labels_[i]; }

  std::optional<std::size_t> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view label) const { return find(label).has_value(); }
  std::size_t index(std::string_view label) const {
    auto i = find(label);
    if (!i) throw Error(ErrorKind::kDomainMismatch, "unknown point '" + std::string(label) + "'");
    return *i;
  }

  const Rational& distance(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  const Rational& distance(std::string_view a, std::string_view b) const {
    return dist_[index(a)][index(b)];
  }
  const std::vector<Rational>& row(std::size_t i) const { return dist_[i]; }
  const Matrix& matrix() const { return dist_; }

  Rational diameter() const {
    Rational best;
    for (const auto& r : dist_)
      for (const auto& d : r) best = max(best, d);
    return best;
  }

  /// Induced subspace on `subset`, in the given order.
  FiniteMetricSpace restrict_to(std::span<const Label> subset) const {
    std::vector<std::size_t> idx;
    idx.reserve(subset.size());
    for (const auto& l : subset) idx.push_back(index(l));
    FiniteMetricSpace out;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      out.labels_.push_back(labels_[idx[a]]);
      if (!out.index_.emplace(labels_[idx[a]], a).second)
        throw Error(ErrorKind::kMalformedInput, "duplicate label in subset: " + labels_[idx[a]]);
      std::vector<Rational> r;
      r.reserve(idx.size());
      for (std::size_t b : idx) r.push_back(dist_[idx[a]][b]);
      out.dist_.push_back(std::move(r));
    }
    return out;
  }

  /// True iff `other` has exactly the same labels in the same order and the
  /// same distances.
  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.labels_ == b.labels_ && a.dist_ == b.dist_;
  }

  /// Appends a point with the given distances to every existing point.
  /// The profile must already be known to be an admissible, strictly positive
  /// one-point extension; use extend_with_point for the checked path.
  void append_unchecked(Label label, std::vector<Rational> profile) {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) dist_[i].push_back(profile[i]);
    profile.emplace_back();
    dist_.push_back(std::move(profile));
    index_.emplace(label, n);
    labels_.push_back(std::move(label));
  }

  friend FiniteMetricSpace validate_space(std::vector<Label> labels, Matrix dist);

 private:
  std::vector<Label> labels_;
  std::unordered_map<Label, std::size_t> index_;
  Matrix dist_;
};

/// Checks every axiom and returns the space, or throws MetricViolation
/// carrying the full list of violated constraints.
inline FiniteMetricSpace validate_space(std::vector<Label> labels, Matrix dist) {
  auto violations = metric_violations(labels, dist);
  if (!violations.empty()) {
    std::string msg = std::to_string(violations.size()) + " violated constraint(s)";
    throw Error(ErrorKind::kMetricViolation, msg, std::move(violations));
  }
  FiniteMetricSpace s;
  for (std::size_t i = 0; i < labels.size(); ++i) s.index_.emplace(labels[i], i);
  s.labels_ = std::move(labels);
  s.dist_ = std::move(dist);
  return s;
}

}  // namespace ury
