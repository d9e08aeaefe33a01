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

#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "urysohn/metric_space.hpp"

namespace ury {

/// Space file: {"points": [labels...], "dist": [[ "p/q", ...], ...]}.
inline nlohmann::json space_to_json(const FiniteMetricSpace& space) {
  nlohmann::json dist = nlohmann::json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& d : space.row(i)) row.push_back(d.str());
    dist.push_back(std::move(row));
  }
  return nlohmann::json{{"points", space.labels()}, {"dist", std::move(dist)}};
}

/// Parses the json form; structural problems throw ParseError naming the
/// offending field, metric problems throw MetricViolation.
inline FiniteMetricSpace space_from_json(const nlohmann::json& j, std::string_view where = "") {
  const std::string prefix = where.empty() ? "" : std::string(where) + ".";
  auto fail = [&](const std::string& field, const std::string& why) {
    return Error(ErrorKind::kParseError, prefix + field + ": " + why);
  };
  if (!j.is_object()) throw fail("<root>", "expected an object");
  if (!j.contains("points") || !j["points"].is_array()) throw fail("points", "missing list");
  if (!j.contains("dist") || !j["dist"].is_array()) throw fail("dist", "missing matrix");
  std::vector<Label> labels;
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const auto& p = j["points"][i];
    if (!p.is_string()) throw fail("points[" + std::to_string(i) + "]", "expected a string");
    labels.push_back(p.get<std::string>());
  }
  const auto& rows = j["dist"];
  if (rows.size() != labels.size())
    throw fail("dist", "expected " + std::to_string(labels.size()) + " rows, got " +
                           std::to_string(rows.size()));
  Matrix dist;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string field = "dist[" + std::to_string(i) + "]";
    if (!rows[i].is_array()) throw fail(field, "expected a list");
    if (rows[i].size() != labels.size())
      throw fail(field, "ragged row: expected " + std::to_string(labels.size()) +
                            " entries, got " + std::to_string(rows[i].size()));
    std::vector<Rational> row;
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      const auto& cell = rows[i][k];
      const std::string cf = field + "[" + std::to_string(k) + "]";
      if (!cell.is_string()) throw fail(cf, "expected a rational string \"p/q\"");
      try {
        row.push_back(Rational::parse(cell.get<std::string>()));
      } catch (const Error& e) {
        throw fail(cf, e.what());
      }
    }
    dist.push_back(std::move(row));
  }
  return validate_space(std::move(labels), std::move(dist));
}

/// One row per line, rationals in lowest terms.
inline std::string serialize_space(const FiniteMetricSpace& space) {
  std::ostringstream out;
  out << "{\n  \"points\": " << nlohmann::json(space.labels()).dump() << ",\n  \"dist\": [";
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << (i ? ",\n    [" : "\n    [");
    for (std::size_t k = 0; k < space.size(); ++k) {
      if (k) out << ", ";
      out << '"' << space.distance(i, k).str() << '"';
    }
    out << "]";
  }
  out << (space.size() ? "\n  ]\n}\n" : "]\n}\n");
  return out.str();
}

inline FiniteMetricSpace parse_space(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParseError, std::string("json: ") + e.what());
  }
  return space_from_json(j);
}

}  // namespace ury
