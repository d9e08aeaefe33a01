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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ury {

enum class ErrorKind {
  kMalformedInput,
  kMetricViolation,
  kDomainMismatch,
  kInadmissible,
  kLabelCollision,
  kEmptyBase,
  kEmptySubset,
  kParseError,
  kMalformedQuery,
  kOutOfRange,
  kBaseMismatch,
  kStrategyExhausted,
  kIsometryViolation,
  kInconsistentChain,
  kPreconditionFailed,
  kOracleFailure,
  kLadderBroken,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedInput: return "MalformedInput";
    case ErrorKind::kMetricViolation: return "MetricViolation";
    case ErrorKind::kDomainMismatch: return "DomainMismatch";
    case ErrorKind::kInadmissible: return "Inadmissible";
    case ErrorKind::kLabelCollision: return "LabelCollision";
    case ErrorKind::kEmptyBase: return "EmptyBase";
    case ErrorKind::kEmptySubset: return "EmptySubset";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kMalformedQuery: return "MalformedQuery";
    case ErrorKind::kOutOfRange: return "OutOfRange";
    case ErrorKind::kBaseMismatch: return "BaseMismatch";
    case ErrorKind::kStrategyExhausted: return "StrategyExhausted";
    case ErrorKind::kIsometryViolation: return "IsometryViolation";
    case ErrorKind::kInconsistentChain: return "InconsistentChain";
    case ErrorKind::kPreconditionFailed: return "PreconditionFailed";
    case ErrorKind::kOracleFailure: return "OracleFailure";
    case ErrorKind::kLadderBroken: return "LadderBroken";
  }
  return "Unknown";
}

/// One violated constraint, e.g. {"triangle", {"a","b","c"}, "3/4 > 1/4 + 1/4"}.
struct Violation {
  std::string kind;
  std::vector<std::string> points;
  std::string detail;

  std::string str() const {
    std::ostringstream out;
    out << kind << " (";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i) out << ",";
      out << points[i];
    }
    out << ")";
    if (!detail.empty()) out << ": " << detail;
    return out.str();
  }
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<Violation> violations = {})
      : std::runtime_error(format(kind, message, violations)),
        kind_(kind),
        violations_(std::move(violations)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            const std::vector<Violation>& violations) {
    std::string text = std::string(to_string(kind)) + ": " + message;
    for (const auto& v : violations) text += "\n  " + v.str();
    return text;
  }

  ErrorKind kind_;
  std::vector<Violation> violations_;
};

}  // namespace ury
