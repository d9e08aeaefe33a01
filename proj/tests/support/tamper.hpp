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

// Single-field mutations of certificates, each of which must be caught.
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "urysohn.hpp"

namespace tamper {

struct Mutant {
  std::size_t line;
  std::string what;
  ury::Certificate cert;
};

inline const std::array<std::pair<const char*, const char*>, 6> kFlips{{
    {" >= ", " < "}, {" <= ", " > "}, {" != ", " = "}, {" = ", " != "}, {" < ", " >= "}, {" > ", " <= "}}};

inline std::vector<Mutant> mutants(const ury::Certificate& c) {
  std::vector<Mutant> out;
  auto add = [&](std::size_t n, std::string what, std::string text) {
    ury::Certificate m = c;
    m.trace[n] = std::move(text);
    out.push_back({n, std::move(what), std::move(m)});
  };
  std::vector<std::string> labels;
  for (const auto& l : c.space.at("points")) labels.push_back(l.get<std::string>());

  for (std::size_t n = 0; n < c.trace.size(); ++n) {
    const std::string& t = c.trace[n];
    const bool relation_line = t.rfind("assert ", 0) == 0 || t.rfind("claim ", 0) == 0;
    const bool indep_line = relation_line && t.compare(t.find(' ') + 1, 6, "indep ") == 0;
    if (relation_line && !indep_line) {
      for (auto [from, to] : kFlips) {
        auto pos = t.find(from);
        if (pos == std::string::npos) continue;
        add(n, "flip", t.substr(0, pos) + to + t.substr(pos + std::string(from).size()));
        if (std::string(from) == " = ") add(n, "value", t + " + 1/97");
        break;
      }
    } else if (relation_line) {
      // indep {A} | {B} | {C}  ->  indep {A} | {B} | {A}
      auto open = t.find('{');
      auto bar1 = t.find('|');
      auto bar2 = t.find('|', bar1 + 1);
      std::string a = t.substr(open, bar1 - open - 1);
      add(n, "indep", t.substr(0, bar2 + 2) + a);
    } else if (t.rfind("eval", 0) == 0) {
      auto last = t.rfind(" > ");
      if (last == std::string::npos) continue;
      std::string end = t.substr(last + 3);
      for (const auto& l : labels)
        if (l != end) {
          add(n, "endpoint", t.substr(0, last + 3) + l);
          break;
        }
    } else if (t.rfind("count ", 0) == 0) {
      auto sp = t.rfind(' ');
      add(n, "count", t.substr(0, sp + 1) + std::to_string(std::stoul(t.substr(sp + 1)) + 1));
    }
  }
  return out;
}

}  // namespace tamper
