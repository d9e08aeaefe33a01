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

#include <cstring>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "urysohn/independence.hpp"
#include "urysohn/space_io.hpp"
#include "urysohn/universe.hpp"
#include "urysohn/word.hpp"

namespace ury {

/// A self-contained, replayable record of a construction. The trace is a
/// list of lines in a small language:
///
///   eval NAME : p0 > p1 > ... > pn        word NAME maps p0 to pn letter by letter
///   eval-inv NAME : p0 > ... > pn         the same for NAME^-1
///   assert EXPR REL EXPR                  EXPR: sums of [coef*]d(x,y) and rationals
///   assert indep {A} | {B} | {C}          A independent from C over B
///   claim ...                             same syntax as assert; the headline facts
///   count NAME N                          NAME flattens to exactly N letters
///   count NAME:LEAF N                     ... of which exactly N are LEAF^(+-1)
///   note TEXT                             ignored by the verifier
///
/// REL is one of = != < <= > >=. Every check uses exact rational arithmetic
/// on the stored snapshot; no strategy is re-run.
struct Certificate {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;
  nlohmann::json space = space_to_json(FiniteMetricSpace{});
  std::map<std::string, std::vector<std::pair<Label, Label>>> isometries;
  std::map<std::string, nlohmann::json> words;
  std::vector<std::string> trace;

  std::string param(std::string_view key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return {};
  }

  nlohmann::json to_json() const {
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    nlohmann::json isos = nlohmann::json::object();
    for (const auto& [name, pairs] : isometries) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [x, y] : pairs) arr.push_back({x, y});
      isos[name] = std::move(arr);
    }
    nlohmann::json ws = nlohmann::json::object();
    for (const auto& [name, w] : words) ws[name] = w;
    return {{"format", "urysohn-certificate/1"}, {"kind", kind}, {"params", p},
            {"space", space}, {"isometries", isos}, {"words", ws}, {"trace", trace}};
  }

  std::string serialize() const { return to_json().dump(1) + "\n"; }

  static Certificate from_json(const nlohmann::json& j) {
    auto fail = [](const std::string& why) { return Error(ErrorKind::kParseError, "certificate: " + why); };
    if (!j.is_object()) throw fail("expected an object");
    if (j.contains("format") && j.at("format") != "urysohn-certificate/1") throw fail("unknown format");
    Certificate c;
    try {
      c.kind = j.at("kind").get<std::string>();
      if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) c.params.emplace_back(k, v.get<std::string>());
      c.space = j.at("space");
      if (j.contains("isometries"))
        for (const auto& [name, arr] : j.at("isometries").items()) {
          auto& pairs = c.isometries[name];
          for (const auto& p : arr) {
            if (!p.is_array() || p.size() != 2) throw fail("isometries." + name + ": expected pairs");
            pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
          }
        }
      if (j.contains("words"))
        for (const auto& [name, w] : j.at("words").items()) c.words[name] = w;
      for (const auto& line : j.at("trace")) c.trace.push_back(line.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    }
    return c;
  }

  static Certificate parse(std::string_view text) {
    try {
      return from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::kParseError, std::string("certificate json: ") + e.what());
    }
  }
};

inline std::string d_term(std::string_view x, std::string_view y) {
  return "d(" + std::string(x) + "," + std::string(y) + ")";
}

inline std::string set_term(std::span<const Label> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + "}";
}

/// Collects trace lines while a construction runs and snapshots the
/// universe and every isometry table at the end.
class CertificateBuilder {
 public:
  explicit CertificateBuilder(std::string kind) { cert_.kind = std::move(kind); }

  void param(std::string key, std::string value) { cert_.params.emplace_back(std::move(key), std::move(value)); }
  void note(const std::string& text) { line("note " + text); }
  void line(std::string text) { cert_.trace.push_back(std::move(text)); }
  void check(const std::string& body) { line("assert " + body); }
  void claim(const std::string& body) { line("claim " + body); }
  std::size_t size() const { return cert_.trace.size(); }

  void declare(Isometry& g) {
    if (auto* lazy = dynamic_cast<LazyIsometry*>(&g)) {
      leaves_[lazy->name()] = lazy;
    } else if (auto* w = dynamic_cast<WordIsometry*>(&g)) {
      declare_word(w->name(), w->word());
    }
  }
  void declare_word(const std::string& name, const Word& w) {
    cert_.words[name] = w.to_json();
    for (const auto& l : w.letters())
      if (l.iso) leaves_[l.name] = l.iso;
  }

  Label apply(Isometry& g, const Label& x) { return eval(g, x, false); }
  Label apply_inverse(Isometry& g, const Label& y) { return eval(g, y, true); }

  /// Forces points into the snapshot even if no trace line names them.
  void mention(std::span<const Label> labels) { mentioned_.insert(labels.begin(), labels.end()); }

  /// Snapshot restricted to every point named in the trace, mentioned, or
  /// touched by a recorded evaluation; tables keep the pairs used by eval
  /// lines plus any pair whose ends are both in the snapshot.
  Certificate finish(const Universe& u) const {
    Certificate c = cert_;
    std::set<Label> keep = mentioned_;
    for (const auto& text : cert_.trace) {
      if (text.rfind("note ", 0) == 0) continue;
      std::string tok;
      auto flush = [&] {
        if (!tok.empty() && u.contains(tok)) keep.insert(tok);
        tok.clear();
      };
      for (char ch : text) {
        if (ch == ' ' || ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}' || ch == '|') flush();
        else tok += ch;
      }
      flush();
    }
    for (const auto& [name, pairs] : used_)
      for (const auto& [x, y] : pairs) {
        keep.insert(x);
        keep.insert(y);
      }
    std::vector<Label> order;
    for (const auto& l : u.space().labels())
      if (keep.count(l)) order.push_back(l);
    c.space = space_to_json(u.space().restrict_to(order));
    for (const auto& [name, iso] : leaves_) {
      auto& out = c.isometries[name];
      auto used = used_.find(name);
      for (const auto& p : iso->table().pairs())
        if ((keep.count(p.first) && keep.count(p.second)) ||
            (used != used_.end() && used->second.count(p)))
          out.push_back(p);
    }
    return c;
  }

 private:
  Label eval(Isometry& g, const Label& x, bool inverse) {
    declare(g);
    std::vector<Label> chain;
    Label y = inverse ? g.apply_inverse(x, &chain) : g.apply(x, &chain);
    std::vector<Word::Letter> ls;
    if (auto* lazy = dynamic_cast<LazyIsometry*>(&g)) {
      ls.push_back({lazy->name(), lazy, inverse});
    } else if (auto* w = dynamic_cast<WordIsometry*>(&g)) {
      ls = inverse ? Word::inverse(w->word()).letters() : w->word().letters();
    }
    if (ls.size() == chain.size()) {
      Label prev = x;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        auto pair = ls[i].inverse ? std::make_pair(chain[i], prev) : std::make_pair(prev, chain[i]);
        used_[ls[i].name].insert(pair);
        prev = chain[i];
      }
    }
    std::string text = (inverse ? "eval-inv " : "eval ") + g.name() + " : " + x;
    for (const auto& p : chain) text += " > " + p;
    line(std::move(text));
    return y;
  }

  Certificate cert_;
  std::map<std::string, LazyIsometry*> leaves_;
  std::map<std::string, std::set<std::pair<Label, Label>>> used_;
  std::set<Label> mentioned_;
};

struct VerificationReport {
  bool ok = true;
  std::string location;  // "trace[17]", "space", "isometries.g", ...
  std::optional<std::size_t> line;
  std::string message;
  std::size_t lines_checked = 0;

  std::string str() const {
    if (ok) return "OK (" + std::to_string(lines_checked) + " trace lines)";
    return "FAIL at " + location + ": " + message;
  }
};

namespace verify_detail {

struct Letter {
  std::string name;
  bool inverse;
};

/// Flattens a serialized word into letters in application order. Kept
/// separate from Word so verification does not depend on it.
inline void flatten(const nlohmann::json& w, bool inv, std::vector<Letter>& out) {
  if (!w.is_object()) throw Error(ErrorKind::kParseError, "word node is not an object");
  if (w.contains("leaf")) {
    out.push_back({w.at("leaf").get<std::string>(), inv});
    return;
  }
  const std::string op = w.at("op").get<std::string>();
  using Part = std::pair<const nlohmann::json*, bool>;
  auto seq = [&](std::vector<Part> parts) {
    if (!inv) {
      for (auto& [p, i] : parts) flatten(*p, i, out);
    } else {
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) flatten(*it->first, !it->second, out);
    }
  };
  if (op == "identity") return;
  if (op == "inverse") return flatten(w.at("arg"), !inv, out);
  if (op == "compose") return seq({{&w.at("right"), false}, {&w.at("left"), false}});
  if (op == "conjugate") return seq({{&w.at("by"), true}, {&w.at("word"), false}, {&w.at("by"), false}});
  if (op == "commutator")
    return seq({{&w.at("right"), false}, {&w.at("left"), false}, {&w.at("right"), true}, {&w.at("left"), true}});
  throw Error(ErrorKind::kParseError, "unknown word op '" + op + "'");
}

struct Failure {
  std::string message;
};

class Expr {
 public:
  Expr(std::string_view text, const FiniteMetricSpace& s) : t_(text), s_(s) {}

  Rational eval() {
    skip();
    Rational total;
    bool first = true;
    while (pos_ < t_.size()) {
      int sign = 1;
      if (!first) {
        if (t_[pos_] == '+') sign = 1;
        else if (t_[pos_] == '-') sign = -1;
        else throw Failure{"expected + or - at '" + std::string(t_.substr(pos_)) + "'"};
        ++pos_;
        skip();
      }
      Rational term = factor();
      skip();
      if (pos_ < t_.size() && t_[pos_] == '*') {
        ++pos_;
        skip();
        term *= factor();
        skip();
      }
      total += sign > 0 ? term : -term;
      first = false;
    }
    if (first) throw Failure{"empty expression"};
    return total;
  }

 private:
  void skip() {
    while (pos_ < t_.size() && t_[pos_] == ' ') ++pos_;
  }
  Rational factor() {
    if (t_.substr(pos_, 2) == "d(") {
      pos_ += 2;
      auto comma = t_.find(',', pos_);
      auto close = t_.find(')', pos_);
      if (comma == std::string_view::npos || close == std::string_view::npos || comma > close)
        throw Failure{"malformed distance term"};
      std::string a(t_.substr(pos_, comma - pos_)), b(t_.substr(comma + 1, close - comma - 1));
      pos_ = close + 1;
      auto ia = s_.find(a), ib = s_.find(b);
      if (!ia || !ib) throw Failure{"unknown point in " + d_term(a, b)};
      return s_.distance(*ia, *ib);
    }
    std::size_t start = pos_;
    if (pos_ < t_.size() && t_[pos_] == '-') ++pos_;
    while (pos_ < t_.size() && ((t_[pos_] >= '0' && t_[pos_] <= '9') || t_[pos_] == '/')) ++pos_;
    try {
      return Rational::parse(t_.substr(start, pos_ - start));
    } catch (const Error&) {
      throw Failure{"bad number '" + std::string(t_.substr(start, pos_ - start)) + "'"};
    }
  }

  std::string_view t_;
  const FiniteMetricSpace& s_;
  std::size_t pos_ = 0;
};

inline std::string trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return std::string(s);
}

inline std::vector<Label> parse_set(std::string_view text) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw Failure{"expected {..} set, got '" + t + "'"};
  std::vector<Label> out;
  std::string cur;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += t[i];
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

inline void check_body(std::string_view body, const FiniteMetricSpace& s) {
  std::string b = trim(body);
  if (b.rfind("indep ", 0) == 0) {
    std::string rest = b.substr(6);
    auto p1 = rest.find('|');
    auto p2 = rest.find('|', p1 == std::string::npos ? 0 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) throw Failure{"indep needs {A} | {B} | {C}"};
    auto A = parse_set(std::string_view(rest).substr(0, p1));
    auto B = parse_set(std::string_view(rest).substr(p1 + 1, p2 - p1 - 1));
    auto C = parse_set(std::string_view(rest).substr(p2 + 1));
    for (const auto* set : {&A, &B, &C})
      for (const auto& l : *set)
        if (!s.contains(l)) throw Failure{"unknown point '" + l + "'"};
    if (A.empty() || C.empty()) throw Failure{"indep needs nonempty A and C"};
    auto v = is_independent(s, A, B, C);
    if (!v) {
      std::string pairs;
      for (const auto& [x, y] : v.failing) pairs += " (" + x + "," + y + ")";
      throw Failure{"not independent; failing pairs" + pairs};
    }
    return;
  }
  static const char* kRels[] = {"<=", ">=", "!=", "=", "<", ">"};
  std::size_t at = std::string::npos;
  std::string rel;
  for (std::size_t i = 0; i < b.size() && at == std::string::npos; ++i)
    for (const char* r : kRels)
      if (b.compare(i, std::strlen(r), r) == 0) {
        at = i;
        rel = r;
        break;
      }
  if (at == std::string::npos) throw Failure{"no relation in '" + b + "'"};
  Rational lhs = Expr(std::string_view(b).substr(0, at), s).eval();
  Rational rhs = Expr(std::string_view(b).substr(at + rel.size()), s).eval();
  bool ok = rel == "=" ? lhs == rhs
          : rel == "!=" ? lhs != rhs
          : rel == "<" ? lhs < rhs
          : rel == "<=" ? lhs <= rhs
          : rel == ">" ? lhs > rhs
                       : lhs >= rhs;
  if (!ok) throw Failure{"false: " + lhs.str() + " " + rel + " " + rhs.str()};
}

}  // namespace verify_detail

/// Replays a certificate using exact arithmetic on its snapshot only.
/// Structural damage (not a certificate at all) throws ParseError; every
/// semantic mismatch is reported with its location.
inline VerificationReport verify_certificate(const Certificate& cert) {
  using namespace verify_detail;
  VerificationReport rep;
  auto fail = [&](std::string where, std::string msg, std::optional<std::size_t> line = {}) {
    rep.ok = false;
    rep.location = std::move(where);
    rep.message = std::move(msg);
    rep.line = line;
    return rep;
  };

  FiniteMetricSpace s;
  try {
    s = space_from_json(cert.space);
  } catch (const Error& e) {
    return fail("space", e.what());
  }

  using Table = std::map<Label, Label>;
  std::map<std::string, std::pair<Table, Table>> tables;
  for (const auto& [name, pairs] : cert.isometries) {
    auto& [fwd, bwd] = tables[name];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [x, y] = pairs[i];
      const std::string where = "isometries." + name + "[" + std::to_string(i) + "]";
      auto ix = s.find(x), iy = s.find(y);
      if (!ix || !iy) return fail(where, "unknown point");
      if (!fwd.emplace(x, y).second || !bwd.emplace(y, x).second) return fail(where, "not injective");
      for (std::size_t k = 0; k < i; ++k) {
        const auto& [u, v] = pairs[k];
        if (s.distance(*ix, s.index(u)) != s.distance(*iy, s.index(v)))
          return fail(where, "d(" + x + "," + u + ") != d(" + y + "," + v + ")");
      }
    }
  }

  auto letters_of = [&](const std::string& name, bool inverse) {
    std::vector<Letter> ls;
    if (auto it = cert.words.find(name); it != cert.words.end()) {
      flatten(it->second, inverse, ls);
    } else {
      ls.push_back({name, inverse});
    }
    return ls;
  };

  for (std::size_t n = 0; n < cert.trace.size(); ++n) {
    const std::string& text = cert.trace[n];
    const std::string where = "trace[" + std::to_string(n) + "]";
    try {
      auto sp = text.find(' ');
      std::string kw = text.substr(0, sp);
      std::string rest = sp == std::string::npos ? "" : text.substr(sp + 1);
      if (kw == "note") {
      } else if (kw == "assert" || kw == "claim") {
        check_body(rest, s);
      } else if (kw == "eval" || kw == "eval-inv") {
        auto colon = rest.find(" : ");
        if (colon == std::string::npos) throw Failure{"eval needs 'NAME : p0 > ...'"};
        std::string name = trim(std::string_view(rest).substr(0, colon));
        std::vector<Label> pts;
        std::string chain = rest.substr(colon + 3);
        std::size_t pos = 0;
        for (;;) {
          auto gt = chain.find(" > ", pos);
          pts.push_back(trim(std::string_view(chain).substr(pos, gt == std::string::npos ? std::string::npos : gt - pos)));
          if (gt == std::string::npos) break;
          pos = gt + 3;
        }
        auto ls = letters_of(name, kw == "eval-inv");
        if (pts.size() != ls.size() + 1)
          throw Failure{"chain has " + std::to_string(pts.size() - 1) + " steps, word has " +
                        std::to_string(ls.size()) + " letters"};
        for (const auto& p : pts)
          if (!s.contains(p)) throw Failure{"unknown point '" + p + "'"};
        for (std::size_t i = 0; i < ls.size(); ++i) {
          auto t = tables.find(ls[i].name);
          if (t == tables.end()) throw Failure{"no table for '" + ls[i].name + "'"};
          const Table& tab = ls[i].inverse ? t->second.second : t->second.first;
          auto hit = tab.find(pts[i]);
          if (hit == tab.end() || hit->second != pts[i + 1])
            throw Failure{"step " + std::to_string(i + 1) + ": " + ls[i].name + (ls[i].inverse ? "^-1" : "") +
                          " does not map " + pts[i] + " to " + pts[i + 1]};
        }
      } else if (kw == "count") {
        std::istringstream in(rest);
        std::string name;
        std::size_t expected = 0;
        if (!(in >> name >> expected)) throw Failure{"count needs NAME N"};
        std::string leaf;
        if (auto c = name.find(':'); c != std::string::npos) {
          leaf = name.substr(c + 1);
          name = name.substr(0, c);
        }
        auto ls = letters_of(name, false);
        std::size_t got = 0;
        for (const auto& l : ls) got += leaf.empty() || l.name == leaf;
        if (got != expected)
          throw Failure{name + " has " + std::to_string(got) + (leaf.empty() ? "" : " " + leaf) +
                        " letters, not " + std::to_string(expected)};
      } else {
        throw Failure{"unknown directive '" + kw + "'"};
      }
    } catch (const Failure& f) {
      return fail(where, f.message + "  [" + text + "]", n);
    } catch (const Error& e) {
      return fail(where, std::string(e.what()) + "  [" + text + "]", n);
    } catch (const nlohmann::json::exception& e) {
      return fail(where, std::string("malformed word: ") + e.what(), n);
    }
    ++rep.lines_checked;
  }
  return rep;
}

}  // namespace ury
