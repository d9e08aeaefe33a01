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

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "urysohn/isometry.hpp"

namespace ury {

/// Formal group word over lazy isometries, kept as an expression tree.
///
/// Conventions (fixed everywhere in this library):
///   compose(u, v)    = u o v            (v is applied first)
///   conjugate(w, h)  = h o w o h^-1     so that w^h(h(a)) = h(w(a))
///   commutator(g, h) = g^-1 o h^-1 o g o h
/// Evaluation walks letters() in application order, so the recorded chain
/// of intermediate points lines up with the flattened word.
class Word {
 public:
  enum class Op { kIdentity, kLeaf, kInverse, kCompose, kConjugate, kCommutator };

  struct Letter {
    std::string name;
    LazyIsometry* iso = nullptr;  // null for purely symbolic leaves
    bool inverse = false;
  };

  Word() : Word(std::make_shared<Node>(Node{Op::kIdentity, {}, nullptr, {}})) {}

  static Word identity() { return Word(); }
  static Word leaf(LazyIsometry& g) { return Word(std::make_shared<Node>(Node{Op::kLeaf, g.name(), &g, {}})); }
  static Word symbol(std::string name) {
    return Word(std::make_shared<Node>(Node{Op::kLeaf, std::move(name), nullptr, {}}));
  }
  static Word inverse(Word w) { return Word(make(Op::kInverse, {std::move(w)})); }
  static Word compose(Word outer, Word inner) {
    return Word(make(Op::kCompose, {std::move(outer), std::move(inner)}));
  }
  static Word conjugate(Word w, Word by) { return Word(make(Op::kConjugate, {std::move(w), std::move(by)})); }
  static Word commutator(Word g, Word h) { return Word(make(Op::kCommutator, {std::move(g), std::move(h)})); }

  /// Product w_k o ... o w_1 of `factors` listed in application order.
  static Word product(const std::vector<Word>& factors) {
    if (factors.empty()) return identity();
    Word acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = compose(factors[i], acc);
    return acc;
  }

  Op op() const { return node_->op; }

  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    flatten(*node_, false, out);
    return out;
  }

  Label evaluate(const Label& x, std::vector<Label>* chain = nullptr) const {
    return run(letters(), x, chain);
  }
  Label evaluate_inverse(const Label& y, std::vector<Label>* chain = nullptr) const {
    std::vector<Letter> ls;
    flatten(*node_, true, ls);
    return run(ls, y, chain);
  }

  /// {"leaf": name} | {"op": "identity"} | {"op": "inverse", "arg": w} |
  /// {"op": "compose"|"commutator", "left": u, "right": v} |
  /// {"op": "conjugate", "word": w, "by": h}
  nlohmann::json to_json() const { return node_json(*node_); }

 private:
  struct Node {
    Op op;
    std::string name;
    LazyIsometry* iso;
    std::vector<Word> args;
  };

  explicit Word(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static std::shared_ptr<const Node> make(Op op, std::vector<Word> args) {
    return std::make_shared<Node>(Node{op, {}, nullptr, std::move(args)});
  }

  static void flatten(const Node& n, bool inv, std::vector<Letter>& out) {
    auto sub = [&](const Word& w, bool i) { flatten(*w.node_, i, out); };
    auto seq = [&](std::vector<std::pair<const Word*, bool>> parts) {
      // parts are in application order for the non-inverted word
      if (!inv) {
        for (auto& [w, i] : parts) sub(*w, i);
      } else {
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) sub(*it->first, !it->second);
      }
    };
    switch (n.op) {
      case Op::kIdentity: return;
      case Op::kLeaf: out.push_back({n.name, n.iso, inv}); return;
      case Op::kInverse: sub(n.args[0], !inv); return;
      case Op::kCompose: seq({{&n.args[1], false}, {&n.args[0], false}}); return;
      case Op::kConjugate:
        seq({{&n.args[1], true}, {&n.args[0], false}, {&n.args[1], false}});
        return;
      case Op::kCommutator:
        seq({{&n.args[1], false}, {&n.args[0], false}, {&n.args[1], true}, {&n.args[0], true}});
        return;
    }
  }

  static Label run(const std::vector<Letter>& ls, Label x, std::vector<Label>* chain) {
    for (const auto& l : ls) {
      if (!l.iso) throw Error(ErrorKind::kPreconditionFailed, "symbolic leaf '" + l.name + "' cannot be evaluated");
      x = l.inverse ? l.iso->apply_inverse(x, chain) : l.iso->apply(x, chain);
    }
    return x;
  }

  static nlohmann::json node_json(const Node& n) {
    switch (n.op) {
      case Op::kIdentity: return {{"op", "identity"}};
      case Op::kLeaf: return {{"leaf", n.name}};
      case Op::kInverse: return {{"op", "inverse"}, {"arg", node_json(*n.args[0].node_)}};
      case Op::kCompose:
        return {{"op", "compose"}, {"left", node_json(*n.args[0].node_)}, {"right", node_json(*n.args[1].node_)}};
      case Op::kCommutator:
        return {{"op", "commutator"}, {"left", node_json(*n.args[0].node_)}, {"right", node_json(*n.args[1].node_)}};
      case Op::kConjugate:
        return {{"op", "conjugate"}, {"word", node_json(*n.args[0].node_)}, {"by", node_json(*n.args[1].node_)}};
    }
    return {};
  }

  std::shared_ptr<const Node> node_;
};

/// A word viewed as a single isometry of the shared universe.
class WordIsometry final : public Isometry {
 public:
  WordIsometry(Universe& universe, std::string name, Word word)
      : universe_(&universe), name_(std::move(name)), word_(std::move(word)) {}

  const std::string& name() const override { return name_; }
  Universe& universe() override { return *universe_; }
  const Word& word() const { return word_; }
  Label apply(const Label& x, std::vector<Label>* chain = nullptr) override {
    return word_.evaluate(x, chain);
  }
  Label apply_inverse(const Label& y, std::vector<Label>* chain = nullptr) override {
    return word_.evaluate_inverse(y, chain);
  }

 private:
  Universe* universe_;
  std::string name_;
  Word word_;
};

struct ConjugateLetter {
  Word conjugator;  // the letter is conjugator o g^(+-1) o conjugator^-1
  bool inverse = false;
};

struct CommutatorExpansion {
  Word nested;                          // g_depth = [g_{depth-1}, h_depth], g_0 = g
  std::vector<ConjugateLetter> letters; // in application order
  Word product;                         // the same element as a product of conjugates
  std::size_t positive = 0;
  std::size_t negative = 0;
};

/// Expands the nested commutator g_{i+1} = [g_i, h_{i+1}] into a product of
/// conjugates of g and g^-1. Uses [w, h] = w^-1 o (h^-1 o w o h): inverting
/// reverses the letters and flips signs, conjugating by h^-1 prefixes every
/// conjugator with h^-1.
inline CommutatorExpansion expand_commutator_word(const Word& g, const std::vector<Word>& hs) {
  CommutatorExpansion out;
  out.nested = g;
  out.letters.push_back({Word::identity(), false});
  for (const auto& h : hs) {
    out.nested = Word::commutator(out.nested, h);
    std::vector<ConjugateLetter> next;
    next.reserve(out.letters.size() * 2);
    // right factor h^-1 w h is applied first
    for (const auto& l : out.letters)
      next.push_back({Word::compose(Word::inverse(h), l.conjugator), l.inverse});
    for (auto it = out.letters.rbegin(); it != out.letters.rend(); ++it)
      next.push_back({it->conjugator, !it->inverse});
    out.letters = std::move(next);
  }
  std::vector<Word> factors;
  for (const auto& l : out.letters) {
    Word core = l.inverse ? Word::inverse(g) : g;
    factors.push_back(Word::compose(l.conjugator, Word::compose(core, Word::inverse(l.conjugator))));
    (l.inverse ? out.negative : out.positive) += 1;
  }
  out.product = Word::product(factors);
  return out;
}

inline CommutatorExpansion expand_commutator_word(std::size_t depth) {
  std::vector<Word> hs;
  for (std::size_t i = 1; i <= depth; ++i) hs.push_back(Word::symbol("h" + std::to_string(i)));
  return expand_commutator_word(Word::symbol("g"), hs);
}

}  // namespace ury
