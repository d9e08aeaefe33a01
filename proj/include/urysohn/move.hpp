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

#include <functional>
#include <string>
#include <vector>

#include "urysohn/certificate.hpp"

namespace ury {

/// How an isometry moved one realization of a type over base X.
struct MoveOutcome {
  enum class Kind { kAlmostMaximal, kDisplacement };

  Kind kind = Kind::kDisplacement;
  Label realization;
  Label image;
  std::vector<Label> base;
  Rational displacement;  // d(realization, image), always filled

  bool almost_maximal() const { return kind == Kind::kAlmostMaximal; }
};

inline Label apply_logged(Isometry& g, const Label& x, CertificateBuilder* cert) {
  return cert ? cert->apply(g, x) : g.apply(x);
}
inline Label apply_inverse_logged(Isometry& g, const Label& y, CertificateBuilder* cert) {
  return cert ? cert->apply_inverse(g, y) : g.apply_inverse(y);
}

/// Classifies an already evaluated pair x -> g(x) against base X.
inline MoveOutcome classify_move(const FiniteMetricSpace& s, const Label& x, const Label& gx,
                                 std::vector<Label> base) {
  MoveOutcome out;
  out.realization = x;
  out.image = gx;
  out.displacement = s.distance(x, gx);
  std::vector<Label> a{x}, c{gx};
  out.kind = is_independent(s, a, base, c) ? MoveOutcome::Kind::kAlmostMaximal
                                           : MoveOutcome::Kind::kDisplacement;
  out.base = std::move(base);
  return out;
}

/// Realizes `p` and reports how `g` moves the realization. The realization
/// is taken independent over X from everything known once g^-1(X) has been
/// evaluated, as in the lemma constructions.
inline MoveOutcome move_type(Isometry& g, const KatetovFunction& p, CertificateBuilder* cert = nullptr) {
  Universe& u = g.universe();
  const auto& base = p.base().labels();
  for (const auto& x : base) apply_inverse_logged(g, x, cert);
  Label b = u.realize_independent(p, "b");
  Label gb = apply_logged(g, b, cert);
  return classify_move(u.space(), b, gb, base);
}

/// The hypothesis interface of the move lemmas: given a type, produce a
/// realization and how g moves it.
using MoverOracle = std::function<MoveOutcome(Isometry&, const KatetovFunction&, CertificateBuilder*)>;

inline MoverOracle generic_oracle() {
  return [](Isometry& g, const KatetovFunction& p, CertificateBuilder* cert) { return move_type(g, p, cert); };
}

}  // namespace ury
