#pragma once

#include "k3kit/heegner.hpp"
#include "k3kit/lift.hpp"
#include "k3kit/vvmf.hpp"

#include "json.hpp"

namespace k3 {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits go out as numbers, larger ones as decimal strings; both parse back.
Json int_json(const Int& x);
Int int_from_json(const Json& j);
// [p, q]
Json rat_pair(const Rat& x);
Rat rat_from_pair(const Json& j);

// { "name": string?, "gram": [[int]] }; a bare string is resolved as a lattice name.
Json to_json(const Lattice& a);
Lattice lattice_from_json(const Json& j);

// { "denom": N, "terms": [{"num": n, "re": [p,q], "im": [p,q]}], "order": m }: sum c q^{n/N} + O(q^{m/N}).
Json to_json(const PuiseuxSeries& s);
PuiseuxSeries series_from_json(const Json& j);

// { "lattice": ..., "weight": [p,q], "components": [{"coset": bits, "series": ...}] }
Json to_json(const VectorValuedForm& f);
VectorValuedForm vvf_from_json(const Json& j);

Json to_json(const Node& n);
Json to_json(const FormalDivisor& d);
Json to_json(const std::vector<PrincipalTerm>& pp, const DiscriminantForm& df);
Json to_json(const LiftProfile& p, const DiscriminantForm& df);
Json to_json(const BalanceReport& r);
Json to_json(const ClassEntry& e);

}  // namespace k3
