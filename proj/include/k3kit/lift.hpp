#pragma once

#include "k3kit/divisor.hpp"
#include "k3kit/vvmf.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace k3 {

// c_g(n) for n <= 0, nonzero coefficients only.
struct PrincipalPart {
  DiscriminantForm df;
  std::vector<PrincipalTerm> entries;

  static PrincipalPart of(const VectorValuedForm& f);
  PrincipalPart scaled(const Rat& c) const;
  PrincipalPart plus(const PrincipalPart& o) const;
  Rat constant_term() const;  // c_0(0)
};

// Heegner class H(n, g) keyed by (n, coset).
using HeegnerKey = std::pair<Rat, Coset>;
using RawDivisor = std::map<HeegnerKey, Rat>;

struct NamedDivisor {
  FormalDivisor div;
  std::vector<PrincipalTerm> unclassified;  // entries the dictionary does not cover, kept verbatim
};

struct LiftProfile {
  Rat weight;
  RawDivisor divisor;
  NamedDivisor named;
};

// Weight c_0(0)/2 and divisor sum c_g(n) H(n, g) over n < 0.
LiftProfile lift_profile(const PrincipalPart& pp, const Node& node);

// Dictionary on the node:
//   H(-1, 0) -> D- + D+;   H(-1/4, g), q(g) = 3/2 -> D+ (uniform coefficient);
//   H(eps/2, 1_Lambda) -> H;   H(-1/2, e11) on the U(2) node -> H(-1, e11).
NamedDivisor render_named(const RawDivisor& raw, const DiscriminantForm& df, const Node& node);
// Inverse of the dictionary: the raw classes a named divisor stands for.
RawDivisor expand_named(const FormalDivisor& d, const DiscriminantForm& df);

// Smallest l > 0 with l F_Lambda integral on the computed window.
Int integrality_scale(const VectorValuedForm& F);

// Closed forms for Psi(., F_Lambda) per unit l.
Rat expected_lift_weight(const Node& n);
FormalDivisor expected_lift_divisor(const Node& n);

// Profile of 2^{g-1} F_Lambda + f_Lambda on Lambda = M^perp, given the M-side triple.
struct CombinedLift {
  Lattice lambda;
  Node node;
  LiftProfile profile;
  LiftProfile f_profile;  // Psi(., f_Lambda) alone
};
CombinedLift combined_lift_profile(int r_M, int l, int delta, long order = 4);

struct LiftCheckRow {
  std::string name;
  Node node;
  Rat weight, expected_weight;
  FormalDivisor divisor, expected_divisor;  // both normalized
  std::vector<PrincipalTerm> unclassified;
  Int scale;
  bool pass = false;
};
std::vector<LiftCheckRow> verify_theorem_lift(long order = 4);

}  // namespace k3
