#pragma once

#include "k3kit/divisor.hpp"
#include "k3kit/lift.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3 {

// Restriction to Lambda' = Lambda cap d^perp for a plus root d: D- -> D-, D+ -> D+, H -> 2H.
// The target node is (r - 1, l - 1, target_delta); it must be a tabulated class.
FormalDivisor pullback(const FormalDivisor& d, int target_delta = 1);

// The pulled-back Igusa coefficients a_g, b_g and the (r, delta) = (1, 1) coefficient c_10.
struct IgusaCoefficients {
  std::optional<Rat> a;  // default 2^{2g-1}
  Rat b = 16;
  Rat c10 = 112;
  Rat a_of(int g) const { return a ? *a : pow2(2 * g - 1); }
};

// Divisor of a pulled-back Siegel form, or the tag that it vanishes identically.
struct SectionDivisor {
  bool identically_zero = false;
  FormalDivisor div;
  int item = 0;  // which case of the divisor table produced it
};

// Case table keyed on the M-side triple of the node; exceptional M is rejected.
SectionDivisor chi8_divisor(const Node& n, const IgusaCoefficients& c = {});
FormalDivisor upsilon_divisor(const Node& n);

struct WeightPair {
  Rat first, second;
  bool operator==(const WeightPair&) const = default;
};

struct BalanceReport {
  Node node;
  std::string path;  // "chi8" or "upsilon"
  WeightPair lhs_weight, rhs_weight;
  FormalDivisor residual;  // normalized; zero when the divisors balance
  bool weight_ok = false, divisor_ok = false;
  std::string detail;
  bool pass() const { return weight_ok && divisor_ok; }
};

// chi8 path:    2^{g-1} div Psi(F) + div chi8 - 2^{g-1}(2^g + 1) D,
//               weights 2^{g-1} wt Psi(F) + (0, 2^{g+1}(2^g + 1)) against 2^{g-1}(2^g + 1)(16 - r, 4).
// upsilon path: div Psi(2^{g-1}F + f) + div Upsilon - P D with P = (2^{g-1} + 1)(2^g - 1),
//               weights against P (16 - r, 4).
BalanceReport weight_balance_check(const Node& n, const IgusaCoefficients& c = {});
std::vector<BalanceReport> balance_all(const IgusaCoefficients& c = {});

// Nodes of non-exceptional M, in table order.
std::vector<Node> non_exceptional_nodes();

}  // namespace k3
