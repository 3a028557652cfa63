#include "k3kit/heegner.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace k3 {

FormalDivisor pullback(const FormalDivisor& d, int target_delta) {
  const Node& s = d.node();
  if (s.delta != 1) throw std::invalid_argument("pullback along a plus root needs delta = 1 at " + to_string(s));
  const Node t{s.r - 1, s.l - 1, target_delta};
  if (t.l < 0 || !find_lambda(t.r, t.l, t.delta))
    throw std::invalid_argument("no tabulated class at " + to_string(t) + " below " + to_string(s));
  return {t, d[Sym::d_minus], d[Sym::d_plus], 2 * d[Sym::h], d[Sym::h_e11]};
}

namespace {

void require_non_exceptional(const Node& n) {
  if (is_exceptional_lambda(lambda_invariants(n.r, n.l, n.delta)))
    throw std::invalid_argument("M is exceptional at " + to_string(n));
}

std::string weight_str(const WeightPair& w) { return "(" + to_string(w.first) + ", " + to_string(w.second) + ")"; }

// Lift profile of Psi(., F_Lambda) per unit l, cached per node.
LiftProfile lift_of_F(const Node& n) {
  static std::mutex mu;
  static std::map<Node, LiftProfile> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  const ClassEntry* e = find_lambda(n.r, n.l, n.delta);
  if (!e) throw std::invalid_argument("node " + to_string(n) + " is not a tabulated class");
  LiftProfile p = lift_profile(PrincipalPart::of(build_F_lambda(e->lattice, 3)), n);
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace

SectionDivisor chi8_divisor(const Node& n, const IgusaCoefficients& c) {
  require_non_exceptional(n);
  const int rM = n.r_M(), g = n.g(), k = n.k();
  SectionDivisor s;
  s.div = FormalDivisor(n);
  if (g == 0) {
    s.item = 1;
  } else if (rM >= 2 && n.delta == 1 && g <= 9) {
    s.item = 2;
    s.div[Sym::d_minus] = c.a_of(g);
    s.div[Sym::h] = pow2(k) * c.b;
  } else if (rM == 1 && n.delta == 1) {
    s.item = 3;
    s.div[Sym::d_minus] = c.a_of(10);
    s.div[Sym::d_plus] = c.c10;
    s.div[Sym::h] = c.b;
  } else if (n.delta == 0 && rM != 2 && rM != 10) {
    s.item = 4;
    s.div = discriminant_divisor(n, pow2(g - 1) * (pow2(g) + 1));
  } else if (n.delta == 0) {
    s.item = 5;
    s.identically_zero = true;
  } else {
    throw std::logic_error("no divisor-table case covers " + to_string(n));
  }
  return s;
}

FormalDivisor upsilon_divisor(const Node& n) {
  require_non_exceptional(n);
  const int rM = n.r_M(), g = n.g();
  if (rM == 10 && n.delta == 0) return discriminant_divisor(n, 2 * (pow2(2 * (g - 1)) - 1));
  if (rM == 2 && n.l == 0 && n.delta == 0) {
    FormalDivisor d = discriminant_divisor(n, 2 * (pow2(18) - 1));
    d[Sym::h] = 32;
    return d;
  }
  if (rM == 2 && n.l == 2 && n.delta == 0) {
    FormalDivisor d = discriminant_divisor(n, 2 * (pow2(16) - 1));
    d[Sym::h] = 16;
    d[Sym::h_e11] = -16;
    return d;
  }
  throw std::invalid_argument("Upsilon divisor is only tabulated for (r, delta) = (10, 0), (2, 0); got M-side " +
                              to_string(Node{rM, n.l, n.delta}));
}

BalanceReport weight_balance_check(const Node& n, const IgusaCoefficients& c) {
  require_non_exceptional(n);
  BalanceReport rep;
  rep.node = n;
  const int g = n.g();
  const Rat wt_phi(16 - n.r);  // first weight of Phi_M per unit l; the second is 4
  const Rat wt_siegel = pow2(g + 1) * (pow2(g) + 1);
  const SectionDivisor chi = chi8_divisor(n, c);
  std::ostringstream os;

  if (!chi.identically_zero) {
    rep.path = "chi8";
    const Rat N = pow2(g - 1) * (pow2(g) + 1);
    const LiftProfile lift = lift_of_F(n);
    rep.lhs_weight = {pow2(g - 1) * lift.weight, wt_siegel};
    rep.rhs_weight = {N * wt_phi, 4 * N};
    rep.residual = (pow2(g - 1) * lift.named.div + chi.div - discriminant_divisor(n, N)).normalized();
    os << "item " << chi.item << ": div chi8 = " << chi.div.str();
  } else {
    rep.path = "upsilon";
    const Rat P = (pow2(g - 1) + 1) * (pow2(g) - 1);
    const CombinedLift lift = combined_lift_profile(n.r_M(), n.l, n.delta, 3);
    rep.lhs_weight = {lift.profile.weight, wt_siegel - 4};
    rep.rhs_weight = {P * wt_phi, 4 * P};
    rep.residual = (lift.profile.named.div + upsilon_divisor(n) - discriminant_divisor(n, P)).normalized();
    os << "div Upsilon = " << upsilon_divisor(n).str();
  }
  rep.weight_ok = rep.lhs_weight == rep.rhs_weight;
  rep.divisor_ok = rep.residual.is_zero();
  if (!rep.weight_ok) os << "; weight " << weight_str(rep.lhs_weight) << " vs " << weight_str(rep.rhs_weight);
  if (!rep.divisor_ok) os << "; residual divisor " << rep.residual.str();
  rep.detail = os.str();
  return rep;
}

std::vector<Node> non_exceptional_nodes() {
  std::vector<Node> out;
  for (const auto& e : table1())
    if (!is_exceptional_lambda(e.inv)) out.push_back(node_of(e.inv));
  return out;
}

std::vector<BalanceReport> balance_all(const IgusaCoefficients& c) {
  std::vector<BalanceReport> out;
  for (const Node& n : non_exceptional_nodes()) out.push_back(weight_balance_check(n, c));
  return out;
}

}  // namespace k3
