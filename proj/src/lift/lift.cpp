#include "k3kit/lift.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace k3 {

PrincipalPart PrincipalPart::of(const VectorValuedForm& f) { return {f.df(), principal_part(f)}; }

PrincipalPart PrincipalPart::scaled(const Rat& c) const {
  PrincipalPart out{df, {}};
  if (sgn(c) == 0) return out;
  for (auto t : entries) {
    t.coeff *= c;
    out.entries.push_back(std::move(t));
  }
  return out;
}

PrincipalPart PrincipalPart::plus(const PrincipalPart& o) const {
  if (o.df.l() != df.l()) throw std::invalid_argument("principal parts on different groups");
  std::map<HeegnerKey, Rat> acc;
  for (const auto* p : {this, &o})
    for (const auto& t : p->entries) acc[{t.exponent, t.coset}] += t.coeff;
  PrincipalPart out{df, {}};
  for (const auto& [k, c] : acc)
    if (sgn(c) != 0) out.entries.push_back({k.second, k.first, c});
  std::sort(out.entries.begin(), out.entries.end(), [](const PrincipalTerm& a, const PrincipalTerm& b) {
    return a.coset != b.coset ? a.coset < b.coset : a.exponent < b.exponent;
  });
  return out;
}

Rat PrincipalPart::constant_term() const {
  for (const auto& t : entries)
    if (t.coset == 0 && sgn(t.exponent) == 0) return t.coeff;
  return 0;
}

LiftProfile lift_profile(const PrincipalPart& pp, const Node& node) {
  LiftProfile p;
  p.weight = pp.constant_term() / 2;
  for (const auto& t : pp.entries)
    if (sgn(t.exponent) < 0) p.divisor[{t.exponent, t.coset}] += t.coeff;
  p.named = render_named(p.divisor, pp.df, node);
  return p;
}

namespace {

bool is_u2_node(const Node& n) { return n == Node{20, 2, 0}; }

Coset e11_of(const DiscriminantForm& df) {
  const auto v = df.with_q2(2);
  if (v.size() != 1) throw std::logic_error("U(2)-type node without a unique coset of norm 1");
  return v.front();
}

}  // namespace

NamedDivisor render_named(const RawDivisor& raw, const DiscriminantForm& df, const Node& node) {
  NamedDivisor out{FormalDivisor(node), {}};
  FormalDivisor& d = out.div;
  const Coset one = df.char_elem();
  const Rat h_exp = node.eps() / 2;
  const Rat quarter = frac(-1, 4);
  const std::vector<Coset> s3 = df.with_q2(3);
  const std::set<Coset> s3set(s3.begin(), s3.end());
  const bool joint = h_exp == quarter && s3set.count(one) > 0;  // 1_Lambda is itself a plus coset at -1/4

  auto coeff = [&](const Rat& n, Coset g) -> Rat {
    auto it = raw.find({n, g});
    return it == raw.end() ? Rat(0) : it->second;
  };
  auto unclassified = [&](const Rat& n, Coset g, const Rat& c) { out.unclassified.push_back({g, n, c}); };

  for (const auto& [key, c] : raw) {
    const auto& [n, g] = key;
    if (sgn(c) == 0 || (n == quarter && s3set.count(g))) continue;  // plus cosets handled below
    if (n == -1 && g == 0) {
      d[Sym::d_minus] += c;
      d[Sym::d_plus] += c;
    } else if (n == h_exp && g == one) {
      d[Sym::h] += c;
    } else if (is_u2_node(node) && n == frac(-1, 2) && g == e11_of(df)) {
      d[Sym::h_e11] += c;
    } else {
      unclassified(n, g, c);
    }
  }

  std::vector<Coset> uniform_over;
  for (Coset g : s3)
    if (!(joint && g == one)) uniform_over.push_back(g);
  bool any = false;
  for (Coset g : s3) any = any || sgn(coeff(quarter, g)) != 0;
  if (!any) return out;

  if (uniform_over.empty()) {
    // Only 1_Lambda is a plus coset and it also carries H; the two classes coincide there.
    d[Sym::d_plus] += coeff(quarter, one);
    return out;
  }
  const Rat c = coeff(quarter, uniform_over.front());
  const bool uniform =
      std::all_of(uniform_over.begin(), uniform_over.end(), [&](Coset g) { return coeff(quarter, g) == c; });
  if (!uniform) {
    for (Coset g : s3)
      if (sgn(coeff(quarter, g)) != 0) unclassified(quarter, g, coeff(quarter, g));
    return out;
  }
  d[Sym::d_plus] += c;
  if (joint) d[Sym::h] += coeff(quarter, one) - c;
  return out;
}

RawDivisor expand_named(const FormalDivisor& d, const DiscriminantForm& df) {
  RawDivisor raw;
  const Node& node = d.node();
  const Rat a = d[Sym::d_minus], b = d[Sym::d_plus];
  raw[{Rat(-1), 0}] += a;
  for (Coset g : df.with_q2(3)) raw[{frac(-1, 4), g}] += b - a;
  if (sgn(d[Sym::h]) != 0) raw[{node.eps() / 2, df.char_elem()}] += d[Sym::h];
  if (sgn(d[Sym::h_e11]) != 0) raw[{frac(-1, 2), e11_of(df)}] += d[Sym::h_e11];
  std::erase_if(raw, [](const auto& kv) { return sgn(kv.second) == 0; });
  return raw;
}

Int integrality_scale(const VectorValuedForm& F) {
  Int l = 1;
  std::set<const PuiseuxSeries*> seen;
  for (Coset g = 0; g < F.size(); ++g) {
    if (!seen.insert(F.component(g).get()).second) continue;
    F[g].for_each_nonzero([&](long, const GaussianRational& c) {
      l = lcm(l, Int(c.re.get_den()));
      l = lcm(l, Int(c.im.get_den()));
    });
  }
  return l;
}

Rat expected_lift_weight(const Node& n) {
  Rat w = Rat(16 - n.r) * (pow2(n.g()) + 1);
  if (n.delta == 0 && n.r == 12) w -= 8;
  if (n.delta == 0 && n.r == 20) w -= Rat(28 - n.r) * pow2(15 - n.r);
  return w;
}

FormalDivisor expected_lift_divisor(const Node& n) {
  if (n.r == 21) return frac(1, 32) * FormalDivisor(n, 32, 3 * 17 * 643, -1);
  return FormalDivisor(n, 1, pow2(n.g()) + 1, -pow2(16 - n.r));
}

CombinedLift combined_lift_profile(int r_M, int l, int delta, long order) {
  const Node node{22 - r_M, l, delta};
  const ClassEntry* e = find_lambda(node.r, node.l, node.delta);
  if (!e) throw std::invalid_argument("no tabulated class for M-side triple " + to_string(Node{r_M, l, delta}));
  const auto F = build_F_lambda(e->lattice, order);
  const auto f = build_f_lambda(e->lattice, order);
  const PrincipalPart ppF = PrincipalPart::of(F), ppf = PrincipalPart::of(f);
  CombinedLift out{e->lattice, node, {}, {}};
  out.profile = lift_profile(ppF.scaled(pow2(node.g() - 1)).plus(ppf), node);
  out.f_profile = lift_profile(ppf, node);
  return out;
}

std::vector<LiftCheckRow> verify_theorem_lift(long order) {
  std::vector<LiftCheckRow> rows;
  for (const auto& e : table1()) {
    LiftCheckRow row;
    row.name = e.name;
    row.node = node_of(e.inv);
    const auto F = build_F_lambda(e.lattice, order);
    const PrincipalPart pp = PrincipalPart::of(F);
    const LiftProfile prof = lift_profile(pp, row.node);
    row.weight = prof.weight;
    row.expected_weight = expected_lift_weight(row.node);
    row.divisor = prof.named.div.normalized();
    row.expected_divisor = expected_lift_divisor(row.node).normalized();
    row.unclassified = prof.named.unclassified;
    row.scale = integrality_scale(F);

    RawDivisor back = expand_named(prof.named.div, pp.df);
    for (const auto& t : prof.named.unclassified) back[{t.exponent, t.coset}] += t.coeff;
    const Int bound = Int(pow2(std::max(0, row.node.r - 16)) * pow2(std::max(0, 2 - row.node.g())));
    row.pass = row.weight == row.expected_weight && row.divisor == row.expected_divisor &&
               row.unclassified.empty() && back == prof.divisor && bound % row.scale == 0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace k3
