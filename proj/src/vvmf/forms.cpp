#include "k3kit/vvmf.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace k3 {

VectorValuedForm::VectorValuedForm(Lattice lattice, DiscriminantForm df, std::vector<Component> components,
                                   Rat weight)
    : lattice_(std::move(lattice)), df_(std::move(df)), comps_(std::move(components)), weight_(std::move(weight)) {
  if (comps_.size() != df_.size()) throw std::invalid_argument("one component per coset is required");
  for (const auto& c : comps_)
    if (!c) throw std::invalid_argument("null component");
}

VectorValuedForm VectorValuedForm::zero(const Lattice& lattice, const Rat& weight, const Rat& order) {
  DiscriminantForm df = discriminant_form(lattice);
  auto z = std::make_shared<const PuiseuxSeries>(PuiseuxSeries::zero(order));
  std::vector<Component> comps(df.size(), z);
  return {lattice, std::move(df), std::move(comps), weight};
}

Rat VectorValuedForm::order() const {
  Rat o = comps_.front()->order();
  for (const auto& c : comps_) o = std::min(o, c->order());
  return o;
}

// Applies op once per distinct component and keeps the sharing pattern.
template <class Op>
VectorValuedForm VectorValuedForm::map(Op op) const {
  std::map<const PuiseuxSeries*, Component> done;
  std::vector<Component> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) {
    auto [it, fresh] = done.try_emplace(c.get());
    if (fresh) it->second = std::make_shared<const PuiseuxSeries>(op(*c));
    out.push_back(it->second);
  }
  return {lattice_, df_, std::move(out), weight_};
}

VectorValuedForm VectorValuedForm::scaled(const Rat& c) const {
  return map([&](const PuiseuxSeries& s) { return s.scaled(GaussianRational(c)); });
}

VectorValuedForm VectorValuedForm::truncated(const Rat& order) const {
  return map([&](const PuiseuxSeries& s) { return s.truncated(order); });
}

VectorValuedForm VectorValuedForm::plus(const VectorValuedForm& o) const {
  if (o.size() != size() || o.df_.l() != df_.l()) throw std::invalid_argument("forms live on different groups");
  if (o.weight_ != weight_) throw std::invalid_argument("forms have different weights");
  std::map<std::pair<const PuiseuxSeries*, const PuiseuxSeries*>, Component> done;
  std::vector<Component> out;
  out.reserve(size());
  for (std::size_t g = 0; g < size(); ++g) {
    auto [it, fresh] = done.try_emplace({comps_[g].get(), o.comps_[g].get()});
    if (fresh) it->second = std::make_shared<const PuiseuxSeries>(*comps_[g] + *o.comps_[g]);
    out.push_back(it->second);
  }
  return {lattice_, df_, std::move(out), weight_};
}

bool VectorValuedForm::is_real() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Component& c) { return c->is_real(); });
}

bool VectorValuedForm::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Component& c) { return c->is_zero(); });
}

PhiPsi build_phi_psi(int r, const Rat& phi_order, const Rat& psi_order) {
  if (r > 21) throw std::invalid_argument("r(Lambda) must be at most 21");
  const long p = 12 - r;
  // Margins cover the order lost to the q^-1 and q^{p/4} leading terms.
  const Rat a = phi_order + 2, b = psi_order + 3;
  const PuiseuxSeries phi = eta_quotient({{1, -8}, {2, 8}, {4, -8}}, a) * theta_a1(0, a).pow(p);
  const PuiseuxSeries psi = eta_quotient({{2, -16}, {4, 8}}, b) * theta_a1(1, b).pow(p);
  return {phi.truncated(phi_order), psi.scaled(GaussianRational(-16)).truncated(psi_order)};
}

namespace {

using Component = VectorValuedForm::Component;

Component share(PuiseuxSeries s) { return std::make_shared<const PuiseuxSeries>(std::move(s).reduced()); }

// Throws unless every coefficient is real; an imaginary residue means a sign convention slipped.
void require_real(const PuiseuxSeries& s, const char* what) {
  if (!s.is_real()) throw std::logic_error(std::string(what) + " has a non-real coefficient");
}

}  // namespace

VectorValuedForm build_F_lambda(const Lattice& lambda, long order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  const DiscriminantForm df = discriminant_form(lambda);
  const Invariants inv = invariants(lambda);
  if (inv.as_M) throw std::invalid_argument("F_Lambda needs a lattice of signature (2, r - 2)");
  const Rat ord(order);
  const PhiPsi pp = build_phi_psi(inv.r, 4 * ord, ord);

  // P_j = 2^{g-2} sum_k phi((tau + k)/4) i^{-jk}, the v_j block.
  std::vector<Component> blocks(4);
  for (int j = 0; j < 4; ++j) {
    PuiseuxSeries sum = PuiseuxSeries::zero(ord, 4);
    for (int k = 0; k < 4; ++k)
      sum += pp.phi.substitute_quarter(k).scaled(GaussianRational::i_pow(-static_cast<long>(j) * k));
    sum = sum.scaled(GaussianRational(pow2(inv.g - 2))).truncated(ord);
    require_real(sum, "F_Lambda block");
    blocks[j] = share(std::move(sum));
  }

  std::vector<Component> comps(df.size());
  for (Coset g = 0; g < df.size(); ++g) comps[g] = blocks[df.q2(g)];
  const Coset one = df.char_elem();
  if (one == 0) {
    comps[0] = share(*comps[0] + pp.phi.truncated(ord) + pp.psi);
  } else {
    comps[0] = share(*comps[0] + pp.phi.truncated(ord));
    comps[one] = share(*comps[one] + pp.psi);
  }
  for (const auto& c : comps) require_real(*c, "F_Lambda");
  return {lambda, df, std::move(comps), 2 - frac(inv.r, 2)};
}

VectorValuedForm build_f_lambda(const Lattice& lambda, long order) {
  const Invariants inv = invariants(lambda);
  if (inv.as_M) throw std::invalid_argument("f_Lambda needs a lattice of signature (2, r - 2)");
  const int rM = 22 - inv.r;
  const Rat weight = 2 - frac(inv.r, 2);
  const Rat ord(order);
  if (rM == 10) return build_F_lambda(lambda, order);
  if (rM == 2 && inv.l == 0) {
    const DiscriminantForm df = discriminant_form(lambda);
    std::vector<Component> comps{share(eisenstein_e4(ord + 1) * eta_power(1, -24, ord + 1))};
    comps[0] = share(comps[0]->truncated(ord));
    return {lambda, df, std::move(comps), weight};
  }
  if (rM == 2 && inv.l == 2 && inv.delta == 0) {
    const DiscriminantForm df = discriminant_form(lambda);
    // f1 = eta(tau/2)^-8 eta(tau)^-8 = q^{-1/2}(...), and its tau -> tau + 1 translate.
    const PuiseuxSeries f1 = eta_quotient({{1, -8}, {2, -8}}, 2 * ord).rescale_variable(frac(1, 2)).truncated(ord);
    const PuiseuxSeries f1t = f1.translate(1);
    const Component even = share((f1 + f1t).scaled(GaussianRational(8)));
    const Component odd = share((f1 - f1t).scaled(GaussianRational(8)));
    std::vector<Component> comps(df.size());
    for (Coset g = 0; g < df.size(); ++g) {
      if (df.q2(g) % 2 != 0) throw std::logic_error("U(2)-type group has a half-integral norm");
      comps[g] = df.q2(g) == 0 ? even : odd;
    }
    comps[0] = share(*even + eta_quotient({{1, -8}, {2, -8}}, ord));
    for (const auto& c : comps) require_real(*c, "f_Lambda");
    return {lambda, df, std::move(comps), weight};
  }
  return VectorValuedForm::zero(lambda, weight, ord);
}

std::vector<PrincipalTerm> principal_part(const VectorValuedForm& f) {
  std::vector<PrincipalTerm> out;
  for (Coset g = 0; g < f.size(); ++g) {
    for (const auto& [e, c] : f[g].terms()) {
      if (e > 0) break;
      if (!c.is_real()) throw std::logic_error("principal part has a non-real coefficient");
      out.push_back({g, e, c.re});
    }
  }
  return out;
}

std::vector<PrincipalTerm> expected_principal_part_F(const DiscriminantForm& df, const Invariants& lam) {
  const int r = lam.r;
  std::map<std::pair<Coset, Rat>, Rat> acc;
  auto add = [&](Coset g, const Rat& e, const Rat& c) {
    if (e <= 0) acc[{g, e}] += c;
  };
  add(0, -1, 1);
  add(0, 0, 2 * (16 - r));
  for (Coset g : df.with_q2(0)) add(g, 0, pow2(lam.g + 1) * (16 - r));
  for (Coset g : df.with_q2(3)) add(g, frac(-1, 4), pow2(lam.g));
  const Rat e1 = frac(12 - r, 4);
  add(df.char_elem(), e1, -pow2(16 - r));
  add(df.char_elem(), e1 + 2, -pow2(16 - r) * (28 - r));
  std::vector<PrincipalTerm> out;
  for (const auto& [key, c] : acc)
    if (sgn(c) != 0) out.push_back({key.first, key.second, c});
  return out;
}

}  // namespace k3
