#pragma once

#include "k3kit/lattice.hpp"
#include "k3kit/qseries.hpp"

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace k3 {

using Coset = DiscriminantForm::Coset;

// Components are shared between cosets that carry the same series (the v_j blocks can
// span a thousand cosets), so copies are cheap and the form is immutable once built.
class VectorValuedForm {
 public:
  using Component = std::shared_ptr<const PuiseuxSeries>;

  VectorValuedForm() = default;
  VectorValuedForm(Lattice lattice, DiscriminantForm df, std::vector<Component> components, Rat weight);
  // Zero form on the lattice's discriminant group, known below order.
  static VectorValuedForm zero(const Lattice& lattice, const Rat& weight, const Rat& order);

  const Lattice& lattice() const { return lattice_; }
  const DiscriminantForm& df() const { return df_; }
  const Rat& weight() const { return weight_; }
  std::size_t size() const { return comps_.size(); }
  const PuiseuxSeries& operator[](Coset g) const { return *comps_.at(g); }
  const Component& component(Coset g) const { return comps_.at(g); }
  // Smallest truncation order over the components.
  Rat order() const;

  VectorValuedForm scaled(const Rat& c) const;
  VectorValuedForm plus(const VectorValuedForm& o) const;
  VectorValuedForm truncated(const Rat& order) const;
  bool is_real() const;
  bool is_zero() const;

 private:
  template <class Op>
  VectorValuedForm map(Op op) const;

  Lattice lattice_;
  DiscriminantForm df_;
  std::vector<Component> comps_;
  Rat weight_;
};

struct PhiPsi {
  PuiseuxSeries phi, psi;
};
// phi = eta^-8 eta(2t)^8 eta(4t)^-8 theta^{12-r};  psi = -16 eta(2t)^-16 eta(4t)^8 theta_{1/2}^{12-r}.
PhiPsi build_phi_psi(int r, const Rat& phi_order, const Rat& psi_order);

// F_Lambda known for exponents < order.
VectorValuedForm build_F_lambda(const Lattice& lambda, long order);
// The correcting form f_Lambda, keyed on r(M) = 22 - r(Lambda); zero when no correction applies.
VectorValuedForm build_f_lambda(const Lattice& lambda, long order);

struct PrincipalTerm {
  Coset coset;
  Rat exponent;
  Rat coeff;
  bool operator==(const PrincipalTerm&) const = default;
};
// All (coset, n, c) with n <= 0 and c != 0, sorted by coset then exponent.
std::vector<PrincipalTerm> principal_part(const VectorValuedForm& f);

// Closed-form principal part of F_Lambda:
// {q^-1 + 2(16-r)} e0 + 2^{g+1}(16-r) v0 + 2^g q^{-1/4} v3 - 2^{16-r} q^{(12-r)/4}{1 + (28-r)q^2} e_{1_Lambda},
// keeping the terms with exponent <= 0 and merging coincident (coset, exponent) pairs.
std::vector<PrincipalTerm> expected_principal_part_F(const DiscriminantForm& df, const Invariants& lam);

// Convention for the S-matrix prefactor. The standard choice is e((b- - b+)/8); the
// conjugate is kept only to demonstrate that the numeric check distinguishes them.
enum class WeilConvention { standard, conjugate };

class WeilRep {
 public:
  WeilRep(const DiscriminantForm& df, Signature sig, WeilConvention conv = WeilConvention::standard);
  std::complex<double> t_phase(Coset g) const;
  std::complex<double> s_entry(Coset g, Coset h) const;
  std::vector<std::complex<double>> apply_s(const std::vector<std::complex<double>>& v) const;
  std::vector<std::complex<double>> apply_t(const std::vector<std::complex<double>>& v) const;
  std::size_t size() const { return df_.size(); }
  // max |(S S^*) - I| and max |S^2 - c I| where c = e((b- - b+)/4), and max |(ST)^3 - S^2|.
  double unitarity_defect() const;
  double s_squared_defect() const;
  double braid_defect() const;

 private:
  DiscriminantForm df_;
  Eigen::MatrixXcd s_;  // dense; |A| <= 2048 for the lattices in scope
  Eigen::VectorXcd t_;
  std::complex<double> s2_;
};

struct ModularityReport {
  bool ok = true;
  double worst_t = 0, worst_s = 0, max_tail = 0;
  Coset worst_component = 0;
  std::complex<double> worst_tau;
  std::string detail;
};

// Checks F(tau + 1) = rho(T) F(tau) and F(-1/tau) = tau^k rho(S) F(tau), k = weight,
// tau^k = exp(k Log tau). Residuals are relative to max(1, sup-norm of the left side).
ModularityReport check_modularity(const VectorValuedForm& f, const std::vector<std::complex<double>>& taus,
                                  double tol, WeilConvention conv = WeilConvention::standard);

}  // namespace k3
