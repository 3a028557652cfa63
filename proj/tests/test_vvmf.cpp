#include "doctest.h"
#include "k3kit/vvmf.hpp"

#include <complex>

using namespace k3;
using GR = GaussianRational;

namespace {

const Lattice& lambda_of(int r, int l, int delta) {
  const ClassEntry* e = find_lambda(r, l, delta);
  REQUIRE(e != nullptr);
  return e->lattice;
}

std::vector<PrincipalTerm> negative_part(const std::vector<PrincipalTerm>& pp) {
  std::vector<PrincipalTerm> out;
  for (const auto& t : pp)
    if (t.exponent < 0) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("phi and psi") {
  auto a = build_phi_psi(12, 3, 3);
  CHECK(a.phi.coeff(-1) == GR(1));
  CHECK(a.phi.coeff(0) == GR(8));
  CHECK(a.psi.valuation() == 0);
  CHECK(a.psi.coeff(0) == GR(-16));

  auto b = build_phi_psi(10, 3, 3);
  CHECK(b.phi.coeff(0) == GR(12));
  // psi = -2^{16-r} q^{(12-r)/4}(1 + (28-r)q^2 + ...)
  auto c = build_phi_psi(21, 2, 2);
  CHECK(c.psi.coeff(frac(-9, 4)) == GR(-frac(1, 32)));
  CHECK(c.psi.coeff(frac(-1, 4)) == GR(-frac(7, 32)));
  CHECK(c.psi.coeff(frac(3, 4)) == GR(0));
}

TEST_CASE("principal part of F_Lambda on every tabulated lattice") {
  for (const auto& e : table1()) {
    CAPTURE(e.name);
    const auto F = build_F_lambda(e.lattice, 3);
    CHECK(F.is_real());
    CHECK(F.weight() == 2 - frac(e.inv.r, 2));
    CHECK(principal_part(F) == expected_principal_part_F(F.df(), e.inv));

    // e0 constant: the v0 block plus phi, and psi when 1_Lambda = 0 and its exponent hits 0 mod 2.
    Rat c0 = Rat(2 * (16 - e.inv.r)) * (pow2(e.inv.g) + 1);
    if (e.inv.delta == 0 && e.inv.r == 12) c0 -= 16;
    if (e.inv.delta == 0 && e.inv.r == 20) c0 -= frac(1, 2);
    CHECK(F[0].coeff(0) == GR(c0));

    // Components agree on each q-class away from 0 and 1_Lambda; exponents sit in q(g)/2 + Z.
    const auto& df = F.df();
    for (int j = 0; j < 4; ++j) {
      const PuiseuxSeries* ref = nullptr;
      for (Coset g : df.with_q2(j)) {
        for (const auto& [x, c] : F[g].terms()) CHECK(Rat(x - frac(j, 4)).get_den() == 1);
        if (g == 0 || g == df.char_elem()) continue;
        if (ref) CHECK(F[g] == *ref);
        ref = &F[g];
      }
    }
  }
}

TEST_CASE("named principal-part entries") {
  const auto F21 = build_F_lambda(parse_lattice("U*2+E8*2+A1"), 2);
  const Coset one = F21.df().char_elem();
  REQUIRE(one != 0);
  const auto pp = principal_part(F21);
  auto has = [&](Coset g, Rat e, Rat c) {
    for (const auto& t : pp)
      if (t.coset == g && t.exponent == e) return t.coeff == c;
    return false;
  };
  CHECK(has(one, frac(-9, 4), -frac(1, 32)));
  CHECK(has(one, frac(-1, 4), pow2(10) - frac(7, 32)));

  const auto F20 = build_F_lambda(lambda_of(20, 0, 0), 2);
  CHECK(F20[0].coeff(-2) == GR(-frac(1, 16)));

  const auto Z = VectorValuedForm::zero(parse_lattice("U*2+A1"), frac(1, 2), 3);
  CHECK(principal_part(Z).empty());
}

TEST_CASE("correcting forms") {
  SUBCASE("M = U") {
    const auto f = build_f_lambda(lambda_of(20, 0, 0), 3);
    CHECK(f.weight() == -8);
    CHECK(f[0].coeff(-1) == GR(1));
    CHECK(f[0].coeff(0) == GR(264));
    CHECK(principal_part(f).size() == 2);
  }
  SUBCASE("M = U(2)") {
    const auto f = build_f_lambda(lambda_of(20, 2, 0), 3);
    const auto& df = f.df();
    const auto e11 = df.with_q2(2);
    REQUIRE(e11.size() == 1);
    CHECK(f[0].coeff(-1) == GR(1));
    CHECK(f[0].coeff(0) == GR(136));
    CHECK(f[e11[0]].coeff(frac(-1, 2)) == GR(16));
    // The two isotropic cosets carry only a constant 128 below q^1.
    for (Coset g = 1; g < df.size(); ++g) {
      if (g == e11[0]) continue;
      CHECK(f[g].valuation() == 0);
      CHECK(f[g].coeff(0) == GR(128));
    }
    CHECK(negative_part(principal_part(f)).size() == 2);
  }
  SUBCASE("r(M) = 10 copies F, r(M) = 6 gives zero") {
    const Lattice* found = nullptr;
    for (const auto& e : table1())
      if (e.inv.r == 12 && e.inv.delta == 1) found = &e.lattice;
    REQUIRE(found != nullptr);
    const Lattice& lam = *found;
    const auto f = build_f_lambda(lam, 3);
    const auto F = build_F_lambda(lam, 3);
    for (Coset g = 0; g < F.size(); ++g) CHECK(f[g] == F[g]);
    for (const auto& e : table1())
      if (e.inv.r == 16 && e.inv.delta == 0) CHECK(build_f_lambda(e.lattice, 3).is_zero());
  }
}

TEST_CASE("Weil representation relations") {
  for (const char* name : {"U*2+A1", "U+U(2)+E8(2)", "U*2+D4+D8", "U*2+E8*2+A1", "U+U(2)+A1*3"}) {
    CAPTURE(name);
    const Lattice L = parse_lattice(name);
    const WeilRep rho(discriminant_form(L), signature(L));
    CHECK(rho.unitarity_defect() < 1e-12);
    CHECK(rho.s_squared_defect() < 1e-12);
    CHECK(rho.braid_defect() < 1e-12);
  }
}

TEST_CASE("modularity of F_Lambda and f_Lambda") {
  const std::vector<std::complex<double>> taus{{0.25, 1.0}, {-0.1, 1.2}};
  for (const char* name : {"U*2+E7", "U+U(2)+E8(2)", "U*2+D4+D8", "U*2+E8*2+A1", "U+U(2)+A1*3"}) {
    CAPTURE(name);
    const auto F = build_F_lambda(parse_lattice(name), 60);
    const auto rep = check_modularity(F, taus, 1e-6);
    CAPTURE(rep.detail);
    CHECK(rep.ok);
  }
  for (int l : {0, 2}) {
    const auto f = build_f_lambda(lambda_of(20, l, 0), 60);
    const auto rep = check_modularity(f, taus, 1e-6);
    CAPTURE(rep.detail);
    CHECK(rep.ok);
  }
}

TEST_CASE("the conjugate convention is rejected") {
  const auto F = build_F_lambda(parse_lattice("U*2+E8*2+A1"), 60);
  const auto rep = check_modularity(F, {{0.25, 1.0}}, 1e-6, WeilConvention::conjugate);
  CHECK_FALSE(rep.ok);
  CHECK(rep.worst_s > 1e-3);
}

TEST_CASE("truncation that is too short is reported") {
  const auto F = build_F_lambda(parse_lattice("U*2+E7"), 4);
  const auto rep = check_modularity(F, {{0.0, 0.3}}, 1e-6);
  CHECK_FALSE(rep.ok);
  CHECK(rep.detail.find("truncation") != std::string::npos);
}
