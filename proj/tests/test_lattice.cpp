#include "doctest.h"
#include "k3kit/lattice.hpp"

#include <algorithm>
#include <map>

using namespace k3;

namespace {

std::map<int, int> q_histogram(const DiscriminantForm& f) {
  std::map<int, int> h;
  for (DiscriminantForm::Coset g = 0; g < f.size(); ++g) ++h[f.q2(g)];
  return h;
}

IntMatrix column(std::initializer_list<long> v) {
  IntMatrix m(v.size(), 1);
  std::size_t i = 0;
  for (long x : v) m(i++, 0) = x;
  return m;
}

}  // namespace

TEST_CASE("smith and hermite forms reproduce their input") {
  IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  SmithForm s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.divisors() == std::vector<Int>{2, 6, 12});
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);

  HermiteForm h = hermite_normal_form(a);
  CHECK(h.U * a == h.H);
  CHECK(abs(determinant(h.U)) == 1);
  CHECK(h.rank == 3);

  IntMatrix k = integer_kernel(IntMatrix{{1, 2, 3}, {2, 4, 6}});
  CHECK(k.cols() == 2);
  IntMatrix z = IntMatrix{{1, 2, 3}} * k;
  CHECK(z(0, 0) == 0);
  CHECK(z(0, 1) == 0);
}

TEST_CASE("direct sums and rescaling") {
  Lattice uu = direct_sum(named::U(), named::U());
  CHECK(uu.rank() == 4);
  CHECK(uu.det() == 1);

  Lattice aa = direct_sum(named::A1(), named::A1());
  CHECK(aa.gram() == IntMatrix{{-2, 0}, {0, -2}});
  CHECK(discriminant_form(aa).l() == 2);

  Invariants ex = invariants(parse_lattice("U+U(2)+E8(2)"));
  CHECK(ex.r == 12);
  CHECK(ex.l == 10);
  CHECK(ex.delta == 0);

  CHECK(rescale(named::A1(), -1).gram() == IntMatrix{{2}});
  CHECK(rescale(named::U(), 1).gram() == named::U().gram());
  CHECK(discriminant_form(rescale(named::E8(), 2)).l() == 8);
  CHECK_THROWS(rescale(named::U(), 0));
}

TEST_CASE("exact signature") {
  CHECK(signature(named::U()) == Signature{1, 1});
  CHECK(signature(parse_lattice("U*3+E8*2")) == Signature{3, 19});
  CHECK(signature(parse_lattice("U*2+E8*2")) == Signature{2, 18});
  CHECK(signature(named::E7()) == Signature{0, 7});
  for (const char* n : {"U+U(2)+D4", "A1+*2+A1*5", "U*2+E7+E8"}) {
    Lattice a = parse_lattice(n);
    Signature s = signature(a), t = signature(rescale(a, -1));
    CHECK(s.plus == t.minus);
    CHECK(s.minus == t.plus);
  }
  CHECK_THROWS(Lattice(IntMatrix{{2, 2}, {2, 2}}));
}

TEST_CASE("discriminant forms of small lattices") {
  DiscriminantForm a1 = discriminant_form(named::A1());
  CHECK(a1.l() == 1);
  CHECK(a1.q(1) == Rat(3, 2));
  CHECK(a1.delta() == 1);
  CHECK(a1.char_elem() == 1);

  DiscriminantForm u2 = discriminant_form(rescale(named::U(), 2));
  CHECK(u2.l() == 2);
  CHECK(q_histogram(u2) == std::map<int, int>{{0, 3}, {2, 1}});
  CHECK(u2.delta() == 0);
  CHECK(u2.char_elem() == 0);

  DiscriminantForm u = discriminant_form(named::U());
  CHECK(u.l() == 0);
  CHECK(u.delta() == 0);

  CHECK_THROWS_WITH(discriminant_form(Lattice(IntMatrix{{1}})), "odd lattice");
  CHECK_THROWS_WITH(discriminant_form(Lattice(IntMatrix{{-6}})), doctest::Contains("not 2-elementary"));
}

TEST_CASE("discriminant form axioms hold on every tabulated lattice") {
  for (const auto& e : table1()) {
    DiscriminantForm f = discriminant_form(e.lattice);
    const auto c = f.char_elem();
    for (DiscriminantForm::Coset g = 0; g < f.size(); ++g) {
      CHECK(f.b2(g, c) == (f.q2(g) & 1));
      for (DiscriminantForm::Coset h = g; h < f.size(); h += 7) {
        const int lhs = (f.q2(g ^ h) - f.q2(g) - f.q2(h) + 8) & 3;
        CHECK(lhs == 2 * f.b2(g, h));
      }
    }
    const bool all_integral = f.with_q2(1).empty() && f.with_q2(3).empty();
    CHECK((f.delta() == 0) == all_integral);
  }
}

TEST_CASE("orthogonal sums of discriminant forms") {
  for (auto [x, y] : std::vector<std::pair<const char*, const char*>>{{"U(2)", "D4"}, {"A1*3", "E7"}, {"D6", "A1+"}}) {
    Lattice a = parse_lattice(x), b = parse_lattice(y);
    DiscriminantForm s = discriminant_form(direct_sum(a, b));
    DiscriminantForm o = orthogonal_sum(discriminant_form(a), discriminant_form(b));
    CHECK(s.l() == o.l());
    CHECK(q_histogram(s) == q_histogram(o));
    CHECK(s.delta() == o.delta());
  }
}

TEST_CASE("invariant triples") {
  Invariants a = invariants(parse_lattice("U+A1++A1*9"));
  CHECK(a.r == 12);
  CHECK(a.l == 10);
  CHECK(a.delta == 1);
  CHECK(a.g == 1);

  Invariants b = invariants(parse_lattice("U*2+E8*2"));
  CHECK(b.r == 20);
  CHECK(b.l == 0);
  CHECK(b.delta == 0);
  CHECK(b.g == 10);
  CHECK(b.eps == -4);

  for (int g = 1; g <= 9; ++g) {
    Invariants m = invariants(parse_lattice("A1++A1*" + std::to_string(10 - g)));
    CHECK(m.as_M);
    CHECK(m.r == 11 - g);
    CHECK(m.l == 11 - g);
    CHECK(m.g == g);
    CHECK(m.k == 0);
  }
}

TEST_CASE("class table") {
  const auto t = classify_table();
  CHECK(t.size() == 75);
  std::vector<std::string> top;
  int g0 = 0;
  for (const auto& e : t) {
    if (e.inv.g == 10 && e.inv.delta == 1) top.push_back(e.name);
    if (e.inv.g == 0 && e.inv.delta == 1) ++g0;
    CHECK(e.inv.sign.plus == 2);
  }
  CHECK(top == std::vector<std::string>{"U*2+E8*2+A1"});
  CHECK(g0 == 10);
  CHECK(find_lambda(21, 1, 1)->name == "U*2+E8*2+A1");
  CHECK(parse_lattice("(A1+)perp").name() == "U*2+E8*2+A1");
  CHECK(parse_lattice("(U(2)+E8(2))perp").name() == "U+U(2)+E8(2)");
}

TEST_CASE("orthogonal complements") {
  Lattice uu = direct_sum(named::U(), named::U());
  IntMatrix sub(4, 2);
  sub(0, 0) = 1;
  sub(1, 1) = 1;
  Lattice c = orthogonal_complement(sub, uu);
  CHECK(c.rank() == 2);
  CHECK(c.det() == -1);
  CHECK(c.is_even());
  CHECK(signature(c) == Signature{1, 1});

  Lattice d = orthogonal_complement(column({1, 1}), named::U());
  CHECK(d.gram() == IntMatrix{{-2}});

  // Lambda = Lambda' + Zd with d the last A1 generator.
  for (const char* n : {"U*2+E8+A1*3", "U+A1++A1*4", "U*2+D4+E8+A1*2"}) {
    Lattice lam = parse_lattice(n);
    const std::size_t r = lam.rank();
    IntMatrix dv(r, 1);
    dv(r - 1, 0) = 1;
    std::vector<Int> dvec(r);
    dvec[r - 1] = 1;
    CHECK(root_type(dvec, lam) == RootType::plus);
    Invariants before = invariants(lam), after = invariants(orthogonal_complement(dv, lam));
    CHECK(after.r == before.r - 1);
    CHECK(after.l == before.l - 1);
    CHECK(after.delta == before.delta);
  }
  CHECK_THROWS(orthogonal_complement(IntMatrix{{1, 2}, {1, 2}}, named::U()));
}

TEST_CASE("root types") {
  CHECK(root_type({Int(1)}, named::A1()) == RootType::plus);
  CHECK(root_type({Int(1), Int(-1)}, named::U()) == RootType::minus);
  CHECK_THROWS(root_type({Int(1), Int(1)}, named::U()));
  // every root of a delta = 0 lattice is of minus type
  Lattice lam = parse_lattice("U*2+E8");
  for (std::size_t i = 4; i < 12; ++i) {
    std::vector<Int> d(12);
    d[i] = 1;
    CHECK(root_type(d, lam) == RootType::minus);
  }
}

TEST_CASE("lattice names") {
  CHECK(parse_lattice("U+U(2)+E8(2)+A1*3").rank() == 15);
  CHECK(parse_lattice("U ⊕ U(2)").rank() == 4);
  CHECK(parse_lattice("A1+*2").gram() == IntMatrix{{2, 0}, {0, 2}});
  CHECK(parse_lattice("A1++A1").gram() == IntMatrix{{2, 0}, {0, -2}});
  CHECK_THROWS(parse_lattice("Q7"));
  CHECK_THROWS(parse_lattice("U++"));
}
