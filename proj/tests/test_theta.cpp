#include "doctest.h"
#include "k3kit/theta.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

using namespace k3;
using cd = std::complex<double>;

namespace {

SiegelPoint<double> diag2(cd t1, cd t2, cd z = 0) { return SiegelPoint<double>({{t1, z}, {z, t2}}); }

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("characteristics") {
  CHECK(even_characteristics(1).size() == 3);
  CHECK(even_characteristics(2).size() == 10);
  CHECK(even_characteristics(3).size() == 36);
  CHECK(even_characteristics(4).size() == 136);
  CHECK(even_characteristic_count(10) == 524800);
  for (int g = 1; g <= 5; ++g) CHECK(even_characteristic_count(g) == Int(even_characteristics(g).size()));
  CHECK(chi8_weight(1) == 12);
  CHECK(chi8_weight(2) == 40);
  const auto c = ThetaChar::parse("10,01");
  CHECK(c.a == std::vector<int>{1, 0});
  CHECK(c.str() == "10,01");
  CHECK(c.is_even());
  CHECK_FALSE(ThetaChar::parse("1,1").is_even());
  CHECK_THROWS(ThetaChar::parse("12,00"));
  CHECK_THROWS(ThetaChar::parse("10,0"));
}

TEST_CASE("genus one values at tau = i") {
  const SiegelPoint<double> om({{cd(0, 1)}});
  const double pi = std::numbers::pi;
  const double th3 = std::pow(pi, 0.25) / std::tgamma(0.75);
  const auto t = theta_constant(ThetaChar::parse("0,0"), om, 1e-15);
  CHECK(std::abs(t.value - th3) < 1e-13);
  CHECK(std::abs(t.value - 1.0864348112133080146) < 1e-13);
  // theta_2(i) = theta_4(i) = 2^{-1/4} theta_3(i)
  CHECK(std::abs(theta_constant(ThetaChar::parse("1,0"), om, 1e-15).value - th3 / std::pow(2, 0.25)) < 1e-13);
  CHECK(std::abs(theta_constant(ThetaChar::parse("1,1"), om, 1e-15).value) < 1e-15);

  // chi_1^8 = (theta_2 theta_3 theta_4)^8 = 2^8 eta^24, eta(i) = Gamma(1/4) / (2 pi^{3/4})
  const double eta = std::tgamma(0.25) / (2 * std::pow(pi, 0.75));
  CHECK(rel(chi8(om, 1e-15).value, 256 * std::pow(eta, 24)) < 1e-12);
}

TEST_CASE("genus one in high precision") {
  using boost::math::constants::pi;
  const SiegelPoint<HighReal> om({{HighComplex(0, 1)}});
  const auto t = theta_constant(ThetaChar::parse("0,0"), om, 1e-40);
  const HighReal expect = pow(pi<HighReal>(), HighReal(1) / 4) / boost::math::tgamma(HighReal(3) / 4);
  CHECK(static_cast<double>(abs(t.value - HighComplex(expect))) < 1e-38);
  CHECK(t.tail < 1e-40);
}

TEST_CASE("block-diagonal period matrices factor") {
  std::mt19937_64 rng(7);
  const auto a = random_siegel_point<double>(1, rng);
  const auto b = random_siegel_point<double>(2, rng);
  std::vector<std::vector<cd>> m(3, std::vector<cd>(3, 0));
  m[0][0] = a(0, 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[1 + i][1 + j] = b(i, j);
  const SiegelPoint<double> om(m);
  for (const auto& ch : even_characteristics(3)) {
    const ThetaChar c1{{ch.a[0]}, {ch.b[0]}}, c2{{ch.a[1], ch.a[2]}, {ch.b[1], ch.b[2]}};
    const cd lhs = theta_constant(ch, om, 1e-14).value;
    const cd rhs = theta_constant(c1, a, 1e-14).value * theta_constant(c2, b, 1e-14).value;
    CAPTURE(ch.str());
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("Upsilon agrees with the elementary symmetric polynomial") {
  std::mt19937_64 rng(11);
  for (int g = 1; g <= 3; ++g) {
    const auto om = random_siegel_point<double>(g, rng);
    const auto x = even_theta8(om, 1e-15);
    std::vector<cd> v;
    for (const auto& t : x) v.push_back(t.value);
    const auto u = upsilon(om, 1e-15);
    CHECK(rel(u.value, elementary_symmetric<double>(v, v.size() - 1)) < 1e-10);
    CHECK(rel(chi8(om, 1e-15).value, elementary_symmetric<double>(v, v.size())) < 1e-10);
  }
}

TEST_CASE("Petersson norm of chi8 is Sp-invariant") {
  std::mt19937_64 rng(3);
  for (int g : {1, 2}) {
    const int w = chi8_weight(g);
    const auto om = random_siegel_point<double>(g, rng, 0.8);
    const double base = petersson(chi8(om, 1e-15).value, w, om);
    CHECK(petersson(cd(0), w, om) == 0);
    IntMatrix b(g, g), a = IntMatrix::identity(g);
    b(0, 0) = 1;
    if (g == 2) {
      b(0, 1) = b(1, 0) = -1;
      a(0, 1) = 1;
    }
    const std::vector<SiegelPoint<double>> images{act_translate(om, b), act_rotate(om, a), act_invert(om),
                                                  act_invert(act_translate(om, b))};
    for (const auto& im : images) {
      const double p = petersson(chi8(im, 1e-15).value, w, im);
      CHECK(std::abs(p - base) <= 1e-8 * base);
    }
  }
}

TEST_CASE("tail bound dominates the truncation error") {
  std::mt19937_64 rng(5);
  for (int g = 1; g <= 3; ++g) {
    const auto om = random_siegel_point<double>(g, rng, 0.5);
    for (double tol : {1e-3, 1e-6}) {
      for (const auto& ch : even_characteristics(g)) {
        const auto t = theta_constant(ch, om, tol);
        const auto wide = theta_constant(ch, om, tol, 2.0);
        CHECK(t.tail <= tol * (1 + 1e-9));
        CHECK(std::abs(t.value - wide.value) <= t.tail);
      }
    }
  }
  CHECK_THROWS(theta_constant(ThetaChar::parse("000000,000000"), random_siegel_point<double>(6, rng), 1e-6));
}

TEST_CASE("vanishing probe in genus two") {
  const cd t1(0.1, 1.1), t2(-0.2, 0.9);
  // Diagonal point: theta[11,11] is the product of two odd genus-one constants.
  const auto p = two_vanish_probe(diag2(t1, t2), 1e-8);
  CHECK(p.result == Vanishing::one);
  REQUIRE(p.vanishing.size() == 1);
  CHECK(p.vanishing[0].str() == "11,11");
  CHECK(p.consistent);

  // Moving off the diagonal removes the zero.
  const auto q = two_vanish_probe(diag2(t1, t2, cd(0.2, 0.1)), 1e-8);
  CHECK(q.result == Vanishing::none);
  CHECK(q.consistent);

  // Sp images of the diagonal still have exactly one vanishing constant.
  IntMatrix b(2, 2);
  b(0, 0) = 1;
  const auto img = act_invert(act_translate(diag2(t1, t2), b));
  const auto r = two_vanish_probe(img, 1e-8);
  CHECK(r.result == Vanishing::one);
  CHECK(r.consistent);

  // Genus one constants never vanish.
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto pt = two_vanish_probe(random_siegel_point<double>(1, rng, 0.3), 1e-8);
    CHECK(pt.result == Vanishing::none);
    CHECK(pt.consistent);
  }

  // Near the diagonal the smallest theta sits in the marginal band.
  CHECK(two_vanish_probe(diag2(t1, t2, cd(1e-8, 0)), 1e-8).result == Vanishing::inconclusive);
}

TEST_CASE("probe at a numerically located zero") {
  // Secant iteration in the off-diagonal entry for theta[11,11] with the diagonal held fixed.
  const cd t1(0.3, 1.2), t2(-0.1, 0.8);
  const auto ch = ThetaChar::parse("11,11");
  auto f = [&](cd z) { return theta_constant(ch, diag2(t1, t2, z), 1e-16).value; };
  cd z0(0.12, 0.05), z1(0.1, 0.04);
  cd f0 = f(z0), f1 = f(z1);
  for (int it = 0; it < 60 && std::abs(f1) > 1e-14; ++it) {
    const cd z2 = z1 - f1 * (z1 - z0) / (f1 - f0);
    z0 = z1;
    f0 = f1;
    z1 = z2;
    f1 = f(z1);
  }
  REQUIRE(std::abs(f1) < 1e-13);
  const auto p = two_vanish_probe(diag2(t1, t2, z1), 1e-9);
  CHECK(p.result == Vanishing::one);
  CHECK(p.consistent);
  CHECK(std::abs(p.ups) > 1e-6);
}

TEST_CASE("Sp actions") {
  const auto om = diag2(cd(0.1, 1.1), cd(-0.2, 0.9), cd(0.05, 0.2));
  const auto back = act_invert(act_invert(om));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(back(i, j) - om(i, j)) < 1e-13);
  CHECK_THROWS(SiegelPoint<double>({{cd(0, 1), cd(0.1, 0)}, {cd(0.2, 0), cd(0, 1)}}));
  CHECK_THROWS(SiegelPoint<double>({{cd(0, 1), cd(0, 0)}, {cd(0, 0), cd(0, -1)}}));
  CHECK(om.det_im() == doctest::Approx(1.1 * 0.9 - 0.04));
}

TEST_CASE("bosonization constants") {
  const HighReal zp = zeta_prime_minus_one();
  const HighReal glaisher = boost::math::constants::glaisher<HighReal>();
  CHECK(static_cast<double>(abs(zp - (HighReal(1) / 12 - log(glaisher)))) < 1e-45);
  CHECK(static_cast<double>(zp) == doctest::Approx(-0.16542114370045092921).epsilon(1e-15));
  const HighReal pi = boost::math::constants::pi<HighReal>();
  CHECK(static_cast<double>(abs(bosonization_constant(1) - 1 / (4 * pi))) < 1e-45);
  const HighReal c0 = exp(12 * (HighReal(1) / 12 - log(glaisher)) - HighReal(1) / 2);
  CHECK(static_cast<double>(abs(bosonization_constant(0) - c0)) < 1e-45);
  CHECK(static_cast<double>(bosonization_constant(0)) == doctest::Approx(8.34e-2).epsilon(1e-3));
  const HighReal ratio = bosonization_constant(0) / bosonization_constant(1);
  for (int g = 1; g < 6; ++g)
    CHECK(static_cast<double>(abs(bosonization_constant(g) / bosonization_constant(g + 1) - ratio)) < 1e-40);
  CHECK(static_cast<double>(bosonization_constant(2) * bosonization_constant(0)) ==
        doctest::Approx(static_cast<double>(bosonization_constant(1) * bosonization_constant(1))));
}

TEST_CASE("precision switch") {
  unsetenv("K3KIT_PRECISION");
  CHECK(precision_from_env() == Precision::standard);
  setenv("K3KIT_PRECISION", "high", 1);
  CHECK(precision_from_env() == Precision::high);
  setenv("K3KIT_PRECISION", "quad", 1);
  CHECK_THROWS(precision_from_env());
  unsetenv("K3KIT_PRECISION");
}
