#pragma once

#include "k3kit/arith.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <random>
#include <string>
#include <vector>

namespace k3 {

using HighReal = boost::multiprecision::cpp_bin_float_50;
using HighComplex = boost::multiprecision::cpp_complex_50;

template <class Real>
struct ComplexOf;
template <>
struct ComplexOf<double> {
  using type = std::complex<double>;
};
template <>
struct ComplexOf<HighReal> {
  using type = HighComplex;
};
template <class Real>
using Cx = typename ComplexOf<Real>::type;

enum class Precision { standard, high };
// K3KIT_PRECISION = double | high; unset means double.
Precision precision_from_env();

// Characteristic (a, b) with a, b in {0, 1/2}^g stored as bits (1 means 1/2).
struct ThetaChar {
  std::vector<int> a, b;
  int genus() const { return static_cast<int>(a.size()); }
  bool is_even() const;
  std::string str() const;  // "a1a2,b1b2" in bits
  static ThetaChar parse(const std::string& s);
  bool operator==(const ThetaChar&) const = default;
};

std::vector<ThetaChar> even_characteristics(int g);
// 2^{g-1}(2^g + 1) for g >= 1 and 1 for g = 0; no enumeration.
Int even_characteristic_count(int g);

// A point of the Siegel upper half space; Im must be positive definite.
template <class Real>
class SiegelPoint {
 public:
  using C = Cx<Real>;
  SiegelPoint() = default;
  explicit SiegelPoint(std::vector<std::vector<C>> omega);

  int genus() const { return static_cast<int>(om_.size()); }
  const C& operator()(int i, int j) const { return om_[i][j]; }
  const std::vector<std::vector<C>>& matrix() const { return om_; }
  double min_eigen_im() const { return lambda_; }
  Real det_im() const;

 private:
  std::vector<std::vector<C>> om_;
  double lambda_ = 0;
};

template <class Real>
struct ThetaValue {
  Cx<Real> value;
  double tail = 0;  // certified bound on the truncated part
  long terms = 0;
};

// Lattice sum over |n + a|^2 <= R^2 with R chosen so that e^{-pi l R^2/2}(2 + sqrt(2/l))^g < tol,
// l the smallest eigenvalue of Im Omega. extra_radius widens R (used to test the bound).
template <class Real>
ThetaValue<Real> theta_constant(const ThetaChar& ch, const SiegelPoint<Real>& om, double tol,
                                double extra_radius = 0);

// theta^8 for every even characteristic, in even_characteristics order.
template <class Real>
std::vector<ThetaValue<Real>> even_theta8(const SiegelPoint<Real>& om, double tol);

template <class Real>
ThetaValue<Real> chi8(const SiegelPoint<Real>& om, double tol);
// Sum over characteristics of the product of all other theta^8; finite where one theta vanishes.
template <class Real>
ThetaValue<Real> upsilon(const SiegelPoint<Real>& om, double tol);
// Same quantity from the theta^8 values by the elementary-symmetric recursion.
template <class Real>
Cx<Real> elementary_symmetric(const std::vector<Cx<Real>>& x, std::size_t degree);

// (det Im Omega)^q |value|^2
template <class Real>
Real petersson(const Cx<Real>& value, int weight, const SiegelPoint<Real>& om);
// Weight of chi_g^8: 2^{g+1}(2^g + 1).
int chi8_weight(int g);

enum class Vanishing { none, one, at_least_two, inconclusive };
std::string to_string(Vanishing v);

template <class Real>
struct ProbeResult {
  Vanishing result = Vanishing::none;
  std::vector<ThetaChar> vanishing;
  Cx<Real> chi, ups;
  // chi is below the scale of the product of the remaining thetas iff some theta vanishes, and
  // Upsilon equals that product when exactly one vanishes.
  bool consistent = true;
};
template <class Real>
ProbeResult<Real> two_vanish_probe(const SiegelPoint<Real>& om, double tol);

// Generators of Sp_2g(Z) acting on the Siegel space.
template <class Real>
SiegelPoint<Real> act_translate(const SiegelPoint<Real>& om, const IntMatrix& b);  // Omega + B
template <class Real>
SiegelPoint<Real> act_rotate(const SiegelPoint<Real>& om, const IntMatrix& a);  // A Omega A^t
template <class Real>
SiegelPoint<Real> act_invert(const SiegelPoint<Real>& om);  // -Omega^{-1}

// Random point with Im Omega = A A^t + c I, entries of Re in [-1/2, 1/2].
template <class Real>
SiegelPoint<Real> random_siegel_point(int g, std::mt19937_64& rng, double min_eigen = 0.6);

// c_g = (4 pi)^{-g} exp(6 (1 - g)(2 zeta'(-1) + zeta(-1))), zeta(-1) = -1/12.
HighReal zeta_prime_minus_one();  // Euler-Maclaurin, exact Bernoulli numbers
HighReal bosonization_constant(int g);

}  // namespace k3
