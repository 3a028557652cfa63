#pragma once

#include "k3kit/arith.hpp"

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace k3 {

struct GaussianRational {
  Rat re, im;

  GaussianRational() = default;
  GaussianRational(long x) : re(x) {}
  GaussianRational(Rat r, Rat i = 0) : re(std::move(r)), im(std::move(i)) {}
  static GaussianRational i_unit() { return {Rat(0), Rat(1)}; }
  // i^k for any integer k
  static GaussianRational i_pow(long k);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  GaussianRational inverse() const;
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
};

std::string to_string(const GaussianRational& z);

// Truncated q-expansion sum c_n q^{n/N}. Coefficients are known (stored densely) for
// numerators in [start, order); everything from q^{order/N} on is unknown.
class PuiseuxSeries {
 public:
  static constexpr long kMaxDenom = 48;

  PuiseuxSeries() = default;
  // O(q^order): zero with known part up to the given exponent.
  static PuiseuxSeries zero(const Rat& order, long denom = 1);
  static PuiseuxSeries monomial(const Rat& exponent, const GaussianRational& c, const Rat& order);
  static PuiseuxSeries one(const Rat& order) { return monomial(0, 1, order); }
  // Builds from explicit numerator/coefficient pairs, zero elsewhere below order.
  static PuiseuxSeries from_terms(long denom, const std::vector<std::pair<long, GaussianRational>>& terms,
                                  long order_num);

  long denom() const { return denom_; }
  long order_num() const { return order_; }
  Rat order() const { return frac(order_, denom_); }
  long start_num() const { return start_; }

  // Coefficient of q^e; e must lie below the truncation order.
  GaussianRational coeff(const Rat& e) const;
  GaussianRational coeff_num(long n) const;
  // Lowest exponent with a nonzero coefficient, or the order if none is known.
  Rat valuation() const;
  bool is_zero() const;
  bool is_real() const;
  // Nonzero terms as (exponent, coefficient), increasing exponent.
  std::vector<std::pair<Rat, GaussianRational>> terms() const;
  void for_each_nonzero(const std::function<void(long, const GaussianRational&)>& f) const;

  PuiseuxSeries with_denom(long n) const;
  PuiseuxSeries reduced() const;  // smallest denominator that represents the series
  PuiseuxSeries truncated(const Rat& order) const;

  PuiseuxSeries& operator+=(const PuiseuxSeries& o);
  PuiseuxSeries& operator-=(const PuiseuxSeries& o);
  friend PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }
  friend PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b) { return a -= b; }
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const GaussianRational& c, const PuiseuxSeries& a) { return a.scaled(c); }
  PuiseuxSeries operator-() const { return scaled(GaussianRational(-1)); }

  PuiseuxSeries scaled(const GaussianRational& c) const;
  // Multiplication by q^e.
  PuiseuxSeries shifted(const Rat& e) const;
  // Integer power; negative powers need an invertible leading coefficient.
  PuiseuxSeries pow(long p) const;
  PuiseuxSeries inverse() const { return pow(-1); }
  friend PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a * b.inverse(); }

  // sum a_n q^n -> sum a_n i^{kn} q^{n/4}, i.e. f((tau + k)/4) for integral exponents.
  PuiseuxSeries substitute_quarter(int k) const;
  // f(c tau) for rational c > 0 (exponents scale by c).
  PuiseuxSeries rescale_variable(const Rat& c) const;
  // f(tau + t); needs e(t * exponent) to be a fourth root of unity for every stored exponent.
  PuiseuxSeries translate(const Rat& t) const;

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);

 private:
  long denom_ = 1;
  long start_ = 0;
  long order_ = 0;
  std::vector<GaussianRational> c_;  // c_[n - start_] for n in [start_, order_)
};

// Numeric evaluation result with a heuristic geometric tail estimate.
struct Evaluation {
  std::complex<double> value;
  double tail = 0;
};

// Evaluates sum c q^e at tau (Im tau > 0). Precomputes coefficient magnitudes once.
class SeriesEvaluator {
 public:
  explicit SeriesEvaluator(const PuiseuxSeries& s);
  Evaluation operator()(std::complex<double> tau) const;

 private:
  struct Term {
    long num;
    double log_abs;  // log |c|
    double arg;
    double sign;
  };
  long denom_;
  long order_;
  std::vector<Term> terms_;
};

Evaluation evaluate(const PuiseuxSeries& s, std::complex<double> tau);

// prod_j eta(s_j tau)^{p_j}, known for exponents < order.
PuiseuxSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, const Rat& order);
PuiseuxSeries eta_power(long scale, long power, const Rat& order);
// eps = 0: sum_{m in Z} q^{m^2};  eps = 1: sum_{m in Z + 1/2} q^{m^2}.
PuiseuxSeries theta_a1(int eps, const Rat& order);
PuiseuxSeries eisenstein_e4(const Rat& order);

}  // namespace k3
