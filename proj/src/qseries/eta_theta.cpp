#include "k3kit/qseries.hpp"

#include <stdexcept>

namespace k3 {

namespace {

// Number of integral steps m >= 0 with shift + m < order.
long steps_below(const Rat& order, const Rat& shift) {
  Rat span = order - shift;
  if (sgn(span) <= 0) return 0;
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), span.get_num_mpz_t(), span.get_den_mpz_t());
  return c.get_si();
}

PuiseuxSeries place(const std::vector<Int>& b, long step, const Rat& shift, const Rat& order) {
  const long n = lcm(lcm(shift.get_den().get_si(), order.get_den().get_si()), 1);
  std::vector<std::pair<long, GaussianRational>> terms;
  const long s = Rat(shift * n).get_num().get_si();
  for (std::size_t m = 0; m < b.size(); ++m)
    if (b[m] != 0) terms.emplace_back(s + static_cast<long>(m) * step * n, GaussianRational(Rat(b[m])));
  return PuiseuxSeries::from_terms(n, terms, Rat(order * n).get_num().get_si()).reduced();
}

}  // namespace

// Log-derivative recurrence for P = prod_d (1 - q^d)^{c_d}:
// m b_m = -sum_{j=1}^m sigma(j) b_{m-j},  sigma(j) = sum_{d | j} d c_d.
PuiseuxSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, const Rat& order) {
  Rat shift = 0;
  for (auto [s, p] : factors) {
    if (s <= 0) throw std::invalid_argument("eta scale must be positive");
    shift += frac(s * p, 24);
  }
  const long K = steps_below(order, shift);
  std::vector<long> c(static_cast<std::size_t>(K) + 1, 0), sigma(static_cast<std::size_t>(K) + 1, 0);
  for (auto [s, p] : factors)
    for (long d = s; d <= K; d += s) c[d] += p;
  for (long d = 1; d <= K; ++d)
    if (c[d])
      for (long j = d; j <= K; j += d) sigma[j] += d * c[d];
  std::vector<Int> b(static_cast<std::size_t>(std::max(K, 0L)));
  if (K > 0) b[0] = 1;
  Int acc, t;
  for (long m = 1; m < K; ++m) {
    acc = 0;
    for (long j = 1; j <= m; ++j)
      if (sigma[j] != 0 && b[m - j] != 0) {
        mpz_mul_si(t.get_mpz_t(), b[m - j].get_mpz_t(), sigma[j]);
        acc -= t;
      }
    mpz_divexact_ui(b[m].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(m));
  }
  return place(b, 1, shift, order);
}

PuiseuxSeries eta_power(long scale, long power, const Rat& order) { return eta_quotient({{scale, power}}, order); }

PuiseuxSeries theta_a1(int eps, const Rat& order) {
  if (eps != 0 && eps != 1) throw std::invalid_argument("theta_a1: eps must be 0 or 1");
  std::vector<std::pair<long, GaussianRational>> terms;
  const Rat o4 = order * 4;
  for (long m = eps; Rat(m * m) < o4; m += 2) terms.emplace_back(m * m, GaussianRational(m == 0 ? 1 : 2));
  Int on;
  mpz_cdiv_q(on.get_mpz_t(), o4.get_num_mpz_t(), o4.get_den_mpz_t());
  return PuiseuxSeries::from_terms(4, terms, on.get_si()).reduced();
}

PuiseuxSeries eisenstein_e4(const Rat& order) {
  const long K = steps_below(order, 0);
  std::vector<Int> b(static_cast<std::size_t>(std::max(K, 0L)));
  if (K > 0) b[0] = 1;
  for (long d = 1; d < K; ++d) {
    const Int d3 = Int(d) * d * d * 240;
    for (long n = d; n < K; n += d) b[n] += d3;
  }
  return place(b, 1, 0, order);
}

}  // namespace k3
