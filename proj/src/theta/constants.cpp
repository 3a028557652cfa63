#include "k3kit/theta.hpp"

#include <boost/math/constants/constants.hpp>

namespace k3 {

namespace {

HighReal to_high(const Rat& q) {
  return HighReal(q.get_num().get_str()) / HighReal(q.get_den().get_str());
}

// B_0..B_n from sum_{k<=n} C(n+1, k) B_k = 0.
std::vector<Rat> bernoulli(int n) {
  std::vector<Rat> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rat s = 0;
    Int binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += Rat(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -s / (m + 1);
  }
  return b;
}

}  // namespace

HighReal zeta_prime_minus_one() {
  // Euler-Maclaurin for zeta(s) differentiated at s = -1, cut at N with K correction terms.
  constexpr int N = 30, K = 25;
  using std::log;
  const HighReal n(N), ln_n = log(n);
  HighReal sum = 0;
  for (int m = 2; m < N; ++m) sum -= HighReal(m) * log(HighReal(m));
  sum += n * n * ln_n / 2 - n * n / 4 - n * ln_n / 2;

  const auto b = bernoulli(2 * K);
  Int fact = 1;
  HighReal npow = 1;  // N^{2 - 2k}, starting at k = 1
  for (int k = 1; k <= K; ++k) {
    fact *= Int(2 * k - 1) * Int(2 * k);
    // P(s) = s(s+1)...(s+2k-2) and P'(s) at s = -1
    HighReal p = 1, dp = 0;
    for (int j = 0; j <= 2 * k - 2; ++j) {
      const HighReal f(j - 1);
      dp = dp * f + p;
      p *= f;
    }
    sum += to_high(b[2 * k] / Rat(fact)) * npow * (dp - ln_n * p);
    npow /= n * n;
  }
  return sum;
}

HighReal bosonization_constant(int g) {
  using std::exp;
  using std::pow;
  const HighReal four_pi = 4 * boost::math::constants::pi<HighReal>();
  const HighReal zeta_m1 = HighReal(-1) / 12;
  return pow(four_pi, -g) * exp(6 * HighReal(1 - g) * (2 * zeta_prime_minus_one() + zeta_m1));
}

}  // namespace k3
