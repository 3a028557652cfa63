#include "k3kit/theta.hpp"

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace k3 {

Precision precision_from_env() {
  const char* v = std::getenv("K3KIT_PRECISION");
  if (!v || std::string(v).empty() || std::string(v) == "double") return Precision::standard;
  if (std::string(v) == "high") return Precision::high;
  throw std::invalid_argument("K3KIT_PRECISION must be 'double' or 'high', got '" + std::string(v) + "'");
}

bool ThetaChar::is_even() const {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s % 2 == 0;
}

std::string ThetaChar::str() const {
  std::string s;
  for (int x : a) s += static_cast<char>('0' + x);
  s += ',';
  for (int x : b) s += static_cast<char>('0' + x);
  return s;
}

ThetaChar ThetaChar::parse(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos || comma * 2 + 1 != s.size())
    throw std::invalid_argument("characteristic must look like 'a1..ag,b1..bg': " + s);
  ThetaChar c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == comma) continue;
    if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("characteristic digits must be 0 or 1: " + s);
    (i < comma ? c.a : c.b).push_back(s[i] - '0');
  }
  return c;
}

std::vector<ThetaChar> even_characteristics(int g) {
  if (g < 0 || g > 10) throw std::invalid_argument("genus out of range for enumeration");
  std::vector<ThetaChar> out;
  const unsigned n = 1u << g;
  for (unsigned am = 0; am < n; ++am)
    for (unsigned bm = 0; bm < n; ++bm) {
      ThetaChar c;
      for (int i = 0; i < g; ++i) {
        c.a.push_back(static_cast<int>(am >> i & 1));
        c.b.push_back(static_cast<int>(bm >> i & 1));
      }
      if (c.is_even()) out.push_back(std::move(c));
    }
  return out;
}

Int even_characteristic_count(int g) {
  if (g < 0) throw std::invalid_argument("negative genus");
  if (g == 0) return 1;
  return Int(pow2(g - 1) * (pow2(g) + 1));
}

int chi8_weight(int g) { return (1 << (g + 1)) * ((1 << g) + 1); }

std::string to_string(Vanishing v) {
  switch (v) {
    case Vanishing::none: return "none";
    case Vanishing::one: return "one";
    case Vanishing::at_least_two: return "at_least_two";
    case Vanishing::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

template <class Real>
Real pi_v() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
double to_d(const Real& x) {
  return static_cast<double>(x);
}

template <class C>
double cabs_d(const C& z) {
  using std::abs;
  return static_cast<double>(abs(z));
}

template <class Real>
using CMat = std::vector<std::vector<Cx<Real>>>;

template <class Real>
CMat<Real> inverse(const CMat<Real>& m) {
  using C = Cx<Real>;
  const int n = static_cast<int>(m.size());
  CMat<Real> a = m, inv(n, std::vector<C>(n, C(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = C(1);
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (cabs_d(a[r][c]) > cabs_d(a[p][c])) p = r;
    if (cabs_d(a[p][c]) == 0) throw std::domain_error("singular period matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const C piv = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const C f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

template <class Real>
SiegelPoint<Real>::SiegelPoint(std::vector<std::vector<C>> omega) : om_(std::move(omega)) {
  const int g = genus();
  Eigen::MatrixXd y(g, g);
  for (int i = 0; i < g; ++i) {
    if (static_cast<int>(om_[i].size()) != g) throw std::invalid_argument("period matrix must be square");
    for (int j = 0; j < g; ++j) {
      const double scale = std::max(1.0, cabs_d(om_[i][j]));
      if (cabs_d(C(om_[i][j] - om_[j][i])) > 1e-12 * scale)
        throw std::invalid_argument("period matrix must be symmetric");
      y(i, j) = to_d(Real(om_[i][j].imag()));
    }
  }
  if (g == 0) return;
  lambda_ = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(y, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (!(lambda_ > 0)) throw std::invalid_argument("Im Omega is not positive definite");
}

template <class Real>
Real SiegelPoint<Real>::det_im() const {
  const int g = genus();
  std::vector<std::vector<Real>> a(g, std::vector<Real>(g));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) a[i][j] = Real(om_[i][j].imag());
  Real det = 1;
  for (int c = 0; c < g; ++c) {
    // Im Omega is positive definite, so plain elimination is stable enough.
    det *= a[c][c];
    for (int r = c + 1; r < g; ++r) {
      const Real f = a[r][c] / a[c][c];
      for (int j = c; j < g; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

template <class Real>
ThetaValue<Real> theta_constant(const ThetaChar& ch, const SiegelPoint<Real>& om, double tol, double extra_radius) {
  using C = Cx<Real>;
  const int g = om.genus();
  if (ch.genus() != g) throw std::invalid_argument("characteristic and period matrix have different genus");
  if (g > 5) throw std::invalid_argument("theta evaluation is limited to g <= 5");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  ThetaValue<Real> out{C(1), 0, 1};
  if (g == 0) return out;

  const double lam = om.min_eigen_im();
  const double pref = g * std::log(2 + std::sqrt(2 / lam));
  const double r2 = std::max(0.0, 2 / (std::numbers::pi * lam) * (pref - std::log(tol)));
  const double radius = std::sqrt(r2) + extra_radius;
  if (radius > 60) throw std::domain_error("theta tail bound needs radius " + std::to_string(radius));
  out.tail = std::exp(-std::numbers::pi * lam * radius * radius / 2 + pref);

  const Real half = Real(1) / 2;
  const Real pi = pi_v<Real>();
  const C ipi(Real(0), pi);
  std::vector<Real> v(g);
  C sum(0);
  long count = 0;
  // Depth-first over the box, pruning on the partial Euclidean norm.
  auto rec = [&](auto&& self, int i, double norm2) -> void {
    if (i == g) {
      C q(0);
      Real lin = 0;
      for (int r = 0; r < g; ++r) {
        C row(0);
        for (int s = 0; s < g; ++s) row += om(r, s) * C(v[s]);
        q += C(v[r]) * row;
        if (ch.b[r]) lin += v[r];
      }
      using std::exp;
      sum += exp(ipi * (q + C(lin)));
      ++count;
      return;
    }
    const double a = ch.a[i] ? 0.5 : 0.0;
    const double room = std::sqrt(std::max(0.0, radius * radius - norm2));
    for (long m = static_cast<long>(std::ceil(-room - a)); m + a <= room; ++m) {
      v[i] = Real(m) + (ch.a[i] ? half : Real(0));
      self(self, i + 1, norm2 + (m + a) * (m + a));
    }
  };
  rec(rec, 0, 0.0);
  out.value = sum;
  out.terms = count;
  return out;
}

template <class Real>
std::vector<ThetaValue<Real>> even_theta8(const SiegelPoint<Real>& om, double tol) {
  std::vector<ThetaValue<Real>> out;
  for (const auto& ch : even_characteristics(om.genus())) {
    auto t = theta_constant(ch, om, tol);
    const double a = cabs_d(t.value);
    Cx<Real> p = t.value * t.value;
    p = p * p;
    p = p * p;
    out.push_back({p, std::pow(a + t.tail, 8) - std::pow(a, 8), t.terms});
  }
  return out;
}

template <class Real>
ThetaValue<Real> chi8(const SiegelPoint<Real>& om, double tol) {
  const auto x = even_theta8(om, tol);
  ThetaValue<Real> out{Cx<Real>(1), 0, 0};
  double hi = 1, lo = 1;
  for (const auto& t : x) {
    out.value *= t.value;
    out.terms += t.terms;
    lo *= cabs_d(t.value);
    hi *= cabs_d(t.value) + t.tail;
  }
  out.tail = hi - lo;
  return out;
}

template <class Real>
ThetaValue<Real> upsilon(const SiegelPoint<Real>& om, double tol) {
  using C = Cx<Real>;
  const auto x = even_theta8(om, tol);
  const std::size_t m = x.size();
  std::vector<C> pre(m + 1, C(1)), suf(m + 1, C(1));
  std::vector<double> plo(m + 1, 1), phi(m + 1, 1), slo(m + 1, 1), shi(m + 1, 1);
  for (std::size_t i = 0; i < m; ++i) {
    pre[i + 1] = pre[i] * x[i].value;
    plo[i + 1] = plo[i] * cabs_d(x[i].value);
    phi[i + 1] = phi[i] * (cabs_d(x[i].value) + x[i].tail);
  }
  for (std::size_t i = m; i-- > 0;) {
    suf[i] = suf[i + 1] * x[i].value;
    slo[i] = slo[i + 1] * cabs_d(x[i].value);
    shi[i] = shi[i + 1] * (cabs_d(x[i].value) + x[i].tail);
  }
  ThetaValue<Real> out{C(0), 0, 0};
  for (std::size_t i = 0; i < m; ++i) {
    out.value += pre[i] * suf[i + 1];
    out.tail += phi[i] * shi[i + 1] - plo[i] * slo[i + 1];
    out.terms += x[i].terms;
  }
  return out;
}

template <class Real>
Cx<Real> elementary_symmetric(const std::vector<Cx<Real>>& x, std::size_t degree) {
  std::vector<Cx<Real>> e(degree + 1, Cx<Real>(0));
  e[0] = Cx<Real>(1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = std::min(i + 1, degree); k >= 1; --k) e[k] += e[k - 1] * x[i];
  return e[degree];
}

template <class Real>
Real petersson(const Cx<Real>& value, int weight, const SiegelPoint<Real>& om) {
  using std::abs;
  using std::pow;
  const Real a = Real(abs(value));
  return pow(om.det_im(), weight) * a * a;
}

template <class Real>
ProbeResult<Real> two_vanish_probe(const SiegelPoint<Real>& om, double tol) {
  if (om.genus() > 4) throw std::invalid_argument("probe is limited to g <= 4");
  ProbeResult<Real> res;
  const auto chars = even_characteristics(om.genus());
  const double eval_tol = std::min(1e-14, tol * 1e-3);
  std::vector<double> mags;
  std::vector<Cx<Real>> x8;
  bool marginal = false;
  for (const auto& ch : chars) {
    const auto t = theta_constant(ch, om, eval_tol);
    const double a = cabs_d(t.value);
    mags.push_back(a);
    Cx<Real> p = t.value * t.value;
    p = p * p;
    x8.push_back(p * p);
    if (a < tol) res.vanishing.push_back(ch);
    else if (a < 10 * tol) marginal = true;
  }
  res.chi = Cx<Real>(1);
  for (const auto& p : x8) res.chi *= p;
  res.ups = elementary_symmetric<Real>(x8, x8.size() - 1);

  const std::size_t count = res.vanishing.size();
  double others = 1;  // product of |theta|^8 over the non-vanishing characteristics
  for (double a : mags)
    if (a >= tol) others *= std::pow(a, 8);
  const double chi_abs = cabs_d(res.chi), ups_abs = cabs_d(res.ups);
  const double small = std::pow(10 * tol, 8) * others * static_cast<double>(chars.size());
  if (count == 0) res.consistent = chi_abs > small;
  if (count >= 1) res.consistent = chi_abs <= small;
  if (count == 1) res.consistent = res.consistent && std::abs(ups_abs - others) <= 1e-6 * others;
  if (count >= 2) res.consistent = res.consistent && ups_abs <= small;

  if (marginal) res.result = Vanishing::inconclusive;
  else if (count == 0) res.result = Vanishing::none;
  else if (count == 1) res.result = Vanishing::one;
  else res.result = Vanishing::at_least_two;
  return res;
}

template <class Real>
SiegelPoint<Real> act_translate(const SiegelPoint<Real>& om, const IntMatrix& b) {
  auto m = om.matrix();
  for (int i = 0; i < om.genus(); ++i)
    for (int j = 0; j < om.genus(); ++j) m[i][j] += Cx<Real>(Real(b(i, j).get_si()));
  return SiegelPoint<Real>(std::move(m));
}

template <class Real>
SiegelPoint<Real> act_rotate(const SiegelPoint<Real>& om, const IntMatrix& a) {
  const int g = om.genus();
  CMat<Real> m(g, std::vector<Cx<Real>>(g, Cx<Real>(0)));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      for (int k = 0; k < g; ++k)
        for (int l = 0; l < g; ++l) m[i][j] += Cx<Real>(Real(a(i, k).get_si() * a(j, l).get_si())) * om(k, l);
  return SiegelPoint<Real>(std::move(m));
}

template <class Real>
SiegelPoint<Real> act_invert(const SiegelPoint<Real>& om) {
  auto inv = inverse<Real>(om.matrix());
  for (auto& row : inv)
    for (auto& z : row) z = -z;
  // restore exact symmetry lost to rounding
  for (int i = 0; i < om.genus(); ++i)
    for (int j = 0; j < i; ++j) inv[i][j] = inv[j][i] = (inv[i][j] + inv[j][i]) / Real(2);
  return SiegelPoint<Real>(std::move(inv));
}

template <class Real>
SiegelPoint<Real> random_siegel_point(int g, std::mt19937_64& rng, double min_eigen) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<std::vector<double>> x(g, std::vector<double>(g)), a(g, std::vector<double>(g));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j <= i; ++j) x[i][j] = x[j][i] = u(rng);
  for (auto& row : a)
    for (double& z : row) z = u(rng);
  CMat<Real> m(g, std::vector<Cx<Real>>(g));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      double y = i == j ? min_eigen : 0.0;
      for (int k = 0; k < g; ++k) y += a[i][k] * a[j][k];
      m[i][j] = Cx<Real>(Real(x[i][j]), Real(y));
    }
  return SiegelPoint<Real>(std::move(m));
}

#define K3_THETA_INSTANTIATE(R)                                                                              \
  template class SiegelPoint<R>;                                                                             \
  template ThetaValue<R> theta_constant<R>(const ThetaChar&, const SiegelPoint<R>&, double, double);        \
  template std::vector<ThetaValue<R>> even_theta8<R>(const SiegelPoint<R>&, double);                         \
  template ThetaValue<R> chi8<R>(const SiegelPoint<R>&, double);                                             \
  template ThetaValue<R> upsilon<R>(const SiegelPoint<R>&, double);                                          \
  template Cx<R> elementary_symmetric<R>(const std::vector<Cx<R>>&, std::size_t);                            \
  template R petersson<R>(const Cx<R>&, int, const SiegelPoint<R>&);                                         \
  template ProbeResult<R> two_vanish_probe<R>(const SiegelPoint<R>&, double);                                \
  template SiegelPoint<R> act_translate<R>(const SiegelPoint<R>&, const IntMatrix&);                         \
  template SiegelPoint<R> act_rotate<R>(const SiegelPoint<R>&, const IntMatrix&);                            \
  template SiegelPoint<R> act_invert<R>(const SiegelPoint<R>&);                                              \
  template SiegelPoint<R> random_siegel_point<R>(int, std::mt19937_64&, double);

K3_THETA_INSTANTIATE(double)
K3_THETA_INSTANTIATE(HighReal)

}  // namespace k3
