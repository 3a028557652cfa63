#include "k3kit/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace k3 {

GaussianRational GaussianRational::i_pow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {Rat(1), Rat(0)};
    case 1: return {Rat(0), Rat(1)};
    case 2: return {Rat(-1), Rat(0)};
    default: return {Rat(0), Rat(-1)};
  }
}

GaussianRational GaussianRational::inverse() const {
  const Rat n = re * re + im * im;
  if (sgn(n) == 0) throw std::domain_error("inverse of zero");
  return {re / n, -im / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  if (sgn(o.im) != 0) im += o.im;
  return *this;
}
GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  if (sgn(o.im) != 0) im -= o.im;
  return *this;
}
GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rat r = re * o.re - im * o.im;
  Rat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return z.re.get_str();
  return "(" + z.re.get_str() + (sgn(z.im) < 0 ? "-" : "+") + Rat(abs(z.im)).get_str() + "i)";
}

namespace {

long merged_denom(long a, long b) {
  const long n = std::lcm(a, b);
  if (n > PuiseuxSeries::kMaxDenom) throw std::domain_error("exponent denominator exceeds 48");
  return n;
}

long rat_to_num(const Rat& x, long denom) {
  Rat y = x * denom;
  if (y.get_den() != 1) throw std::domain_error("exponent " + x.get_str() + " not a multiple of 1/" + std::to_string(denom));
  if (!y.get_num().fits_slong_p()) throw std::overflow_error("exponent too large");
  return y.get_num().get_si();
}

long denom_of(const Rat& x) {
  if (!x.get_den().fits_slong_p()) throw std::domain_error("exponent denominator too large");
  return x.get_den().get_si();
}

GaussianRational gpow(GaussianRational c, long p) {
  if (p < 0) {
    c = c.inverse();
    p = -p;
  }
  GaussianRational r(1);
  while (p) {
    if (p & 1) r *= c;
    c *= c;
    p >>= 1;
  }
  return r;
}

long first_nonzero(const std::vector<GaussianRational>& c, long start, long order) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) return start + static_cast<long>(i);
  return order;
}

}  // namespace

PuiseuxSeries PuiseuxSeries::zero(const Rat& order, long denom) {
  PuiseuxSeries s;
  s.denom_ = merged_denom(denom, denom_of(order));
  s.order_ = rat_to_num(order, s.denom_);
  s.start_ = s.order_;
  return s;
}

PuiseuxSeries PuiseuxSeries::monomial(const Rat& exponent, const GaussianRational& c, const Rat& order) {
  PuiseuxSeries s = zero(order, denom_of(exponent));
  const long e = rat_to_num(exponent, s.denom_);
  if (e >= s.order_ || c.is_zero()) return s;
  s.start_ = e;
  s.c_.assign(static_cast<std::size_t>(s.order_ - e), GaussianRational());
  s.c_[0] = c;
  return s;
}

PuiseuxSeries PuiseuxSeries::from_terms(long denom, const std::vector<std::pair<long, GaussianRational>>& terms,
                                        long order_num) {
  if (denom <= 0 || denom > kMaxDenom) throw std::domain_error("bad exponent denominator");
  PuiseuxSeries s;
  s.denom_ = denom;
  s.order_ = order_num;
  s.start_ = order_num;
  for (const auto& [n, c] : terms)
    if (n < order_num && !c.is_zero()) s.start_ = std::min(s.start_, n);
  s.c_.assign(static_cast<std::size_t>(s.order_ - s.start_), GaussianRational());
  for (const auto& [n, c] : terms)
    if (n < order_num) s.c_[static_cast<std::size_t>(n - s.start_)] += c;
  return s;
}

GaussianRational PuiseuxSeries::coeff_num(long n) const {
  if (n >= order_) throw std::out_of_range("coefficient beyond truncation order");
  if (n < start_) return {};
  return c_[static_cast<std::size_t>(n - start_)];
}

GaussianRational PuiseuxSeries::coeff(const Rat& e) const {
  Rat y = e * denom_;
  if (e >= order()) throw std::out_of_range("coefficient beyond truncation order");
  if (y.get_den() != 1) return {};
  return coeff_num(y.get_num().get_si());
}

Rat PuiseuxSeries::valuation() const { return frac(first_nonzero(c_, start_, order_), denom_); }

bool PuiseuxSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& c) { return c.is_zero(); });
}

bool PuiseuxSeries::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& c) { return c.is_real(); });
}

std::vector<std::pair<Rat, GaussianRational>> PuiseuxSeries::terms() const {
  std::vector<std::pair<Rat, GaussianRational>> out;
  for_each_nonzero([&](long n, const GaussianRational& c) { out.emplace_back(frac(n, denom_), c); });
  return out;
}

void PuiseuxSeries::for_each_nonzero(const std::function<void(long, const GaussianRational&)>& f) const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) f(start_ + static_cast<long>(i), c_[i]);
}

PuiseuxSeries PuiseuxSeries::with_denom(long n) const {
  if (n % denom_ != 0) throw std::domain_error("with_denom: not a multiple of the current denominator");
  if (n > kMaxDenom) throw std::domain_error("exponent denominator exceeds 48");
  const long m = n / denom_;
  if (m == 1) return *this;
  PuiseuxSeries s;
  s.denom_ = n;
  s.start_ = start_ * m;
  s.order_ = order_ * m;
  s.c_.assign(static_cast<std::size_t>(s.order_ - s.start_), GaussianRational());
  for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i * static_cast<std::size_t>(m)] = c_[i];
  return s;
}

PuiseuxSeries PuiseuxSeries::reduced() const {
  long g = std::gcd(denom_, order_);
  for_each_nonzero([&](long n, const GaussianRational&) { g = std::gcd(g, n); });
  if (g <= 1) return *this;
  PuiseuxSeries s;
  s.denom_ = denom_ / g;
  s.order_ = order_ / g;
  const long first = first_nonzero(c_, start_, order_);
  s.start_ = first / g;
  s.c_.assign(static_cast<std::size_t>(s.order_ - s.start_), GaussianRational());
  for_each_nonzero([&](long n, const GaussianRational& c) { s.c_[static_cast<std::size_t>(n / g - s.start_)] = c; });
  return s;
}

PuiseuxSeries PuiseuxSeries::truncated(const Rat& order) const {
  if (order >= this->order()) return *this;
  const long n = merged_denom(denom_, denom_of(order));
  PuiseuxSeries s = with_denom(n);
  const long o = rat_to_num(order, n);
  s.order_ = o;
  if (s.start_ > o) s.start_ = o;
  s.c_.resize(static_cast<std::size_t>(o - s.start_));
  return s;
}

PuiseuxSeries& PuiseuxSeries::operator+=(const PuiseuxSeries& o) {
  const long n = merged_denom(denom_, o.denom_);
  PuiseuxSeries a = with_denom(n), b = o.with_denom(n);
  const long order = std::min(a.order_, b.order_);
  const long start = std::min(std::min(a.start_, b.start_), order);
  std::vector<GaussianRational> c(static_cast<std::size_t>(order - start));
  for (const PuiseuxSeries* x : {&a, &b})
    for (std::size_t i = 0; i < x->c_.size(); ++i) {
      const long m = x->start_ + static_cast<long>(i);
      if (m < order && !x->c_[i].is_zero()) c[static_cast<std::size_t>(m - start)] += x->c_[i];
    }
  denom_ = n;
  start_ = start;
  order_ = order;
  c_ = std::move(c);
  return *this;
}

PuiseuxSeries& PuiseuxSeries::operator-=(const PuiseuxSeries& o) { return *this += -o; }

PuiseuxSeries operator*(const PuiseuxSeries& x, const PuiseuxSeries& y) {
  const long n = merged_denom(x.denom_, y.denom_);
  const PuiseuxSeries a = x.with_denom(n), b = y.with_denom(n);
  const long va = first_nonzero(a.c_, a.start_, a.order_);
  const long vb = first_nonzero(b.c_, b.start_, b.order_);
  PuiseuxSeries s;
  s.denom_ = n;
  s.order_ = std::min(a.order_ + vb, b.order_ + va);
  s.start_ = std::min(va + vb, s.order_);
  s.c_.assign(static_cast<std::size_t>(s.order_ - s.start_), GaussianRational());
  std::vector<std::size_t> nzb;
  for (std::size_t j = 0; j < b.c_.size(); ++j)
    if (!b.c_[j].is_zero()) nzb.push_back(j);
  Rat tmp;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const auto& ai = a.c_[i];
    if (ai.is_zero()) continue;
    const long ni = a.start_ + static_cast<long>(i);
    const bool ai_real = ai.is_real();
    for (std::size_t j : nzb) {
      const long m = ni + b.start_ + static_cast<long>(j);
      if (m >= s.order_) break;
      auto& dst = s.c_[static_cast<std::size_t>(m - s.start_)];
      const auto& bj = b.c_[j];
      if (ai_real && bj.is_real()) {
        mpq_mul(tmp.get_mpq_t(), ai.re.get_mpq_t(), bj.re.get_mpq_t());
        dst.re += tmp;
      } else {
        dst += ai * bj;
      }
    }
  }
  return s;
}

PuiseuxSeries PuiseuxSeries::scaled(const GaussianRational& c) const {
  PuiseuxSeries s = *this;
  for (auto& x : s.c_)
    if (!x.is_zero()) x *= c;
  return s;
}

PuiseuxSeries PuiseuxSeries::shifted(const Rat& e) const {
  const long n = merged_denom(denom_, denom_of(e));
  PuiseuxSeries s = with_denom(n);
  const long d = rat_to_num(e, n);
  s.start_ += d;
  s.order_ += d;
  return s;
}

// u^p for a unit series u = 1 + sum_{k>0} a_k x^k via the recurrence
// b_n = (1/n) sum_{k=1}^n ((p+1)k - n) a_k b_{n-k}.
PuiseuxSeries PuiseuxSeries::pow(long p) const {
  const long v = first_nonzero(c_, start_, order_);
  if (v == order_) throw std::domain_error("power of a series with no known nonzero coefficient");
  const std::size_t K = static_cast<std::size_t>(order_ - v);
  const std::size_t off = static_cast<std::size_t>(v - start_);
  const GaussianRational lead = c_[off];
  const GaussianRational lead_inv = lead.inverse();
  std::vector<GaussianRational> u(K);
  std::vector<std::size_t> nz;
  for (std::size_t k = 0; k < K; ++k) {
    const auto& c = c_[off + k];
    if (c.is_zero()) continue;
    u[k] = c * lead_inv;
    if (k > 0) nz.push_back(k);
  }
  std::vector<GaussianRational> b(K);
  b[0] = GaussianRational(1);
  for (std::size_t n = 1; n < K; ++n) {
    GaussianRational acc;
    for (std::size_t k : nz) {
      if (k > n) break;
      if (b[n - k].is_zero()) continue;
      const long w = (p + 1) * static_cast<long>(k) - static_cast<long>(n);
      if (w == 0) continue;
      acc += GaussianRational(Rat(w)) * u[k] * b[n - k];
    }
    if (!acc.is_zero()) b[n] = acc * GaussianRational(frac(1, static_cast<long>(n)));
  }
  const GaussianRational cp = gpow(lead, p);
  PuiseuxSeries s;
  s.denom_ = denom_;
  s.start_ = p * v;
  s.order_ = p * v + static_cast<long>(K);
  s.c_ = std::move(b);
  for (auto& x : s.c_)
    if (!x.is_zero()) x *= cp;
  return s;
}

PuiseuxSeries PuiseuxSeries::substitute_quarter(int k) const {
  const PuiseuxSeries r = reduced();
  if (r.denom_ != 1) throw std::domain_error("substitute_quarter needs integral exponents");
  PuiseuxSeries s = r;
  s.denom_ = 4;
  for (std::size_t i = 0; i < s.c_.size(); ++i)
    if (!s.c_[i].is_zero()) s.c_[i] *= GaussianRational::i_pow(static_cast<long>(k) * (s.start_ + static_cast<long>(i)));
  return s;
}

PuiseuxSeries PuiseuxSeries::rescale_variable(const Rat& c) const {
  if (sgn(c) <= 0) throw std::domain_error("rescale_variable needs c > 0");
  const long a = c.get_num().get_si(), b = denom_of(c);
  PuiseuxSeries s;
  s.denom_ = denom_ * b;
  s.start_ = start_ * a;
  s.order_ = order_ * a;
  s.c_.assign(static_cast<std::size_t>(s.order_ - s.start_), GaussianRational());
  for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i * static_cast<std::size_t>(a)] = c_[i];
  s = s.reduced();
  if (s.denom_ > kMaxDenom) throw std::domain_error("exponent denominator exceeds 48");
  return s;
}

PuiseuxSeries PuiseuxSeries::translate(const Rat& t) const {
  PuiseuxSeries s = *this;
  for (std::size_t i = 0; i < s.c_.size(); ++i) {
    if (s.c_[i].is_zero()) continue;
    const Rat quarter_turns = 4 * t * frac(start_ + static_cast<long>(i), denom_);
    if (quarter_turns.get_den() != 1) throw std::domain_error("translate: phase is not a fourth root of unity");
    Int q = quarter_turns.get_num() % 4;
    s.c_[i] *= GaussianRational::i_pow(q.get_si());
  }
  return s;
}

bool operator==(const PuiseuxSeries& x, const PuiseuxSeries& y) {
  const long n = std::lcm(x.denom_, y.denom_);
  if (n > PuiseuxSeries::kMaxDenom) return false;
  const PuiseuxSeries a = x.with_denom(n), b = y.with_denom(n);
  if (a.order_ != b.order_) return false;
  for (long m = std::min(a.start_, b.start_); m < a.order_; ++m)
    if (!(a.coeff_num(m) == b.coeff_num(m))) return false;
  return true;
}

namespace {

double log_abs(const Rat& x) {
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(std::abs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::numbers::ln2;
}

}  // namespace

SeriesEvaluator::SeriesEvaluator(const PuiseuxSeries& s) : denom_(s.denom()), order_(s.order_num()) {
  s.for_each_nonzero([&](long n, const GaussianRational& c) {
    const bool r0 = sgn(c.re) == 0, i0 = sgn(c.im) == 0;
    const double la = r0 ? -INFINITY : log_abs(c.re);
    const double lb = i0 ? -INFINITY : log_abs(c.im);
    const double m = std::max(la, lb);
    const double lmag = m + 0.5 * std::log1p(std::exp(2 * (std::min(la, lb) - m)));
    const double x = r0 ? 0.0 : sgn(c.re) * std::exp(la - m);
    const double y = i0 ? 0.0 : sgn(c.im) * std::exp(lb - m);
    terms_.push_back({n, lmag, std::atan2(y, x), 1.0});
  });
}

Evaluation SeriesEvaluator::operator()(std::complex<double> tau) const {
  if (tau.imag() <= 0) throw std::domain_error("evaluate needs Im tau > 0");
  const double two_pi = 2 * std::numbers::pi;
  std::complex<double> sum = 0;
  std::vector<double> mags;
  mags.reserve(terms_.size());
  for (const auto& t : terms_) {
    const double e = static_cast<double>(t.num) / static_cast<double>(denom_);
    const double lm = t.log_abs - two_pi * e * tau.imag();
    const double mag = std::exp(lm);
    mags.push_back(mag);
    sum += std::polar(mag, t.arg + two_pi * e * tau.real());
  }
  Evaluation ev{sum, 0.0};
  // Geometric tail estimate from the decay of the last two windows of terms.
  const std::size_t n = mags.size();
  if (n == 0) return ev;
  const std::size_t w = std::max<std::size_t>(3, n / 8);
  if (n < 2 * w) {
    ev.tail = *std::max_element(mags.begin(), mags.end()) *
              std::exp(-two_pi * tau.imag() * static_cast<double>(order_ - terms_.back().num) / denom_);
    return ev;
  }
  const double t1 = *std::max_element(mags.end() - static_cast<long>(w), mags.end());
  const double t0 = *std::max_element(mags.end() - static_cast<long>(2 * w), mags.end() - static_cast<long>(w));
  const double span = static_cast<double>(terms_[n - 1].num - terms_[n - w].num) + 1.0;
  const double rho = t0 > 0 ? std::pow(t1 / t0, 1.0 / span) : 0.0;
  ev.tail = rho < 1 ? t1 * rho / (1 - rho) : INFINITY;
  return ev;
}

Evaluation evaluate(const PuiseuxSeries& s, std::complex<double> tau) { return SeriesEvaluator(s)(tau); }

}  // namespace k3
