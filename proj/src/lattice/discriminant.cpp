#include "k3kit/lattice.hpp"

#include <bit>
#include <stdexcept>

namespace k3 {

std::vector<Int> elementary_divisors(const Lattice& a) { return smith_normal_form(a.gram()).divisors(); }

int DiscriminantForm::b2(Coset g, Coset h) const {
  int s = 0;
  for (int i = 0; i < l_; ++i)
    if (g >> i & 1) s ^= std::popcount(brows_[i] & h) & 1;
  return s;
}

std::string DiscriminantForm::bits(Coset g) const {
  std::string s(static_cast<std::size_t>(l_), '0');
  for (int i = 0; i < l_; ++i)
    if (g >> i & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

DiscriminantForm::Coset DiscriminantForm::from_bits(const std::string& s) const {
  if (static_cast<int>(s.size()) != l_) throw std::invalid_argument("coset bit string has wrong length: " + s);
  Coset g = 0;
  for (int i = 0; i < l_; ++i) {
    if (s[i] == '1')
      g |= Coset{1} << i;
    else if (s[i] != '0')
      throw std::invalid_argument("bad coset bit string: " + s);
  }
  return g;
}

std::vector<DiscriminantForm::Coset> DiscriminantForm::with_q2(int v) const {
  std::vector<Coset> out;
  for (Coset g = 0; g < size(); ++g)
    if (q2_[g] == v) out.push_back(g);
  return out;
}

void DiscriminantForm::finish() {
  if (l_ > 20) throw std::invalid_argument("discriminant group too large for a coset table");
  q2_.assign(size(), 0);
  for (Coset g = 1; g < size(); ++g) {
    const int i = std::countr_zero(g);
    const Coset rest = g & (g - 1);
    q2_[g] = (q2_[rest] + gen_q2_[i] + 2 * b2(rest, Coset{1} << i)) & 3;
  }
  // b(gen_i, x) = q(gen_i) mod 1 for every generator; solve over F2.
  std::vector<std::uint32_t> rows(brows_);
  std::vector<int> rhs(l_);
  for (int i = 0; i < l_; ++i) rhs[i] = gen_q2_[i] & 1;
  std::vector<int> pivot_col(l_, -1);
  int r = 0;
  for (int c = 0; c < l_; ++c) {
    int p = -1;
    for (int i = r; i < l_; ++i)
      if (rows[i] >> c & 1) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    for (int i = 0; i < l_; ++i)
      if (i != r && (rows[i] >> c & 1)) {
        rows[i] ^= rows[r];
        rhs[i] ^= rhs[r];
      }
    pivot_col[r] = c;
    ++r;
  }
  if (r != l_) throw std::runtime_error("bilinear form on discriminant group is degenerate");
  char_ = 0;
  for (int i = 0; i < l_; ++i)
    if (rhs[i]) char_ |= Coset{1} << pivot_col[i];
}

DiscriminantForm discriminant_form(const Lattice& a) {
  if (!a.is_even()) throw std::invalid_argument("odd lattice");
  SmithForm s = smith_normal_form(a.gram());
  const std::size_t n = a.rank();
  std::vector<std::size_t> idx;
  std::string bad;
  for (std::size_t i = 0; i < n; ++i) {
    const Int& d = s.D(i, i);
    if (d == 2)
      idx.push_back(i);
    else if (d != 1)
      bad += (bad.empty() ? "" : ",") + d.get_str();
  }
  if (!bad.empty()) throw std::invalid_argument("not 2-elementary (elementary divisors " + bad + ")");

  DiscriminantForm f;
  f.l_ = static_cast<int>(idx.size());
  for (auto c : idx) {
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = Rat(s.V(i, c), 2);
    for (auto& v : x) v.canonicalize();
    f.gens_.push_back(std::move(x));
  }
  auto pair = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat t = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) t += x[i] * a.gram()(i, j) * y[j];
    }
    return t;
  };
  f.brows_.assign(f.l_, 0);
  f.gen_q2_.assign(f.l_, 0);
  for (int i = 0; i < f.l_; ++i) {
    const Rat qi = mod(pair(f.gens_[i], f.gens_[i]), Rat(2));
    f.gen_q2_[i] = static_cast<int>(Rat(qi * 2).get_num().get_si());
    for (int j = 0; j < f.l_; ++j) {
      const Rat bij = mod(pair(f.gens_[i], f.gens_[j]), Rat(1));
      if (bij != 0) {
        if (bij != Rat(1, 2)) throw std::logic_error("pairing of order-2 generators not in (1/2)Z");
        f.brows_[i] |= std::uint32_t{1} << j;
      }
    }
  }
  f.finish();
  return f;
}

DiscriminantForm orthogonal_sum(const DiscriminantForm& a, const DiscriminantForm& b) {
  DiscriminantForm f;
  f.l_ = a.l_ + b.l_;
  f.gen_q2_ = a.gen_q2_;
  f.gen_q2_.insert(f.gen_q2_.end(), b.gen_q2_.begin(), b.gen_q2_.end());
  f.brows_ = a.brows_;
  for (auto r : b.brows_) f.brows_.push_back(r << a.l_);
  const std::size_t na = a.gens_.empty() ? 0 : a.gens_[0].size();
  const std::size_t nb = b.gens_.empty() ? 0 : b.gens_[0].size();
  for (const auto& x : a.gens_) {
    auto y = x;
    y.resize(na + nb);
    f.gens_.push_back(std::move(y));
  }
  for (const auto& x : b.gens_) {
    std::vector<Rat> y(na);
    y.insert(y.end(), x.begin(), x.end());
    f.gens_.push_back(std::move(y));
  }
  f.finish();
  return f;
}

Invariants lambda_invariants(int r, int l, int delta) {
  Invariants v;
  v.r = r;
  v.l = l;
  v.delta = delta;
  v.g = (r - l) / 2;
  v.k = (22 - r - l) / 2;
  v.eps = frac(12 - r, 2);
  v.sign = {2, r - 2};
  v.as_M = false;
  return v;
}

Invariants m_invariants(int r, int l, int delta) {
  Invariants v;
  v.r = r;
  v.l = l;
  v.delta = delta;
  v.g = (22 - r - l) / 2;
  v.k = (r - l) / 2;
  v.eps = frac(r - 10, 2);
  v.sign = {1, r - 1};
  v.as_M = true;
  return v;
}

Invariants complement_invariants(const Invariants& x) {
  return x.as_M ? lambda_invariants(22 - x.r, x.l, x.delta) : m_invariants(22 - x.r, x.l, x.delta);
}

Invariants invariants(const Lattice& a) {
  const Signature s = signature(a);
  const DiscriminantForm f = discriminant_form(a);
  const int r = static_cast<int>(a.rank());
  if ((r - f.l()) % 2 != 0) throw std::logic_error("r - l is odd");
  Invariants v;
  if (s.plus == 2)
    v = lambda_invariants(r, f.l(), f.delta());
  else if (s.plus == 1)
    v = m_invariants(r, f.l(), f.delta());
  else
    throw std::invalid_argument("invariants need b+ = 1 or b+ = 2");
  v.sign = s;
  return v;
}

}  // namespace k3
