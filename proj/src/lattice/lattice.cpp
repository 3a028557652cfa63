#include "k3kit/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace k3 {

Lattice::Lattice(IntMatrix gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0)
    throw std::invalid_argument("Gram matrix must be square and nonempty");
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("Gram matrix is not symmetric");
  if (determinant(gram_) == 0) throw std::invalid_argument("Gram matrix is singular");
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (!mpz_even_p(gram_(i, i).get_mpz_t())) return false;
  return true;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  std::string name = a.name().empty() || b.name().empty() ? "" : a.name() + "+" + b.name();
  return Lattice(std::move(g), std::move(name));
}

Lattice rescale(const Lattice& a, long k) {
  if (k == 0) throw std::invalid_argument("rescale by zero");
  IntMatrix g = a.gram();
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g(i, j) *= k;
  std::string name = a.name().empty() ? "" : a.name() + "(" + std::to_string(k) + ")";
  return Lattice(std::move(g), std::move(name));
}

// Exact congruence diagonalisation over Q. A nonzero diagonal entry is used as a 1x1
// pivot; otherwise a nonzero off-diagonal a_ij with a_ii = a_jj = 0 gives a hyperbolic
// 2x2 block of signature (1, 1).
Signature signature(const Lattice& a) {
  std::size_t n = a.rank();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a.gram()(i, j);
  std::vector<std::size_t> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = i;
  Signature s;

  auto eliminate = [&](const std::vector<std::size_t>& piv) {
    // Schur complement on the live indices outside piv.
    std::vector<std::size_t> rest;
    for (auto i : live)
      if (std::find(piv.begin(), piv.end(), i) == piv.end()) rest.push_back(i);
    if (piv.size() == 1) {
      const Rat p = m(piv[0], piv[0]);
      for (auto i : rest)
        for (auto j : rest) m(i, j) -= m(i, piv[0]) * m(piv[0], j) / p;
    } else {
      const std::size_t u = piv[0], v = piv[1];
      const Rat det = m(u, u) * m(v, v) - m(u, v) * m(v, u);
      // inverse of the 2x2 pivot block
      const Rat iuu = m(v, v) / det, ivv = m(u, u) / det, iuv = -m(u, v) / det;
      std::vector<std::vector<Rat>> upd(rest.size(), std::vector<Rat>(rest.size()));
      for (std::size_t x = 0; x < rest.size(); ++x)
        for (std::size_t y = 0; y < rest.size(); ++y) {
          const auto i = rest[x], j = rest[y];
          upd[x][y] = m(i, u) * (iuu * m(u, j) + iuv * m(v, j)) + m(i, v) * (iuv * m(u, j) + ivv * m(v, j));
        }
      for (std::size_t x = 0; x < rest.size(); ++x)
        for (std::size_t y = 0; y < rest.size(); ++y) m(rest[x], rest[y]) -= upd[x][y];
    }
    live = rest;
  };

  while (!live.empty()) {
    auto diag = std::find_if(live.begin(), live.end(), [&](std::size_t i) { return m(i, i) != 0; });
    if (diag != live.end()) {
      (m(*diag, *diag) > 0 ? s.plus : s.minus)++;
      eliminate({*diag});
      continue;
    }
    bool done = false;
    for (auto i : live) {
      for (auto j : live)
        if (i != j && m(i, j) != 0) {
          ++s.plus;
          ++s.minus;
          eliminate({i, j});
          done = true;
          break;
        }
      if (done) break;
    }
    if (!done) throw std::invalid_argument("singular Gram matrix");
  }
  return s;
}

Lattice orthogonal_complement(const IntMatrix& sub, const Lattice& ambient) {
  if (sub.rows() != ambient.rank()) throw std::invalid_argument("sub basis has wrong dimension");
  if (rank(sub) != sub.cols()) throw std::invalid_argument("sub basis columns are dependent");
  IntMatrix pairing = sub.transpose() * ambient.gram();
  IntMatrix k = integer_kernel(pairing);
  if (k.cols() == 0) throw std::invalid_argument("orthogonal complement is zero");
  return Lattice(k.transpose() * ambient.gram() * k);
}

RootType root_type(const std::vector<Int>& d, const Lattice& a) {
  if (d.size() != a.rank()) throw std::invalid_argument("vector has wrong dimension");
  Int norm = 0;
  std::vector<Int> gd(a.rank());
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) gd[i] += a.gram()(i, j) * d[j];
  for (std::size_t i = 0; i < a.rank(); ++i) norm += d[i] * gd[i];
  if (norm != -2) throw std::invalid_argument("not a root: norm " + norm.get_str());
  for (const auto& x : gd)
    if (mpz_odd_p(x.get_mpz_t())) return RootType::minus;
  return RootType::plus;
}

namespace named {

Lattice U() { return Lattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }
Lattice A1() { return Lattice(IntMatrix{{-2}}, "A1"); }
Lattice A1_plus() { return Lattice(IntMatrix{{2}}, "A1+"); }

namespace {
// Negative of the Cartan matrix of a simply laced Dynkin diagram.
Lattice from_edges(int n, const std::vector<std::pair<int, int>>& edges, std::string name) {
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = -2;
  for (auto [i, j] : edges) g(i, j) = g(j, i) = 1;
  return Lattice(std::move(g), std::move(name));
}
}  // namespace

Lattice D(int n) {
  if (n < 4) throw std::invalid_argument("D_n needs n >= 4");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 2 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(n - 3, n - 1);
  return from_edges(n, e, "D" + std::to_string(n));
}

// Bourbaki labelling: chain 1-3-4-5-6-7(-8) with 2 attached to 4.
Lattice E7() { return from_edges(7, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 3}}, "E7"); }
Lattice E8() { return from_edges(8, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}}, "E8"); }

}  // namespace named

}  // namespace k3
