#include "k3kit/arith.hpp"

#include <numeric>
#include <utility>

namespace k3 {

Rat pow2(long e) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rat(p);
  Rat r(Int(1), p);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& x) { return x.get_str(); }

Rat parse_rational(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

Rat mod(const Rat& x, const Rat& m) {
  Rat q = x / m;
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return x - Rat(f) * m;
}

long lcm(long a, long b) { return std::lcm(a, b); }

std::vector<Int> SmithForm::divisors() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

template <class M>
void swap_rows(M& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}
template <class M>
void swap_cols(M& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}
// row_i -= q * row_j
void row_axpy(IntMatrix& a, std::size_t i, std::size_t j, const Int& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) -= q * a(j, c);
}
void col_axpy(IntMatrix& a, std::size_t i, std::size_t j, const Int& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) -= q * a(r, j);
}
void negate_row(IntMatrix& a, std::size_t i) {
  for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm s{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& A = s.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A(i, j) != 0 && (!found || abs(A(i, j)) < best)) {
            found = true;
            best = abs(A(i, j));
            pi = i;
            pj = j;
          }
      if (!found) return s;
      swap_rows(A, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(A, t, pj);
      swap_cols(s.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        row_axpy(A, i, t, q);
        row_axpy(s.U, i, t, q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        col_axpy(A, j, t, q);
        col_axpy(s.V, j, t, q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            // fold the offending row into row t and retry
            row_axpy(A, t, i, Int(-1));
            row_axpy(s.U, t, i, Int(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A(t, t) < 0) {
      negate_row(A, t);
      negate_row(s.U, t);
    }
  }
  return s;
}

HermiteForm hermite_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  HermiteForm h{a, IntMatrix::identity(m), 0};
  IntMatrix& H = h.H;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    for (;;) {
      std::size_t pi = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, j) != 0 && (pi == m || abs(H(i, j)) < abs(H(pi, j)))) pi = i;
      if (pi == m) break;
      swap_rows(H, r, pi);
      swap_rows(h.U, r, pi);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(r, j).get_mpz_t());
        row_axpy(H, i, r, q);
        row_axpy(h.U, i, r, q);
        if (H(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, j) == 0) continue;
    if (H(r, j) < 0) {
      negate_row(H, r);
      negate_row(h.U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(r, j).get_mpz_t());
      row_axpy(H, i, r, q);
      row_axpy(h.U, i, r, q);
    }
    ++r;
  }
  h.rank = r;
  return h;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  HermiteForm h = hermite_normal_form(a.transpose());
  const std::size_t n = a.cols();
  IntMatrix k(n, n - h.rank);
  for (std::size_t c = 0; c < n - h.rank; ++c)
    for (std::size_t i = 0; i < n; ++i) k(i, c) = h.U(h.rank + c, i);
  return k;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(m, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return hermite_normal_form(a).rank; }

}  // namespace k3
