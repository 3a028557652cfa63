#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3 {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical p/q.
inline Rat frac(long p, long q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

// 2^e as an exact rational; e may be negative.
Rat pow2(long e);

// Canonical "p/q" or "p" text.
std::string to_string(const Rat& x);
Rat parse_rational(const std::string& s);

// x mod m for rationals, result in [0, m).
Rat mod(const Rat& x, const Rat& m);

long lcm(long a, long b);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long v : row) a_.emplace_back(v);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix p(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) p(i, j) += x(i, k) * y(k, j);
      }
    return p;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

// U * A * V = D with D diagonal, d_i | d_{i+1}, d_i >= 0; U, V unimodular.
struct SmithForm {
  IntMatrix D, U, V;
  std::vector<Int> divisors() const;
};
SmithForm smith_normal_form(const IntMatrix& a);

// U * A = H in row Hermite normal form; U unimodular.
struct HermiteForm {
  IntMatrix H, U;
  std::size_t rank = 0;
};
HermiteForm hermite_normal_form(const IntMatrix& a);

// Basis (as columns) of the saturated integer kernel {x : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

Int determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

}  // namespace k3
