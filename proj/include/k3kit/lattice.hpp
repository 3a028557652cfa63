#pragma once

#include "k3kit/arith.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3 {

class Lattice {
 public:
  Lattice() = default;
  // Throws if gram is not square, not symmetric or singular.
  explicit Lattice(IntMatrix gram, std::string name = {});

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  Int det() const { return determinant(gram_); }
  bool is_even() const;

 private:
  IntMatrix gram_;
  std::string name_;
};

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice rescale(const Lattice& a, long k);

struct Signature {
  int plus = 0, minus = 0;
  bool operator==(const Signature&) const = default;
};
Signature signature(const Lattice& a);

// Finite quadratic module A_L = L^v / L of a 2-elementary even lattice.
// Cosets are indexed by l-bit masks over the Smith generators.
class DiscriminantForm {
 public:
  using Coset = std::uint32_t;

  int l() const { return l_; }
  std::size_t size() const { return std::size_t{1} << l_; }
  // 2q mod 4, i.e. q in {0, 1/2, 1, 3/2} encoded as {0, 1, 2, 3}.
  int q2(Coset g) const { return q2_[g]; }
  Rat q(Coset g) const { return frac(q2_[g], 2); }
  // b(g, h) mod 1 in {0, 1/2}, encoded as 0 or 1.
  int b2(Coset g, Coset h) const;
  Rat b(Coset g, Coset h) const { return frac(b2(g, h), 2); }
  Coset char_elem() const { return char_; }
  int delta() const { return char_ == 0 ? 0 : 1; }
  // Generator i of A_L as a vector of rational coordinates in the lattice basis.
  const std::vector<std::vector<Rat>>& generators() const { return gens_; }
  std::string bits(Coset g) const;
  Coset from_bits(const std::string& s) const;
  // All cosets with the given encoded 2q value.
  std::vector<Coset> with_q2(int v) const;

  friend DiscriminantForm discriminant_form(const Lattice& a);
  friend DiscriminantForm orthogonal_sum(const DiscriminantForm& a, const DiscriminantForm& b);

 private:
  int l_ = 0;
  std::vector<int> q2_;
  std::vector<std::uint32_t> brows_;  // F2 row bitmasks of 2b on generators
  std::vector<std::vector<Rat>> gens_;
  Coset char_ = 0;
  void finish();  // fills q2_ from generator data and solves for char_
  std::vector<int> gen_q2_;
};

// Elementary divisors of the Gram matrix (Smith diagonal).
std::vector<Int> elementary_divisors(const Lattice& a);
DiscriminantForm discriminant_form(const Lattice& a);
DiscriminantForm orthogonal_sum(const DiscriminantForm& a, const DiscriminantForm& b);

struct Invariants {
  int r = 0, l = 0, delta = 0;
  int g = 0, k = 0;
  Rat eps;  // (12 - r(Lambda))/2 for the b+ = 2 side
  Signature sign;
  bool as_M = false;
};

// Lambda-side (b+ = 2) or M-side (b+ = 1) reading, chosen by the signature.
Invariants invariants(const Lattice& a);
Invariants lambda_invariants(int r, int l, int delta);
Invariants m_invariants(int r, int l, int delta);
// r(M) = 22 - r(Lambda), same l and delta.
Invariants complement_invariants(const Invariants& x);

// Gram of the primitive sublattice orthogonal to the columns of sub (coordinates in ambient basis).
Lattice orthogonal_complement(const IntMatrix& sub, const Lattice& ambient);

enum class RootType { plus, minus };
RootType root_type(const std::vector<Int>& d, const Lattice& a);

namespace named {
Lattice U();
Lattice A1();
Lattice A1_plus();
Lattice D(int n);
Lattice E7();
Lattice E8();
}  // namespace named

// Names like "U+U(2)+E8(2)+A1*3", "A1+*2", "U*2+E8*2+A1"; "(X)perp" resolves to the
// tabulated lattice whose (r, l, delta) is (22 - r(X), l(X), delta(X)).
Lattice parse_lattice(const std::string& name);

struct ClassEntry {
  std::string name;
  Lattice lattice;
  Invariants inv;  // Lambda-side
};

// The 75 classes, in table order (by g, then delta = 1 before delta = 0).
const std::vector<ClassEntry>& table1();
// Recomputes and cross-checks the table; throws std::runtime_error naming the offending row.
std::vector<ClassEntry> classify_table();
const ClassEntry* find_lambda(int r, int l, int delta);
bool is_exceptional_lambda(const Invariants& lam);

}  // namespace k3
