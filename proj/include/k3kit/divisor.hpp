#pragma once

#include "k3kit/lattice.hpp"

#include <array>
#include <ostream>
#include <string>

namespace k3 {

// A tabulated class on the Lambda side, (r(Lambda), l, delta).
struct Node {
  int r = 0, l = 0, delta = 0;
  bool operator==(const Node&) const = default;
  auto operator<=>(const Node&) const = default;
  int g() const { return (r - l) / 2; }
  int k() const { return (22 - r - l) / 2; }
  Rat eps() const { return frac(12 - r, 2); }
  // The complementary M-side triple.
  int r_M() const { return 22 - r; }
};

Node node_of(const Invariants& lam);
std::string to_string(const Node& n);

// Facts about a node that the divisor relations depend on.
struct NodeFacts {
  int plus_cosets = 0;        // |{g : q(g) = 3/2}|, the cosets of d/2 for plus roots
  bool one_is_plus = false;   // 1_Lambda has q = 3/2
  bool one_is_zero = false;   // delta = 0
};
// Read off the table representative; throws for a node outside the class table.
NodeFacts node_facts(const Node& n);

enum class Sym { d_minus, d_plus, h, h_e11 };
inline constexpr std::array<Sym, 4> kAllSyms{Sym::d_minus, Sym::d_plus, Sym::h, Sym::h_e11};
std::string to_string(Sym s);

// Rational combination of D-, D+, H_Lambda and H(-1, e11) on one node.
class FormalDivisor {
 public:
  FormalDivisor() = default;
  explicit FormalDivisor(Node n) : node_(n) {}
  FormalDivisor(Node n, Rat dm, Rat dp, Rat h, Rat he = 0);

  const Node& node() const { return node_; }
  const Rat& operator[](Sym s) const { return c_[static_cast<int>(s)]; }
  Rat& operator[](Sym s) { return c_[static_cast<int>(s)]; }
  bool is_zero() const;

  FormalDivisor& operator+=(const FormalDivisor& o);
  FormalDivisor& operator-=(const FormalDivisor& o);
  FormalDivisor& operator*=(const Rat& s);
  friend FormalDivisor operator+(FormalDivisor a, const FormalDivisor& b) { return a += b; }
  friend FormalDivisor operator-(FormalDivisor a, const FormalDivisor& b) { return a -= b; }
  friend FormalDivisor operator*(const Rat& s, FormalDivisor a) { return a *= s; }
  friend bool operator==(const FormalDivisor& a, const FormalDivisor& b) {
    return a.node_ == b.node_ && a.c_ == b.c_;
  }

  // Rewrites with the identities that hold on the node:
  //   H = D- + D+ when eps = -2 and 1_Lambda = 0;   H = D+ when eps = -1/2 and 1_Lambda is the only plus coset;
  //   H = 0 when eps >= 0;   D+ = 0 without plus cosets;   D- = 0 when g = 0.
  FormalDivisor normalized() const;
  // D- + D+ written as D when the two coefficients agree.
  std::string str() const;

 private:
  Node node_;
  std::array<Rat, 4> c_{};
};

inline std::ostream& operator<<(std::ostream& os, const FormalDivisor& d) {
  return os << d.str() << " on " << to_string(d.node());
}

// D = D- + D+.
FormalDivisor discriminant_divisor(const Node& n, const Rat& mult = 1);

}  // namespace k3
