#include "k3kit/divisor.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace k3 {

Node node_of(const Invariants& lam) {
  if (lam.as_M) return {22 - lam.r, lam.l, lam.delta};
  return {lam.r, lam.l, lam.delta};
}

std::string to_string(const Node& n) {
  std::ostringstream os;
  os << "(" << n.r << "," << n.l << "," << n.delta << ")";
  return os.str();
}

NodeFacts node_facts(const Node& n) {
  static std::mutex mu;
  static std::map<Node, NodeFacts> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  const ClassEntry* e = find_lambda(n.r, n.l, n.delta);
  if (!e) throw std::invalid_argument("node " + to_string(n) + " is not a tabulated class");
  const DiscriminantForm df = discriminant_form(e->lattice);
  NodeFacts f;
  f.plus_cosets = static_cast<int>(df.with_q2(3).size());
  f.one_is_zero = df.char_elem() == 0;
  f.one_is_plus = df.q2(df.char_elem()) == 3;
  cache.emplace(n, f);
  return f;
}

std::string to_string(Sym s) {
  switch (s) {
    case Sym::d_minus: return "D-";
    case Sym::d_plus: return "D+";
    case Sym::h: return "H";
    case Sym::h_e11: return "H(-1,e11)";
  }
  return "?";
}

FormalDivisor::FormalDivisor(Node n, Rat dm, Rat dp, Rat h, Rat he) : node_(n) {
  c_ = {std::move(dm), std::move(dp), std::move(h), std::move(he)};
}

bool FormalDivisor::is_zero() const {
  for (const Rat& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

FormalDivisor& FormalDivisor::operator+=(const FormalDivisor& o) {
  if (!(o.node_ == node_)) throw std::invalid_argument("divisors on different nodes");
  for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

FormalDivisor& FormalDivisor::operator-=(const FormalDivisor& o) {
  if (!(o.node_ == node_)) throw std::invalid_argument("divisors on different nodes");
  for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

FormalDivisor& FormalDivisor::operator*=(const Rat& s) {
  for (Rat& x : c_) x *= s;
  return *this;
}

FormalDivisor FormalDivisor::normalized() const {
  const NodeFacts f = node_facts(node_);
  FormalDivisor d = *this;
  Rat& h = d[Sym::h];
  const Rat eps = node_.eps();
  if (sgn(h) != 0) {
    if (eps == -2 && f.one_is_zero) {
      d[Sym::d_minus] += h;
      d[Sym::d_plus] += h;
      h = 0;
    } else if (eps == frac(-1, 2) && f.one_is_plus && f.plus_cosets == 1) {
      d[Sym::d_plus] += h;
      h = 0;
    } else if (sgn(eps) >= 0) {
      h = 0;
    }
  }
  if (f.plus_cosets == 0) d[Sym::d_plus] = 0;
  if (node_.g() == 0) d[Sym::d_minus] = 0;
  return d;
}

std::string FormalDivisor::str() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](const Rat& c, const std::string& name) {
    if (sgn(c) == 0) return;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rat a = abs(c);
    if (a != 1) os << to_string(a) << "*";
    os << name;
  };
  if ((*this)[Sym::d_minus] == (*this)[Sym::d_plus]) {
    term((*this)[Sym::d_minus], "D");
  } else {
    term((*this)[Sym::d_minus], "D-");
    term((*this)[Sym::d_plus], "D+");
  }
  term((*this)[Sym::h], "H");
  term((*this)[Sym::h_e11], "H(-1,e11)");
  return first ? "0" : os.str();
}

FormalDivisor discriminant_divisor(const Node& n, const Rat& mult) { return {n, mult, mult, 0, 0}; }

}  // namespace k3
