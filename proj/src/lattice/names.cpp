#include "k3kit/lattice.hpp"

#include <cctype>
#include <regex>
#include <stdexcept>

namespace k3 {

namespace {

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(s[i])) ++i;
  return s.substr(i);
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  return s;
}

// Splits on '+', keeping the '+' of "A1+" with its token.
std::vector<std::string> split_summands(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c != '+') {
      cur += c;
      continue;
    }
    const char next = i + 1 < s.size() ? s[i + 1] : '\0';
    const bool a1 = cur.size() >= 2 && cur.compare(cur.size() - 2, 2, "A1") == 0;
    if (a1 && (next == '\0' || next == '+' || next == '(' || next == '*' || next == '^')) {
      cur += c;
      continue;
    }
    out.push_back(cur);
    cur.clear();
  }
  out.push_back(cur);
  return out;
}

Lattice parse_summand(const std::string& tok) {
  static const std::regex re(R"(^(U|A1\+|A1|D(\d+)|E7|E8)(?:\((-?\d+)\))?(?:[*^](\d+))?$)");
  std::smatch m;
  if (!std::regex_match(tok, m, re)) throw std::invalid_argument("unknown lattice summand: '" + tok + "'");
  const std::string base = m[1];
  Lattice b;
  if (base == "U")
    b = named::U();
  else if (base == "A1+")
    b = named::A1_plus();
  else if (base == "A1")
    b = named::A1();
  else if (base == "E7")
    b = named::E7();
  else if (base == "E8")
    b = named::E8();
  else
    b = named::D(std::stoi(m[2]));
  if (m[3].matched) {
    const long k = std::stol(m[3]);
    Lattice s = rescale(b, k);
    s.set_name(base + "(" + std::to_string(k) + ")");
    b = s;
  }
  if (m[4].matched) {
    const int n = std::stoi(m[4]);
    if (n < 1) throw std::invalid_argument("repetition count must be positive: '" + tok + "'");
    Lattice acc = b;
    for (int i = 1; i < n; ++i) acc = direct_sum(acc, b);
    return acc;
  }
  return b;
}

}  // namespace

Lattice parse_lattice(const std::string& input) {
  std::string s = trim(replace_all(replace_all(input, "⊕", "+"), " ", ""));
  if (s.empty()) throw std::invalid_argument("empty lattice name");

  static const std::regex perp(R"(^\((.+)\)perp$|^(.+)perp$)");
  std::smatch m;
  if (std::regex_match(s, m, perp)) {
    const std::string inner = m[1].matched ? m[1].str() : m[2].str();
    const Lattice x = parse_lattice(inner);
    const DiscriminantForm f = discriminant_form(x);
    const int r = 22 - static_cast<int>(x.rank());
    const ClassEntry* e = find_lambda(r, f.l(), f.delta());
    if (!e) throw std::invalid_argument("no tabulated lattice with the complementary invariants of " + inner);
    Lattice out = e->lattice;
    out.set_name(e->name);
    return out;
  }

  Lattice acc;
  bool first = true;
  for (const auto& tok : split_summands(s)) {
    if (tok.empty()) throw std::invalid_argument("malformed lattice name: '" + input + "'");
    Lattice b = parse_summand(tok);
    acc = first ? b : direct_sum(acc, b);
    first = false;
  }
  acc.set_name(s);
  return acc;
}

}  // namespace k3
