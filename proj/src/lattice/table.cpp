#include "k3kit/lattice.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace k3 {

namespace {

std::string with_a1(const std::string& head, int t) {
  if (t == 0) return head;
  const std::string a = t == 1 ? "A1" : "A1*" + std::to_string(t);
  return head.empty() ? a : head + "+" + a;
}

struct Row {
  int g;
  std::string head;  // delta = 1 family head (summed with A1^t)
  int t_min, t_max;
  std::vector<std::string> even;  // delta = 0 entries
};

const std::vector<Row>& rows() {
  static const std::vector<Row> r = {
      {0, "A1+*2", 0, 9, {"U(2)*2"}},
      {1, "U+A1+", 0, 9, {"U+U(2)", "U(2)*2+D4", "U+U(2)+E8(2)"}},
      {2, "U*2", 1, 9, {"U*2", "U+U(2)+D4", "U*2+E8(2)"}},
      {3, "U*2+D4", 1, 6, {"U*2+D4", "U+U(2)+D4*2"}},
      {4, "U*2+D6", 0, 5, {"U*2+D4*2"}},
      {5, "U*2+E7", 0, 5, {"U*2+D8"}},
      {6, "U*2+E8", 1, 5, {"U*2+E8", "U*2+D4+D8"}},
      {7, "U*2+D4+E8", 1, 2, {"U*2+D4+E8"}},
      {8, "U*2+D6+E8", 0, 1, {}},
      {9, "U*2+E7+E8", 0, 1, {"U*2+D8+E8"}},
      {10, "U*2+E8*2", 1, 1, {"U*2+E8*2"}},
  };
  return r;
}

// Bin sizes read off the table: (g, delta) -> count.
const std::map<std::pair<int, int>, int>& expected_bins() {
  static const std::map<std::pair<int, int>, int> b = {
      {{0, 1}, 10}, {{0, 0}, 1}, {{1, 1}, 10}, {{1, 0}, 3}, {{2, 1}, 9}, {{2, 0}, 3}, {{3, 1}, 6}, {{3, 0}, 2},
      {{4, 1}, 6},  {{4, 0}, 1}, {{5, 1}, 6},  {{5, 0}, 1}, {{6, 1}, 5}, {{6, 0}, 2}, {{7, 1}, 2}, {{7, 0}, 1},
      {{8, 1}, 2},  {{9, 1}, 2}, {{9, 0}, 1},  {{10, 1}, 1}, {{10, 0}, 1},
  };
  return b;
}

std::vector<ClassEntry> build() {
  std::vector<ClassEntry> out;
  auto add = [&](const std::string& name, int g, int delta) {
    Lattice lat = parse_lattice(name);
    Invariants inv = invariants(lat);
    if (inv.as_M) throw std::runtime_error("class-table row " + name + ": b+ is not 2");
    if (inv.g != g || inv.delta != delta)
      throw std::runtime_error("class-table row " + name + ": computed (g, delta) = (" + std::to_string(inv.g) + ", " +
                               std::to_string(inv.delta) + "), expected (" + std::to_string(g) + ", " +
                               std::to_string(delta) + ")");
    out.push_back({name, std::move(lat), inv});
  };
  for (const auto& row : rows()) {
    for (int t = row.t_min; t <= row.t_max; ++t) add(with_a1(row.head, t), row.g, 1);
    for (const auto& e : row.even) add(e, row.g, 0);
  }
  return out;
}

}  // namespace

std::vector<ClassEntry> classify_table() {
  std::vector<ClassEntry> t = build();
  std::set<std::tuple<int, int, int, int>> seen;
  std::map<std::pair<int, int>, int> bins;
  for (const auto& e : t) {
    const auto& v = e.inv;
    if ((v.r - v.l) % 2 != 0 || v.g < 0) throw std::runtime_error("class-table row " + e.name + ": bad r - l");
    if (!seen.insert({v.sign.plus, v.sign.minus, v.l, v.delta}).second)
      throw std::runtime_error("class-table row " + e.name + ": duplicate (sign, l, delta)");
    ++bins[{v.g, v.delta}];
  }
  if (t.size() != 75) throw std::runtime_error("class table has " + std::to_string(t.size()) + " rows, expected 75");
  for (const auto& [key, n] : expected_bins()) {
    auto it = bins.find(key);
    const int got = it == bins.end() ? 0 : it->second;
    if (got != n)
      throw std::runtime_error("class-table bin (g=" + std::to_string(key.first) + ", delta=" + std::to_string(key.second) +
                               ") has " + std::to_string(got) + " rows, expected " + std::to_string(n));
  }
  if (bins.size() != expected_bins().size()) throw std::runtime_error("class table has an unexpected (g, delta) bin");
  return t;
}

const std::vector<ClassEntry>& table1() {
  static const std::vector<ClassEntry> t = classify_table();
  return t;
}

const ClassEntry* find_lambda(int r, int l, int delta) {
  for (const auto& e : table1())
    if (e.inv.r == r && e.inv.l == l && e.inv.delta == delta) return &e;
  return nullptr;
}

bool is_exceptional_lambda(const Invariants& lam) {
  const int r = lam.as_M ? 22 - lam.r : lam.r;
  return r == 12 && lam.l == 10 && lam.delta == 0;
}

}  // namespace k3
