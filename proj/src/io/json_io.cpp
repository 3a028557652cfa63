#include "k3kit/json_io.hpp"

#include <limits>
#include <stdexcept>

namespace k3 {

Json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("not an integer: " + j.dump());
    return x;
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

Json rat_pair(const Rat& x) { return Json::array({int_json(x.get_num()), int_json(x.get_den())}); }

Rat rat_from_pair(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [p, q], got " + j.dump());
  const Int den = int_from_json(j[1]);
  if (den == 0) throw std::invalid_argument("zero denominator in " + j.dump());
  Rat r(int_from_json(j[0]), den);
  r.canonicalize();
  return r;
}

Json to_json(const Lattice& a) {
  Json gram = Json::array();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.rank(); ++j) row.push_back(int_json(a.gram()(i, j)));
    gram.push_back(std::move(row));
  }
  Json out;
  if (!a.name().empty()) out["name"] = a.name();
  out["gram"] = std::move(gram);
  return out;
}

Lattice lattice_from_json(const Json& j) {
  if (j.is_string()) return parse_lattice(j.get<std::string>());
  if (!j.is_object()) throw std::invalid_argument("lattice must be a name or an object");
  if (!j.contains("gram")) {
    if (j.contains("name")) return parse_lattice(j["name"].get<std::string>());
    throw std::invalid_argument("lattice object needs \"gram\" or \"name\"");
  }
  const Json& g = j["gram"];
  if (!g.is_array()) throw std::invalid_argument("\"gram\" must be an array of rows");
  IntMatrix m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g[i].is_array() || g[i].size() != g.size()) throw std::invalid_argument("gram must be square");
    for (std::size_t k = 0; k < g.size(); ++k) m(i, k) = int_from_json(g[i][k]);
  }
  return Lattice(std::move(m), j.value("name", std::string{}));
}

Json to_json(const PuiseuxSeries& s) {
  Json terms = Json::array();
  s.for_each_nonzero([&](long n, const GaussianRational& c) {
    terms.push_back({{"num", n}, {"re", rat_pair(c.re)}, {"im", rat_pair(c.im)}});
  });
  return {{"denom", s.denom()}, {"terms", std::move(terms)}, {"order", s.order_num()}};
}

PuiseuxSeries series_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("denom") || !j.contains("order") || !j.contains("terms"))
    throw std::invalid_argument("series needs \"denom\", \"terms\" and \"order\"");
  const long denom = j["denom"].get<long>();
  if (denom <= 0 || denom > PuiseuxSeries::kMaxDenom) throw std::invalid_argument("series denom out of range");
  const long order = j["order"].get<long>();
  std::vector<std::pair<long, GaussianRational>> terms;
  for (const Json& t : j["terms"]) {
    const long n = t.at("num").get<long>();
    if (n >= order) throw std::invalid_argument("series term at or beyond the truncation order");
    GaussianRational c(rat_from_pair(t.at("re")), t.contains("im") ? rat_from_pair(t["im"]) : Rat(0));
    terms.emplace_back(n, c);
  }
  return PuiseuxSeries::from_terms(denom, terms, order);
}

Json to_json(const VectorValuedForm& f) {
  Json comps = Json::array();
  for (Coset g = 0; g < f.size(); ++g) comps.push_back({{"coset", f.df().bits(g)}, {"series", to_json(f[g])}});
  return {{"lattice", to_json(f.lattice())}, {"weight", rat_pair(f.weight())}, {"components", std::move(comps)}};
}

VectorValuedForm vvf_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("form must be an object");
  Lattice lat = lattice_from_json(j.at("lattice"));
  DiscriminantForm df = discriminant_form(lat);
  std::vector<VectorValuedForm::Component> comps(df.size());
  for (const Json& c : j.at("components")) {
    const Coset g = df.from_bits(c.at("coset").get<std::string>());
    if (comps[g]) throw std::invalid_argument("coset listed twice: " + c["coset"].dump());
    comps[g] = std::make_shared<const PuiseuxSeries>(series_from_json(c.at("series")));
  }
  for (Coset g = 0; g < comps.size(); ++g)
    if (!comps[g]) throw std::invalid_argument("missing component for coset " + df.bits(g));
  return VectorValuedForm(std::move(lat), std::move(df), std::move(comps), rat_from_pair(j.at("weight")));
}

Json to_json(const Node& n) {
  return {{"r", n.r}, {"l", n.l}, {"delta", n.delta}, {"g", n.g()}, {"k", n.k()}, {"eps", to_string(n.eps())}};
}

Json to_json(const FormalDivisor& d) {
  Json out{{"node", to_json(d.node())},
           {"D-", to_string(d[Sym::d_minus])},
           {"D+", to_string(d[Sym::d_plus])},
           {"H", to_string(d[Sym::h])}};
  if (d[Sym::h_e11] != 0) out["H(-1,e11)"] = to_string(d[Sym::h_e11]);
  out["text"] = d.str();
  return out;
}

Json to_json(const std::vector<PrincipalTerm>& pp, const DiscriminantForm& df) {
  Json out = Json::array();
  for (const auto& t : pp)
    out.push_back({{"coset", df.bits(t.coset)}, {"exponent", to_string(t.exponent)}, {"coeff", to_string(t.coeff)}});
  return out;
}

Json to_json(const LiftProfile& p, const DiscriminantForm& df) {
  Json raw = Json::array();
  for (const auto& [key, c] : p.divisor)
    raw.push_back({{"n", to_string(key.first)}, {"coset", df.bits(key.second)}, {"coeff", to_string(c)}});
  return {{"weight", to_string(p.weight)},
          {"divisor", std::move(raw)},
          {"named", to_json(p.named.div)},
          {"unclassified", to_json(p.named.unclassified, df)}};
}

Json to_json(const BalanceReport& r) {
  auto pair = [](const WeightPair& w) { return Json::array({to_string(w.first), to_string(w.second)}); };
  return {{"node", to_json(r.node)},
          {"path", r.path},
          {"lhs_weight", pair(r.lhs_weight)},
          {"rhs_weight", pair(r.rhs_weight)},
          {"weight_ok", r.weight_ok},
          {"divisor_ok", r.divisor_ok},
          {"residual", to_json(r.residual)},
          {"detail", r.detail},
          {"pass", r.pass()}};
}

Json to_json(const ClassEntry& e) {
  return {{"name", e.name},
          {"r", e.inv.r},
          {"l", e.inv.l},
          {"delta", e.inv.delta},
          {"g", e.inv.g},
          {"k", e.inv.k},
          {"signature", Json::array({e.inv.sign.plus, e.inv.sign.minus})},
          {"exceptional", is_exceptional_lambda(e.inv)}};
}

}  // namespace k3
