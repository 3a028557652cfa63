#include "k3kit/verify.hpp"

#include "CLI11.hpp"

#include <iomanip>
#include <iostream>

using namespace k3;

namespace {

struct Globals {
  bool json = false;
  long order = 0;  // 0: per-command default
  double tol = 0;
  std::uint64_t seed = 1;
  int jobs = 1;
};

void emit(const Json& j, bool as_json, const std::function<void()>& text) {
  if (as_json) std::cout << j.dump(2) << "\n";
  else text();
}

int cmd_classify(const Globals& g) {
  Json rows = Json::array();
  for (const auto& e : table1()) rows.push_back(to_json(e));
  emit(rows, g.json, [&] {
    std::cout << std::left << std::setw(22) << "name" << " r  l  d  g  k\n";
    for (const auto& e : table1())
      std::cout << std::setw(22) << e.name << std::right << std::setw(2) << e.inv.r << std::setw(3) << e.inv.l
                << std::setw(3) << e.inv.delta << std::setw(3) << e.inv.g << std::setw(3) << e.inv.k << std::left
                << (is_exceptional_lambda(e.inv) ? "  exceptional" : "") << "\n";
    std::cout << table1().size() << " classes\n";
  });
  return 0;
}

VectorValuedForm build_form(const Lattice& lam, const std::string& form, long order) {
  if (form == "F") return build_F_lambda(lam, order);
  if (form == "f") return build_f_lambda(lam, order);
  throw std::invalid_argument("--form must be F or f here");
}

int cmd_vvmf(const Globals& g, const std::string& lattice, const std::string& form) {
  const auto f = build_form(parse_lattice(lattice), form, g.order ? g.order : 4);
  emit(to_json(f), g.json, [&] {
    std::cout << "weight " << to_string(f.weight()) << ", " << f.size() << " components, known below q^"
              << to_string(f.order()) << "\nprincipal part:\n";
    for (const auto& t : principal_part(f))
      std::cout << "  " << f.df().bits(t.coset) << "  q^" << to_string(t.exponent) << "  " << to_string(t.coeff)
                << "\n";
  });
  return 0;
}

int cmd_lift(const Globals& g, const std::string& lattice, const std::string& form, long ell) {
  const Lattice lam = parse_lattice(lattice);
  const Invariants inv = invariants(lam);
  if (inv.as_M) throw std::invalid_argument("lift needs the Lambda-side lattice (signature (2, r - 2))");
  const Node node = node_of(inv);
  const long order = g.order ? g.order : 4;
  PrincipalPart pp;
  if (form == "combined") {
    const auto c = combined_lift_profile(node.r_M(), node.l, node.delta, order);
    pp = PrincipalPart::of(build_F_lambda(c.lambda, order)).scaled(pow2(node.g() - 1)).plus(
        PrincipalPart::of(build_f_lambda(c.lambda, order)));
  } else {
    pp = PrincipalPart::of(build_form(lam, form, order));
  }
  const auto prof = lift_profile(pp.scaled(Rat(ell)), node);
  Json j{{"lattice", lam.name()}, {"form", form}, {"ell", ell}, {"node", to_json(node)}};
  const Json body = to_json(prof, pp.df);
  for (const auto& [k, v] : body.items()) j[k] = v;
  emit(j, g.json, [&] {
    std::cout << lam.name() << " " << to_string(node) << ", form " << form << ", l = " << ell << "\n"
              << "weight  " << to_string(prof.weight) << "\ndivisor " << prof.named.div.str() << "\n";
    for (const auto& t : prof.named.unclassified)
      std::cout << "  unclassified H(" << to_string(t.exponent) << ", " << pp.df.bits(t.coset) << ") x "
                << to_string(t.coeff) << "\n";
  });
  return 0;
}

int cmd_divisors(const Globals& g, const std::string& m_name) {
  Invariants inv = invariants(parse_lattice(m_name));
  if (!inv.as_M) inv = complement_invariants(inv);
  const Invariants lam = complement_invariants(inv);
  const Node node = node_of(lam);
  Json j{{"M", m_name}, {"node", to_json(node)}};
  if (is_exceptional_lambda(lam)) {
    j["exceptional"] = true;
    emit(j, g.json, [&] { std::cout << m_name << ": exceptional, no divisor row\n"; });
    return 0;
  }
  const auto chi = chi8_divisor(node);
  j["item"] = chi.item;
  j["chi8_identically_zero"] = chi.identically_zero;
  if (!chi.identically_zero) j["chi8_divisor"] = to_json(chi.div);
  else j["upsilon_divisor"] = to_json(upsilon_divisor(node));
  const auto rep = weight_balance_check(node);
  j["balance"] = to_json(rep);
  emit(j, g.json, [&] {
    std::cout << m_name << " -> Lambda node " << to_string(node) << ", item " << chi.item << "\n";
    if (chi.identically_zero) std::cout << "chi8 vanishes identically; div Upsilon = " << upsilon_divisor(node).str() << "\n";
    else std::cout << "div chi8 = " << chi.div.str() << "\n";
    std::cout << "balance " << (rep.pass() ? "ok" : "FAILS") << ": " << rep.detail << "\n";
  });
  return rep.pass() ? 0 : 1;
}

template <class Real>
SiegelPoint<Real> omega_from_json(const Json& j) {
  using C = Cx<Real>;
  if (!j.is_array()) throw std::invalid_argument("--omega must be a JSON matrix");
  std::vector<std::vector<C>> m;
  for (const Json& row : j) {
    if (!row.is_array()) throw std::invalid_argument("--omega rows must be arrays");
    auto& r = m.emplace_back();
    for (const Json& z : row) {
      if (z.is_number()) r.emplace_back(Real(z.get<double>()), Real(0));
      else if (z.is_array() && z.size() == 2) r.emplace_back(Real(z[0].get<double>()), Real(z[1].get<double>()));
      else throw std::invalid_argument("entries of --omega are numbers or [re, im]");
    }
  }
  return SiegelPoint<Real>(std::move(m));
}

template <class Real>
std::string show(const Real& x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<Real>::digits10) << x;
  return os.str();
}

template <class Real>
Json cx_json(const Cx<Real>& z) {
  return Json::array({show(Real(z.real())), show(Real(z.imag()))});
}

template <class Real>
Json theta_value(const Json& omega, const std::string& ch, bool probe, double tol) {
  const auto om = omega_from_json<Real>(omega);
  Json j{{"g", om.genus()}};
  if (!ch.empty()) {
    const auto c = ThetaChar::parse(ch);
    const auto t = theta_constant(c, om, tol);
    j["char"] = c.str();
    j["even"] = c.is_even();
    j["value"] = cx_json<Real>(t.value);
    j["tail_bound"] = t.tail;
    j["terms"] = t.terms;
  }
  if (probe) {
    const auto p = two_vanish_probe(om, tol);
    Json v = Json::array();
    for (const auto& c : p.vanishing) v.push_back(c.str());
    j["probe"] = {{"result", to_string(p.result)}, {"vanishing", v}, {"chi8", cx_json<Real>(p.chi)},
                  {"upsilon", cx_json<Real>(p.ups)}, {"consistent", p.consistent}};
  }
  return j;
}

int cmd_theta(const Globals& g, int genus, const std::string& omega, const std::string& ch, bool probe,
              const std::string& identity, int trials) {
  const Precision prec = precision_from_env();
  if (!identity.empty()) {
    const auto r = theta_identity(identity, genus, trials, g.seed, prec);
    emit(to_json(r), g.json, [&] {
      std::cout << identity << " g=" << genus << ": " << trials << " trials, max rel err " << r.max_rel_err
                << " (bound " << r.bound << ") " << (r.pass ? "PASS" : "FAIL") << "\n";
    });
    return r.pass ? 0 : 1;
  }
  if (omega.empty()) throw std::invalid_argument("theta needs --omega or --identity");
  const Json om = Json::parse(omega);
  if (static_cast<int>(om.size()) != genus) throw std::invalid_argument("--omega size does not match --g");
  const double tol = g.tol > 0 ? g.tol : (prec == Precision::high ? 1e-30 : 1e-14);
  const Json j = prec == Precision::high ? theta_value<HighReal>(om, ch, probe, tol)
                                         : theta_value<double>(om, ch, probe, tol);
  emit(j, g.json, [&] { std::cout << j.dump(2) << "\n"; });
  return 0;
}

int cmd_verify(const Globals& g, const std::string& suite) {
  VerifyOptions o;
  o.jobs = g.jobs;
  o.seed = g.seed;
  if (g.order) o.order = g.order;
  if (g.tol > 0) o.tol = g.tol;
  const auto rep = run_suite(suite, o);
  emit(to_json(rep), g.json, [&] {
    for (const auto& c : rep.cases) {
      std::cout << std::left << std::setw(13) << ("[" + to_string(c.status) + "]") << c.name;
      if (c.status != Status::pass && !c.detail.empty()) std::cout << "  -- " << c.detail;
      std::cout << "\n";
    }
    std::cout << rep.suite << ": " << rep.count(Status::pass) << " pass, " << rep.count(Status::fail) << " fail, "
              << rep.count(Status::inconclusive) << " inconclusive in " << std::fixed << std::setprecision(1)
              << rep.seconds << " s\n";
  });
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice, modular form, lift and theta calculus for 2-elementary K3 lattices"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_option("--order", g.order, "Truncation order of q-expansions");
  app.add_option("--tol", g.tol, "Numeric tolerance");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.fallthrough();

  auto* classify = app.add_subcommand("classify", "List the 75 classes");

  std::string lattice, form = "F";
  long ell = 1;
  auto* vvmf = app.add_subcommand("vvmf", "Vector-valued form F_Lambda or f_Lambda");
  vvmf->add_option("--lattice", lattice, "Lattice name")->required();
  vvmf->add_option("--form", form, "F or f")->check(CLI::IsMember({"F", "f"}));

  auto* lift = app.add_subcommand("lift", "Weight and divisor of a Borcherds lift");
  lift->add_option("--lattice", lattice, "Lambda-side lattice name")->required();
  lift->add_option("--form", form, "F, f or combined")->check(CLI::IsMember({"F", "f", "combined"}));
  lift->add_option("--ell", ell, "Multiplier");

  std::string m_name;
  auto* divisors = app.add_subcommand("divisors", "Divisor-table row and balance for M");
  divisors->add_option("--M", m_name, "M-side lattice name")->required();

  int genus = 1, trials = 10;
  std::string omega, ch, identity;
  bool probe = false;
  auto* theta = app.add_subcommand("theta", "Siegel theta constants (K3KIT_PRECISION=double|high)");
  theta->add_option("--g", genus, "Genus");
  theta->add_option("--omega", omega, "Period matrix as JSON, entries number or [re, im]");
  theta->add_option("--char", ch, "Characteristic a,b in bits, e.g. 10,01");
  theta->add_flag("--probe", probe, "Run the two-vanishing probe");
  theta->add_option("--identity", identity, "jacobi, symmetric, factorization or petersson");
  theta->add_option("--trials", trials, "Number of random trials");

  std::string suite = "all";
  bool balance_only = false;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suite", suite, "all, table, principal, lift, balance, modularity or theta");
  verify->add_flag("--balance", balance_only, "Same as the balance suite");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*classify) return cmd_classify(g);
    if (*vvmf) return cmd_vvmf(g, lattice, form);
    if (*lift) return cmd_lift(g, lattice, form, ell);
    if (*divisors) return cmd_divisors(g, m_name);
    if (*theta) return cmd_theta(g, genus, omega, ch, probe, identity, trials);
    if (*verify) return cmd_verify(g, balance_only ? "balance" : suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
