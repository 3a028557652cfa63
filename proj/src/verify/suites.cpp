#include "k3kit/verify.hpp"

#include <boost/math/constants/constants.hpp>

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace k3 {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t VerificationReport::count(Status s) const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.status == s;
  return n;
}

Json to_json(const VerificationReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"name", c.name},
                     {"status", to_string(c.status)},
                     {"residual", c.residual},
                     {"seconds", c.seconds},
                     {"detail", c.detail}});
  return {{"suite", r.suite},
          {"pass", r.count(Status::pass)},
          {"fail", r.count(Status::fail)},
          {"inconclusive", r.count(Status::inconclusive)},
          {"seconds", r.seconds},
          {"ok", r.ok()},
          {"cases", std::move(cases)}};
}

Json to_json(const IdentityResult& r) {
  return {{"identity", r.identity}, {"g", r.g},          {"trials", r.trials},
          {"max_rel_err", r.max_rel_err}, {"bound", r.bound}, {"pass", r.pass}};
}

const std::vector<std::array<int, 2>>& table1_bins() {
  // [g] -> {delta = 0, delta = 1}
  static const std::vector<std::array<int, 2>> bins = {{1, 10}, {3, 10}, {3, 9}, {2, 6}, {1, 6}, {1, 6},
                                                       {2, 5},  {1, 2},  {0, 2}, {1, 2}, {1, 1}};
  return bins;
}

namespace {

using Clock = std::chrono::steady_clock;
using Task = std::function<std::vector<CaseResult>()>;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CaseResult verdict(std::string name, bool ok, std::string detail = {}, double residual = 0) {
  return {std::move(name), ok ? Status::pass : Status::fail, std::move(detail), residual, 0};
}

// Worker pool over tasks; results keep task order so output is deterministic.
std::vector<CaseResult> run_tasks(const std::vector<std::pair<std::string, Task>>& tasks, int jobs) {
  std::vector<std::vector<CaseResult>> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      const auto t0 = Clock::now();
      try {
        out[i] = tasks[i].second();
      } catch (const std::exception& e) {
        out[i] = {{tasks[i].first, Status::fail, std::string("exception: ") + e.what(), 0, 0}};
      }
      const double dt = since(t0);
      for (auto& c : out[i]) c.seconds = dt / static_cast<double>(out[i].size());
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<CaseResult> flat;
  for (auto& v : out)
    for (auto& c : v) flat.push_back(std::move(c));
  return flat;
}

std::vector<std::pair<std::string, Task>> table_tasks() {
  return {{"table", [] {
             const auto t0 = Clock::now();
             const auto t = classify_table();
             std::vector<std::array<int, 2>> bins(11, {0, 0});
             std::set<std::tuple<int, int, int, int>> triples;
             bool sig_ok = true;
             for (const auto& e : t) {
               ++bins.at(e.inv.g)[e.inv.delta];
               triples.insert({e.inv.sign.plus, e.inv.sign.minus, e.inv.l, e.inv.delta});
               sig_ok = sig_ok && e.inv.sign.plus == 2 && e.inv.sign.minus == e.inv.r - 2;
             }
             const double dt = since(t0);
             std::vector<CaseResult> r;
             r.push_back(verdict("75 classes", t.size() == 75, std::to_string(t.size()) + " classes"));
             r.push_back(verdict("per-(g, delta) bins", bins == table1_bins()));
             r.push_back(verdict("distinct (sign, l, delta)", triples.size() == t.size()));
             r.push_back(verdict("signature (2, r - 2)", sig_ok));
             r.push_back(verdict("classification under 5 s", dt < 5, std::to_string(dt) + " s", dt));
             return r;
           }}};
}

std::vector<std::pair<std::string, Task>> principal_tasks(long order) {
  std::vector<std::pair<std::string, Task>> tasks;
  for (const auto& e : table1()) {
    tasks.emplace_back(e.name, [&e, order] {
      const auto F = build_F_lambda(e.lattice, order);
      const auto got = principal_part(F);
      const auto want = expected_principal_part_F(F.df(), e.inv);
      std::string detail;
      if (got != want)
        detail = "got " + to_json(got, F.df()).dump() + ", expected " + to_json(want, F.df()).dump();
      return std::vector<CaseResult>{verdict("principal part " + e.name, got == want, detail)};
    });
  }
  return tasks;
}

std::vector<PrincipalTerm> negative_terms(const std::vector<PrincipalTerm>& pp) {
  std::vector<PrincipalTerm> out;
  for (const auto& t : pp)
    if (sgn(t.exponent) < 0) out.push_back(t);
  return out;
}

std::vector<std::pair<std::string, Task>> lift_tasks() {
  std::vector<std::pair<std::string, Task>> tasks;
  tasks.emplace_back("lift sweep", [] {
    std::vector<CaseResult> r;
    for (const auto& row : verify_theorem_lift()) {
      std::ostringstream os;
      os << "weight " << to_string(row.weight) << " (expected " << to_string(row.expected_weight) << "), divisor "
         << row.divisor.str() << " (expected " << row.expected_divisor.str() << "), scale " << row.scale.get_str();
      r.push_back(verdict("lift " + row.name, row.pass, os.str()));
    }
    return r;
  });
  tasks.emplace_back("combined lift M = U", [] {
    const auto c = combined_lift_profile(2, 0, 0);
    const auto f = build_f_lambda(c.lambda, 3);
    const std::vector<PrincipalTerm> fpp{{0, Rat(-1), Rat(1)}, {0, Rat(0), Rat(264)}};
    return std::vector<CaseResult>{
        verdict("M = U weight", c.profile.weight == -4 * 513 * 1023, to_string(c.profile.weight)),
        verdict("M = U divisor",
                c.profile.named.div.normalized() == FormalDivisor(c.node, 513, 513, -32).normalized(),
                c.profile.named.div.str()),
        verdict("M = U f principal part", principal_part(f) == fpp, to_json(principal_part(f), f.df()).dump())};
  });
  tasks.emplace_back("combined lift M = U(2)", [] {
    const auto c = combined_lift_profile(2, 2, 0);
    const auto f = build_f_lambda(c.lambda, 3);
    const auto e11 = f.df().with_q2(2);
    const bool one_e11 = e11.size() == 1;
    std::vector<PrincipalTerm> want{{0, Rat(-1), Rat(1)}};
    if (one_e11) want.push_back({e11[0], frac(-1, 2), Rat(16)});
    const bool pp_ok = one_e11 && negative_terms(principal_part(f)) == want && f[0].coeff(0) == GaussianRational(136);
    return std::vector<CaseResult>{
        verdict("M = U(2) f weight", c.f_profile.weight == 68, to_string(c.f_profile.weight)),
        verdict("M = U(2) f divisor", c.f_profile.named.div == FormalDivisor(c.node, 1, 1, 0, 16),
                c.f_profile.named.div.str()),
        verdict("M = U(2) combined divisor",
                c.profile.named.div.normalized() == FormalDivisor(c.node, 257, 257, -16, 16).normalized(),
                c.profile.named.div.str()),
        verdict("M = U(2) f principal part", pp_ok, to_json(principal_part(f), f.df()).dump())};
  });
  return tasks;
}

std::vector<std::pair<std::string, Task>> balance_tasks() {
  std::vector<std::pair<std::string, Task>> tasks;
  tasks.emplace_back("divisor calculus", [] {
    std::vector<CaseResult> r;
    bool chain_ok = true;
    int links = 0;
    for (int g = 1; g <= 9; ++g) {
      const Node top{11 + g, 11 - g, 1};
      if (!find_lambda(top.r, top.l, top.delta)) continue;
      FormalDivisor d = chi8_divisor(top).div;
      for (int k = 1; find_lambda(top.r - k, top.l - k, 1); ++k, ++links) {
        d = pullback(d);
        chain_ok = chain_ok && d[Sym::d_minus] == pow2(2 * g - 1) && d[Sym::h] == pow2(k) * 16 &&
                   d == chi8_divisor(d.node()).div;
      }
    }
    r.push_back(verdict("pullback a_{g,k} = a_g, b_{g,k} = 2^k b_g", chain_ok && links > 0,
                        std::to_string(links) + " links"));

    std::map<int, int> items;
    for (const Node& n : non_exceptional_nodes()) ++items[chi8_divisor(n).item];
    r.push_back(verdict("divisor table covers items 1-5", items.size() == 5));
    r.push_back(verdict("r = 21 item", chi8_divisor(Node{21, 1, 1}).div == FormalDivisor(Node{21, 1, 1}, pow2(19), 112, 16)));

    bool merge = true;
    for (int l : {2, 4}) {
      const Node n{16, l, 0};
      const auto merged = FormalDivisor(n, pow2(2 * n.g() - 1), 0, pow2(n.k() + 4)).normalized();
      merge = merge && n.g() - 1 == n.k() + 4 && merged == chi8_divisor(n).div.normalized() &&
              merged[Sym::d_minus] == pow2(n.g() - 1) * (pow2(n.g()) + 1);
    }
    r.push_back(verdict("r(M) = 6 merge gives 2^{g-1}(2^g+1) D", merge));

    const bool ups = upsilon_divisor(Node{20, 0, 0}) == FormalDivisor(Node{20, 0, 0}, 2 * (pow2(18) - 1), 2 * (pow2(18) - 1), 32) &&
                     upsilon_divisor(Node{20, 2, 0}) ==
                         FormalDivisor(Node{20, 2, 0}, 2 * (pow2(16) - 1), 2 * (pow2(16) - 1), 16, -16) &&
                     upsilon_divisor(Node{12, 2, 0}) == discriminant_divisor(Node{12, 2, 0}, 2 * 255);
    r.push_back(verdict("Upsilon divisors", ups));
    return r;
  });
  for (const Node& n : non_exceptional_nodes()) {
    tasks.emplace_back(to_string(n), [n] {
      const auto rep = weight_balance_check(n);
      return std::vector<CaseResult>{verdict("balance " + to_string(n), rep.pass(), rep.path + ": " + rep.detail)};
    });
  }
  return tasks;
}

std::vector<std::pair<std::string, Task>> modularity_tasks(double tol) {
  static const std::vector<std::string> names{"U*2+E7", "U+U(2)+E8(2)", "U*2+D4+D8", "U*2+E8*2", "U*2+E8*2+A1"};
  const std::vector<std::complex<double>> taus{{0.1, 1.0}, {-0.3, 0.7}, {0.25, 1.3}};
  std::vector<std::pair<std::string, Task>> tasks;
  for (const auto& name : names) {
    tasks.emplace_back(name, [name, taus, tol] {
      const auto F = build_F_lambda(parse_lattice(name), 200);
      const auto rep = check_modularity(F, taus, tol);
      std::ostringstream os;
      os << "r = " << F.lattice().rank() << ", worst T " << rep.worst_t << ", worst S " << rep.worst_s << ", tail "
         << rep.max_tail;
      if (!rep.detail.empty()) os << "; " << rep.detail;
      return std::vector<CaseResult>{
          verdict("modularity " + name, rep.ok, os.str(), std::max(rep.worst_t, rep.worst_s))};
    });
  }
  return tasks;
}

std::vector<std::pair<std::string, Task>> theta_tasks(std::uint64_t seed) {
  std::vector<std::pair<std::string, Task>> tasks;
  const Precision prec = precision_from_env();
  const std::vector<std::tuple<std::string, int, int>> runs{{"jacobi", 1, 10},      {"symmetric", 1, 5},
                                                            {"symmetric", 2, 5},    {"symmetric", 3, 5},
                                                            {"factorization", 2, 5}, {"factorization", 3, 5},
                                                            {"petersson", 1, 5},    {"petersson", 2, 5}};
  for (const auto& [id, g, n] : runs) {
    tasks.emplace_back(id, [id, g, n, seed, prec] {
      const auto res = theta_identity(id, g, n, seed + static_cast<std::uint64_t>(g), prec);
      return std::vector<CaseResult>{verdict(id + " g=" + std::to_string(g), res.pass,
                                             "max rel err " + std::to_string(res.max_rel_err), res.max_rel_err)};
    });
  }
  tasks.emplace_back("counts and constants", [] {
    std::vector<CaseResult> r;
    bool counts = true;
    const int want[] = {3, 10, 36, 136};
    for (int g = 1; g <= 4; ++g)
      counts = counts && static_cast<int>(even_characteristics(g).size()) == want[g - 1] &&
               even_characteristic_count(g) == want[g - 1];
    r.push_back(verdict("even characteristic counts", counts && even_characteristic_count(10) == 524800));
    const HighReal pi = boost::math::constants::pi<HighReal>();
    const double d1 = static_cast<double>(abs(bosonization_constant(1) * 4 * pi - 1));
    r.push_back(verdict("c_1 = 1/(4 pi)", d1 < 1e-40, "", d1));
    const HighReal glaisher = boost::math::constants::glaisher<HighReal>();
    const HighReal c0 = exp(12 * (HighReal(1) / 12 - log(glaisher)) - HighReal(1) / 2);
    const double d0 = static_cast<double>(abs(bosonization_constant(0) / c0 - 1));
    r.push_back(verdict("c_0 against Glaisher", d0 < 1e-10, "", d0));
    return r;
  });
  return tasks;
}

std::vector<std::pair<std::string, Task>> tasks_for(const std::string& suite, const VerifyOptions& o) {
  if (suite == "table") return table_tasks();
  if (suite == "principal") return principal_tasks(o.order);
  if (suite == "lift") return lift_tasks();
  if (suite == "balance") return balance_tasks();
  if (suite == "modularity") return modularity_tasks(o.tol);
  if (suite == "theta") return theta_tasks(o.seed);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

// ---- theta identities ----

template <class Real>
Cx<Real> eta(const Cx<Real>& tau) {
  using C = Cx<Real>;
  using std::abs;
  using std::exp;
  const Real pi = boost::math::constants::pi<Real>();
  const C q = exp(C(Real(0), 2 * pi) * tau);
  const double stop = std::is_same_v<Real, double> ? 1e-18 : 1e-45;
  C prod(1), qn = q;
  while (static_cast<double>(abs(qn)) > stop) {
    prod *= C(1) - qn;
    qn *= q;
  }
  return exp(C(Real(0), pi / 12) * tau) * prod;
}

template <class Real>
double rel_err(const Cx<Real>& a, const Cx<Real>& b, double floor = 0) {
  using std::abs;
  return static_cast<double>(abs(a - b)) / std::max(static_cast<double>(abs(b)), floor);
}

template <class Real>
SiegelPoint<Real> block_sum(const SiegelPoint<Real>& a, const SiegelPoint<Real>& b) {
  const int n = a.genus() + b.genus();
  std::vector<std::vector<Cx<Real>>> m(n, std::vector<Cx<Real>>(n, Cx<Real>(0)));
  for (int i = 0; i < a.genus(); ++i)
    for (int j = 0; j < a.genus(); ++j) m[i][j] = a(i, j);
  for (int i = 0; i < b.genus(); ++i)
    for (int j = 0; j < b.genus(); ++j) m[a.genus() + i][a.genus() + j] = b(i, j);
  return SiegelPoint<Real>(std::move(m));
}

template <class Real>
double identity_trial(const std::string& id, int g, std::mt19937_64& rng, double tol) {
  using C = Cx<Real>;
  if (id == "jacobi") {
    if (g != 1) throw std::invalid_argument("jacobi identity is genus one");
    std::uniform_real_distribution<double> x(-0.5, 0.5), y(0.5, 1.5);
    const C tau(Real(x(rng)), Real(y(rng)));
    const SiegelPoint<Real> om({{tau}});
    C e = eta<Real>(tau);
    C e24 = e * e * e;      // ^3
    e24 = e24 * e24;        // ^6
    e24 = e24 * e24;        // ^12
    e24 = e24 * e24;        // ^24
    return rel_err<Real>(chi8(om, tol).value, C(Real(256)) * e24);
  }
  if (id == "symmetric") {
    if (g < 1 || g > 3) throw std::invalid_argument("symmetric identity runs for g = 1..3");
    const auto om = random_siegel_point<Real>(g, rng);
    std::vector<C> v;
    for (const auto& t : even_theta8(om, tol)) v.push_back(t.value);
    return rel_err<Real>(upsilon(om, tol).value, elementary_symmetric<Real>(v, v.size() - 1));
  }
  if (id == "factorization") {
    if (g != 2 && g != 3) throw std::invalid_argument("factorization runs for g = 2, 3");
    const auto a = random_siegel_point<Real>(1, rng);
    const auto b = random_siegel_point<Real>(g - 1, rng);
    const auto om = block_sum(a, b);
    double worst = 0;
    for (const auto& ch : even_characteristics(g)) {
      const ThetaChar c1{{ch.a[0]}, {ch.b[0]}};
      const ThetaChar c2{{ch.a.begin() + 1, ch.a.end()}, {ch.b.begin() + 1, ch.b.end()}};
      // Products of two odd constants vanish; measure those against the unit scale.
      worst = std::max(worst, rel_err<Real>(theta_constant(ch, om, tol).value,
                                            theta_constant(c1, a, tol).value * theta_constant(c2, b, tol).value, 1.0));
    }
    return worst;
  }
  if (id == "petersson") {
    if (g != 1 && g != 2) throw std::invalid_argument("petersson invariance runs for g = 1, 2");
    const int w = chi8_weight(g);
    const auto om = random_siegel_point<Real>(g, rng, 0.8);
    const Real base = petersson(chi8(om, tol).value, w, om);
    IntMatrix b(g, g), a = IntMatrix::identity(g);
    b(0, 0) = 1;
    if (g == 2) {
      b(0, 1) = b(1, 0) = -1;
      a(0, 1) = 1;
    }
    double worst = 0;
    for (const auto& im : {act_translate(om, b), act_rotate(om, a), act_invert(om), act_invert(act_translate(om, b))}) {
      const Real p = petersson(chi8(im, tol).value, w, im);
      using std::abs;
      worst = std::max(worst, static_cast<double>(abs(p - base) / base));
    }
    return worst;
  }
  throw std::invalid_argument("unknown identity '" + id + "' (jacobi, symmetric, factorization, petersson)");
}

double identity_bound(const std::string& id) {
  if (id == "jacobi" || id == "factorization") return 1e-10;
  return 1e-8;
}

}  // namespace

IdentityResult theta_identity(const std::string& identity, int g, int trials, std::uint64_t seed, Precision p) {
  IdentityResult res{identity, g, trials, 0, identity_bound(identity), false};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const double e = p == Precision::high ? identity_trial<HighReal>(identity, g, rng, 1e-30)
                                          : identity_trial<double>(identity, g, rng, 1e-15);
    res.max_rel_err = std::max(res.max_rel_err, e);
  }
  res.pass = trials > 0 && res.max_rel_err < res.bound;
  return res;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"table", "principal", "lift", "balance", "modularity", "theta"};
  return n;
}

VerificationReport run_suite(const std::string& suite, const VerifyOptions& opts) {
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = suite;
  std::vector<std::pair<std::string, Task>> tasks;
  if (suite == "all") {
    for (const auto& s : suite_names())
      for (auto& t : tasks_for(s, opts)) tasks.push_back(std::move(t));
  } else {
    tasks = tasks_for(suite, opts);
  }
  rep.cases = run_tasks(tasks, opts.jobs);
  rep.seconds = since(t0);
  return rep;
}

}  // namespace k3
