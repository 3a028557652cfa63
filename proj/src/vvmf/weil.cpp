#include "k3kit/vvmf.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace k3 {

namespace {

using cd = std::complex<double>;

cd e_of(double x) { return std::polar(1.0, 2 * std::numbers::pi * x); }

double sup_norm(const std::vector<cd>& v) {
  double m = 0;
  for (const cd& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

WeilRep::WeilRep(const DiscriminantForm& df, Signature sig, WeilConvention conv) : df_(df) {
  const int d = sig.minus - sig.plus;
  const double sgn = conv == WeilConvention::standard ? 1.0 : -1.0;
  const cd pre = e_of(sgn * d / 8.0) / std::sqrt(static_cast<double>(df_.size()));
  s2_ = e_of(sgn * d / 4.0);
  const auto n = static_cast<Eigen::Index>(df_.size());
  s_.resize(n, n);
  t_.resize(n);
  for (Coset g = 0; g < df_.size(); ++g) {
    t_(g) = e_of(df_.q2(g) / 4.0);
    for (Coset h = 0; h < df_.size(); ++h) s_(g, h) = df_.b2(g, h) ? -pre : pre;
  }
}

cd WeilRep::t_phase(Coset g) const { return t_(g); }

cd WeilRep::s_entry(Coset g, Coset h) const { return s_(g, h); }

std::vector<cd> WeilRep::apply_s(const std::vector<cd>& v) const {
  const Eigen::VectorXcd w = s_ * Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
  return {w.data(), w.data() + w.size()};
}

std::vector<cd> WeilRep::apply_t(const std::vector<cd>& v) const {
  std::vector<cd> out(v.size());
  for (Coset g = 0; g < v.size(); ++g) out[g] = t_(g) * v[g];
  return out;
}

double WeilRep::unitarity_defect() const {
  const auto n = s_.rows();
  return (s_ * s_.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

// -g = g in a 2-elementary group, so S^2 is the scalar s2.
double WeilRep::s_squared_defect() const {
  const auto n = s_.rows();
  return (s_ * s_ - s2_ * Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double WeilRep::braid_defect() const {
  const Eigen::MatrixXcd st = s_ * t_.asDiagonal();
  return (st * st * st - s_ * s_).cwiseAbs().maxCoeff();
}

ModularityReport check_modularity(const VectorValuedForm& f, const std::vector<cd>& taus, double tol,
                                  WeilConvention conv) {
  ModularityReport rep;
  const WeilRep rho(f.df(), signature(f.lattice()), conv);
  std::map<const PuiseuxSeries*, SeriesEvaluator> evals;
  for (Coset g = 0; g < f.size(); ++g) evals.try_emplace(f.component(g).get(), f[g]);

  auto eval_at = [&](cd tau) {
    std::map<const PuiseuxSeries*, cd> cache;
    std::vector<cd> v(f.size());
    for (Coset g = 0; g < f.size(); ++g) {
      const PuiseuxSeries* key = f.component(g).get();
      auto it = cache.find(key);
      if (it == cache.end()) {
        const Evaluation ev = evals.at(key)(tau);
        rep.max_tail = std::max(rep.max_tail, ev.tail);
        it = cache.emplace(key, ev.value).first;
      }
      v[g] = it->second;
    }
    return v;
  };

  const double k = f.weight().get_d();
  for (const cd& tau : taus) {
    if (tau.imag() <= 0) throw std::invalid_argument("sample point must lie in the upper half plane");
    const auto base = eval_at(tau);
    const auto shifted = eval_at(tau + 1.0);
    const auto inverted = eval_at(-1.0 / tau);
    const auto t_rhs = rho.apply_t(base);
    auto s_rhs = rho.apply_s(base);
    const cd factor = std::exp(k * std::log(tau));
    for (cd& z : s_rhs) z *= factor;

    const double nt = std::max(1.0, sup_norm(shifted)), ns = std::max(1.0, sup_norm(inverted));
    for (Coset g = 0; g < f.size(); ++g) {
      const double dt = std::abs(shifted[g] - t_rhs[g]) / nt;
      const double ds = std::abs(inverted[g] - s_rhs[g]) / ns;
      if (dt > rep.worst_t) rep.worst_t = dt;
      if (ds > rep.worst_s) {
        rep.worst_s = ds;
        rep.worst_component = g;
        rep.worst_tau = tau;
      }
    }
  }
  std::ostringstream os;
  if (rep.max_tail >= tol / 10) {
    rep.ok = false;
    os << "truncation too short: tail bound " << rep.max_tail << " >= tol/10";
  } else if (rep.worst_t > tol || rep.worst_s > tol) {
    rep.ok = false;
    os << "modularity violated: T residual " << rep.worst_t << ", S residual " << rep.worst_s << " at component "
       << f.df().bits(rep.worst_component) << ", tau = " << rep.worst_tau;
  } else {
    os << "T residual " << rep.worst_t << ", S residual " << rep.worst_s;
  }
  rep.detail = os.str();
  return rep;
}

}  // namespace k3
