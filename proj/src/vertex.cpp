#include "toda/vertex.hpp"

#include <numeric>
#include <sstream>

namespace toda {

namespace {

QFieldElem sign_of(int weight) { return weight % 2 ? QFieldElem(-1) : QFieldElem(1); }

}  // namespace

VertexEngine::VertexEngine(int degree_bound)
    : ctx_(degree_bound), rho_(rho_point(degree_bound)), neg_rho_(neg_rho_point(degree_bound)) {}

void VertexEngine::check(int weight) const {
  if (weight > degree_bound())
    throw DegreeBoundExceeded("weight " + std::to_string(weight) + " exceeds degree bound " +
                              std::to_string(degree_bound()));
}

const QFieldElem& VertexEngine::skew_at(std::map<PartitionPair, QFieldElem>& cache, const Specialization& sp,
                                        const Partition& lam, const Partition& eta) {
  auto key = PartitionPair{lam, eta};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  QFieldElem v = evaluate(ctx_.skew_schur(lam, eta), sp);
  return cache.emplace(std::move(key), std::move(v)).first->second;
}

const QFieldElem& VertexEngine::skew_at_rho(const Partition& lam, const Partition& eta) {
  return skew_at(rho_cache_, rho_, lam, eta);
}

const QFieldElem& VertexEngine::skew_at_neg_rho(const Partition& lam, const Partition& eta) {
  return skew_at(neg_rho_cache_, neg_rho_, lam, eta);
}

QFieldElem VertexEngine::schur_at_nu_rho(const Partition& lam, const Partition& nu) {
  auto it = nu_rho_points_.find(nu);
  if (it == nu_rho_points_.end()) it = nu_rho_points_.emplace(nu, nu_rho_point(nu, degree_bound())).first;
  return evaluate(ctx_.schur(lam), it->second);
}

QFieldElem VertexEngine::vertex_def(const Partition& nu, const Partition& nubar) {
  check(nu.weight() + nubar.weight());
  return skew_at_rho(nu, {}) * schur_at_nu_rho(nubar, nu);
}

QFieldElem VertexEngine::vertex_hook(const Partition& nu, const Partition& nubar) {
  check(nu.weight() + nubar.weight());
  const Partition c = conjugate(nu), cb = conjugate(nubar);
  QFieldElem sum;
  for (const auto& eta : common_subpartitions(c, cb)) sum += skew_at_rho(c, eta) * skew_at_rho(cb, eta);
  return qpow(ExponentPoly(frac(kappa(nu) + kappa(nubar), 2))) * sum;
}

const QFieldElem& VertexEngine::gamma_matrix_element(const Partition& nu, const Partition& nubar) {
  check(nu.weight() + nubar.weight());
  auto key = PartitionPair{nu, nubar};
  auto it = gamma_cache_.find(key);
  if (it != gamma_cache_.end()) return it->second;
  QFieldElem sum;
  for (const auto& eta : common_subpartitions(nu, nubar))
    sum += skew_at_neg_rho(nu, eta) * skew_at_neg_rho(nubar, eta);
  return gamma_cache_.emplace(std::move(key), std::move(sum)).first->second;
}

QFieldElem VertexEngine::vertex_fermionic(const Partition& nu, const Partition& nubar) {
  return sign_of(nu.weight() + nubar.weight()) * qpow(ExponentPoly(frac(kappa(nu) + kappa(nubar), 2))) *
         gamma_matrix_element(nu, nubar);
}

QFieldElem vertex_def(const Partition& nu, const Partition& nubar) {
  VertexEngine e(nu.weight() + nubar.weight());
  return e.vertex_def(nu, nubar);
}

QFieldElem vertex_hook(const Partition& nu, const Partition& nubar) {
  VertexEngine e(nu.weight() + nubar.weight());
  return e.vertex_hook(nu, nubar);
}

QFieldElem gamma_matrix_element(const Partition& nu, const Partition& nubar) {
  VertexEngine e(nu.weight() + nubar.weight());
  return e.gamma_matrix_element(nu, nubar);
}

// ------------------------------------------------------------------- R bullet

QFieldElem RBullet::coefficient(const Monomial& m, const Monomial& mbar) const {
  SchurContext ctx(max_deg);
  QFieldElem out;
  const int d = weighted_degree(m), dbar = weighted_degree(mbar);
  for (const auto& [key, value] : entries) {
    const auto& [nu, nubar] = key;
    if (nu.weight() != d || nubar.weight() != dbar) continue;
    Rational c = ctx.schur(nu).coefficient(m) * ctx.schur(nubar).coefficient(mbar);
    if (sgn(c) != 0) out += value * QFieldElem(c);
  }
  return out;
}

RBullet R_bullet(const Rational& tau, int max_deg) {
  if (sgn(tau) == 0) throw InvalidTau("tau must be nonzero");
  RBullet out{tau, max_deg, {}};
  VertexEngine engine(2 * max_deg);
  for (const auto& nu : enumerate(max_deg))
    for (const auto& nubar : enumerate(max_deg)) {
      Rational e = (kappa(nu) * tau + kappa(nubar) / tau) / 2;
      out.entries.emplace(PartitionPair{nu, nubar}, qpow(ExponentPoly(e)) * engine.vertex_def(nu, nubar));
    }
  return out;
}

// ------------------------------------------------------------------- tau table

CubicExponent CubicExponent::shifted(const Rational& beta) const {
  // c3 (s+b)^3 + c2 (s+b)^2 + c1 (s+b) + c0
  CubicExponent out;
  out.c3 = c3;
  out.c2 = c2 + 3 * c3 * beta;
  out.c1 = c1 + 2 * c2 * beta + 3 * c3 * beta * beta;
  out.c0 = c0 + c1 * beta + c2 * beta * beta + c3 * beta * beta * beta;
  return out;
}

std::string CubicExponent::to_string() const {
  std::ostringstream os;
  os << c3.get_str() << " s^3 + " << c2.get_str() << " s^2 + " << c1.get_str() << " s + " << c0.get_str();
  return os.str();
}

void TauParams::validate() const {
  if (a < 1 || b < 1) throw std::invalid_argument("a and b must be positive integers");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (std::gcd(a, b) != 1) throw NonCoprime("a and b must be coprime");
  if (sign == -1 && a == b) throw InvalidTau("tau = -1 is excluded");
}

QFieldElem TauTable::coefficient(const Partition& nu, const Partition& nubar) const {
  auto it = entries.find({nu, nubar});
  if (it == entries.end()) return {};
  return qpow(it->second.exponent) * it->second.gamma;
}

QFieldElem TauTable::plain_coefficient(const Partition& nu, const Partition& mu) const {
  return sign_of(mu.weight()) * coefficient(nu, conjugate(mu));
}

TauTable tau_table(const TauParams& params, const Rational& shift, int max_deg, VertexEngine& engine) {
  params.validate();
  if (max_deg < 0) throw std::invalid_argument("tau degree must be non-negative");
  if (engine.degree_bound() < 2 * max_deg) throw DegreeBoundExceeded("vertex engine too small for tau table");
  const Rational tau = params.tau();
  const Rational wa = tau + 1, wb = 1 / tau + 1;
  const Rational& c = shift;
  TauTable out;
  out.params = params;
  out.shift = shift;
  out.max_deg = max_deg;
  // Scalar parts of <s| K/2 + c L_0 + (c^2-c) J_0/2 |s> plus (4c^3-c)/24, times tau + 1/tau + 2.
  const Rational w = wa + wb;
  out.global.c3 = w * frac(4, 24);
  out.global.c2 = w * c / 2;
  out.global.c1 = w * (frac(-1, 24) + c / 2 + (c * c - c) / 2);
  out.global.c0 = w * (4 * c * c * c - c) / 24;
  const auto parts = enumerate(max_deg);
  for (const auto& nu : parts) {
    for (const auto& nubar : parts) {
      // nu-dependent parts of the same matrix elements
      ExponentPoly e;
      e.c1 = wa * nu.weight() + wb * nubar.weight();
      e.c0 = wa * (frac(kappa(nu), 2) + c * nu.weight()) + wb * (frac(kappa(nubar), 2) + c * nubar.weight());
      out.entries.emplace(PartitionPair{nu, nubar}, TauTable::Entry{e, engine.gamma_matrix_element(nu, nubar)});
    }
  }
  return out;
}

TauTable tau_table(const TauParams& params, const Rational& shift, int max_deg) {
  VertexEngine engine(2 * std::max(max_deg, 0));
  return tau_table(params, shift, max_deg, engine);
}

}  // namespace toda
