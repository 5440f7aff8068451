#include "toda/schur.hpp"

#include <sstream>

namespace toda {

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

void add_term(std::map<Monomial, Rational>& terms, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

}  // namespace

int weighted_degree(const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(i + 1) * m[i];
  return d;
}

PowerSumPoly::PowerSumPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

PowerSumPoly PowerSumPoly::generator(int k) {
  Monomial m(static_cast<std::size_t>(k), 0);
  m[k - 1] = 1;
  return term(std::move(m), 1);
}

PowerSumPoly PowerSumPoly::term(Monomial m, const Rational& c) {
  PowerSumPoly out;
  trim(m);
  if (sgn(c) != 0) out.terms_.emplace(std::move(m), c);
  return out;
}

Rational PowerSumPoly::coefficient(const Monomial& m) const {
  Monomial key = m;
  trim(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

int PowerSumPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, weighted_degree(m));
  return d;
}

bool PowerSumPoly::is_homogeneous(int degree) const {
  for (const auto& [m, c] : terms_)
    if (weighted_degree(m) != degree) return false;
  return true;
}

PowerSumPoly PowerSumPoly::operator-() const {
  PowerSumPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

PowerSumPoly& PowerSumPoly::operator+=(const PowerSumPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
  return *this;
}

PowerSumPoly& PowerSumPoly::operator-=(const PowerSumPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, -c);
  return *this;
}

PowerSumPoly operator*(const PowerSumPoly& a, const PowerSumPoly& b) {
  PowerSumPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) add_term(out.terms_, mul(ma, mb), ca * cb);
  return out;
}

PowerSumPoly operator*(PowerSumPoly a, const Rational& c) {
  if (sgn(c) == 0) return {};
  for (auto& [m, v] : a.terms_) v *= c;
  return a;
}

PowerSumPoly PowerSumPoly::divide_exact(const PowerSumPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  PowerSumPoly q, r = *this;
  const auto& [dm, dc] = *d.terms_.rbegin();
  while (!r.is_zero()) {
    const auto& [rm, rc] = *r.terms_.rbegin();
    if (rm.size() < dm.size()) throw std::domain_error("inexact polynomial division");
    Monomial m(rm.size(), 0);
    for (std::size_t i = 0; i < rm.size(); ++i) {
      m[i] = rm[i] - (i < dm.size() ? dm[i] : 0);
      if (m[i] < 0) throw std::domain_error("inexact polynomial division");
    }
    PowerSumPoly t = term(std::move(m), rc / dc);
    q += t;
    r -= t * d;
  }
  return q;
}

std::string PowerSumPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    os << Rational(abs(c)).get_str();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << "*p" << i + 1;
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

PowerSumPoly negate_p(const PowerSumPoly& f) {
  PowerSumPoly out;
  for (const auto& [m, c] : f.terms()) {
    int total = 0;
    for (int e : m) total += e;
    out += PowerSumPoly::term(m, total % 2 ? Rational(-c) : c);
  }
  return out;
}

PowerSumPoly to_time_variables(const PowerSumPoly& f) {
  PowerSumPoly out;
  for (const auto& [m, c] : f.terms()) {
    Rational v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) v *= static_cast<long>(i + 1);
    out += PowerSumPoly::term(m, v);
  }
  return out;
}

QFieldElem evaluate(const PowerSumPoly& f, const Specialization& sp) {
  std::vector<std::vector<QFieldElem>> powers(sp.values.size());
  auto power = [&](std::size_t k, int e) -> const QFieldElem& {
    auto& pw = powers[k];
    if (pw.empty()) pw.emplace_back(1);
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * sp.values[k]);
    return pw[static_cast<std::size_t>(e)];
  };
  QFieldElem out;
  for (const auto& [m, c] : f.terms()) {
    if (m.size() > sp.values.size()) throw DegreeBoundExceeded("specialization does not cover p" + std::to_string(m.size()));
    QFieldElem t(c);
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] > 0) t *= power(k, m[k]);
    out += t;
  }
  return out;
}

// ------------------------------------------------------------------ determinants

PowerSumPoly bareiss_determinant(std::vector<std::vector<PowerSumPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return PowerSumPoly(1);
  bool negate = false;
  PowerSumPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return {};
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divide_exact(prev);
      m[i][k] = PowerSumPoly();
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

SchurContext::SchurContext(int degree_bound) : bound_(degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be non-negative");
}

const PowerSumPoly& SchurContext::complete_homogeneous(int m) {
  static const PowerSumPoly zero;
  if (m < 0) return zero;
  while (static_cast<int>(h_.size()) <= m) {
    const int w = static_cast<int>(h_.size());
    PowerSumPoly s;
    for (const auto& lam : partitions_of(w))
      s += PowerSumPoly::term(lam.cycle_type(), Rational(1) / Rational(z_factor(lam)));
    h_.push_back(std::move(s));
  }
  return h_[static_cast<std::size_t>(m)];
}

void SchurContext::check(const Partition& mu) const {
  if (mu.weight() > bound_)
    throw DegreeBoundExceeded("|" + mu.to_string() + "| exceeds degree bound " + std::to_string(bound_));
}

PowerSumPoly SchurContext::schur(const Partition& mu, int n) { return skew_schur(mu, Partition(), n); }

PowerSumPoly SchurContext::skew_schur(const Partition& mu, const Partition& nu, int n) {
  check(mu);
  if (!nu.contained_in(mu)) return {};
  if (n < 0) n = mu.length();
  if (n < mu.length()) throw std::invalid_argument("determinant size below the partition length");
  std::vector<std::vector<PowerSumPoly>> m(static_cast<std::size_t>(n), std::vector<PowerSumPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = complete_homogeneous(mu[i] - nu[j] - i + j);
  return bareiss_determinant(std::move(m));
}

PowerSumPoly complete_homogeneous(int m, int degree_bound) {
  if (m > degree_bound) throw DegreeBoundExceeded("S_" + std::to_string(m) + " exceeds degree bound");
  SchurContext ctx(degree_bound);
  return ctx.complete_homogeneous(m);
}

PowerSumPoly schur(const Partition& mu, int degree_bound) {
  SchurContext ctx(degree_bound);
  return ctx.schur(mu);
}

PowerSumPoly skew_schur(const Partition& mu, const Partition& nu, int degree_bound) {
  SchurContext ctx(degree_bound);
  return ctx.skew_schur(mu, nu);
}

// ------------------------------------------------------------- special points

namespace {

QFieldElem qmono(const Rational& e) { return qpow(ExponentPoly(e)); }

QFieldElem one_minus(const Rational& e) { return QFieldElem(1) - qmono(e); }

}  // namespace

QFieldElem specialize_rho(int k) {
  if (k < 1) throw std::invalid_argument("power-sum index must be positive");
  return QFieldElem(1) / (qmono(frac(k, 2)) - qmono(frac(-k, 2)));
}

QFieldElem specialize_nu_rho(const Partition& nu, int k) {
  if (k < 1) throw std::invalid_argument("power-sum index must be positive");
  const int l = nu.length();
  QFieldElem out;
  for (int i = 1; i <= l; ++i) out += qmono(k * (Rational(nu[i - 1] - i) + frac(1, 2)));
  out += qmono(k * (frac(1, 2) - (l + 1))) / one_minus(-k);
  return out;
}

QFieldElem specialize_neg_rho(int k) { return -specialize_rho(k); }

QFieldElem specialize_neg_nu_rho(const Partition& nu, int k) {
  if (k < 1) throw std::invalid_argument("power-sum index must be positive");
  const int l = nu.length();
  QFieldElem out;
  for (int i = 1; i <= l; ++i) out += qmono(-k * (Rational(nu[i - 1] - i) + frac(1, 2)));
  out += qmono(k * (l + frac(1, 2))) / one_minus(k);
  return out;
}

Specialization rho_point(int degree_bound) {
  Specialization sp;
  for (int k = 1; k <= degree_bound; ++k) sp.values.push_back(specialize_rho(k));
  return sp;
}

Specialization nu_rho_point(const Partition& nu, int degree_bound) {
  Specialization sp;
  for (int k = 1; k <= degree_bound; ++k) sp.values.push_back(specialize_nu_rho(nu, k));
  return sp;
}

Specialization neg_rho_point(int degree_bound) {
  Specialization sp;
  for (int k = 1; k <= degree_bound; ++k) sp.values.push_back(specialize_neg_rho(k));
  return sp;
}

}  // namespace toda
