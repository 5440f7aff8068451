#include "toda/opalg.hpp"

#include <limits>

namespace toda {

namespace {

QFieldElem q(const ExponentPoly& e) { return qpow(e); }

QFieldElem q_factorial(int n) {
  QFieldElem out(1);
  for (int k = 1; k <= n; ++k) out *= QFieldElem(1) - q(Rational(k));
  return out;
}

// p_k of the alphabet q^{1/2}, q^{3/2}, ...
QFieldElem alphabet_power_sum(int k) { return q(frac(k, 2)) / (QFieldElem(1) - q(Rational(k))); }

Op shift_coefficients(const Op& op, const Rational& c) {
  Op out(op.step(), op.window());
  for (const auto& [n, v] : op.coeffs()) out.set(n, shift_s(v, c));
  return out;
}

long depth_for(const SessionParams& p) { return static_cast<long>(p.T) * p.refinement(); }

std::string window_text(const Op& op) {
  const Window& w = op.window();
  auto side = [&](const std::optional<long>& v, const char* inf) {
    return v ? op.power_of(*v).get_str() : std::string(inf);
  };
  return "[" + side(w.lo, "-inf") + ", " + side(w.hi, "inf") + "]";
}

}  // namespace

// ------------------------------------------------------------------ params

Rational SessionParams::step() const { return frac(1, sign > 0 ? a + b : std::abs(a - b)); }

long SessionParams::refinement() const { return sign > 0 ? a + b : std::abs(a - b); }

Rational SessionParams::alpha() const { return 1 / (tau() + 1); }

Rational SessionParams::beta() const { return tau() / (tau() + 1); }

void SessionParams::validate() const {
  tau_params().validate();
  if (T < 1) throw std::invalid_argument("truncation T must be at least 1");
}

// ------------------------------------------------------------------ building blocks

ExponentPoly sandwich_exponent(const Rational& weight) { return ExponentPoly(weight / 8, -weight / 2, weight / 2); }

Op q_monomial(const ExponentPoly& e, const Rational& power, const Rational& step) {
  return Op::monomial(q(e), power, step);
}

Op monomial_inverse(const Op& m) {
  if (!m.window().is_exact() || m.coeffs().size() != 1)
    throw std::invalid_argument("monomial_inverse needs an exact single-term operator");
  const auto& [n, c] = *m.coeffs().begin();
  Op out(m.step());
  out.set(-n, coefficient_inverse(shift_s(c, -m.power_of(n))));
  return out;
}

Op monomial_root(const ExponentPoly& e, const Rational& power, int n, const Rational& step) {
  if (n < 1) throw std::invalid_argument("root order must be positive");
  if (sgn(e.c2) != 0) throw std::invalid_argument("monomial_root needs an exponent of degree <= 1");
  const Rational gamma = power / n;
  // sum_{j<n} h(s + j gamma) = e(s) with h = h1 s + h0
  const Rational h1 = e.c1 / n;
  const Rational h0 = (e.c0 - h1 * gamma * n * (n - 1) / 2) / n;
  return q_monomial(ExponentPoly(h0, h1, 0), gamma, step);
}

Op build_W0(const SessionParams& p) {
  p.validate();
  const long m = p.refinement();
  const ExponentPoly E = sandwich_exponent(p.tau() + 1);
  Op W(p.step(), Window{-p.T * m, std::nullopt});
  for (int n = 0; n <= p.T; ++n) {
    QFieldElem c = q(frac(n * n, 2)) / q_factorial(n);
    if (n % 2) c = -c;
    W.set(-n * m, c * q(E - E.shifted(-n)));
  }
  return W;
}

Op build_W0bar(const SessionParams& p) {
  p.validate();
  const long m = p.refinement();
  const ExponentPoly E = sandwich_exponent(p.tau() + 1);
  const ExponentPoly F = sandwich_exponent(1 / p.tau() + 1);
  Op W(p.step(), Window{std::nullopt, p.T * m});
  for (int n = 0; n <= p.T; ++n) W.set(n * m, q(frac(n, 2)) / q_factorial(n) * q(E + F.shifted(n)));
  return W;
}

Op build_W0_by_product(const SessionParams& p) {
  p.validate();
  const long m = p.refinement();
  // Newton: n e_n = sum_k (-1)^{k-1} e_{n-k} p_k
  std::vector<QFieldElem> e{QFieldElem(1)};
  for (int n = 1; n <= p.T; ++n) {
    QFieldElem acc;
    for (int k = 1; k <= n; ++k) {
      QFieldElem t = e[n - k] * alphabet_power_sum(k);
      acc += k % 2 ? t : -t;
    }
    e.push_back(acc * QFieldElem(frac(1, n)));
  }
  Op P(p.step(), Window{-p.T * m, std::nullopt});
  for (int n = 0; n <= p.T; ++n) P.set(-n * m, n % 2 ? -e[n] : e[n]);
  const ExponentPoly E = sandwich_exponent(p.tau() + 1);
  return op_mul(op_mul(q_monomial(E, 0, p.step()), P), q_monomial(-E, 0, p.step()));
}

Op build_W0bar_by_product(const SessionParams& p) {
  p.validate();
  const long m = p.refinement();
  // Newton: n h_n = sum_k p_k h_{n-k}
  std::vector<QFieldElem> h{QFieldElem(1)};
  for (int n = 1; n <= p.T; ++n) {
    QFieldElem acc;
    for (int k = 1; k <= n; ++k) acc += h[n - k] * alphabet_power_sum(k);
    h.push_back(acc * QFieldElem(frac(1, n)));
  }
  Op Q(p.step(), Window{std::nullopt, p.T * m});
  for (int n = 0; n <= p.T; ++n) Q.set(n * m, h[n]);
  const ExponentPoly E = sandwich_exponent(p.tau() + 1);
  const ExponentPoly F = sandwich_exponent(1 / p.tau() + 1);
  return op_mul(op_mul(q_monomial(E, 0, p.step()), Q), q_monomial(F, 0, p.step()));
}

// ------------------------------------------------------------------ Lax and Orlov-Schulman

LaxPair lax_from_dressing(const SessionParams& p, const Op& W, const Op& Wbar) {
  const Rational st = p.step();
  const long depth = depth_for(p);
  LaxPair out;
  out.Lfrac = op_mul(op_mul(W, Op::monomial(1, p.alpha(), st)), op_inverse(W, Direction::Lower, depth));
  out.Lbarfrac = op_mul(op_mul(Wbar, Op::monomial(1, -p.beta(), st)), op_inverse(Wbar, Direction::Upper, depth));
  return out;
}

LaxPair initial_lax(const SessionParams& p) {
  if (p.T < 2) throw std::invalid_argument("initial_lax needs T >= 2");
  return lax_from_dressing(p, build_W0(p), build_W0bar(p));
}

OrlovSchulman orlov_schulman_from_dressing(const SessionParams& p, const Op& W, const Op& Wbar) {
  const Op qs = q_monomial(ExponentPoly::s(), 0, p.step());
  const long depth = depth_for(p);
  OrlovSchulman out;
  out.qM = op_mul(op_mul(W, qs), op_inverse(W, Direction::Lower, depth));
  out.qMbar = op_mul(op_mul(Wbar, qs), op_inverse(Wbar, Direction::Upper, depth));
  return out;
}

OrlovSchulman initial_M(const SessionParams& p) {
  if (p.T < 2) throw std::invalid_argument("initial_M needs T >= 2");
  return orlov_schulman_from_dressing(p, build_W0(p), build_W0bar(p));
}

Op expected_Lfrac(const SessionParams& p) {
  const Rational tau = p.tau(), st = p.step();
  return Op::monomial(1, p.alpha(), st) -
         q_monomial(ExponentPoly(-tau - frac(1, 2), tau + 1, 0), p.alpha() - 1, st);
}

Op expected_qM0(const SessionParams& p) {
  const Rational tau = p.tau(), st = p.step();
  return q_monomial(ExponentPoly::s(), 0, st) - q_monomial(ExponentPoly(-tau - frac(3, 2), tau + 2, 0), -1, st);
}

Op expected_qM0bar(const SessionParams& p) {
  const Rational tau = p.tau(), st = p.step();
  return q_monomial(ExponentPoly::s(), 0, st) - q_monomial(ExponentPoly(frac(1, 2), -tau, 0), 1, st);
}

// ------------------------------------------------------------------ reports

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const RelationCheck* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

RelationCheck compare_ops(const std::string& name, const Op& lhs, const Op& rhs) {
  RelationCheck out;
  out.name = name;
  const Op diff = lhs - rhs;
  const Window& w = diff.window();
  out.detail = "window " + window_text(diff);
  if (w.is_empty()) {
    out.detail += " is empty";
    return out;
  }
  std::map<long, int> support;
  for (const Op* op : {&lhs, &rhs}) {
    Op r = op->refined(diff.step());
    for (const auto& [n, c] : r.coeffs()) {
      if (w.contains(n)) {
        support[n];
      } else if (op == &rhs) {
        out.detail += "; expected term at power " + diff.power_of(n).get_str() + " lies outside the window";
        out.first_offending = diff.power_of(n);
        return out;
      }
    }
  }
  out.pass = true;
  for (const auto& [n, unused] : support) {
    QFieldElem v = diff.at(n);
    out.residuals.push_back({diff.power_of(n), v.is_zero() ? "0" : v.to_string()});
    if (!v.is_zero() && out.pass) {
      out.pass = false;
      out.first_offending = diff.power_of(n);
    }
  }
  return out;
}

void require(const Report& r) {
  for (const auto& c : r.checks) {
    if (c.pass) continue;
    std::string msg = c.name + " failed";
    if (c.first_offending) msg += " at Lambda^(" + c.first_offending->get_str() + ")";
    throw RelationViolated(msg + " (" + c.detail + ")");
  }
}

// ------------------------------------------------------------------ initial-time relations

Report check_initial_relations(const SessionParams& p, const Op& W, const Op& Wbar) {
  if (p.T < 2) throw std::invalid_argument("relations need T >= 2");
  const LaxPair lax = lax_from_dressing(p, W, Wbar);
  const OrlovSchulman os = orlov_schulman_from_dressing(p, W, Wbar);
  Report r;
  r.checks.push_back(compare_ops("L0Lbar0-rel", lax.Lfrac + lax.Lbarfrac, Op(p.step())));
  r.checks.push_back(compare_ops("L0-closed-form", lax.Lfrac, expected_Lfrac(p)));
  r.checks.push_back(compare_ops("L0M0", os.qM, expected_qM0(p)));
  r.checks.push_back(compare_ops("Lbar0Mbar0", os.qMbar, expected_qM0bar(p)));
  return r;
}

Report check_initial_relations(const SessionParams& p) {
  return check_initial_relations(p, build_W0(p), build_W0bar(p));
}

Report check_LM_relation(const SessionParams& p, const Op& W, const Op& Wbar) {
  if (p.T < 2) throw std::invalid_argument("relations need T >= 2");
  const Rational tau = p.tau(), st = p.step();
  const long depth = depth_for(p);
  const LaxPair lax = lax_from_dressing(p, W, Wbar);
  const OrlovSchulman os = orlov_schulman_from_dressing(p, W, Wbar);

  const Op X = q_monomial(-ExponentPoly::s(), p.alpha(), st);
  const Op Xbar = q_monomial(ExponentPoly(-tau - frac(1, 2), tau, 0), -p.beta(), st);
  Report r;
  r.checks.push_back(
      compare_ops("L0M0-monomial", op_mul(op_inverse(os.qM, Direction::Lower, depth), lax.Lfrac), X));
  r.checks.push_back(
      compare_ops("Lbar0Mbar0-monomial", op_mul(op_inverse(os.qMbar, Direction::Upper, depth), lax.Lbarfrac), Xbar));

  // X^{-tau} as an integer power of the a-th root of X.
  const Op Y = monomial_root(-ExponentPoly::s(), p.alpha(), p.a, st);
  RelationCheck root = compare_ops("root", op_pow(Y, p.a), X);
  const Op lhs = p.sign > 0 ? op_pow(monomial_inverse(Y), p.b) : op_pow(Y, p.b);
  const Op rhs = q(ExponentPoly(Rational(frac(1, 2) * (tau + 1)))) * Xbar;
  RelationCheck lm = compare_ops("LM-rel", lhs, rhs);
  if (!root.pass) {
    lm.pass = false;
    lm.detail += "; root of q^{-s} Lambda^alpha is wrong";
  }
  for (const auto& c : r.checks) {
    if (!c.pass && lm.pass) {
      lm.pass = false;
      lm.first_offending = c.first_offending;
      lm.detail += "; depends on " + c.name;
    }
  }
  r.checks.push_back(std::move(lm));
  return r;
}

Report check_LM_relation(const SessionParams& p) { return check_LM_relation(p, build_W0(p), build_W0bar(p)); }

// ------------------------------------------------------------------ tau side

namespace {

// S_nu at p_k = -1 for all k, and d/dp_1 there.
std::pair<Rational, Rational> miwa_values(const PowerSumPoly& f) {
  Rational value, deriv;
  for (const auto& [mono, c] : f.terms()) {
    int total = 0;
    for (int e : mono) total += e;
    const Rational sign = total % 2 ? -1 : 1;
    value += c * sign;
    const int e1 = mono.empty() ? 0 : mono[0];
    if (e1 > 0) deriv += c * e1 * -sign;
  }
  return {value, deriv};
}

}  // namespace

TauDressing dressing_from_tau(const TauTable& table, const SessionParams& p, int order) {
  if (order < 0) throw std::invalid_argument("order must be non-negative");
  if (table.params.a != p.a || table.params.b != p.b || table.params.sign != p.sign)
    throw std::invalid_argument("tau table parameters differ from the session");
  if (table.max_deg < order + 1)
    throw TruncationInsufficient("tau degree " + std::to_string(table.max_deg) + " cannot resolve order " +
                                 std::to_string(order) + "; need at least " + std::to_string(order + 1));
  SchurContext ctx(order + 1);
  std::map<Partition, std::pair<Rational, Rational>> miwa;
  for (const auto& nu : enumerate(order + 1)) miwa.emplace(nu, miwa_values(ctx.schur(nu)));

  auto P = [&](const Partition& nu, const Partition& mu) { return table.plain_coefficient(nu, mu); };
  auto Pm1 = [&](const Partition& nu, const Partition& mu) { return shift_s(P(nu, mu), -1); };

  const QFieldElem D0 = Pm1({}, {});
  const QFieldElem D1 = Pm1({1}, {});
  const QFieldElem D0inv = D0.inverse();
  const CubicExponent g = table.global, gm = table.global.shifted(-1);
  const QFieldElem R = q(ExponentPoly(g.c0 - gm.c0, g.c1 - gm.c1, g.c2 - gm.c2));

  const long m = p.refinement();
  TauDressing out;
  out.order = order;
  out.W = Op(p.step(), Window{-order * m, std::nullopt});
  out.dW = out.W;
  out.Wbar = Op(p.step(), Window{std::nullopt, order * m});
  out.dWbar = out.Wbar;
  for (int n = 0; n <= order; ++n) {
    QFieldElem N, dN, Nbar, dNbar;
    for (const auto& nu : partitions_of(n)) {
      const Rational& A = miwa.at(nu).first;
      if (sgn(A) == 0) continue;
      N += Pm1(nu, {}) * QFieldElem(A);
      Nbar += P({}, nu) * QFieldElem(A);
      dNbar += P({1}, nu) * QFieldElem(A);
    }
    for (const auto& nu : partitions_of(n + 1)) {
      const Rational& B = miwa.at(nu).second;
      if (sgn(B) != 0) dN += Pm1(nu, {}) * QFieldElem(B);
    }
    const QFieldElem w = N * D0inv;
    const QFieldElem wb = R * Nbar * D0inv;
    out.W.set(-n * m, w);
    out.dW.set(-n * m, (dN - w * D1) * D0inv);
    out.Wbar.set(n * m, wb);
    out.dWbar.set(n * m, (R * dNbar - wb * D1) * D0inv);
  }
  return out;
}

Report cross_check_initial(const SessionParams& p, int tau_degree, int order) {
  p.validate();
  if (order > p.T) throw TruncationInsufficient("order exceeds the truncation T");
  VertexEngine engine(2 * std::max(tau_degree, 0));
  const TauTable table = tau_table(p.tau_params(), p.shift, tau_degree, engine);
  const TauDressing d = dressing_from_tau(table, p, order);

  Report r;
  // closed forms cut to the window the tau quotient resolves
  Op W0 = shift_coefficients(build_W0(p), p.shift);
  Op W0bar = shift_coefficients(build_W0bar(p), p.shift);
  W0.set_window(intersect(W0.window(), d.W.window()));
  W0bar.set_window(intersect(W0bar.window(), d.Wbar.window()));
  r.checks.push_back(compare_ops("tau-W", d.W, W0));
  const QFieldElem gauge = d.Wbar.at(0) / W0bar.at(0);
  RelationCheck wb = compare_ops("tau-Wbar", d.Wbar, gauge * W0bar);
  wb.detail += "; diagonal gauge " + gauge.to_string();
  r.checks.push_back(std::move(wb));

  const LaxPair lax = lax_from_dressing(p, d.W, d.Wbar);
  r.checks.push_back(compare_ops("tau-L0Lbar0-rel", lax.Lfrac + lax.Lbarfrac, Op(p.step())));

  const Op Winv = op_inverse(d.W, Direction::Lower, depth_for(p));
  const Op L = op_mul(op_mul(d.W, Op::monomial(1, 1, p.step())), Winv);
  const Op B1 = L.nonnegative_part();
  r.checks.push_back(compare_ops("t1-Lax", commutator(op_mul(d.dW, Winv), L), commutator(B1, L)));
  r.checks.push_back(compare_ops("t1-Wbar-flow", d.dWbar, op_mul(B1, d.Wbar)));

  if (tau_degree - 1 >= order + 1) {
    const TauTable lower = tau_table(p.tau_params(), p.shift, tau_degree - 1, engine);
    const TauDressing d2 = dressing_from_tau(lower, p, order);
    RelationCheck st = compare_ops("stability", d.W, d2.W);
    for (auto [a, b] : {std::pair{&d.Wbar, &d2.Wbar}, {&d.dW, &d2.dW}, {&d.dWbar, &d2.dWbar}}) {
      RelationCheck c = compare_ops("stability", *a, *b);
      st.residuals.insert(st.residuals.end(), c.residuals.begin(), c.residuals.end());
      if (!c.pass && st.pass) {
        st.pass = false;
        st.first_offending = c.first_offending;
      }
    }
    st.detail += "; tau degrees " + std::to_string(tau_degree) + " and " + std::to_string(tau_degree - 1);
    r.checks.push_back(std::move(st));
  }
  return r;
}

Report laxcheck(const SessionParams& p, int tau_degree) {
  p.validate();
  Report r = check_initial_relations(p);
  r.append(check_LM_relation(p));
  const int order = std::min({3, tau_degree - 1, p.T});
  r.append(cross_check_initial(p, tau_degree, order));
  return r;
}

}  // namespace toda
