#include "toda/identities.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace toda {

namespace {

RelationCheck passed(std::string name, std::string detail) {
  RelationCheck c;
  c.name = std::move(name);
  c.pass = true;
  c.detail = std::move(detail);
  return c;
}

template <class T>
bool record(RelationCheck& c, const T& lhs, const T& rhs, const std::string& where) {
  if (lhs == rhs) return true;
  c.pass = false;
  c.detail = where + ": lhs = " + lhs.to_string() + ", rhs = " + rhs.to_string();
  return false;
}

std::string pair_label(const Partition& nu, const Partition& nb) {
  return "nu=" + nu.to_string() + " nubar=" + nb.to_string();
}

Rational sign_of(int weight) { return weight % 2 ? Rational(-1) : Rational(1); }

void require_weight(int w, const char* what) {
  if (w < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

}  // namespace

RelationCheck check_vertex_expressions(int weight) {
  require_weight(weight, "vertex weight");
  VertexEngine e(weight);
  long n = 0;
  RelationCheck c = passed("vertex-def-hook", "");
  for (const auto& nu : enumerate(weight))
    for (const auto& nb : enumerate(weight - nu.weight())) {
      ++n;
      if (!record(c, e.vertex_def(nu, nb), e.vertex_hook(nu, nb), pair_label(nu, nb))) return c;
    }
  c.detail = std::to_string(n) + " pairs";
  return c;
}

RelationCheck check_vertex_transposition(int weight) {
  require_weight(weight, "symmetry weight");
  VertexEngine e(weight);
  RelationCheck c = passed("vertex-transposition", "");
  long n = 0;
  for (const auto& nu : enumerate(weight))
    for (const auto& nb : enumerate(weight - nu.weight())) {
      ++n;
      if (!record(c, e.vertex_def(nu, nb), e.vertex_def(nb, nu), pair_label(nu, nb))) return c;
    }
  c.detail = std::to_string(n) + " pairs";
  return c;
}

RelationCheck check_vertex_inversion(int weight, bool flip_sign) {
  require_weight(weight, "symmetry weight");
  VertexEngine e(weight);
  RelationCheck c = passed("vertex-q-inversion", "");
  long n = 0;
  for (const auto& nu : enumerate(weight))
    for (const auto& nb : enumerate(weight - nu.weight())) {
      ++n;
      QFieldElem flipped = e.vertex_def(conjugate(nu), conjugate(nb)).inverted_q();
      if (!flip_sign) flipped = QFieldElem(sign_of(nu.weight() + nb.weight())) * flipped;
      if (!record(c, e.vertex_def(nu, nb), flipped, pair_label(nu, nb))) return c;
    }
  c.detail = std::to_string(n) + " pairs";
  return c;
}

RelationCheck check_schur_negation(int weight) {
  require_weight(weight, "schur weight");
  SchurContext ctx(weight);
  RelationCheck c = passed("schur-negation", "");
  for (const auto& mu : enumerate(weight))
    if (!record(c, negate_p(ctx.schur(mu)), ctx.schur(conjugate(mu)) * sign_of(mu.weight()), "mu=" + mu.to_string()))
      return c;
  c.detail = "|mu| <= " + std::to_string(weight);
  return c;
}

RelationCheck check_skew_negation(int weight) {
  require_weight(weight, "schur weight");
  SchurContext ctx(weight);
  RelationCheck c = passed("skew-schur-negation", "");
  for (const auto& mu : enumerate(weight))
    for (const auto& nu : enumerate(weight)) {
      auto lhs = negate_p(ctx.skew_schur(mu, nu));
      auto rhs = ctx.skew_schur(conjugate(mu), conjugate(nu)) * sign_of(mu.weight() + nu.weight());
      if (!record(c, lhs, rhs, "mu=" + mu.to_string() + " nu=" + nu.to_string())) return c;
    }
  c.detail = "|mu|, |nu| <= " + std::to_string(weight);
  return c;
}

RelationCheck check_schur_structure(int weight) {
  require_weight(weight, "schur weight");
  SchurContext ctx(weight);
  RelationCheck c = passed("schur-structure", "");
  for (const auto& mu : enumerate(weight)) {
    const std::string at = "mu=" + mu.to_string();
    auto s = ctx.schur(mu);
    if (!record(c, s, ctx.schur(mu, mu.length() + 2), at + " determinant size")) return c;
    if (!record(c, ctx.skew_schur(mu, {}), s, at + " empty skew")) return c;
    if (!s.is_homogeneous(mu.weight())) {
      c.pass = false;
      c.detail = at + ": not homogeneous: " + s.to_string();
      return c;
    }
  }
  c.detail = "size independence, homogeneity, S_{mu/0} = S_mu";
  return c;
}

RelationCheck check_special_points(int weight, int kmax) {
  require_weight(weight, "special point weight");
  RelationCheck c = passed("special-points", "");
  for (const auto& nu : enumerate(weight))
    for (int k = 1; k <= kmax; ++k)
      if (!record(c, specialize_nu_rho(nu, k), -specialize_neg_nu_rho(conjugate(nu), k),
                  "nu=" + nu.to_string() + " k=" + std::to_string(k)))
        return c;
  c.detail = "p_k(q^{nu+rho}) = -p_k(q^{-nu'-rho})";
  return c;
}

RelationCheck check_tau_exponents(const TauParams& p, int degree) {
  auto t = tau_table(p, 0, degree);
  const Rational a = p.tau() + 1, b = 1 / p.tau() + 1;
  const std::string tag = "tau-exponents(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," +
                          (p.sign > 0 ? "+" : "-") + ")";
  RelationCheck c = passed(tag, "");
  CubicExponent g;
  g.c3 = (a + b) / 6;
  g.c1 = -(a + b) / 24;
  if (!record(c, t.global, g, "global scalar")) return c;
  for (const auto& [key, entry] : t.entries) {
    const auto& [nu, nb] = key;
    ExponentPoly e((a * kappa(nu) + b * kappa(nb)) / 2, a * nu.weight() + b * nb.weight(), 0);
    if (!record(c, entry.exponent, e, pair_label(nu, nb))) return c;
  }
  c.detail = std::to_string(t.entries.size()) + " entries";
  return c;
}

RelationCheck check_tau_shift(const TauParams& p, int degree, const std::vector<Rational>& shifts) {
  require_weight(degree, "tau degree");
  VertexEngine engine(2 * degree);
  auto t0 = tau_table(p, 0, degree, engine);
  const std::string tag =
      "tau-s-shift(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," + (p.sign > 0 ? "+" : "-") + ")";
  RelationCheck c = passed(tag, "");
  for (const Rational& sh : shifts) {
    auto tc = tau_table(p, sh, degree, engine);
    const std::string at = "c=" + to_string(sh);
    if (!record(c, tc.global, t0.global.shifted(sh), at + " global scalar")) return c;
    for (const auto& [key, entry] : t0.entries) {
      (void)entry;
      const auto& [nu, nb] = key;
      if (!record(c, tc.coefficient(nu, nb), shift_s(t0.coefficient(nu, nb), sh), at + " " + pair_label(nu, nb)))
        return c;
    }
  }
  c.detail = std::to_string(t0.entries.size()) + " entries per shift";
  return c;
}

Report run_identities(const IdentityOptions& opt) {
  require_weight(opt.shift_degree, "tau degree");
  Report r;
  r.checks.push_back(check_vertex_expressions(opt.vertex_weight));
  r.checks.push_back(check_vertex_transposition(opt.symmetry_weight));
  r.checks.push_back(check_vertex_inversion(opt.symmetry_weight, opt.flip_sign));
  r.checks.push_back(check_schur_negation(opt.schur_weight));
  r.checks.push_back(check_skew_negation(opt.schur_weight));
  r.checks.push_back(check_schur_structure(opt.schur_weight));
  r.checks.push_back(check_special_points(std::min(opt.schur_weight, 4)));
  for (const auto& p : opt.shift_params) {
    r.checks.push_back(check_tau_exponents(p, opt.shift_degree));
    r.checks.push_back(check_tau_shift(p, opt.shift_degree, opt.shifts));
  }
  return r;
}

}  // namespace toda
