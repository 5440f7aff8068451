#pragma once

// Initial-value dressing operators, their fractional Lax powers and
// Orlov-Schulman operators, and exact verification of the relations among them.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toda/diff_op.hpp"
#include "toda/qfield.hpp"
#include "toda/vertex.hpp"

namespace toda {

using Op = DiffOp<QFieldElem>;

struct SessionParams {
  int a = 1;
  int b = 1;
  int sign = 1;
  int T = 6;        // retained integer Lambda-powers
  Rational shift;   // c in the shifted tau table

  TauParams tau_params() const { return {a, b, sign}; }
  Rational tau() const { return tau_params().tau(); }
  /// 1/(a+b) for sign +1, 1/|a-b| for sign -1.
  Rational step() const;
  /// Indices per unit power.
  long refinement() const;
  Rational alpha() const;  // 1/(tau+1)
  Rational beta() const;   // tau/(tau+1) = 1/(1/tau+1)
  /// Throws NonCoprime, InvalidTau or std::invalid_argument.
  void validate() const;
};

/// (tau+1)(s-1/2)^2/2 and (1/tau+1)(s-1/2)^2/2.
ExponentPoly sandwich_exponent(const Rational& weight);

/// c Lambda^{power} with c = q^{e(s)}.
Op q_monomial(const ExponentPoly& e, const Rational& power, const Rational& step);

/// Exact inverse of a single-term operator.
Op monomial_inverse(const Op& m);

/// Monomial Y = q^{h(s)} Lambda^{p/n} with Y^n = q^{e(s)} Lambda^p, for e of degree <= 1.
Op monomial_root(const ExponentPoly& e, const Rational& power, int n, const Rational& step);

/// Closed-form initial dressing operators, known down to Lambda^{-T} (W0) and
/// up to Lambda^{T} (W0bar).
Op build_W0(const SessionParams& p);
Op build_W0bar(const SessionParams& p);
/// Same operators assembled as products of the sandwich factors with the
/// symmetric-function series generated from the power sums of the alphabet.
Op build_W0_by_product(const SessionParams& p);
Op build_W0bar_by_product(const SessionParams& p);

struct LaxPair {
  Op Lfrac;     // W Lambda^{alpha} W^{-1}
  Op Lbarfrac;  // Wbar Lambda^{-beta} Wbar^{-1}
};
struct OrlovSchulman {
  Op qM;     // W q^s W^{-1}
  Op qMbar;  // Wbar q^s Wbar^{-1}
};

LaxPair initial_lax(const SessionParams& p);
LaxPair lax_from_dressing(const SessionParams& p, const Op& W, const Op& Wbar);
OrlovSchulman initial_M(const SessionParams& p);
OrlovSchulman orlov_schulman_from_dressing(const SessionParams& p, const Op& W, const Op& Wbar);

/// Lambda^alpha - q^{(tau+1)s - tau - 1/2} Lambda^{alpha-1}
Op expected_Lfrac(const SessionParams& p);
/// q^s - q^{(tau+2)s - tau - 3/2} Lambda^{-1}
Op expected_qM0(const SessionParams& p);
/// q^s - q^{-tau s + 1/2} Lambda
Op expected_qM0bar(const SessionParams& p);

struct Residual {
  Rational power;
  std::string value;  // canonical text, "0" when it vanishes
};

struct RelationCheck {
  std::string name;
  bool pass = false;
  std::optional<Rational> first_offending;  // Lambda-power of the first nonzero residual
  std::string detail;
  std::vector<Residual> residuals;
};

struct Report {
  std::vector<RelationCheck> checks;
  bool pass() const;
  const RelationCheck* find(const std::string& name) const;
  void append(const Report& other);
};

struct RelationViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MismatchAt : std::runtime_error {
  MismatchAt(Rational p, const std::string& what) : std::runtime_error(what), power(std::move(p)) {}
  Rational power;
};

/// Residual lhs - rhs over the common window of the two operators.
RelationCheck compare_ops(const std::string& name, const Op& lhs, const Op& rhs);

/// Throws RelationViolated naming the first failed check.
void require(const Report& r);

/// Lfrac + Lbarfrac = 0, closed forms of Lfrac, q^{M0}, q^{M0bar}.
Report check_initial_relations(const SessionParams& p);
Report check_initial_relations(const SessionParams& p, const Op& W, const Op& Wbar);

/// q^{-M0} L0^alpha and q^{-M0bar} L0bar^{-beta} as monomials, and the power
/// identity between them.
Report check_LM_relation(const SessionParams& p);
Report check_LM_relation(const SessionParams& p, const Op& W, const Op& Wbar);

struct TauDressing {
  int order = 0;
  Op W, dW;        // t = tbar = 0, and d/dt1 there
  Op Wbar, dWbar;
};

/// Dressing coefficients through Lambda^{-order} and Lambda^{order} from the
/// Miwa-shifted tau quotients. Needs table.max_deg >= order + 1.
TauDressing dressing_from_tau(const TauTable& table, const SessionParams& p, int order);

/// Tau-side versus closed-form dressing, the fractional Lax relation from the
/// tau side, the t1 Lax equation, and stability under lowering the tau degree.
Report cross_check_initial(const SessionParams& p, int tau_degree, int order = 3);

/// Everything above for one parameter set.
Report laxcheck(const SessionParams& p, int tau_degree);

}  // namespace toda
