#pragma once

// Two-leg topological vertex and the tau-function coefficient table.

#include <map>
#include <string>
#include <utility>

#include "toda/partitions.hpp"
#include "toda/qfield.hpp"
#include "toda/schur.hpp"

namespace toda {

using PartitionPair = std::pair<Partition, Partition>;

/// Caches skew Schur values at the points q^rho, q^{-rho} and q^{nu+rho}.
class VertexEngine {
 public:
  explicit VertexEngine(int degree_bound);
  int degree_bound() const { return ctx_.degree_bound(); }

  /// s_{lam/eta}(q^rho)
  const QFieldElem& skew_at_rho(const Partition& lam, const Partition& eta);
  /// s_{lam/eta}(q^{-rho})
  const QFieldElem& skew_at_neg_rho(const Partition& lam, const Partition& eta);
  /// s_lam(q^{nu+rho})
  QFieldElem schur_at_nu_rho(const Partition& lam, const Partition& nu);

  /// s_nu(q^rho) s_nubar(q^{nu+rho})
  QFieldElem vertex_def(const Partition& nu, const Partition& nubar);
  /// q^{(kappa(nu)+kappa(nubar))/2} sum_eta s_{nu'/eta}(q^rho) s_{nubar'/eta}(q^rho)
  QFieldElem vertex_hook(const Partition& nu, const Partition& nubar);
  /// sum_eta s_{nu/eta}(q^{-rho}) s_{nubar/eta}(q^{-rho})
  const QFieldElem& gamma_matrix_element(const Partition& nu, const Partition& nubar);
  /// (-1)^{|nu|+|nubar|} q^{(kappa(nu)+kappa(nubar))/2} gamma(nu, nubar)
  QFieldElem vertex_fermionic(const Partition& nu, const Partition& nubar);

  SchurContext& schur_context() { return ctx_; }

 private:
  void check(int weight) const;
  const QFieldElem& skew_at(std::map<PartitionPair, QFieldElem>& cache, const Specialization& sp,
                            const Partition& lam, const Partition& eta);

  SchurContext ctx_;
  Specialization rho_, neg_rho_;
  std::map<PartitionPair, QFieldElem> rho_cache_, neg_rho_cache_, gamma_cache_;
  std::map<Partition, Specialization> nu_rho_points_;
};

QFieldElem vertex_def(const Partition& nu, const Partition& nubar);
QFieldElem vertex_hook(const Partition& nu, const Partition& nubar);
QFieldElem gamma_matrix_element(const Partition& nu, const Partition& nubar);

/// Truncated double sum sum q^{(kappa(nu) tau + kappa(nubar)/tau)/2} W_{nu nubar} S_nu(p) S_nubar(pbar).
struct RBullet {
  Rational tau;
  int max_deg = 0;
  std::map<PartitionPair, QFieldElem> entries;  // coefficient of S_nu(p) S_nubar(pbar)

  /// Coefficient of the monomial p^m pbar^mbar after expanding the Schur polynomials.
  QFieldElem coefficient(const Monomial& m, const Monomial& mbar) const;
};

RBullet R_bullet(const Rational& tau, int max_deg);

/// c3 s^3 + c2 s^2 + c1 s + c0, used only for the global scalar of the tau table.
struct CubicExponent {
  Rational c0{0}, c1{0}, c2{0}, c3{0};
  CubicExponent shifted(const Rational& beta) const;
  friend bool operator==(const CubicExponent&, const CubicExponent&) = default;
  std::string to_string() const;
};

struct TauParams {
  int a = 1;
  int b = 1;
  int sign = 1;
  Rational tau() const { return frac(sign * b, a); }
  /// Throws NonCoprime or InvalidTau.
  void validate() const;
};

/// tau(s, t, tbar) = q^{global(s)} sum_{nu, nubar} q^{E_{nu nubar}(s)} gamma(nu, nubar) S_nu(t) S_nubar(tbar)
/// with |nu|, |nubar| <= max_deg.
struct TauTable {
  struct Entry {
    ExponentPoly exponent;
    QFieldElem gamma;
  };

  TauParams params;
  Rational shift;
  int max_deg = 0;
  CubicExponent global;
  std::map<PartitionPair, Entry> entries;

  /// q^{E} gamma for the fermionic labels (nu, nubar).
  QFieldElem coefficient(const Partition& nu, const Partition& nubar) const;
  /// Coefficient of S_nu(t) S_mu(tbar) once the tbar dependence is written with
  /// plain Schur polynomials: (-1)^{|mu|} times the entry at (nu, mu').
  QFieldElem plain_coefficient(const Partition& nu, const Partition& mu) const;
};

TauTable tau_table(const TauParams& params, const Rational& shift, int max_deg);
TauTable tau_table(const TauParams& params, const Rational& shift, int max_deg, VertexEngine& engine);

}  // namespace toda
