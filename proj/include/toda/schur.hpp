#pragma once

// Schur polynomials in the power sums p_1, p_2, ...

#include <map>
#include <string>
#include <vector>

#include "toda/errors.hpp"
#include "toda/partitions.hpp"
#include "toda/qfield.hpp"

namespace toda {

/// Exponent vector (e_1, e_2, ...) for p_1^{e_1} p_2^{e_2} ..., trailing zeros
/// removed so that each monomial has a unique key.
using Monomial = std::vector<int>;

int weighted_degree(const Monomial& m);

/// Polynomial in the power sums with exact rational coefficients.
class PowerSumPoly {
 public:
  PowerSumPoly() = default;
  PowerSumPoly(const Rational& c);
  static PowerSumPoly generator(int k);  // p_k
  static PowerSumPoly term(Monomial m, const Rational& c);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;
  /// Largest weighted degree, -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous(int degree) const;

  PowerSumPoly operator-() const;
  PowerSumPoly& operator+=(const PowerSumPoly& o);
  PowerSumPoly& operator-=(const PowerSumPoly& o);
  friend PowerSumPoly operator+(PowerSumPoly a, const PowerSumPoly& b) { return a += b; }
  friend PowerSumPoly operator-(PowerSumPoly a, const PowerSumPoly& b) { return a -= b; }
  friend PowerSumPoly operator*(const PowerSumPoly& a, const PowerSumPoly& b);
  friend PowerSumPoly operator*(PowerSumPoly a, const Rational& c);
  friend bool operator==(const PowerSumPoly&, const PowerSumPoly&) = default;

  /// Exact quotient; throws std::domain_error if the division leaves a remainder.
  PowerSumPoly divide_exact(const PowerSumPoly& d) const;

  /// Canonical form: monomials in descending lexicographic order of exponent
  /// vectors, e.g. "1/3*p1^3 - 1/3*p3".
  std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;  // no zero coefficients
};

/// p_k -> -p_k for every k.
PowerSumPoly negate_p(const PowerSumPoly& f);
/// Rewrites in time variables: p_k = k t_k, so the result is in t_k.
PowerSumPoly to_time_variables(const PowerSumPoly& f);

/// Values of p_1, ..., p_D in the coefficient field.
struct Specialization {
  std::vector<QFieldElem> values;  // values[k-1] = p_k
};

QFieldElem evaluate(const PowerSumPoly& f, const Specialization& sp);

/// Jacobi-Trudi evaluation with a degree bound D. Complete homogeneous
/// polynomials are cached.
class SchurContext {
 public:
  explicit SchurContext(int degree_bound);
  int degree_bound() const { return bound_; }

  /// S_m; zero for m < 0 and 1 for m = 0.
  const PowerSumPoly& complete_homogeneous(int m);
  /// det(S_{mu_i - i + j}) of size n >= l(mu); n = -1 picks l(mu).
  PowerSumPoly schur(const Partition& mu, int n = -1);
  /// det(S_{mu_i - nu_j - i + j}); zero unless nu is contained in mu.
  PowerSumPoly skew_schur(const Partition& mu, const Partition& nu, int n = -1);

 private:
  void check(const Partition& mu) const;
  int bound_;
  std::vector<PowerSumPoly> h_;
};

PowerSumPoly complete_homogeneous(int m, int degree_bound);
PowerSumPoly schur(const Partition& mu, int degree_bound);
PowerSumPoly skew_schur(const Partition& mu, const Partition& nu, int degree_bound);

/// Fraction-free determinant of a square matrix of polynomials.
PowerSumPoly bareiss_determinant(std::vector<std::vector<PowerSumPoly>> m);

/// p_k at x_i = q^{-(i - 1/2)}: 1/(q^{k/2} - q^{-k/2}).
QFieldElem specialize_rho(int k);
/// p_k at x_i = q^{nu_i - i + 1/2}, the tail summed as a geometric series.
QFieldElem specialize_nu_rho(const Partition& nu, int k);
/// p_k at x_i = q^{i - 1/2} by continuation: -1/(q^{k/2} - q^{-k/2}).
QFieldElem specialize_neg_rho(int k);
/// p_k at x_i = q^{-(nu_i - i + 1/2)}, tail continued the same way.
QFieldElem specialize_neg_nu_rho(const Partition& nu, int k);

Specialization rho_point(int degree_bound);
Specialization nu_rho_point(const Partition& nu, int degree_bound);
Specialization neg_rho_point(int degree_bound);

}  // namespace toda
