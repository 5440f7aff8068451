#pragma once

// Exact coefficient field: quotients of finite Q-linear combinations of
// q^{E(s)}, where E is a rational polynomial in s of degree <= 2.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace toda {

using Rational = mpq_class;

/// p/q in canonical form.
inline Rational frac(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// E(s) = c2 s^2 + c1 s + c0. Ordered lexicographically on (c2, c1, c0), which
/// is a total order compatible with addition.
struct ExponentPoly {
  Rational c0{0};
  Rational c1{0};
  Rational c2{0};

  ExponentPoly() = default;
  ExponentPoly(Rational constant) : c0(std::move(constant)) {}
  ExponentPoly(Rational c0_, Rational c1_, Rational c2_)
      : c0(std::move(c0_)), c1(std::move(c1_)), c2(std::move(c2_)) {}

  static ExponentPoly s() { return {0, 1, 0}; }

  bool is_constant() const { return sgn(c1) == 0 && sgn(c2) == 0; }
  bool is_zero() const { return is_constant() && sgn(c0) == 0; }

  /// E(s + beta).
  ExponentPoly shifted(const Rational& beta) const;
  Rational at(const Rational& s) const { return c2 * s * s + c1 * s + c0; }

  ExponentPoly operator-() const { return {-c0, -c1, -c2}; }
  ExponentPoly& operator+=(const ExponentPoly& o);
  ExponentPoly& operator-=(const ExponentPoly& o);
  ExponentPoly& operator*=(const Rational& k);
  friend ExponentPoly operator+(ExponentPoly a, const ExponentPoly& b) { return a += b; }
  friend ExponentPoly operator-(ExponentPoly a, const ExponentPoly& b) { return a -= b; }
  friend ExponentPoly operator*(ExponentPoly a, const Rational& k) { return a *= k; }
  friend ExponentPoly operator*(const Rational& k, ExponentPoly a) { return a *= k; }

  friend bool operator==(const ExponentPoly& a, const ExponentPoly& b) {
    return a.c2 == b.c2 && a.c1 == b.c1 && a.c0 == b.c0;
  }
  friend std::strong_ordering operator<=>(const ExponentPoly& a, const ExponentPoly& b);

  /// "c2 s^2 + c1 s + c0" with exact rationals.
  std::string to_string() const;
};

/// Finite sum  sum_i coef_i * q^{E_i(s)}. Terms are kept sorted ascending by
/// exponent with unique exponents and no zero coefficients, so equality is
/// structural.
class QPowerSum {
 public:
  struct Term {
    ExponentPoly exp;
    Rational coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  QPowerSum() = default;
  QPowerSum(const Rational& c);
  static QPowerSum monomial(const ExponentPoly& e, const Rational& c = 1);
  /// Builds from arbitrary terms; merges duplicates and drops zeros.
  static QPowerSum from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// True when no exponent depends on s.
  bool s_free() const;
  const Term& lowest() const { return terms_.front(); }
  const Term& highest() const { return terms_.back(); }

  QPowerSum shifted(const Rational& beta) const;
  QPowerSum inverted_q() const;  // q -> 1/q

  QPowerSum operator-() const;
  QPowerSum& operator+=(const QPowerSum& o);
  QPowerSum& operator-=(const QPowerSum& o);
  QPowerSum& operator*=(const Rational& k);
  friend QPowerSum operator+(QPowerSum a, const QPowerSum& b) { return a += b; }
  friend QPowerSum operator-(QPowerSum a, const QPowerSum& b) { return a -= b; }
  friend QPowerSum operator*(const QPowerSum& a, const QPowerSum& b);
  friend QPowerSum operator*(QPowerSum a, const Rational& k) { return a *= k; }
  QPowerSum times_monomial(const ExponentPoly& e, const Rational& c) const;

  friend bool operator==(const QPowerSum&, const QPowerSum&) = default;
  friend std::strong_ordering operator<=>(const QPowerSum& a, const QPowerSum& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Exact quotient f / g with f, g in s-free QPowerSum form restricted to
/// s-free divisors; returns false if g does not divide f.
bool try_divide(const QPowerSum& f, const QPowerSum& g, QPowerSum& quotient);

/// Element of the field of fractions. The denominator is held as a product of
/// normalized factors (each with lowest term exactly 1*q^0); monomial units are
/// folded into the numerator. Common factors are merged structurally and
/// s-free factors are cancelled against the numerator when they divide it.
class QFieldElem {
 public:
  struct Factor {
    QPowerSum poly;
    int mult = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  QFieldElem() = default;
  QFieldElem(const Rational& c) : num_(c) {}
  QFieldElem(long c) : num_(Rational(c)) {}
  QFieldElem(int c) : num_(Rational(c)) {}
  explicit QFieldElem(QPowerSum num) : num_(std::move(num)) {}
  QFieldElem(const QPowerSum& num, const QPowerSum& den);

  const QPowerSum& num() const { return num_; }
  const std::vector<Factor>& den_factors() const { return den_; }
  /// Expanded denominator.
  QPowerSum den() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.empty() && num_.is_one(); }
  bool s_free() const;

  QFieldElem inverse() const;
  QFieldElem shifted(const Rational& beta) const;
  QFieldElem inverted_q() const;

  QFieldElem operator-() const;
  QFieldElem& operator+=(const QFieldElem& o);
  QFieldElem& operator-=(const QFieldElem& o);
  QFieldElem& operator*=(const QFieldElem& o);
  QFieldElem& operator/=(const QFieldElem& o) { return *this *= o.inverse(); }
  friend QFieldElem operator+(QFieldElem a, const QFieldElem& b) { return a += b; }
  friend QFieldElem operator-(QFieldElem a, const QFieldElem& b) { return a -= b; }
  friend QFieldElem operator*(QFieldElem a, const QFieldElem& b) { return a *= b; }
  friend QFieldElem operator/(QFieldElem a, const QFieldElem& b) { return a /= b; }

  /// Cross-multiplied equality.
  friend bool operator==(const QFieldElem& a, const QFieldElem& b);

  /// "(num) / (den)" with both sides as sums of coeff*q^(c2 s^2 + c1 s + c0);
  /// the denominator is omitted when it is 1.
  std::string to_string() const;

 private:
  void cancel();

  QPowerSum num_;
  std::vector<Factor> den_;  // sorted by poly
};

QFieldElem qpow(const ExponentPoly& e);
inline QFieldElem shift_s(const QFieldElem& x, const Rational& beta) { return x.shifted(beta); }
QFieldElem pow(const QFieldElem& x, int n);

class DenominatorVanishes : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval;

/// Certified evaluation at numeric q in (0,1) and rational s. `bits` is the
/// working precision; the returned enclosure contains the exact value.
Interval eval(const QFieldElem& x, const Rational& q, const Rational& s, long bits = 0);

/// Default evaluation precision: TODA_PRECISION_BITS or 256.
long default_precision_bits();

}  // namespace toda
