#pragma once

// Polynomials over Q in the shifted values u(s + r), r rational.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toda/errors.hpp"
#include "toda/qfield.hpp"

namespace toda {

class ShiftPoly {
 public:
  /// Sorted (offset, exponent) pairs with positive exponents.
  using Monomial = std::vector<std::pair<Rational, int>>;

  ShiftPoly() = default;
  ShiftPoly(const Rational& c);
  ShiftPoly(long c) : ShiftPoly(Rational(c)) {}
  ShiftPoly(int c) : ShiftPoly(Rational(c)) {}
  /// u(s + offset)
  static ShiftPoly u(const Rational& offset = 0);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Constant term if the polynomial is constant.
  bool is_constant() const;
  Rational constant_term() const;

  ShiftPoly shifted(const Rational& beta) const;

  ShiftPoly operator-() const;
  ShiftPoly& operator+=(const ShiftPoly& o);
  ShiftPoly& operator-=(const ShiftPoly& o);
  ShiftPoly& operator*=(const ShiftPoly& o);
  friend ShiftPoly operator+(ShiftPoly a, const ShiftPoly& b) { return a += b; }
  friend ShiftPoly operator-(ShiftPoly a, const ShiftPoly& b) { return a -= b; }
  friend ShiftPoly operator*(ShiftPoly a, const ShiftPoly& b) { return a *= b; }
  friend bool operator==(const ShiftPoly&, const ShiftPoly&) = default;

  /// Evaluates with u(s + r) looked up by the callback.
  template <class R = double, class F>
  R evaluate(F&& value_at) const {
    R total = 0;
    for (const auto& [m, c] : terms_) {
      R t = static_cast<R>(c.get_num().get_d()) / static_cast<R>(c.get_den().get_d());
      for (const auto& [off, e] : m)
        for (int k = 0; k < e; ++k) t *= value_at(off);
      total += t;
    }
    return total;
  }

  /// e.g. "-u(s+1/2) - u(s)"
  std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;
};

inline ShiftPoly shift_s(const ShiftPoly& x, const Rational& beta) { return x.shifted(beta); }

/// Only nonzero constants are units.
inline ShiftPoly coefficient_inverse(const ShiftPoly& c) {
  if (c.is_zero() || !c.is_constant()) throw NonInvertibleLeading("leading coefficient " + c.to_string() + " is not a unit");
  return ShiftPoly(1 / c.constant_term());
}

}  // namespace toda
