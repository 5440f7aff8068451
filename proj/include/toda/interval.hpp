#pragma once

// Closed real interval with MPFR endpoints and outward rounding.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace toda {

class BigFloat {
 public:
  explicit BigFloat(long bits);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  long bits() const { return static_cast<long>(mpfr_get_prec(value_)); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

struct Interval {
  BigFloat lo;
  BigFloat hi;

  explicit Interval(long bits) : lo(bits), hi(bits) {}
  static Interval exact(const mpq_class& r, long bits);

  long bits() const { return lo.bits(); }
  bool contains_zero() const;
  bool contains(const mpq_class& r) const;
  bool overlaps(const Interval& o) const;
  double mid() const;
  double radius() const;
  /// Decimal digits of the midpoint that are certified by the enclosure.
  std::string to_string(int digits = 30) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;
};

/// Enclosure of q^e for q in the (positive) interval `q` and rational e.
Interval pow_rational(const Interval& log_q, const mpq_class& e);
/// Enclosure of log(q) for positive rational q.
Interval log_of(const mpq_class& q, long bits);

}  // namespace toda
