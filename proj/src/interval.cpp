#include "toda/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace toda {

BigFloat::BigFloat(long bits) { mpfr_init2(value_, static_cast<mpfr_prec_t>(bits)); mpfr_set_zero(value_, 1); }

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(value_, mpfr_get_prec(o.value_));
  mpfr_set(value_, o.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept : BigFloat(o) {}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(value_, mpfr_get_prec(o.value_));
    mpfr_set(value_, o.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept { return *this = static_cast<const BigFloat&>(o); }

BigFloat::~BigFloat() { mpfr_clear(value_); }

Interval Interval::exact(const mpq_class& r, long bits) {
  Interval out(bits);
  mpfr_set_q(out.lo.get(), r.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi.get(), r.get_mpq_t(), MPFR_RNDU);
  return out;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo.get()) <= 0 && mpfr_sgn(hi.get()) >= 0; }

bool Interval::contains(const mpq_class& r) const {
  return mpfr_cmp_q(lo.get(), r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.get(), r.get_mpq_t()) >= 0;
}

bool Interval::overlaps(const Interval& o) const {
  return mpfr_cmp(lo.get(), o.hi.get()) <= 0 && mpfr_cmp(o.lo.get(), hi.get()) <= 0;
}

double Interval::mid() const {
  BigFloat m(bits() + 2);
  mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

double Interval::radius() const {
  BigFloat r(53);
  mpfr_sub(r.get(), hi.get(), lo.get(), MPFR_RNDU);
  mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDU);
  return r.to_double();
}

std::string Interval::to_string(int digits) const {
  BigFloat m(bits() + 2);
  mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, m.get());
  return {buf.data()};
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(std::max(a.bits(), b.bits()));
  mpfr_add(out.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(out.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return out;
}

Interval Interval::operator-() const {
  Interval out(bits());
  mpfr_neg(out.lo.get(), hi.get(), MPFR_RNDD);
  mpfr_neg(out.hi.get(), lo.get(), MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  const long bits = std::max(a.bits(), b.bits());
  BigFloat cand(bits);
  Interval out(bits);
  mpfr_set_inf(out.lo.get(), 1);
  mpfr_set_inf(out.hi.get(), -1);
  for (const BigFloat* x : {&a.lo, &a.hi}) {
    for (const BigFloat* y : {&b.lo, &b.hi}) {
      mpfr_mul(cand.get(), x->get(), y->get(), MPFR_RNDD);
      mpfr_min(out.lo.get(), out.lo.get(), cand.get(), MPFR_RNDD);
      mpfr_mul(cand.get(), x->get(), y->get(), MPFR_RNDU);
      mpfr_max(out.hi.get(), out.hi.get(), cand.get(), MPFR_RNDU);
    }
  }
  return out;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an enclosure of zero");
  const long bits = std::max(a.bits(), b.bits());
  Interval inv(bits);
  mpfr_ui_div(inv.lo.get(), 1, b.hi.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi.get(), 1, b.lo.get(), MPFR_RNDU);
  return a * inv;
}

Interval log_of(const mpq_class& q, long bits) {
  if (sgn(q) <= 0) throw std::domain_error("log of a non-positive number");
  Interval qi = Interval::exact(q, bits);
  Interval out(bits);
  mpfr_log(out.lo.get(), qi.lo.get(), MPFR_RNDD);
  mpfr_log(out.hi.get(), qi.hi.get(), MPFR_RNDU);
  return out;
}

Interval pow_rational(const Interval& log_q, const mpq_class& e) {
  // exp is monotone, so the enclosure of e*log(q) maps endpoint-wise.
  Interval t = log_q * Interval::exact(e, log_q.bits());
  Interval out(log_q.bits());
  mpfr_exp(out.lo.get(), t.lo.get(), MPFR_RNDD);
  mpfr_exp(out.hi.get(), t.hi.get(), MPFR_RNDU);
  return out;
}

}  // namespace toda
