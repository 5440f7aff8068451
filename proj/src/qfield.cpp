#include "toda/qfield.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

#include "toda/interval.hpp"

namespace toda {

Rational parse_rational(std::string_view text) {
  std::string t(text);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  if (t.empty()) throw std::invalid_argument("empty rational");
  if (t.front() == '+') t.erase(0, 1);
  Rational out;
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::string frac = t.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("bad rational: " + t);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, frac.size());
    try {
      out = Rational(mpz_class(digits.empty() || digits == "-" ? digits + "0" : digits, 10), pow10);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational: " + t);
    }
  } else {
    if (t.find_first_not_of("-0123456789/") != std::string::npos) throw std::invalid_argument("bad rational: " + t);
    if (out.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + t);
    if (sgn(out.get_den()) == 0) throw std::invalid_argument("zero denominator: " + t);
  }
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------- ExponentPoly

ExponentPoly ExponentPoly::shifted(const Rational& beta) const {
  return {c0 + beta * c1 + beta * beta * c2, c1 + 2 * beta * c2, c2};
}

ExponentPoly& ExponentPoly::operator+=(const ExponentPoly& o) {
  c0 += o.c0;
  c1 += o.c1;
  c2 += o.c2;
  return *this;
}

ExponentPoly& ExponentPoly::operator-=(const ExponentPoly& o) {
  c0 -= o.c0;
  c1 -= o.c1;
  c2 -= o.c2;
  return *this;
}

ExponentPoly& ExponentPoly::operator*=(const Rational& k) {
  c0 *= k;
  c1 *= k;
  c2 *= k;
  return *this;
}

namespace {

std::strong_ordering cmp(const Rational& a, const Rational& b) {
  int c = ::cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

void append_signed(std::ostringstream& os, bool first, const Rational& c, const std::string& body) {
  // body is the already formatted magnitude
  if (first) {
    if (sgn(c) < 0) os << "-";
  } else {
    os << (sgn(c) < 0 ? " - " : " + ");
  }
  os << body;
}

}  // namespace

std::strong_ordering operator<=>(const ExponentPoly& a, const ExponentPoly& b) {
  if (auto c = cmp(a.c2, b.c2); c != 0) return c;
  if (auto c = cmp(a.c1, b.c1); c != 0) return c;
  return cmp(a.c0, b.c0);
}

std::string ExponentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rational& c, const char* var) {
    if (sgn(c) == 0) return;
    Rational m = abs(c);
    std::string body;
    if (*var == '\0') body = m.get_str();
    else body = (m == 1 ? std::string() : m.get_str() + " ") + var;
    append_signed(os, first, c, body);
    first = false;
  };
  emit(c2, "s^2");
  emit(c1, "s");
  emit(c0, "");
  return os.str();
}

// ------------------------------------------------------------------- QPowerSum

QPowerSum::QPowerSum(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({ExponentPoly{}, c});
}

QPowerSum QPowerSum::monomial(const ExponentPoly& e, const Rational& c) {
  QPowerSum out;
  if (sgn(c) != 0) out.terms_.push_back({e, c});
  return out;
}

QPowerSum QPowerSum::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.exp < y.exp; });
  QPowerSum out;
  out.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().exp == t.exp) {
      out.terms_.back().coef += t.coef;
    } else {
      if (!out.terms_.empty() && sgn(out.terms_.back().coef) == 0) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && sgn(out.terms_.back().coef) == 0) out.terms_.pop_back();
  return out;
}

bool QPowerSum::is_one() const {
  return terms_.size() == 1 && terms_[0].exp.is_zero() && terms_[0].coef == 1;
}

bool QPowerSum::s_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exp.is_constant(); });
}

QPowerSum QPowerSum::shifted(const Rational& beta) const {
  if (sgn(beta) == 0) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.exp.shifted(beta), t.coef});
  return from_terms(std::move(out));
}

QPowerSum QPowerSum::inverted_q() const {
  QPowerSum out;
  out.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) out.terms_.push_back({-it->exp, it->coef});
  return out;
}

QPowerSum QPowerSum::operator-() const {
  QPowerSum out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

namespace {

std::vector<QPowerSum::Term> merge(const std::vector<QPowerSum::Term>& a, const std::vector<QPowerSum::Term>& b,
                                   int sign) {
  std::vector<QPowerSum::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exp < a[i].exp) {
      out.push_back({b[j].exp, sign > 0 ? b[j].coef : Rational(-b[j].coef)});
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(a[i].coef + b[j].coef) : Rational(a[i].coef - b[j].coef);
      if (sgn(c) != 0) out.push_back({a[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

QPowerSum& QPowerSum::operator+=(const QPowerSum& o) {
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

QPowerSum& QPowerSum::operator-=(const QPowerSum& o) {
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

QPowerSum& QPowerSum::operator*=(const Rational& k) {
  if (sgn(k) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coef *= k;
  }
  return *this;
}

QPowerSum operator*(const QPowerSum& a, const QPowerSum& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_monomial()) return b.times_monomial(a.terms_[0].exp, a.terms_[0].coef);
  if (b.is_monomial()) return a.times_monomial(b.terms_[0].exp, b.terms_[0].coef);
  std::vector<QPowerSum::Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.push_back({x.exp + y.exp, x.coef * y.coef});
  return QPowerSum::from_terms(std::move(out));
}

QPowerSum QPowerSum::times_monomial(const ExponentPoly& e, const Rational& c) const {
  QPowerSum out;
  if (sgn(c) == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.exp + e, t.coef * c});
  return out;
}

std::strong_ordering operator<=>(const QPowerSum& a, const QPowerSum& b) {
  return std::lexicographical_compare_three_way(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
      [](const QPowerSum::Term& x, const QPowerSum::Term& y) {
        if (auto c = x.exp <=> y.exp; c != 0) return c;
        return cmp(x.coef, y.coef);
      });
}

std::string QPowerSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational m = abs(t.coef);
    std::string body = t.exp.is_zero() ? m.get_str() : m.get_str() + "*q^(" + t.exp.to_string() + ")";
    append_signed(os, first, t.coef, body);
    first = false;
  }
  return os.str();
}

namespace {

Rational coord(const ExponentPoly& e, int k) { return k == 0 ? e.c0 : k == 1 ? e.c1 : e.c2; }

}  // namespace

// Long division from the lowest term. If g divides f, the Newton polytope of f
// is the Minkowski sum of those of g and the quotient, so every quotient
// exponent lies in a box computed from f and g. The divisor differences are
// lex-positive and span a pointed cone, so only finitely many exponents can
// appear in the box and the loop terminates.
bool try_divide(const QPowerSum& f, const QPowerSum& g, QPowerSum& quotient) {
  if (g.is_zero()) return false;
  if (f.is_zero()) {
    quotient = QPowerSum();
    return true;
  }
  if (g.is_monomial()) {
    const auto& t = g.lowest();
    quotient = f.times_monomial(-t.exp, 1 / t.coef);
    return true;
  }
  Rational lo[3], hi[3];
  for (int k = 0; k < 3; ++k) {
    auto range = [k](const QPowerSum& p) {
      Rational mn = coord(p.lowest().exp, k), mx = mn;
      for (const auto& t : p.terms()) {
        Rational v = coord(t.exp, k);
        if (v < mn) mn = v;
        if (v > mx) mx = v;
      }
      return std::pair{mn, mx};
    };
    auto [fmin, fmax] = range(f);
    auto [gmin, gmax] = range(g);
    lo[k] = fmin - gmin;
    hi[k] = fmax - gmax;
    if (lo[k] > hi[k]) return false;
  }
  const auto& g_lo = g.lowest();
  const ExponentPoly top = f.highest().exp - g.highest().exp;
  std::vector<QPowerSum::Term> quot;
  QPowerSum r = f;
  while (!r.is_zero()) {
    ExponentPoly e = r.lowest().exp - g_lo.exp;
    if (top < e) return false;
    for (int k = 0; k < 3; ++k) {
      Rational v = coord(e, k);
      if (v < lo[k] || v > hi[k]) return false;
    }
    Rational c = r.lowest().coef / g_lo.coef;
    r -= g.times_monomial(e, c);
    quot.push_back({std::move(e), std::move(c)});
  }
  quotient = QPowerSum::from_terms(std::move(quot));
  return true;
}

// ------------------------------------------------------------------ QFieldElem

namespace {

using Factor = QFieldElem::Factor;

// p = unit * result, where unit = c q^e is the lowest term of p.
QPowerSum normalize(const QPowerSum& p, QPowerSum::Term& unit) {
  unit = p.lowest();
  return p.times_monomial(-unit.exp, 1 / unit.coef);
}

void sort_factors(std::vector<Factor>& fs) {
  std::sort(fs.begin(), fs.end(), [](const Factor& x, const Factor& y) { return x.poly < y.poly; });
  std::vector<Factor> out;
  for (auto& f : fs) {
    if (!out.empty() && out.back().poly == f.poly) out.back().mult += f.mult;
    else out.push_back(std::move(f));
  }
  std::erase_if(out, [](const Factor& f) { return f.mult == 0; });
  fs = std::move(out);
}

QPowerSum expand(const std::vector<Factor>& fs, const std::vector<int>& mults) {
  QPowerSum out(1);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (int k = 0; k < mults[i]; ++k) out = out * fs[i].poly;
  return out;
}

}  // namespace

QFieldElem::QFieldElem(const QPowerSum& num, const QPowerSum& den) : num_(num) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  QPowerSum::Term unit;
  QPowerSum atom = normalize(den, unit);
  num_ = num_.times_monomial(-unit.exp, 1 / unit.coef);
  if (!atom.is_one()) den_.push_back({std::move(atom), 1});
  cancel();
}

QPowerSum QFieldElem::den() const {
  std::vector<int> m;
  for (const auto& f : den_) m.push_back(f.mult);
  return expand(den_, m);
}

bool QFieldElem::s_free() const {
  return num_.s_free() &&
         std::all_of(den_.begin(), den_.end(), [](const Factor& f) { return f.poly.s_free(); });
}

void QFieldElem::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& f : den_) {
    QPowerSum quot;
    while (f.mult > 0 && try_divide(num_, f.poly, quot)) {
      num_ = std::move(quot);
      --f.mult;
    }
  }
  std::erase_if(den_, [](const Factor& f) { return f.mult == 0; });
}

QFieldElem QFieldElem::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero");
  QFieldElem out;
  QPowerSum::Term unit;
  QPowerSum atom = normalize(num_, unit);
  out.num_ = den().times_monomial(-unit.exp, 1 / unit.coef);
  if (!atom.is_one()) out.den_.push_back({std::move(atom), 1});
  out.cancel();
  return out;
}

namespace {

QFieldElem rebuild(QPowerSum num, const std::vector<Factor>& den_in,
                   QPowerSum (*map)(const QPowerSum&, const Rational&), const Rational& arg) {
  std::vector<Factor> den;
  for (const auto& f : den_in) {
    QPowerSum::Term unit;
    QPowerSum atom = normalize(map(f.poly, arg), unit);
    // divide num by unit^mult
    for (int k = 0; k < f.mult; ++k) num = num.times_monomial(-unit.exp, 1 / unit.coef);
    if (!atom.is_one()) den.push_back({std::move(atom), f.mult});
  }
  sort_factors(den);
  QFieldElem out(std::move(num));
  for (const auto& f : den) {
    QFieldElem d(QPowerSum(1), f.poly);
    for (int k = 0; k < f.mult; ++k) out *= d;
  }
  return out;
}

QPowerSum shift_map(const QPowerSum& p, const Rational& beta) { return p.shifted(beta); }
QPowerSum invert_map(const QPowerSum& p, const Rational&) { return p.inverted_q(); }

}  // namespace

QFieldElem QFieldElem::shifted(const Rational& beta) const {
  if (sgn(beta) == 0) return *this;
  return rebuild(num_.shifted(beta), den_, shift_map, beta);
}

QFieldElem QFieldElem::inverted_q() const { return rebuild(num_.inverted_q(), den_, invert_map, Rational(0)); }

QFieldElem QFieldElem::operator-() const {
  QFieldElem out = *this;
  out.num_ = -out.num_;
  return out;
}

QFieldElem& QFieldElem::operator+=(const QFieldElem& o) {
  if (this == &o) return *this += QFieldElem(o);
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    cancel();
    return *this;
  }
  // lcm of the two factor multisets
  std::vector<Factor> lcm;
  std::vector<int> need_a, need_b;
  std::size_t i = 0, j = 0;
  while (i < den_.size() || j < o.den_.size()) {
    if (j == o.den_.size() || (i < den_.size() && den_[i].poly < o.den_[j].poly)) {
      lcm.push_back(den_[i]);
      need_a.push_back(0);
      need_b.push_back(den_[i].mult);
      ++i;
    } else if (i == den_.size() || o.den_[j].poly < den_[i].poly) {
      lcm.push_back(o.den_[j]);
      need_a.push_back(o.den_[j].mult);
      need_b.push_back(0);
      ++j;
    } else {
      int m = std::max(den_[i].mult, o.den_[j].mult);
      lcm.push_back({den_[i].poly, m});
      need_a.push_back(m - den_[i].mult);
      need_b.push_back(m - o.den_[j].mult);
      ++i;
      ++j;
    }
  }
  num_ = num_ * expand(lcm, need_a) + o.num_ * expand(lcm, need_b);
  den_ = std::move(lcm);
  cancel();
  return *this;
}

QFieldElem& QFieldElem::operator-=(const QFieldElem& o) { return *this += -o; }

QFieldElem& QFieldElem::operator*=(const QFieldElem& o) {
  if (this == &o) return *this *= QFieldElem(o);
  if (is_zero() || o.is_zero()) return *this = QFieldElem();
  num_ = num_ * o.num_;
  if (!o.den_.empty()) {
    den_.insert(den_.end(), o.den_.begin(), o.den_.end());
    sort_factors(den_);
  }
  cancel();
  return *this;
}

bool operator==(const QFieldElem& a, const QFieldElem& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return (a - b).is_zero();
}

std::string QFieldElem::to_string() const {
  if (den_.empty()) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den().to_string() + ")";
}

QFieldElem qpow(const ExponentPoly& e) { return QFieldElem(QPowerSum::monomial(e)); }

QFieldElem pow(const QFieldElem& x, int n) {
  if (n < 0) return pow(x.inverse(), -n);
  QFieldElem result(1);
  QFieldElem base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

// ------------------------------------------------------------------ evaluation

long default_precision_bits() {
  if (const char* env = std::getenv("TODA_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 32) return v;
  }
  return 256;
}

namespace {

Interval eval_sum(const QPowerSum& p, const Interval& log_q, const Rational& s) {
  const long bits = log_q.bits();
  Interval acc = Interval::exact(0, bits);
  for (const auto& t : p.terms()) {
    Rational e = t.exp.at(s);
    Interval term = sgn(e) == 0 ? Interval::exact(1, bits) : pow_rational(log_q, e);
    acc = acc + term * Interval::exact(t.coef, bits);
  }
  return acc;
}

}  // namespace

Interval eval(const QFieldElem& x, const Rational& q, const Rational& s, long bits) {
  if (bits <= 0) bits = default_precision_bits();
  if (sgn(q) <= 0) throw std::domain_error("q must be positive");
  Interval log_q = log_of(q, bits);
  Interval num = eval_sum(x.num(), log_q, s);
  Interval den = Interval::exact(1, bits);
  for (const auto& f : x.den_factors()) {
    Interval v = eval_sum(f.poly, log_q, s);
    if (v.contains_zero()) throw DenominatorVanishes("denominator factor " + f.poly.to_string() + " vanishes");
    for (int k = 0; k < f.mult; ++k) den = den * v;
  }
  return num / den;
}

}  // namespace toda
