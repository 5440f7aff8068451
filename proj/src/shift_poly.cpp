#include "toda/shift_poly.hpp"

#include <sstream>

namespace toda {

namespace {

ShiftPoly::Monomial mul(const ShiftPoly::Monomial& a, const ShiftPoly::Monomial& b) {
  ShiftPoly::Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].first, a[i].second + b[j].second});
      ++i;
      ++j;
    }
  }
  return out;
}

void add_term(std::map<ShiftPoly::Monomial, Rational>& terms, const ShiftPoly::Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

}  // namespace

ShiftPoly::ShiftPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

ShiftPoly ShiftPoly::u(const Rational& offset) {
  ShiftPoly out;
  out.terms_.emplace(Monomial{{offset, 1}}, Rational(1));
  return out;
}

bool ShiftPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational ShiftPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

ShiftPoly ShiftPoly::shifted(const Rational& beta) const {
  if (sgn(beta) == 0) return *this;
  ShiftPoly out;
  for (const auto& [m, c] : terms_) {
    Monomial shifted = m;
    for (auto& [off, e] : shifted) off += beta;
    out.terms_.emplace(std::move(shifted), c);
  }
  return out;
}

ShiftPoly ShiftPoly::operator-() const {
  ShiftPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

ShiftPoly& ShiftPoly::operator+=(const ShiftPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
  return *this;
}

ShiftPoly& ShiftPoly::operator-=(const ShiftPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(terms_, m, -c);
  return *this;
}

ShiftPoly& ShiftPoly::operator*=(const ShiftPoly& o) {
  std::map<Monomial, Rational> out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) add_term(out, mul(ma, mb), ca * cb);
  terms_ = std::move(out);
  return *this;
}

std::string ShiftPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    Rational mag = abs(c);
    bool need_star = false;
    if (m.empty() || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (const auto& [off, e] : m) {
      if (need_star) os << "*";
      need_star = true;
      os << "u(s";
      if (sgn(off) > 0) os << "+" << off.get_str();
      if (sgn(off) < 0) os << off.get_str();
      os << ")";
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace toda
