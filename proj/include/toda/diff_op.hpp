#pragma once

// Truncated difference operators  sum_n a_n(s) Lambda^{n delta}  with
// Lambda f(s) = f(s + 1), over a coefficient ring C that supports
// shift_s(c, beta). Each operator carries the window of indices on which its
// coefficients are known; outside the window nothing is asserted.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "toda/errors.hpp"
#include "toda/qfield.hpp"

namespace toda {

/// Index interval [lo, hi]; an empty optional means unbounded on that side.
struct Window {
  std::optional<long> lo, hi;

  static Window all() { return {}; }
  static Window empty() { return {1, 0}; }
  bool is_empty() const { return lo && hi && *lo > *hi; }
  bool contains(long n) const { return (!lo || n >= *lo) && (!hi || n <= *hi); }
  bool is_exact() const { return !lo && !hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

inline Window intersect(const Window& a, const Window& b) {
  Window w;
  if (a.lo || b.lo) w.lo = std::max(a.lo.value_or(b.lo.value_or(0)), b.lo.value_or(a.lo.value_or(0)));
  if (a.hi || b.hi) w.hi = std::min(a.hi.value_or(b.hi.value_or(0)), b.hi.value_or(a.hi.value_or(0)));
  return w;
}

/// gcd of two positive rationals.
inline Rational rational_gcd(const Rational& x, const Rational& y) {
  mpz_class num1 = x.get_num() * y.get_den(), num2 = y.get_num() * x.get_den();
  mpz_class g = gcd(num1, num2);
  Rational r(g, x.get_den() * y.get_den());
  r.canonicalize();
  return r;
}

/// Finest refinement a product is allowed to reach.
inline constexpr long kMaxRefinement = 1L << 20;

template <class C>
class DiffOp {
 public:
  DiffOp() : step_(1) {}
  explicit DiffOp(Rational step, Window window = Window::all()) : step_(std::move(step)), window_(window) {
    if (sgn(step_) <= 0) throw IncompatibleStep("step must be positive");
  }

  /// c Lambda^{power}; power must be a multiple of step.
  static DiffOp monomial(const C& c, const Rational& power, const Rational& step) {
    DiffOp op(step);
    op.set(op.index_of(power), c);
    return op;
  }
  static DiffOp identity(const Rational& step = 1) { return monomial(C(1), 0, step); }

  const Rational& step() const { return step_; }
  const Window& window() const { return window_; }
  const std::map<long, C>& coeffs() const { return coeffs_; }
  void set_window(const Window& w) {
    window_ = w;
    std::erase_if(coeffs_, [&](const auto& kv) { return !window_.contains(kv.first); });
  }

  long index_of(const Rational& power) const {
    Rational k = power / step_;
    if (k.get_den() != 1) throw IncompatibleStep("power " + power.get_str() + " is not a multiple of the step");
    return k.get_num().get_si();
  }
  Rational power_of(long n) const { return step_ * n; }

  /// Coefficient at index n; throws std::out_of_range outside the window.
  C at(long n) const {
    if (!window_.contains(n)) throw std::out_of_range("coefficient " + std::to_string(n) + " is outside the window");
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? C() : it->second;
  }
  C at_power(const Rational& power) const { return at(index_of(power)); }

  void set(long n, C c) {
    if (c.is_zero()) {
      coeffs_.erase(n);
    } else if (window_.contains(n)) {
      coeffs_[n] = std::move(c);
    }
  }
  void add_to(long n, const C& c) {
    if (c.is_zero() || !window_.contains(n)) return;
    auto it = coeffs_.find(n);
    if (it == coeffs_.end()) {
      coeffs_.emplace(n, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  std::optional<long> min_nonzero() const {
    return coeffs_.empty() ? std::nullopt : std::optional<long>(coeffs_.begin()->first);
  }
  std::optional<long> max_nonzero() const {
    return coeffs_.empty() ? std::nullopt : std::optional<long>(coeffs_.rbegin()->first);
  }

  /// Same operator expressed with a finer step (step must divide the current one).
  DiffOp refined(const Rational& finer) const {
    Rational ratio = step_ / finer;
    if (ratio.get_den() != 1) throw IncompatibleStep("step " + finer.get_str() + " does not refine " + step_.get_str());
    long r = ratio.get_num().get_si();
    if (r == 1) return *this;
    Window w;
    if (window_.lo) w.lo = *window_.lo * r;
    if (window_.hi) w.hi = *window_.hi * r;
    DiffOp out(finer, w);
    for (const auto& [n, c] : coeffs_) out.coeffs_.emplace(n * r, c);
    return out;
  }

  DiffOp operator-() const {
    DiffOp out = *this;
    for (auto& [n, c] : out.coeffs_) c = -c;
    return out;
  }

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b) { return combine(a, b, 1); }
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return combine(a, b, -1); }

  /// Left multiplication by a function of s.
  friend DiffOp operator*(const C& f, const DiffOp& a) {
    DiffOp out(a.step_, a.window_);
    for (const auto& [n, c] : a.coeffs_) out.set(n, f * c);
    return out;
  }

  /// (sum_n a_n Lambda^{n d})_{>= 0}
  DiffOp nonnegative_part() const {
    DiffOp out(step_);
    if (window_.lo && *window_.lo > 0) out.window_.lo = window_.lo;
    if (window_.hi) out.window_.hi = window_.hi;
    for (const auto& [n, c] : coeffs_)
      if (n >= 0) out.coeffs_.emplace(n, c);
    return out;
  }

  /// (sum_n a_n Lambda^{n d})_{< 0}
  DiffOp negative_part() const {
    DiffOp out(step_);
    out.window_.lo = window_.lo;
    if (window_.hi && *window_.hi < -1) out.window_.hi = window_.hi;
    for (const auto& [n, c] : coeffs_)
      if (n < 0) out.coeffs_.emplace(n, c);
    return out;
  }

  /// Index of the first coefficient in the window where the operators differ.
  friend std::optional<long> first_mismatch(const DiffOp& a, const DiffOp& b) {
    Rational st = rational_gcd(a.step_, b.step_);
    DiffOp x = a.refined(st), y = b.refined(st);
    Window w = intersect(x.window_, y.window_);
    std::map<long, int> idx;
    for (const auto& [n, c] : x.coeffs_) idx[n];
    for (const auto& [n, c] : y.coeffs_) idx[n];
    for (const auto& [n, unused] : idx) {
      if (!w.contains(n)) continue;
      if (!(x.at(n) - y.at(n)).is_zero()) return n;
    }
    return std::nullopt;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + it->second.to_string() + ")";
      if (it->first != 0) out += "*L^(" + power_of(it->first).get_str() + ")";
    }
    return out;
  }

 private:
  static DiffOp combine(const DiffOp& a, const DiffOp& b, int sign) {
    Rational st = rational_gcd(a.step_, b.step_);
    check_refinement(a.step_, b.step_, st);
    DiffOp x = a.refined(st), y = b.refined(st);
    DiffOp out(st, intersect(x.window_, y.window_));
    for (const auto& [n, c] : x.coeffs_) out.add_to(n, c);
    for (const auto& [n, c] : y.coeffs_) out.add_to(n, sign > 0 ? c : -c);
    return out;
  }

  static void check_refinement(const Rational& a, const Rational& b, const Rational& st) {
    Rational ra = a / st, rb = b / st;
    if (ra > kMaxRefinement || rb > kMaxRefinement)
      throw IncompatibleStep("steps " + a.get_str() + " and " + b.get_str() + " have no usable common refinement");
  }

  template <class D>
  friend DiffOp<D> op_mul(const DiffOp<D>& a, const DiffOp<D>& b);

  Rational step_;
  Window window_;
  std::map<long, C> coeffs_;
};

namespace detail {

// Highest index that is either a nonzero coefficient or unknown from below.
template <class C>
std::optional<long> top_of(const DiffOp<C>& x) {
  std::optional<long> t = x.max_nonzero();
  if (x.window().lo) t = std::max(t.value_or(*x.window().lo - 1), *x.window().lo - 1);
  return t;
}

template <class C>
std::optional<long> bottom_of(const DiffOp<C>& x) {
  std::optional<long> t = x.min_nonzero();
  if (x.window().hi) t = std::min(t.value_or(*x.window().hi + 1), *x.window().hi + 1);
  return t;
}

}  // namespace detail

/// Product with the rule (a Lambda^x)(b Lambda^y) = a b(s + x) Lambda^{x+y}. The
/// window is the set of indices whose every contributing pair is known.
template <class C>
DiffOp<C> op_mul(const DiffOp<C>& a, const DiffOp<C>& b) {
  Rational st = rational_gcd(a.step_, b.step_);
  DiffOp<C>::check_refinement(a.step_, b.step_, st);
  DiffOp<C> x = a.refined(st), y = b.refined(st);
  const Window& wx = x.window();
  const Window& wy = y.window();

  Window w;
  bool empty = false;
  auto raise_lo = [&](long v) { w.lo = w.lo ? std::max(*w.lo, v) : v; };
  auto lower_hi = [&](long v) { w.hi = w.hi ? std::min(*w.hi, v) : v; };
  // Unknown low part of one factor meets the other factor's top.
  if (wx.lo) {
    if (wy.hi) empty = true;
    else if (auto t = detail::top_of(y)) raise_lo(*wx.lo + *t);
  }
  if (wy.lo) {
    if (wx.hi) empty = true;
    else if (auto t = detail::top_of(x)) raise_lo(*wy.lo + *t);
  }
  if (wx.hi) {
    if (auto t = detail::bottom_of(y)) lower_hi(*wx.hi + *t);
  }
  if (wy.hi) {
    if (auto t = detail::bottom_of(x)) lower_hi(*wy.hi + *t);
  }
  if (empty) w = Window::empty();

  DiffOp<C> out(st, w);
  if (empty) return out;
  for (const auto& [i, ci] : x.coeffs_) {
    const Rational shift = st * i;
    for (const auto& [j, cj] : y.coeffs_) {
      if (!w.contains(i + j)) continue;
      out.add_to(i + j, ci * shift_s(cj, shift));
    }
  }
  return out;
}

template <class C>
DiffOp<C> operator*(const DiffOp<C>& a, const DiffOp<C>& b) {
  return op_mul(a, b);
}

template <class C>
DiffOp<C> op_pow(const DiffOp<C>& a, int n) {
  if (n < 0) throw std::invalid_argument("op_pow needs a non-negative exponent");
  DiffOp<C> out = DiffOp<C>::identity(a.step());
  for (int k = 0; k < n; ++k) out = op_mul(out, a);
  return out;
}

template <class C>
DiffOp<C> commutator(const DiffOp<C>& a, const DiffOp<C>& b) {
  return op_mul(a, b) - op_mul(b, a);
}

enum class Direction {
  Lower,  // expand in decreasing powers below the top term
  Upper,  // expand in increasing powers above the bottom term
};

inline QFieldElem coefficient_inverse(const QFieldElem& c) {
  if (c.is_zero()) throw NonInvertibleLeading("leading coefficient is zero");
  return c.inverse();
}

/// Right inverse by back-substitution, `depth` steps below (Lower) or above
/// (Upper) the leading power. The leading term is the top term for Lower and
/// the bottom term for Upper; the operator must be known on that whole side.
template <class C>
DiffOp<C> op_inverse(const DiffOp<C>& a, Direction dir, long depth) {
  if (depth < 0) throw std::invalid_argument("op_inverse depth must be non-negative");
  const bool lower = dir == Direction::Lower;
  const Window& wa = a.window();
  if ((lower && wa.hi) || (!lower && wa.lo))
    throw NonInvertibleLeading("leading side of the operator is truncated");
  auto lead_idx = lower ? a.max_nonzero() : a.min_nonzero();
  if (!lead_idx) throw NonInvertibleLeading("operator is zero on its window");
  const long N = *lead_idx;
  const int sgn_dir = lower ? -1 : 1;
  // Depth limited by how far the operator is known away from its lead.
  long reach = depth;
  if (lower && wa.lo) reach = std::min(reach, N - *wa.lo);
  if (!lower && wa.hi) reach = std::min(reach, *wa.hi - N);
  const C lead_inv = coefficient_inverse(a.at(N));
  const Rational& st = a.step();

  Window w;
  if (lower) w.lo = -N - reach;
  else w.hi = -N + reach;
  DiffOp<C> out(st, w);
  // b_m(s) multiplies Lambda^{(-N + dir*m) st}; coefficient of Lambda^{dir*m st} in a*b:
  // sum_i a_{N+dir*i}(s) b_{m-i}(s + (N + dir*i) st) = [m == 0]
  std::vector<C> b;
  b.reserve(reach + 1);
  for (long m = 0; m <= reach; ++m) {
    C rhs = m == 0 ? C(1) : C();
    for (long i = 1; i <= m; ++i) {
      long ai = N + sgn_dir * i;
      auto it = a.coeffs().find(ai);
      if (it == a.coeffs().end()) continue;
      rhs -= it->second * shift_s(b[m - i], st * ai);
    }
    // b_m(s + N st) = rhs(s) / a_N(s)
    C bm = shift_s(lead_inv * rhs, -(st * N));
    out.set(-N + sgn_dir * m, bm);
    b.push_back(std::move(bm));
  }
  return out;
}

}  // namespace toda
