#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "toda/interval.hpp"
#include "toda/schur.hpp"

using namespace toda;

namespace {

PowerSumPoly p(int k) { return PowerSumPoly::generator(k); }

// S_m from m S_m = sum_k p_k S_{m-k}.
std::vector<PowerSumPoly> h_by_recurrence(int n) {
  std::vector<PowerSumPoly> h{PowerSumPoly(1)};
  for (int m = 1; m <= n; ++m) {
    PowerSumPoly acc;
    for (int k = 1; k <= m; ++k) acc += p(k) * h[m - k];
    h.push_back(acc * frac(1, m));
  }
  return h;
}

// Sum over semistandard fillings of the skew shape mu/nu with entries 1..N.
Rational tableau_sum(const Partition& mu, const Partition& nu, const std::vector<Rational>& x) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < mu.length(); ++i)
    for (int j = nu[i]; j < mu[i]; ++j) cells.push_back({i, j});
  std::vector<std::vector<int>> fill(mu.length(), std::vector<int>(mu[0], 0));
  const int n = static_cast<int>(x.size());
  Rational total = 0;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t c, Rational w) {
    if (c == cells.size()) {
      total += w;
      return;
    }
    auto [i, j] = cells[c];
    int lo = 1;
    if (j > nu[i]) lo = std::max(lo, fill[i][j - 1]);
    if (i > 0 && j >= nu[i - 1] && j < mu[i - 1]) lo = std::max(lo, fill[i - 1][j] + 1);
    for (int v = lo; v <= n; ++v) {
      fill[i][j] = v;
      rec(c + 1, w * x[v - 1]);
    }
    fill[i][j] = 0;
  };
  rec(0, Rational(1));
  return total;
}

Rational eval_at_variables(const PowerSumPoly& f, const std::vector<Rational>& x) {
  Rational out = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (std::size_t k = 0; k < m.size(); ++k) {
      Rational pk = 0;
      for (const auto& xi : x) {
        Rational pw = 1;
        for (std::size_t e = 0; e <= k; ++e) pw *= xi;
        pk += pw;
      }
      for (int e = 0; e < m[k]; ++e) t *= pk;
    }
    out += t;
  }
  return out;
}

double geometric_partial(const std::function<double(int)>& exponent, double q, int terms) {
  double s = 0;
  for (int i = 1; i <= terms; ++i) s += std::pow(q, exponent(i));
  return s;
}

}  // namespace

TEST_CASE("complete homogeneous examples") {
  CHECK(complete_homogeneous(1, 4) == p(1));
  CHECK(complete_homogeneous(2, 4) == p(1) * p(1) * frac(1, 2) + p(2) * frac(1, 2));
  CHECK(complete_homogeneous(-1, 4).is_zero());
  CHECK(complete_homogeneous(0, 4) == PowerSumPoly(1));
  CHECK_THROWS_AS(complete_homogeneous(5, 4), DegreeBoundExceeded);
}

TEST_CASE("complete homogeneous agrees with the Newton recurrence") {
  auto h = h_by_recurrence(9);
  SchurContext ctx(9);
  for (int m = 0; m <= 9; ++m) CHECK(ctx.complete_homogeneous(m) == h[m]);
}

TEST_CASE("schur examples") {
  CHECK(schur({1}, 6) == p(1));
  CHECK(schur({1, 1}, 6) == p(1) * p(1) * frac(1, 2) - p(2) * frac(1, 2));
  CHECK(schur({2, 1}, 6) == p(1) * p(1) * p(1) * frac(1, 3) - p(3) * frac(1, 3));
  CHECK(schur({2, 1}, 6).to_string() == "1/3*p1^3 - 1/3*p3");
  CHECK(schur({}, 0) == PowerSumPoly(1));
  CHECK_THROWS_AS(schur({3, 1}, 3), DegreeBoundExceeded);
}

TEST_CASE("skew schur examples") {
  CHECK(skew_schur({2}, {1}, 4) == p(1));
  CHECK(skew_schur({1}, {1}, 4) == PowerSumPoly(1));
  CHECK(skew_schur({1}, {2}, 4).is_zero());
  CHECK(skew_schur({3, 1}, {}, 4) == schur({3, 1}, 4));
}

TEST_CASE("negate_p examples") {
  CHECK(negate_p(schur({1}, 4)) == -p(1));
  CHECK(negate_p(schur({2}, 4)) == schur({1, 1}, 4));
  // (-1)^{|mu|+|nu|} S_{conj mu / conj nu} with mu = (2), nu = (1)
  CHECK(negate_p(skew_schur({2}, {1}, 4)) == -skew_schur({1, 1}, {1}, 4));
}

TEST_CASE("schur matches semistandard tableaux") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  SchurContext ctx(6);
  for (const auto& mu : enumerate(5)) {
    for (int trial = 0; trial < 2; ++trial) {
      std::vector<Rational> x;
      for (int i = 0; i < std::max(1, mu.weight()); ++i) x.push_back(frac(num(rng), den(rng)));
      CHECK(eval_at_variables(ctx.schur(mu), x) == tableau_sum(mu, {}, x));
    }
  }
  for (const auto& mu : enumerate(5))
    for (const auto& nu : enumerate(3)) {
      std::vector<Rational> x{frac(2, 3), frac(-1), frac(3, 2), frac(1, 5), frac(-7, 4)};
      if (nu.contained_in(mu)) CHECK(eval_at_variables(ctx.skew_schur(mu, nu), x) == tableau_sum(mu, nu, x));
      else CHECK(ctx.skew_schur(mu, nu).is_zero());
    }
}

TEST_CASE("determinant size independence") {
  SchurContext ctx(6);
  for (const auto& mu : enumerate(6)) CHECK(ctx.schur(mu, mu.length()) == ctx.schur(mu, mu.length() + 2));
}

TEST_CASE("negation identity") {
  SchurContext ctx(6);
  for (const auto& mu : enumerate(6)) {
    auto sign = mu.weight() % 2 ? Rational(-1) : Rational(1);
    CHECK(negate_p(ctx.schur(mu)) == ctx.schur(conjugate(mu)) * sign);
  }
  for (const auto& mu : enumerate(5))
    for (const auto& nu : enumerate(5)) {
      auto sign = (mu.weight() + nu.weight()) % 2 ? Rational(-1) : Rational(1);
      CHECK(negate_p(ctx.skew_schur(mu, nu)) == ctx.skew_schur(conjugate(mu), conjugate(nu)) * sign);
    }
}

TEST_CASE("homogeneity") {
  SchurContext ctx(7);
  for (const auto& mu : enumerate(7)) CHECK(ctx.schur(mu).is_homogeneous(mu.weight()));
}

TEST_CASE("time variables") {
  // p_k = k t_k: S_2 = t_1^2/2 + t_2
  CHECK(to_time_variables(complete_homogeneous(2, 2)) == p(1) * p(1) * frac(1, 2) + p(2));
}

TEST_CASE("bareiss handles zero pivots") {
  std::vector<std::vector<PowerSumPoly>> m{{PowerSumPoly(), p(1)}, {p(2), PowerSumPoly(3)}};
  CHECK(bareiss_determinant(m) == -(p(1) * p(2)));
  std::vector<std::vector<PowerSumPoly>> z{{p(1), p(2)}, {p(1) * p(1), p(1) * p(2)}};
  CHECK(bareiss_determinant(z).is_zero());
}

TEST_CASE("special point examples") {
  CHECK(specialize_rho(1) == QFieldElem(1) / (qpow(frac(1, 2)) - qpow(frac(-1, 2))));
  for (int k = 1; k <= 4; ++k) CHECK(specialize_nu_rho({}, k) == specialize_rho(k));
  CHECK(specialize_nu_rho({1}, 1) == qpow(frac(1, 2)) + qpow(frac(-3, 2)) / (QFieldElem(1) - qpow(frac(-1))));
  CHECK(specialize_neg_rho(2) == -QFieldElem(1) / (qpow(frac(1)) - qpow(frac(-1))));
}

TEST_CASE("special points match convergent series") {
  // With q = 3 the points x_i = q^{nu_i - i + 1/2} decay geometrically.
  for (const auto& nu : enumerate(3)) {
    for (int k = 1; k <= 3; ++k) {
      double series = geometric_partial([&](int i) { return k * (nu[i - 1] - i + 0.5); }, 3.0, 80);
      auto v = eval(specialize_nu_rho(nu, k), 3, 0);
      CHECK(std::abs(v.mid() - series) < 1e-12 * std::max(1.0, std::abs(series)));
    }
  }
  // and x_i = q^{i - 1/2} decays for q = 1/3
  for (int k = 1; k <= 3; ++k) {
    double series = geometric_partial([&](int i) { return k * (i - 0.5); }, 1.0 / 3, 80);
    CHECK(std::abs(eval(specialize_neg_rho(k), frac(1, 3), 0).mid() - series) < 1e-12);
  }
}

TEST_CASE("power sums at nu+rho and -conj(nu)-rho are opposite") {
  for (const auto& nu : enumerate(4))
    for (int k = 1; k <= 4; ++k) CHECK(specialize_nu_rho(nu, k) == -specialize_neg_nu_rho(conjugate(nu), k));
}

TEST_CASE("evaluation is a ring homomorphism") {
  SchurContext ctx(4);
  auto sp = nu_rho_point({2, 1}, 4);
  for (const auto& a : enumerate(2))
    for (const auto& b : enumerate(2)) {
      auto fa = ctx.schur(a), fb = ctx.schur(b);
      CHECK(evaluate(fa * fb, sp) == evaluate(fa, sp) * evaluate(fb, sp));
      CHECK(evaluate(fa + fb, sp) == evaluate(fa, sp) + evaluate(fb, sp));
    }
}
