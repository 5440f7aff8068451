#include "doctest.h"
#include "toda/vertex.hpp"

using namespace toda;

namespace {

QFieldElem q(const Rational& e) { return qpow(ExponentPoly(e)); }

// Principal specialization by the hook formula:
// s_lam(1, x, x^2, ...) = x^{n(lam)} / prod_boxes (1 - x^{hook}), with x = q^{sigma}.
QFieldElem hook_formula(const Partition& lam, int sigma) {
  const Partition c = conjugate(lam);
  long n = 0;
  for (int i = 0; i < lam.length(); ++i) n += static_cast<long>(i) * lam[i];
  QFieldElem den(1);
  for (int i = 0; i < lam.length(); ++i)
    for (int j = 0; j < lam[i]; ++j) {
      int h = lam[i] - j + c[j] - i - 1;
      den *= QFieldElem(1) - q(sigma * h);
    }
  // the shift by 1/2 in every variable contributes x^{|lam|/2}
  return q(sigma * (Rational(n) + frac(lam.weight(), 2))) / den;
}

}  // namespace

TEST_CASE("vertex examples") {
  CHECK(vertex_def({}, {}) == QFieldElem(1));
  CHECK(vertex_def({1}, {}) == QFieldElem(1) / (q(frac(1, 2)) - q(frac(-1, 2))));
  auto w11 = (QFieldElem(1) - q(1) + q(2)) / ((QFieldElem(1) - q(1)) * (QFieldElem(1) - q(1)));
  CHECK(vertex_def({1}, {1}) == w11);
  CHECK(vertex_hook({1}, {1}) == w11);
  CHECK(vertex_hook({}, {}) == QFieldElem(1));
  CHECK(vertex_hook({1}, {}) == QFieldElem(1) / (q(frac(1, 2)) - q(frac(-1, 2))));
  CHECK(vertex_hook({2}, {1}) == vertex_def({2}, {1}));
  CHECK_THROWS_AS(VertexEngine(2).vertex_def({2}, {1}), DegreeBoundExceeded);
}

TEST_CASE("gamma matrix element examples") {
  CHECK(gamma_matrix_element({}, {}) == QFieldElem(1));
  auto s1 = -QFieldElem(1) / (q(frac(1, 2)) - q(frac(-1, 2)));
  CHECK(gamma_matrix_element({1}, {}) == s1);
  CHECK(gamma_matrix_element({1}, {1}) == s1 * s1 + QFieldElem(1));
}

TEST_CASE("one-leg values follow the hook formula") {
  VertexEngine e(6);
  for (const auto& lam : enumerate(6)) {
    CHECK(e.skew_at_rho(lam, {}) == hook_formula(lam, -1));
    CHECK(e.skew_at_neg_rho(lam, {}) == hook_formula(lam, 1));
    CHECK(e.vertex_def(lam, {}) == hook_formula(lam, -1));
    CHECK(e.vertex_def({}, lam) == hook_formula(lam, -1));
  }
}

TEST_CASE("three vertex expressions agree") {
  VertexEngine e(5);
  for (const auto& nu : enumerate(5))
    for (const auto& nb : enumerate(5 - nu.weight())) {
      auto d = e.vertex_def(nu, nb);
      CHECK(d == e.vertex_hook(nu, nb));
      CHECK(d == e.vertex_fermionic(nu, nb));
    }
}

TEST_CASE("vertex symmetries") {
  VertexEngine e(4);
  for (const auto& nu : enumerate(4))
    for (const auto& nb : enumerate(4 - nu.weight())) {
      auto d = e.vertex_def(nu, nb);
      CHECK(d.s_free());
      CHECK(d == e.vertex_def(nb, nu));
      auto flipped = e.vertex_def(conjugate(nu), conjugate(nb)).inverted_q();
      CHECK(d == ((nu.weight() + nb.weight()) % 2 ? -flipped : flipped));
    }
}

TEST_CASE("R bullet examples") {
  auto r0 = R_bullet(1, 0);
  CHECK(r0.entries.size() == 1);
  CHECK(r0.coefficient({}, {}) == QFieldElem(1));
  auto r = R_bullet(2, 2);
  CHECK(r.coefficient({1}, {}) == QFieldElem(1) / (q(frac(1, 2)) - q(frac(-1, 2))));
  CHECK(r.coefficient({1}, {1}) == vertex_def({1}, {1}));
  // p1^2 collects S_(2) and S_(1,1) with coefficient 1/2 each
  auto expect = (q(frac(kappa({2}) * 2, 2)) * vertex_def({2}, {}) + q(frac(kappa({1, 1}) * 2, 2)) * vertex_def({1, 1}, {})) *
                QFieldElem(frac(1, 2));
  CHECK(r.coefficient({2}, {}) == expect);
  CHECK_THROWS_AS(R_bullet(0, 1), InvalidTau);
}

TEST_CASE("tau table validation") {
  CHECK_THROWS_AS(tau_table({2, 2, 1}, 0, 1), NonCoprime);
  CHECK_THROWS_AS(tau_table({1, 1, -1}, 0, 1), InvalidTau);
  CHECK_NOTHROW(tau_table({2, 1, -1}, 0, 1));
}

TEST_CASE("tau table examples") {
  auto t = tau_table({1, 1, 1}, 0, 2);
  CHECK(t.coefficient({}, {}) == QFieldElem(1));
  CHECK(t.coefficient({1}, {}) == qpow(ExponentPoly(0, 2, 0)) * -QFieldElem(1) / (q(frac(1, 2)) - q(frac(-1, 2))));
  CHECK(tau_table({1, 1, 1}, 0, 0).entries.size() == 1);
  // linear rule for the shift: exponents move by c|nu|(tau+1) + c|nubar|(1/tau+1)
  TauParams p{2, 3, 1};
  auto t0 = tau_table(p, 0, 2), tc = tau_table(p, frac(1, 3), 2);
  const Rational tau = p.tau();
  for (const auto& [key, entry] : t0.entries) {
    Rational delta = frac(1, 3) * ((tau + 1) * key.first.weight() + (1 / tau + 1) * key.second.weight());
    CHECK(tc.entries.at(key).exponent == entry.exponent + ExponentPoly(delta));
  }
}

TEST_CASE("tau exponents match the K matrix elements") {
  for (TauParams p : {TauParams{1, 1, 1}, TauParams{1, 2, 1}, TauParams{2, 3, 1}, TauParams{3, 2, -1}}) {
    auto t = tau_table(p, 0, 3);
    const Rational tau = p.tau();
    for (const auto& [key, entry] : t.entries) {
      // (tau+1)(kappa + 2 s |nu| + (4 s^3 - s)/12)/2, split into the cubic scalar and the rest
      const auto& [nu, nb] = key;
      Rational a = tau + 1, b = 1 / tau + 1;
      CHECK(entry.exponent.c2 == 0);
      CHECK(entry.exponent.c1 == a * nu.weight() + b * nb.weight());
      CHECK(entry.exponent.c0 == (a * kappa(nu) + b * kappa(nb)) / 2);
      CHECK(t.global.c3 == (a + b) / 6);
      CHECK(t.global.c1 == -(a + b) / 24);
      CHECK(t.global.c2 == 0);
      CHECK(t.global.c0 == 0);
      // bookkeeping bound on denominators
      Rational scaled = entry.exponent.c0 * (24 * p.a * p.b * (p.a + p.b));
      CHECK(scaled.get_den() == 1);
    }
  }
}

TEST_CASE("tau s-shift consistency") {
  VertexEngine engine(8);
  for (TauParams p : {TauParams{1, 1, 1}, TauParams{1, 2, 1}, TauParams{2, 1, -1}}) {
    auto t0 = tau_table(p, 0, 3, engine);
    for (Rational c : {frac(1, 2), frac(1, 3), frac(-2, 5)}) {
      auto tc = tau_table(p, c, 3, engine);
      CHECK(tc.global == t0.global.shifted(c));
      for (const auto& [key, entry] : t0.entries)
        CHECK(tc.coefficient(key.first, key.second) == shift_s(t0.coefficient(key.first, key.second), c));
    }
  }
}

TEST_CASE("plain coefficients carry the conjugation sign") {
  auto t = tau_table({1, 1, 1}, 0, 2);
  CHECK(t.plain_coefficient({1}, {2}) == t.coefficient({1}, {1, 1}));
  CHECK(t.plain_coefficient({}, {1}) == -t.coefficient({}, {1}));
}
