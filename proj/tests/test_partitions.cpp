#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "toda/partitions.hpp"

using namespace toda;

namespace {

// p(n) from Euler's pentagonal recurrence.
std::vector<long> partition_counts(int n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      long sign = (k % 2) ? 1 : -1;
      p[m] += sign * p[m - g1];
      if (g2 <= m) p[m] += sign * p[m - g2];
    }
  }
  return p;
}

// Twice the sum of box contents (column - row).
long content_twice(const Partition& nu) {
  long c = 0;
  for (int i = 0; i < nu.length(); ++i)
    for (int j = 0; j < nu[i]; ++j) c += j - i;
  return 2 * c;
}

// n!/z(mu) counted by brute force over S_n.
std::map<Partition, long> class_sizes(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<Partition, long> out;
  do {
    std::vector<bool> seen(n, false);
    std::vector<int> cycles;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        ++len;
      }
      cycles.push_back(len);
    }
    ++out[Partition(cycles)];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST_CASE("conjugate examples") {
  CHECK(conjugate({3, 1}) == Partition{2, 1, 1});
  CHECK(conjugate({}) == Partition{});
  CHECK(conjugate({2, 2}) == Partition{2, 2});
}

TEST_CASE("kappa examples") {
  CHECK(kappa({2}) == 2);
  CHECK(kappa({1, 1}) == -2);
  CHECK(kappa({2, 1}) == 0);
}

TEST_CASE("z_factor examples") {
  CHECK(z_factor({2, 1}) == 2);
  CHECK(z_factor({1, 1, 1}) == 6);
  CHECK(z_factor({}) == 1);
}

TEST_CASE("enumerate examples") {
  CHECK(enumerate(0) == std::vector<Partition>{Partition{}});
  CHECK(enumerate(2) == std::vector<Partition>{{}, {1}, {2}, {1, 1}});
  CHECK(enumerate(4).size() == 12);
  CHECK_THROWS(enumerate(-1));
}

TEST_CASE("comb_factor examples") {
  auto c = comb_factor({1}, {}, 1);
  CHECK(c.power == 1);
  CHECK(c.value == -1);
  CHECK(pochhammer(2, 3) == 24);
  CHECK(comb_factor({}, {1}, 1) == c);
  CHECK_THROWS_AS(comb_factor({1}, {}, 0), InvalidTau);
  CHECK_THROWS_AS(comb_factor({1}, {}, -1), InvalidTau);
}

TEST_CASE("comb_factor against a hand evaluation") {
  // mu = (2,1), mubar = (1), tau = 2: l = 3, z = 2 * 1,
  // -(i^3)/2 * 6^2 * (4)_1/2! * (1)_0/1! * (1/2)_0/1! = i * 36
  auto c = comb_factor({2, 1}, {1}, 2);
  CHECK(c.power == 1);
  CHECK(c.value == 36);
  // mu = (1,1), mubar = (), tau = 1/2: -(i^2)/2 * (3/4) = 3/8
  auto d = comb_factor({1, 1}, {}, frac(1, 2));
  CHECK(d.power == 0);
  CHECK(d.value == frac(3, 8));
}

TEST_CASE("a/b symmetry of the combinatorial factor") {
  for (auto tau : {frac(1), frac(2, 3), frac(-5, 2)}) {
    for (const auto& mu : enumerate(4)) {
      for (const auto& mb : enumerate(3)) {
        if (mu.empty() && mb.empty()) continue;
        // tau^{-1}(tau^{-1}+1) = tau(tau+1) * tau^{-3}
        auto lhs = comb_factor(mb, mu, 1 / tau);
        auto rhs = comb_factor(mu, mb, tau);
        for (int k = 0; k < mu.length() + mb.length() - 1; ++k) rhs.value /= tau * tau * tau;
        CHECK(lhs == rhs);
        if (tau == 1) CHECK(lhs == comb_factor(mu, mb, tau));
      }
    }
  }
}

TEST_CASE("partition invariants up to weight 8") {
  for (const auto& nu : enumerate(8)) {
    auto c = conjugate(nu);
    CHECK(kappa(c) == -kappa(nu));
    CHECK(kappa(nu) == content_twice(nu));
    CHECK(c.weight() == nu.weight());
    CHECK(c.length() == nu[0]);
    CHECK(conjugate(c) == nu);
  }
}

TEST_CASE("enumeration counts and ordering") {
  auto p = partition_counts(12);
  for (int w = 0; w <= 12; ++w) {
    auto all = enumerate(w);
    CHECK(static_cast<long>(all.size()) == std::accumulate(p.begin(), p.begin() + w + 1, 0L));
    CHECK(static_cast<long>(partitions_of(w).size()) == p[w]);
    for (std::size_t i = 1; i < all.size(); ++i) {
      bool ordered = all[i - 1].weight() < all[i].weight() ||
                     (all[i - 1].weight() == all[i].weight() && all[i] < all[i - 1]);
      CHECK(ordered);
    }
  }
}

TEST_CASE("z_factor is the centralizer order") {
  for (int n = 1; n <= 6; ++n) {
    long fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    for (const auto& [mu, size] : class_sizes(n)) CHECK(fact / z_factor(mu) == size);
  }
}

TEST_CASE("containment and common subpartitions") {
  CHECK(Partition{1}.contained_in({2}));
  CHECK_FALSE(Partition{2}.contained_in({1, 1}));
  auto common = common_subpartitions({2, 1}, {3});
  CHECK(common == std::vector<Partition>{{}, {1}, {2}});
  for (const auto& a : enumerate(5))
    for (const auto& b : enumerate(4)) {
      std::vector<Partition> brute;
      for (const auto& e : enumerate(std::min(a.weight(), b.weight())))
        if (e.contained_in(a) && e.contained_in(b)) brute.push_back(e);
      CHECK(common_subpartitions(a, b) == brute);
    }
}

TEST_CASE("text form") {
  CHECK(Partition{3, 1}.to_string() == "[3,1]");
  CHECK(Partition::parse("[3,1]") == Partition{3, 1});
  CHECK(Partition::parse(" [ ] ") == Partition{});
  CHECK_THROWS(Partition::parse("[1,3]"));
  CHECK_THROWS(Partition::parse("3,1"));
  CHECK_THROWS(Partition::parse("[-1]"));
}
