#include "toda/partitions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "json.hpp"

namespace toda {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (std::any_of(parts_.begin(), parts_.end(), [](int p) { return p < 0; }))
    throw std::invalid_argument("partition parts must be non-negative");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::vector<int> Partition::cycle_type() const {
  std::vector<int> m(parts_.empty() ? 0 : parts_.front(), 0);
  for (int p : parts_) ++m[p - 1];
  return m;
}

bool Partition::contained_in(const Partition& other) const {
  if (length() > other.length()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i] > other.parts_[i]) return false;
  return true;
}

std::string Partition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out + "]";
}

Partition Partition::parse(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad partition '" + std::string(text) + "': " + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("partition must be a JSON array: " + std::string(text));
  std::vector<int> parts;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument("partition parts must be integers");
    parts.push_back(v.get<int>());
  }
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i] > parts[i - 1]) throw std::invalid_argument("partition parts must be non-increasing");
  return Partition(std::move(parts));
}

Partition conjugate(const Partition& mu) {
  std::vector<int> out;
  for (int j = 1; j <= mu[0]; ++j) {
    int c = 0;
    while (c < mu.length() && mu[c] >= j) ++c;
    out.push_back(c);
  }
  return Partition(std::move(out));
}

long kappa(const Partition& nu) {
  long k = 0;
  for (int i = 0; i < nu.length(); ++i) k += static_cast<long>(nu[i]) * (nu[i] - 2 * (i + 1) + 1);
  return k;
}

long z_factor(const Partition& mu) {
  long z = 1;
  auto m = mu.cycle_type();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int k = 1; k <= m[i]; ++k) z *= static_cast<long>(i + 1) * k;
  return z;
}

Rational pochhammer(const Rational& a, int k) {
  Rational out = 1;
  for (int j = 0; j < k; ++j) out *= a + j;
  return out;
}

std::string ImagRational::to_string() const {
  std::string v = value.get_str();
  return power == 0 ? v : v + "*i";
}

ImagRational comb_factor(const Partition& mu, const Partition& mubar, const Rational& tau) {
  if (sgn(tau) == 0 || tau == -1) throw InvalidTau("combinatorial factor needs tau not in {0, -1}");
  if (mu.empty() && mubar.empty()) throw std::invalid_argument("combinatorial factor undefined for two empty partitions");
  const int l = mu.length() + mubar.length();
  Rational v = -1;
  v /= Rational(z_factor(mu)) * Rational(z_factor(mubar));
  Rational tt = tau * (tau + 1);
  for (int k = 0; k < l - 1; ++k) v *= tt;
  auto leg = [&](const Partition& p, const Rational& t) {
    for (int part : p.parts()) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(part));
      v *= pochhammer(part * t, part - 1) / Rational(f);
    }
  };
  leg(mu, tau);
  leg(mubar, 1 / tau);
  ImagRational out;
  out.power = l % 2;
  if (l % 4 >= 2) v = -v;
  out.value = v;
  return out;
}

std::vector<Partition> partitions_of(int weight) {
  std::vector<Partition> out;
  if (weight < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(weight, weight);
  return out;
}

std::vector<Partition> enumerate(int max_weight) {
  if (max_weight < 0) throw std::invalid_argument("maximum weight must be non-negative");
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto ps = partitions_of(w);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

std::vector<Partition> common_subpartitions(const Partition& a, const Partition& b) {
  std::vector<int> bound;
  for (int i = 0; i < std::min(a.length(), b.length()); ++i) bound.push_back(std::min(a[i], b[i]));
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_part) {
    out.emplace_back(cur);
    if (i == bound.size()) return;
    for (int p = 1; p <= std::min(max_part, bound[i]); ++p) {
      cur.push_back(p);
      rec(i + 1, p);
      cur.pop_back();
    }
  };
  rec(0, bound.empty() ? 0 : bound[0]);
  std::sort(out.begin(), out.end(), [](const Partition& x, const Partition& y) {
    if (x.weight() != y.weight()) return x.weight() < y.weight();
    return y < x;
  });
  return out;
}

}  // namespace toda
