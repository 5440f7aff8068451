#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "toda/errors.hpp"
#include "toda/qfield.hpp"

namespace toda {

/// Non-increasing sequence of positive integers.
class Partition {
 public:
  Partition() = default;
  /// Sorts and drops zeros; throws std::invalid_argument on negative parts.
  Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int weight() const;
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  /// i-th part (0-based), 0 beyond the length.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  /// Multiplicities m_1, m_2, ... (index i holds m_{i+1}).
  std::vector<int> cycle_type() const;
  /// Componentwise containment: this[i] <= other[i] for all i.
  bool contained_in(const Partition& other) const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

  /// "[3,1]"; the empty partition is "[]".
  std::string to_string() const;
  static Partition parse(std::string_view text);

 private:
  std::vector<int> parts_;
};

Partition conjugate(const Partition& mu);
/// sum nu_i (nu_i - 2i + 1), i counted from 1.
long kappa(const Partition& nu);
/// prod_i i^{m_i} m_i!
long z_factor(const Partition& mu);
/// (a)_k = a (a+1) ... (a+k-1)
Rational pochhammer(const Rational& a, int k);

/// sqrt(-1)^power * value with power in {0, 1}; the sign of higher powers is
/// folded into value.
struct ImagRational {
  int power = 0;
  Rational value;
  friend bool operator==(const ImagRational&, const ImagRational&) = default;
  std::string to_string() const;
};

ImagRational comb_factor(const Partition& mu, const Partition& mubar, const Rational& tau);

/// All partitions of weight <= max_weight, by weight and then descending
/// lexicographic order.
std::vector<Partition> enumerate(int max_weight);
/// All partitions of exactly the given weight, descending lexicographic.
std::vector<Partition> partitions_of(int weight);
/// Partitions contained in both arguments.
std::vector<Partition> common_subpartitions(const Partition& a, const Partition& b);

}  // namespace toda
