#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gwloc/rational.hpp"

namespace gwloc {

BigInt factorial(unsigned long n);
BigInt binomial(long n, long k);

/// Bernoulli number B_n for even n >= 2, with B_2 = 1/6, B_4 = -1/30.
/// Odd indices are rejected because only |B_2g| is ever consumed.
Rational bernoulli(int n);

/// Unordered multiset of positive integers, stored non-increasing.
class Partition {
 public:
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return total_; }
  int length() const { return static_cast<int>(parts_.size()); }
  BigInt product() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// All partitions of d in lexicographically descending order:
/// (3), (2,1), (1,1,1).
std::vector<Partition> partitions_of(int d);

/// Product over distinct part values of (multiplicity)!.
BigInt aut_order(const Partition& m);

/// Visits every vector of `parts` non-negative integers summing to `total`.
/// The span passed to `visit` is only valid during the call.
void for_each_weak_composition(int total, int parts,
                               const std::function<void(std::span<const int>)>& visit);

}  // namespace gwloc
