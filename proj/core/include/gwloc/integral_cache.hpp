#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "gwloc/rational.hpp"

namespace gwloc {

/// Identifies one tautological integral on M_{g,n}: genus, the ψ-exponent
/// multiset (kept sorted descending) and the power of the genus-one λ-class.
struct IntegralKey {
  int genus = 0;
  std::vector<int> psi_exponents;
  int lambda_power = 0;

  IntegralKey() = default;
  IntegralKey(int g, std::vector<int> exponents, int lambda);

  friend bool operator==(const IntegralKey&, const IntegralKey&) = default;
  friend bool operator<(const IntegralKey& a, const IntegralKey& b);
};

struct IntegralKeyHash {
  std::size_t operator()(const IntegralKey& key) const noexcept;
};

/// Memo table for vertex integrals. A single logical map shared by all
/// workers; reads take a shared lock, inserts an exclusive one.
class IntegralCache {
 public:
  std::optional<Rational> find(const IntegralKey& key) const;
  void insert(const IntegralKey& key, const Rational& value);

  /// Returns the cached value or computes, stores and returns it.
  Rational get_or_compute(const IntegralKey& key, const std::function<Rational()>& compute);

  /// Sorted snapshot, used for persistence and equality checks.
  std::vector<std::pair<IntegralKey, Rational>> entries() const;
  void merge(const std::vector<std::pair<IntegralKey, Rational>>& entries);
  std::size_t size() const;
  void clear();

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }
  void reset_counters();

  /// Process-wide instance used when callers do not supply their own.
  static IntegralCache& shared();

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<IntegralKey, Rational, IntegralKeyHash> map_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

}  // namespace gwloc
