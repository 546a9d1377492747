#include "gwloc/integral_cache.hpp"

#include <algorithm>
#include <mutex>

namespace gwloc {

IntegralKey::IntegralKey(int g, std::vector<int> exponents, int lambda)
    : genus(g), psi_exponents(std::move(exponents)), lambda_power(lambda) {
  std::sort(psi_exponents.begin(), psi_exponents.end(), std::greater<>());
}

bool operator<(const IntegralKey& a, const IntegralKey& b) {
  if (a.genus != b.genus) return a.genus < b.genus;
  if (a.lambda_power != b.lambda_power) return a.lambda_power < b.lambda_power;
  return a.psi_exponents < b.psi_exponents;
}

std::size_t IntegralKeyHash::operator()(const IntegralKey& key) const noexcept {
  std::size_t h = static_cast<std::size_t>(key.genus) * 1000003u + static_cast<std::size_t>(key.lambda_power);
  for (int e : key.psi_exponents) h = h * 1099511628211ull ^ static_cast<std::size_t>(e + 1);
  return h;
}

std::optional<Rational> IntegralCache::find(const IntegralKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = map_.find(key);
  if (it == map_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void IntegralCache::insert(const IntegralKey& key, const Rational& value) {
  std::unique_lock lock(mutex_);
  map_.emplace(key, value);
}

Rational IntegralCache::get_or_compute(const IntegralKey& key,
                                       const std::function<Rational()>& compute) {
  if (auto hit = find(key)) return *hit;
  Rational value = compute();
  insert(key, value);
  return value;
}

std::vector<std::pair<IntegralKey, Rational>> IntegralCache::entries() const {
  std::vector<std::pair<IntegralKey, Rational>> out;
  {
    std::shared_lock lock(mutex_);
    out.assign(map_.begin(), map_.end());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void IntegralCache::merge(const std::vector<std::pair<IntegralKey, Rational>>& entries) {
  std::unique_lock lock(mutex_);
  for (const auto& [key, value] : entries) map_.emplace(key, value);
}

std::size_t IntegralCache::size() const {
  std::shared_lock lock(mutex_);
  return map_.size();
}

void IntegralCache::clear() {
  std::unique_lock lock(mutex_);
  map_.clear();
}

void IntegralCache::reset_counters() {
  hits_ = 0;
  misses_ = 0;
}

IntegralCache& IntegralCache::shared() {
  static IntegralCache instance;
  return instance;
}

}  // namespace gwloc
