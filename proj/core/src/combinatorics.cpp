#include "gwloc/combinatorics.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <string>

#include "gwloc/error.hpp"

namespace gwloc {

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

namespace {

// Akiyama-Tanigawa produces B_1 = +1/2; irrelevant here since only even
// indices are served.
std::vector<Rational> bernoulli_table(int up_to) {
  std::vector<Rational> out(static_cast<std::size_t>(up_to) + 1);
  std::vector<Rational> row(static_cast<std::size_t>(up_to) + 1);
  for (int m = 0; m <= up_to; ++m) {
    row[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) {
      row[j - 1] = Rational(j) * (row[j - 1] - row[j]);
    }
    out[m] = row[0];
  }
  return out;
}

}  // namespace

Rational bernoulli(int n) {
  if (n < 2 || n % 2 != 0) {
    fail(ErrorKind::InvalidArgument,
         "bernoulli: index must be even and >= 2, got " + std::to_string(n));
  }
  static std::mutex mutex;
  static std::vector<Rational> cache;
  std::lock_guard lock(mutex);
  if (static_cast<int>(cache.size()) <= n) {
    cache = bernoulli_table(std::max(n, 2 * static_cast<int>(cache.size())));
  }
  return cache[n];
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) fail(ErrorKind::InvalidArgument, "partition must have at least one part");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) fail(ErrorKind::InvalidArgument, "partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      fail(ErrorKind::InvalidArgument, "partition parts must be non-increasing");
    }
  }
  total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

BigInt Partition::product() const {
  BigInt out = 1;
  for (int p : parts_) out *= p;
  return out;
}

namespace {

void build_partitions(int remaining, int max_part, std::vector<int>& prefix,
                      std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    prefix.push_back(p);
    build_partitions(remaining - p, p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int d) {
  if (d <= 0) fail(ErrorKind::InvalidArgument, "partitions_of: d must be positive");
  std::vector<Partition> out;
  std::vector<int> prefix;
  build_partitions(d, d, prefix, out);
  return out;
}

BigInt aut_order(const Partition& m) {
  BigInt out = 1;
  const auto& parts = m.parts();
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    out *= factorial(j - i);
    i = j;
  }
  return out;
}

namespace {

void weak_compositions(int remaining, std::size_t index, std::vector<int>& current,
                       const std::function<void(std::span<const int>)>& visit) {
  if (index + 1 == current.size()) {
    current[index] = remaining;
    visit(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[index] = v;
    weak_compositions(remaining - v, index + 1, current, visit);
  }
}

}  // namespace

void for_each_weak_composition(int total, int parts,
                               const std::function<void(std::span<const int>)>& visit) {
  if (total < 0 || parts < 0) return;
  if (parts == 0) {
    if (total == 0) visit({});
    return;
  }
  std::vector<int> current(static_cast<std::size_t>(parts), 0);
  weak_compositions(total, 0, current, visit);
}

}  // namespace gwloc
