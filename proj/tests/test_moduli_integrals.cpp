#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"
#include "gwloc/moduli_integrals.hpp"

using namespace gwloc;

namespace {

// ⟨∏τ_{a_i} λ^k⟩_g for g ∈ {0,1}, k ∈ {0,1}, by string and dilaton alone.
// λ is pulled back along forgetful maps, so both equations still apply.
// Seeds: ⟨τ_0^3⟩_0 = 1, ⟨τ_1⟩_1 = 1/24, ⟨τ_0 λ⟩_1 = 1/24.
Rational recursion(int g, int k, std::vector<int> a) {
  std::sort(a.begin(), a.end(), std::greater<>());
  const int n = static_cast<int>(a.size());
  const int sum = std::accumulate(a.begin(), a.end(), 0);
  if (3 * g - 3 + n < 0 || sum + k != 3 * g - 3 + n) return Rational();
  if (g == 0 && n == 3) return Rational(1);
  if (g == 1 && n == 1) return Rational(1, 24);
  if (a.back() == 0) {
    a.pop_back();
    Rational total;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      auto b = a;
      --b[i];
      total += recursion(g, k, b);
    }
    return total;
  }
  if (a.back() == 1) {
    a.pop_back();
    return Rational(2 * g - 2 + n - 1) * recursion(g, k, a);
  }
  FAIL("irreducible correlator reached");
  return Rational();
}

std::vector<std::vector<int>> exponent_vectors(int total, int parts) {
  std::vector<std::vector<int>> out;
  for_each_weak_composition(total, parts, [&](std::span<const int> a) { out.emplace_back(a.begin(), a.end()); });
  return out;
}

}  // namespace

TEST_CASE("genus-zero psi integrals are multinomial coefficients") {
  CHECK(integral_g0(std::vector<int>{0, 0, 0}) == Rational(1));
  CHECK(integral_g0(std::vector<int>{1, 0, 0, 0}) == Rational(1));
  CHECK(integral_g0(std::vector<int>{1, 1, 0, 0, 0}) == Rational(2));
  CHECK(integral_g0(std::vector<int>{2, 0, 0, 0, 0}) == Rational(1));
  CHECK(integral_g0(std::vector<int>{1, 0, 0}) == Rational(0));
  for (int n = 3; n <= 9; ++n)
    for (const auto& a : exponent_vectors(n - 3, n)) CHECK(integral_g0(a) == recursion(0, 0, a));
}

TEST_CASE("genus-one psi integrals against string and dilaton") {
  CHECK(integral_g1(std::vector<int>{1}) == Rational(1, 24));
  for (int n = 1; n <= 7; ++n) {
    // ⟨τ_1^n⟩_1 = (n-1)!/24
    CHECK(integral_g1(std::vector<int>(static_cast<std::size_t>(n), 1)) ==
          Rational(factorial(static_cast<unsigned long>(n - 1))) / Rational(24));
    for (const auto& a : exponent_vectors(n, n)) {
      const Rational value = integral_g1(a);
      CHECK(value == recursion(1, 0, a));
      CHECK(value == string_dilaton_oracle(1, a));
    }
  }
  CHECK(integral_g1(std::vector<int>{2, 0}) == Rational(1, 24));
  CHECK(integral_g1(std::vector<int>{2, 2, 0, 0}) == Rational(1, 6));
}

TEST_CASE("genus-one lambda integrals") {
  CHECK(integral_g1_lambda(std::vector<int>{0}) == Rational(1, 24));
  for (int n = 1; n <= 7; ++n)
    for (const auto& a : exponent_vectors(n - 1, n)) CHECK(integral_g1_lambda(a) == recursion(1, 1, a));
}

TEST_CASE("closed genus-zero form equals its series expansion") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 9);
  for (int flags = 1; flags <= 6; ++flags) {
    for (int extra = 0; extra <= 3; ++extra) {
      const int n = flags + extra;
      if (n < 3) continue;
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Rational> omegas;
        while (static_cast<int>(omegas.size()) < flags) {
          const Rational w(num(rng), den(rng));
          if (!w.is_zero()) omegas.push_back(w);
        }
        Rational inverse_sum;
        for (const auto& w : omegas) inverse_sum += w.inverse();
        if (inverse_sum.is_zero()) continue;

        // ∫ ∏ 1/(ω_i - ψ_i) = Σ_a ∏ ω_i^{-1-a_i} ⟨∏ τ_{a_i} τ_0^extra⟩_0
        Rational series;
        for (const auto& a : exponent_vectors(n - 3, flags)) {
          Rational term = 1;
          for (int i = 0; i < flags; ++i) term *= omegas[static_cast<std::size_t>(i)].pow(-1 - a[static_cast<std::size_t>(i)]);
          auto points = a;
          points.insert(points.end(), static_cast<std::size_t>(extra), 0);
          series += term * integral_g0(points);
        }
        CHECK(integral_g0_closed(omegas, extra) == series);
      }
    }
  }
  const std::vector<Rational> ones(5, Rational(1));
  // every ω = 1: (Σ1/ω)^{n-3} = n^{n-3}
  CHECK(integral_g0_closed(ones) == Rational(25));
}

TEST_CASE("degenerate genus-zero vertices") {
  const Rational a(3, 5), b(-7, 2);
  CHECK(integral_g0_closed(std::vector<Rational>{a}) == a);
  CHECK(integral_g0_closed(std::vector<Rational>{a, b}) == Rational(1) / (a + b));
  CHECK(integral_g0_closed(std::vector<Rational>{a}, 1) == Rational(1));
  CHECK(integral_g0_closed(std::vector<Rational>{a}, 2) == a.inverse());

  try {
    (void)integral_g0_closed(std::vector<Rational>{a, Rational()});
    FAIL("expected a singular weight error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularWeight);
  }
  CHECK_THROWS_AS(integral_g0_closed(std::vector<Rational>{a, -a}), Error);
}

TEST_CASE("vertex integrals dispatch and memoise") {
  IntegralCache cache;
  const VertexIntegrand psi{1, {2, 1, 0}, 0};
  const Rational first = vertex_integral(psi, &cache);
  CHECK(first == recursion(1, 0, {2, 1, 0}));
  CHECK(cache.misses() == 1);
  CHECK(vertex_integral({1, {0, 1, 2}, 0}, &cache) == first);
  CHECK(cache.hits() == 1);

  CHECK(vertex_integral({1, {0, 0}, 1}) == Rational());
  CHECK(vertex_integral({1, {1, 0}, 1}) == recursion(1, 1, {1, 0}));
  CHECK(vertex_integral({1, {0}, 2}) == Rational());
  CHECK(vertex_integral({0, {1, 0, 0, 0}, 0}) == Rational(1));
  CHECK(vertex_integral({1, {3}, 0}) == Rational());
  try {
    (void)vertex_integral({2, {4}, 0});
    FAIL("expected genus 2 to be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedGenus);
  }
}

TEST_CASE("integral cache keys ignore exponent order") {
  const IntegralKey a(1, {0, 2, 1}, 0);
  const IntegralKey b(1, {2, 1, 0}, 0);
  CHECK(a == b);
  CHECK(IntegralKeyHash{}(a) == IntegralKeyHash{}(b));
  CHECK_FALSE(a == IntegralKey(1, {2, 1, 0}, 1));

  IntegralCache cache;
  cache.insert(a, Rational(1, 3));
  IntegralCache other;
  other.merge(cache.entries());
  CHECK(other.entries() == cache.entries());
  CHECK(other.find(b) == Rational(1, 3));
}

TEST_CASE("moduli dimension") {
  CHECK(moduli_dimension(0, 3) == 0);
  CHECK(moduli_dimension(1, 1) == 1);
  CHECK(moduli_dimension(2, 0) == 3);
}
