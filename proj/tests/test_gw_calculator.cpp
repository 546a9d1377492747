#include <doctest.h>

#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"
#include "gwloc/gw_calculator.hpp"

using namespace gwloc;

namespace {

// Kontsevich's recursion in its original form:
// N_d = Σ N_{d1} N_{d2} (d1² d2² C(3d-4, 3d1-2) - d1³ d2 C(3d-4, 3d1-1)).
std::vector<Rational> kontsevich(int up_to) {
  std::vector<Rational> n(static_cast<std::size_t>(up_to) + 1);
  n[1] = 1;
  for (int d = 2; d <= up_to; ++d) {
    Rational total;
    for (int d1 = 1; d1 < d; ++d1) {
      const int d2 = d - d1;
      const BigInt a = BigInt(d1 * d1 * d2 * d2) * binomial(3 * d - 4, 3 * d1 - 2);
      const BigInt b = BigInt(d1 * d1 * d1 * d2) * binomial(3 * d - 4, 3 * d1 - 1);
      total += n[static_cast<std::size_t>(d1)] * n[static_cast<std::size_t>(d2)] * Rational(BigInt(a - b));
    }
    n[static_cast<std::size_t>(d)] = total;
  }
  return n;
}

std::vector<int> repeat(int value, int times) { return std::vector<int>(static_cast<std::size_t>(times), value); }

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Rational evaluate(int g, int d, int r, std::vector<int> insertions, bool direct = false, unsigned workers = 0) {
  EvaluationOptions options;
  options.direct = direct;
  options.sum.workers = workers;
  return gw_invariant({g, d, r, std::move(insertions)}, options).value;
}

}  // namespace

TEST_CASE("WDVV oracle agrees with Kontsevich's recursion") {
  const auto oracle = kontsevich(8);
  for (int d = 1; d <= 8; ++d) CHECK(wdvv_oracle(d) == oracle[static_cast<std::size_t>(d)]);
  CHECK(wdvv_oracle(4) == Rational(620));
  CHECK(wdvv_oracle(5) == Rational(87304));
}

TEST_CASE("rational plane curves through 3d-1 points") {
  for (int d = 1; d <= 3; ++d) {
    const auto result = plane_curve_count(0, d);
    CHECK(result.value == wdvv_oracle(d));
    CHECK(result.weight_independent);
  }
}

TEST_CASE("degree-one invariants of P^1") {
  const auto smoke = gw_invariant({0, 1, 1, {}});
  CHECK(smoke.value == Rational(1));
  CHECK(smoke.graph_count == 1);
  CHECK(evaluate(0, 1, 1, {1}) == Rational(1));
  CHECK(evaluate(0, 1, 1, {1}, true) == Rational(1));
}

TEST_CASE("classical counts in P^3") {
  CHECK(evaluate(0, 1, 3, {3, 3}) == Rational(1));
  CHECK(evaluate(0, 1, 3, repeat(2, 4)) == Rational(2));
  CHECK(evaluate(0, 2, 3, repeat(2, 8)) == Rational(92));
}

TEST_CASE("divisor axiom: an H insertion multiplies by d") {
  CHECK(evaluate(0, 2, 2, concat(repeat(2, 5), {1})) == Rational(2));
  CHECK(evaluate(0, 2, 2, concat(repeat(2, 5), {1, 1})) == Rational(4));
  CHECK(evaluate(0, 3, 2, concat(repeat(2, 8), {1})) == Rational(36));
  CHECK(evaluate(1, 3, 2, concat(repeat(2, 9), {1})) == Rational(3));
}

TEST_CASE("genus-one plane cubic through nine points") {
  const auto result = plane_curve_count(1, 3);
  CHECK(result.value == Rational(1));
}

TEST_CASE("direct graph sum equals the leg-summed evaluation") {
  const std::vector<InvariantQuery> queries{
      {0, 1, 1, {1}},       {0, 1, 2, {2, 2}}, {0, 2, 2, repeat(2, 5)}, {0, 1, 3, {3, 3}}, {0, 1, 3, {2, 2, 2, 2}},
      {1, 1, 2, {2, 2, 2}}, {1, 2, 2, repeat(2, 6)}, {0, 1, 3, {3, 2, 2}},
  };
  for (const auto& query : queries) {
    EvaluationOptions summed;
    EvaluationOptions direct;
    direct.direct = true;
    const auto a = gw_invariant(query, summed);
    const auto b = gw_invariant(query, direct);
    CHECK(a.value == b.value);
    CHECK(a.graph_count == b.graph_count);
  }
}

TEST_CASE("values do not depend on the weights or the worker count") {
  const InvariantQuery query{0, 3, 2, repeat(2, 8)};
  const auto report = weight_independence_check(query, 3);
  CHECK(report.independent);
  REQUIRE(report.values.size() == 3);
  CHECK(report.values[0] == Rational(12));
  CHECK_FALSE(report.weights[0] == report.weights[1]);

  const InvariantQuery genus_one{1, 2, 2, repeat(2, 6)};
  CHECK(weight_independence_check(genus_one, 3).independent);

  for (unsigned workers : {1u, 2u, 4u}) CHECK(evaluate(0, 2, 2, repeat(2, 5), false, workers) == Rational(1));
}

TEST_CASE("query validation") {
  auto kind_of = [](const InvariantQuery& q) {
    try {
      validate(q);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("query was accepted");
    return ErrorKind::Io;
  };
  CHECK(kind_of({2, 1, 2, repeat(2, 3)}) == ErrorKind::UnsupportedGenus);
  CHECK(kind_of({0, 3, 2, repeat(2, 7)}) == ErrorKind::DimensionMismatch);
  CHECK(kind_of({0, 1, 2, {3, 1}}) == ErrorKind::InvalidArgument);
  CHECK(kind_of({0, 0, 2, {}}) == ErrorKind::InvalidArgument);
  CHECK(kind_of({0, 1, 0, {}}) == ErrorKind::InvalidArgument);
  CHECK(virtual_dimension(0, 2, 3, 8) == 16);
  CHECK(virtual_dimension(1, 2, 3, 9) == 18);
  CHECK_NOTHROW(validate({0, 3, 2, repeat(2, 8)}));
}

TEST_CASE("graph cap stops oversized sums") {
  EvaluationOptions options;
  options.graph_cap = 3;
  try {
    (void)plane_curve_count(0, 3, options);
    FAIL("expected the cap to trigger");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GraphCapExceeded);
  }
}
