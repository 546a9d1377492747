#include <doctest.h>

#include <sstream>

#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"
#include "gwloc/hodge_table.hpp"
#include "gwloc/moduli_integrals.hpp"
#include "gwloc/multicover.hpp"

using namespace gwloc;

namespace {

WeightVector manin_weights() { return WeightVector({Rational(0), Rational(-1)}); }

// Every vertex over the weight-zero point is a genus-zero leaf.
bool is_comb(const FixedGraph& graph) {
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    const auto& vertex = graph.vertices()[v];
    if (vertex.label == 0 && (vertex.genus != 0 || graph.valence(static_cast<int>(v)) != 1)) return false;
  }
  return true;
}

// (-1)^{d-L}/(Aut(m)∏m_i) ∫_{M_{1,L}} (1+λ)/∏(1 - m_i ψ_i), one partition.
Rational partition_term(const std::vector<int>& parts) {
  const Partition m(parts);
  const int length = m.length();
  Rational integral;
  for (int k = 0; k <= 1; ++k) {
    for_each_weak_composition(length - k, length, [&](std::span<const int> a) {
      Rational weight = 1;
      for (int i = 0; i < length; ++i) weight *= Rational(parts[static_cast<std::size_t>(i)]).pow(a[i]);
      integral += weight * vertex_integral({1, std::vector<int>(a.begin(), a.end()), k});
    });
  }
  Rational out = integral / Rational(aut_order(m) * m.product());
  return (m.total() - length) % 2 == 0 ? out : -out;
}

std::vector<Rational> bernoulli_by_recurrence(int up_to) {
  std::vector<Rational> b{Rational(1)};
  for (int n = 1; n <= up_to; ++n) {
    Rational sum;
    for (int k = 0; k < n; ++k) sum += Rational(binomial(n + 1, k)) * b[static_cast<std::size_t>(k)];
    b.push_back(-sum / Rational(n + 1));
  }
  return b;
}

HodgeTable table_from(const std::string& text) {
  std::istringstream in(text);
  return HodgeTable::parse(in);
}

ErrorKind error_kind(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("obstruction bundle ranks") {
  const WeightVector w({Rational(3), Rational(-7)});
  for (int g = 0; g <= 1; ++g) {
    for (int d = 1; d <= 4; ++d) {
      for (const auto& graph : enumerate_shapes(g, 1, d)) {
        const auto ob = obstruction_euler(graph, w);
        CHECK(ob.rank == 2 * d + 2 * g - 2);
        CHECK(ob.vertex_parts.size() == graph.vertices().size());
      }
    }
  }
}

TEST_CASE("obstruction numerator on single edges") {
  const WeightVector w({Rational(3), Rational(-7)});
  const FixedGraph line(1, {{0, 0, {}}, {1, 0, {}}}, {{0, 1, 1}});
  const auto ob = obstruction_euler(line, w);
  CHECK(ob.edge_part == Rational(1));
  CHECK(ob.vertex_parts[0] == LambdaPoly{Rational(1), Rational()});
  IntegralCache cache;
  CHECK(multicover_contribution(line, w, cache) == Rational(1));

  // H^1(O(-2)) on the double cover has the single weight -(λ_0+λ_1)/2
  const FixedGraph doubled(1, {{0, 0, {}}, {1, 0, {}}}, {{0, 1, 2}});
  CHECK(obstruction_euler(doubled, w).edge_part == Rational(4));
}

TEST_CASE("genus-zero multiple covers contribute 1/d^3") {
  for (int d = 1; d <= 4; ++d) {
    MulticoverOptions options;
    options.sum.trials = 3;
    const auto result = multicover_graphsum(0, d, options);
    CHECK(result.value == Rational(1, d * d * d));
    CHECK(result.weight_independent);
  }
  CHECK(multicover_graphsum(0, 2).value == Rational(1, 8));
}

TEST_CASE("genus-one multiple covers contribute 1/(12d)") {
  for (int d = 1; d <= 3; ++d) {
    MulticoverOptions options;
    options.sum.trials = 3;
    const auto result = multicover_graphsum(1, d, options);
    CHECK(result.value == Rational(1, 12 * d));
    CHECK(result.value == mast_sum(d));
    CHECK(result.weight_independent);
    CHECK(result.weights_used.size() == 3);
  }
  CHECK(multicover_graphsum(1, 4).value == Rational(1, 48));
}

TEST_CASE("swapping the two fixed points changes nothing") {
  for (int g = 0; g <= 1; ++g) {
    for (int d = 1; d <= 3; ++d) {
      MulticoverOptions options;
      options.sum.fixed_weights = {WeightVector({Rational(5), Rational(-2)}), WeightVector({Rational(-2), Rational(5)})};
      CHECK(multicover_graphsum(g, d, options).weight_independent);
    }
  }
}

TEST_CASE("weights (0,-1) leave only comb graphs") {
  IntegralCache cache;
  for (int g = 0; g <= 1; ++g) {
    for (int d = 1; d <= 3; ++d) {
      Rational comb_total;
      int combs = 0;
      for (const auto& graph : enumerate_shapes(g, 1, d)) {
        const Rational value = multicover_contribution(graph, manin_weights(), cache);
        const auto ob = obstruction_euler(graph, manin_weights());
        bool numerator_vanishes = ob.edge_part.is_zero();
        for (const auto& part : ob.vertex_parts) {
          numerator_vanishes = numerator_vanishes || (part.constant.is_zero() && part.linear.is_zero());
        }
        if (is_comb(graph)) {
          ++combs;
          comb_total += value;
          CHECK_FALSE(numerator_vanishes);
        } else {
          CHECK(value == Rational());
          CHECK(numerator_vanishes);
        }
      }
      CHECK(combs == static_cast<int>(partitions_of(d).size()));
      CHECK(comb_total == (g == 0 ? Rational(1, d * d * d) : Rational(1, 12 * d)));
    }
  }
}

TEST_CASE("each genus-one comb is one partition term") {
  IntegralCache cache;
  for (int d = 1; d <= 4; ++d) {
    for (const auto& graph : enumerate_shapes(1, 1, d)) {
      if (!is_comb(graph)) continue;
      std::vector<int> teeth;
      for (const auto& e : graph.edges()) teeth.push_back(e.degree);
      std::sort(teeth.begin(), teeth.end(), std::greater<>());
      CHECK(multicover_contribution(graph, manin_weights(), cache) == partition_term(teeth));
    }
  }
}

TEST_CASE("partition sums") {
  for (int d = 1; d <= 8; ++d) {
    CHECK(mast_sum(d) == Rational(1, 12 * d));
    CHECK(lemma_lambda_sum(d) == Rational(1, 24 * d));
    CHECK(lemma_psi_sum(d) == Rational(1, 24 * d));
    CHECK(lemma_lambda_sum(d) + lemma_psi_sum(d) == mast_sum(d));
  }
  CHECK(mast_sum(6) == Rational(1, 72));
}

TEST_CASE("Manin's summation and s_beta") {
  CHECK(manin_sum(1) == Rational(-1));
  // hand sum over (2) and (1,1): -1 + 2
  CHECK(manin_sum(2) == Rational(1));
  for (int d = 1; d <= 10; ++d) CHECK(manin_sum(d) == Rational(d % 2 == 0 ? 1 : -1));
  for (int beta = 1; beta <= 8; ++beta) CHECK(s_beta(beta) == Rational(beta % 2 == 0 ? 1 : -1));
}

TEST_CASE("generating functions") {
  constexpr int order = 10;
  const auto gamma = gamma_series(order);
  const auto via_psi = gamma_series_from_psi(order);
  const auto psi = psi_series(order);
  REQUIRE(gamma.size() == order + 1);
  // -log(1+t)/24 and 1/(1+t), coefficient by coefficient
  for (int k = 1; k <= order; ++k) {
    const Rational log_coefficient(k % 2 == 1 ? 1 : -1, k);
    CHECK(gamma[static_cast<std::size_t>(k)] == -log_coefficient / Rational(24));
    CHECK(via_psi[static_cast<std::size_t>(k)] == gamma[static_cast<std::size_t>(k)]);
  }
  for (int k = 0; k <= order; ++k) CHECK(psi[static_cast<std::size_t>(k)] == Rational(k % 2 == 0 ? 1 : -1));
  CHECK(gamma[1] == Rational(-1, 24));
  CHECK(gamma[2] == Rational(1, 48));
  CHECK(gamma[3] == Rational(-1, 72));
}

TEST_CASE("conjecture evaluator against hand-substituted Bernoulli numbers") {
  const auto b = bernoulli_by_recurrence(12);
  for (int g = 2; g <= 6; ++g) {
    for (int d = 1; d <= 5; ++d) {
      const auto value = conjecture_value(g, d);
      const Rational expected = b[static_cast<std::size_t>(2 * g)].abs() * Rational(d).pow(2 * g - 3) /
                                Rational(BigInt(2 * g) * factorial(static_cast<unsigned long>(2 * g - 2)));
      CHECK(value.bernoulli_form == expected);
      CHECK(value.agree);
      CHECK(value.euler_form == value.bernoulli_form);
    }
  }
  // |B_4| = 1/30: 1/(30·4·2) = 1/240, doubling d multiplies by 2^{2g-3} = 2
  CHECK(conjecture_value(2, 1).bernoulli_form == Rational(1, 240));
  CHECK(conjecture_value(2, 2).bernoulli_form == Rational(1, 120));
  // |B_6| = 1/42: 1/(42·6·24) = 1/6048
  CHECK(conjecture_value(3, 1).bernoulli_form == Rational(1, 6048));
  CHECK(orbifold_euler_characteristic(2) == Rational(-1, 240));
  CHECK(orbifold_euler_characteristic(3) == Rational(1, 1008));
  CHECK(error_kind([] { (void)conjecture_value(1, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("shipped genus-two Hodge data matches closed formulas") {
  const auto table = HodgeTable::load(std::string(GWLOC_TEST_DATA_DIR) + "/hodge_g2.txt");
  CHECK(table.size() == 3);
  // ⟨τ_{3g-2}⟩_g = 1/(24^g g!)
  CHECK(table.find(HodgeRecord(2, {4}, {})) == Rational(1, 24 * 24 * 2));
  // ∫ ψ^{2g-2} λ_g = (2^{2g-1} - 1)|B_2g| / (2^{2g-1} (2g)!)
  CHECK(table.find(HodgeRecord(2, {2}, {2})) == Rational(7) * bernoulli(4).abs() / Rational(8 * 24));
  CHECK(table.find(HodgeRecord(2, {3}, {1})) == Rational(1, 480));
}

TEST_CASE("genus-g partition sum with Hodge tables") {
  for (int d = 1; d <= 4; ++d) CHECK(mast2_sum(1, d) == mast_sum(d));
  CHECK(mast2_sum(1, 4) == Rational(1, 48));

  const auto table = HodgeTable::load(std::string(GWLOC_TEST_DATA_DIR) + "/hodge_g2.txt");
  CHECK(mast2_sum(2, 1, &table) == conjecture_value(2, 1).bernoulli_form);

  const auto required = mast2_required_records(2, 1);
  CHECK(required.size() == 3);
  try {
    (void)mast2_sum(2, 1);
    FAIL("expected a missing table error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingHodgeTable);
    const std::string message = e.what();
    for (const auto& record : required) CHECK(message.find(record.key_text()) != std::string::npos);
  }
  const auto partial = table_from("2; 4; ; 1/1152\n");
  try {
    (void)mast2_sum(2, 1, &partial);
    FAIL("expected a missing table error");
  } catch (const Error& e) {
    const std::string message = e.what();
    CHECK(message.find("2; 3; 1") != std::string::npos);
    CHECK(message.find("2; 4; ") == std::string::npos);
  }
  CHECK(error_kind([] { (void)mast2_sum(0, 1); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { (void)multicover_graphsum(2, 1); }) == ErrorKind::UnsupportedGenus);
}

TEST_CASE("Hodge table parsing") {
  const auto table = table_from(
      "# comment\n"
      "\n"
      "2; 0,4 ; ; 1/1152\n"
      "2; 1,2; 1; -3/7\n");
  CHECK(table.size() == 2);
  CHECK(table.find(HodgeRecord(2, {4, 0}, {})) == Rational(1, 1152));
  CHECK(table.find(HodgeRecord(2, {2, 1}, {1})) == Rational(-3, 7));
  CHECK_FALSE(table.find(HodgeRecord(2, {3}, {1})).has_value());

  CHECK_THROWS_AS(table_from("2; 4; ; 1/1152\n2; 4; ; 1/1153\n"), Error);
  CHECK_NOTHROW(table_from("2; 4; ; 1/1152\n2; 4; ; 2/2304\n"));
  CHECK_THROWS_AS(table_from("2; 4; 3; 1/2\n"), Error);
  CHECK_THROWS_AS(table_from("2; 4; 1/2\n"), Error);
  CHECK_THROWS_AS(table_from("x; 4; ; 1/2\n"), Error);
  CHECK(error_kind([] { (void)HodgeTable::load("/nonexistent/table.txt"); }) == ErrorKind::Io);
}
