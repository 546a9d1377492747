#include "gwloc/multicover.hpp"

#include <set>
#include <string>

#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"
#include "gwloc/moduli_integrals.hpp"

namespace gwloc {

ObstructionEuler obstruction_euler(const FixedGraph& graph, const WeightVector& w) {
  if (graph.r() != 1) fail(ErrorKind::InvalidArgument, "multiple-cover graphs map to P^1");
  if (w.r() != 1) fail(ErrorKind::InvalidArgument, "weight vector length must be 2");
  ObstructionEuler out;
  const auto& vs = graph.vertices();
  int factors = 0;

  for (const auto& e : graph.edges()) {
    const Rational& li = w[vs[e.u].label];
    const Rational& lj = w[vs[e.v].label];
    Rational summand = 1;
    for (int a = 1; a < e.degree; ++a) {
      summand *= -(Rational(a) * li + Rational(e.degree - a) * lj) / Rational(e.degree);
      ++factors;
    }
    out.edge_part *= summand * summand;
  }

  for (std::size_t v = 0; v < vs.size(); ++v) {
    const int genus = vs[v].genus;
    if (genus > 1) fail(ErrorKind::UnsupportedGenus, "obstruction classes are native for vertex genus <= 1");
    const Rational mu = -w[vs[v].label];
    const int val = graph.valence(static_cast<int>(v));
    LambdaPoly summand{mu.pow(val - 1), Rational()};
    if (genus == 1) summand = summand * LambdaPoly{mu, Rational(-1)};
    out.vertex_parts.push_back(summand * summand);
    factors += val - 1 + genus;
  }
  out.rank = 2 * factors;
  return out;
}

Rational multicover_contribution(const FixedGraph& graph, const WeightVector& w, IntegralCache& cache) {
  if (graph.legs() != 0) fail(ErrorKind::InvalidArgument, "multiple-cover graphs carry no legs");
  const auto ob = obstruction_euler(graph, w);
  const auto& vs = graph.vertices();
  Rational out = ob.edge_part / Rational(automorphism_order(graph));
  for (const auto& e : graph.edges()) out *= edge_factor(vs[e.u].label, vs[e.v].label, e.degree, w);
  for (std::size_t v = 0; v < vs.size() && !out.is_zero(); ++v) {
    std::vector<Rational> omegas;
    for (const auto& f : graph.flags_at(static_cast<int>(v))) omegas.push_back(flag_weight(f, w));
    out *= integrate_vertex(vs[v].genus, vs[v].label, omegas, 0, ob.vertex_parts[v], w, cache);
  }
  return out;
}

MulticoverResult multicover_graphsum(int g, int d, const MulticoverOptions& options) {
  if (g < 0 || d < 1) fail(ErrorKind::InvalidArgument, "multicover needs g >= 0 and d >= 1");
  if (g > 1) {
    fail(ErrorKind::UnsupportedGenus, "graph sums for genus >= 2 need Hodge integrals; use mast2 with a table");
  }
  IntegralCache& cache = options.cache != nullptr ? *options.cache : IntegralCache::shared();
  EnumerationOptions enumeration;
  enumeration.cap = options.graph_cap;
  const auto graphs = enumerate_shapes(g, 1, d, enumeration);

  auto sum = sum_over_graphs(graphs.size(), 1, options.sum, [&](std::size_t i, const WeightVector& w) {
    return multicover_contribution(graphs[i], w, cache);
  });
  MulticoverResult out;
  out.value = sum.value;
  out.graph_count = graphs.size();
  out.trial_values = std::move(sum.trial_values);
  out.weights_used = std::move(sum.weights);
  out.weight_independent = sum.weight_independent;
  return out;
}

namespace {

void require_positive(int d, const char* what) {
  if (d < 1) fail(ErrorKind::InvalidArgument, std::string(what) + ": degree must be >= 1");
}

// (-1)^{sign_exponent} / (Aut(m) ∏ m_i)
Rational partition_weight(const Partition& m, int sign_exponent) {
  Rational out(BigInt(1), aut_order(m) * m.product());
  return sign_exponent % 2 == 0 ? out : -out;
}

// ∫_{M_{1,L}} λ^p / ∏(1 - m_i ψ_i) = Σ_{|a| = L - p} ∏ m_i^{a_i} ⟨λ^p ∏τ_{a_i}⟩_1
Rational genus_one_partition_integral(const Partition& m, int lambda_power, IntegralCache* cache) {
  const int length = m.length();
  Rational total;
  VertexIntegrand integrand{1, {}, lambda_power};
  for_each_weak_composition(length - lambda_power, length, [&](std::span<const int> a) {
    integrand.psi_exponents.assign(a.begin(), a.end());
    const Rational value = vertex_integral(integrand, cache);
    if (value.is_zero()) return;
    Rational weight = 1;
    for (int i = 0; i < length; ++i) weight *= Rational(m.parts()[i]).pow(a[i]);
    total += weight * value;
  });
  return total;
}

Rational genus_one_partition_sum(int d, bool with_psi, bool with_lambda, IntegralCache* cache) {
  Rational total;
  for (const auto& m : partitions_of(d)) {
    Rational integral;
    if (with_psi) integral += genus_one_partition_integral(m, 0, cache);
    if (with_lambda) integral += genus_one_partition_integral(m, 1, cache);
    total += partition_weight(m, d - m.length()) * integral;
  }
  return total;
}

}  // namespace

Rational mast_sum(int d, IntegralCache* cache) {
  require_positive(d, "mast_sum");
  return genus_one_partition_sum(d, true, true, cache);
}

Rational lemma_lambda_sum(int d, IntegralCache* cache) {
  require_positive(d, "lemma_lambda_sum");
  return genus_one_partition_sum(d, false, true, cache);
}

Rational lemma_psi_sum(int d, IntegralCache* cache) {
  require_positive(d, "lemma_psi_sum");
  return genus_one_partition_sum(d, true, false, cache);
}

Rational manin_sum(int d) {
  require_positive(d, "manin_sum");
  Rational total;
  for (const auto& m : partitions_of(d)) total += partition_weight(m, m.length()) * Rational(d).pow(m.length());
  return total;
}

Rational s_beta(int beta) {
  require_positive(beta, "s_beta");
  Rational total;
  for (const auto& m : partitions_of(beta)) {
    const int length = m.length();
    Rational integral;
    std::vector<int> points;
    for_each_weak_composition(length, length, [&](std::span<const int> a) {
      points.assign(a.begin(), a.end());
      points.insert(points.end(), 3, 0);
      Rational weight = 1;
      for (int i = 0; i < length; ++i) weight *= Rational(m.parts()[i]).pow(a[i]);
      integral += weight * integral_g0(points);
    });
    total += partition_weight(m, length) * integral;
  }
  return total;
}

std::vector<Rational> psi_series(int order) {
  if (order < 0) fail(ErrorKind::InvalidArgument, "series order must be >= 0");
  std::vector<Rational> out{Rational(1)};
  for (int beta = 1; beta <= order; ++beta) out.push_back(s_beta(beta));
  return out;
}

std::vector<Rational> gamma_series(int order, IntegralCache* cache) {
  if (order < 0) fail(ErrorKind::InvalidArgument, "series order must be >= 0");
  std::vector<Rational> out{Rational()};
  for (int alpha = 1; alpha <= order; ++alpha) {
    const Rational g = lemma_psi_sum(alpha, cache);
    out.push_back(alpha % 2 == 0 ? g : -g);
  }
  return out;
}

std::vector<Rational> gamma_series_from_psi(int order) {
  const auto psi = psi_series(order);
  const std::size_t size = psi.size();
  auto multiply = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> c(size);
    for (std::size_t i = 0; i < size; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < size; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  std::vector<Rational> x = psi;
  x[0] = Rational();
  std::vector<Rational> log(size);
  std::vector<Rational> power = x;
  for (int k = 1; k <= order; ++k) {
    const Rational scale(k % 2 == 1 ? 1 : -1, k);
    for (std::size_t i = 0; i < size; ++i) log[i] += scale * power[i];
    power = multiply(power, x);
  }
  for (auto& c : log) c /= Rational(24);
  return log;
}

Rational orbifold_euler_characteristic(int g) {
  if (g < 2) fail(ErrorKind::InvalidArgument, "orbifold Euler characteristic needs g >= 2");
  return bernoulli(2 * g) / Rational(2 * g * (2 * g - 2));
}

ConjectureValue conjecture_value(int g, int d) {
  if (g < 2 || d < 1) fail(ErrorKind::InvalidArgument, "conjecture needs g >= 2 and d >= 1");
  const Rational scale = Rational(d).pow(2 * g - 3);
  ConjectureValue out;
  out.bernoulli_form = bernoulli(2 * g).abs() * scale /
                       Rational(BigInt(2 * g) * factorial(static_cast<unsigned long>(2 * g - 2)));
  out.euler_form = orbifold_euler_characteristic(g).abs() * scale /
                   Rational(factorial(static_cast<unsigned long>(2 * g - 3)));
  out.agree = out.bernoulli_form == out.euler_form;
  return out;
}

namespace {

template <class Visit>
void for_each_mast2_term(int g, int d, Visit&& visit) {
  for (const auto& m : partitions_of(d)) {
    const int length = m.length();
    for (int k = 0; k <= g; ++k) {
      const int degree = moduli_dimension(g, length) - k;
      for_each_weak_composition(degree, length, [&](std::span<const int> a) {
        HodgeRecord record(g, std::vector<int>(a.begin(), a.end()), k == 0 ? std::vector<int>{} : std::vector<int>{k});
        Rational weight = partition_weight(m, d - length);
        for (int i = 0; i < length; ++i) weight *= Rational(m.parts()[i]).pow(a[i]);
        visit(record, weight);
      });
    }
  }
}

}  // namespace

std::vector<HodgeRecord> mast2_required_records(int g, int d) {
  if (g < 1 || d < 1) fail(ErrorKind::InvalidArgument, "mast2 needs g >= 1 and d >= 1");
  std::set<HodgeRecord> records;
  for_each_mast2_term(g, d, [&](const HodgeRecord& record, const Rational&) { records.insert(record); });
  return {records.begin(), records.end()};
}

Rational mast2_sum(int g, int d, const HodgeTable* table, IntegralCache* cache) {
  if (g < 1 || d < 1) fail(ErrorKind::InvalidArgument, "mast2 needs g >= 1 and d >= 1");
  if (g == 1) return mast_sum(d, cache);

  Rational total;
  std::set<HodgeRecord> missing;
  for_each_mast2_term(g, d, [&](const HodgeRecord& record, const Rational& weight) {
    const auto value = table != nullptr ? table->find(record) : std::nullopt;
    if (!value) {
      missing.insert(record);
      return;
    }
    total += weight * *value;
  });
  if (!missing.empty()) {
    std::string message = "mast2 genus " + std::to_string(g) + " degree " + std::to_string(d) +
                          " needs these Hodge integrals (g; psi exponents; chern indices):";
    for (const auto& record : missing) message += "\n  " + record.key_text();
    fail(ErrorKind::MissingHodgeTable, message);
  }
  return total;
}

}  // namespace gwloc
