#include "gwloc/gw_calculator.hpp"

#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"
#include "gwloc/fixed_graph.hpp"
#include "gwloc/localization.hpp"

namespace gwloc {

int virtual_dimension(int g, int r, int d, int n) { return (r + 1) * d + (r - 3) * (1 - g) + n; }

void validate(const InvariantQuery& q) {
  if (q.g < 0 || q.d < 1 || q.r < 1) fail(ErrorKind::InvalidArgument, "query needs g >= 0, d >= 1, r >= 1");
  for (int l : q.insertions) {
    if (l < 0 || l > q.r) fail(ErrorKind::InvalidArgument, "insertion powers must lie in [0, r]");
  }
  if (q.g >= 2) {
    fail(ErrorKind::UnsupportedGenus,
         "genus " + std::to_string(q.g) + " invariants need genus >= 2 Hodge integrals (external Hodge table)");
  }
  const int n = static_cast<int>(q.insertions.size());
  const int total = std::accumulate(q.insertions.begin(), q.insertions.end(), 0);
  const int vdim = virtual_dimension(q.g, q.r, q.d, n);
  if (total != vdim) {
    fail(ErrorKind::DimensionMismatch,
         "insertion degrees sum to " + std::to_string(total) + " but the virtual dimension is " + std::to_string(vdim));
  }
}

InvariantResult gw_invariant(const InvariantQuery& query, const EvaluationOptions& options) {
  validate(query);
  IntegralCache& cache = options.cache != nullptr ? *options.cache : IntegralCache::shared();
  EnumerationOptions enumeration;
  enumeration.cap = options.graph_cap;

  InvariantResult out;
  const auto shapes = enumerate_shapes(query.g, query.r, query.d, enumeration);
  out.shapes = shapes.size();
  const int n = static_cast<int>(query.insertions.size());

  std::vector<FixedGraph> graphs;
  if (options.direct) {
    graphs = enumerate_graphs(query.g, n, query.r, query.d, enumeration);
    out.graph_count = static_cast<unsigned long>(graphs.size());
  } else {
    out.graph_count = 0;
    for (const auto& shape : shapes) out.graph_count += leg_orbit_count(shape, n);
  }

  const auto profile = InsertionProfile::of(query.insertions);
  GraphTerm term;
  std::size_t count = 0;
  if (options.direct) {
    count = graphs.size();
    term = [&](std::size_t i, const WeightVector& w) {
      return graph_contribution(graphs[i], w, query.insertions, cache);
    };
  } else {
    count = shapes.size();
    term = [&](std::size_t i, const WeightVector& w) { return leg_summed_contribution(shapes[i], w, profile, cache); };
  }

  GraphObserver observe;
  if (options.on_graph) {
    observe = [&](std::size_t i, const WeightVector& w, const Rational& value) {
      nlohmann::json record;
      record["graph"] = options.direct ? graphs[i] : shapes[i];
      record["weights"] = w.str();
      record["contribution"] = value.str();
      if (!options.direct) record["legs_summed"] = true;
      options.on_graph(record);
    };
  }

  auto sum = sum_over_graphs(count, query.r, options.sum, term, observe);
  out.value = sum.value;
  out.trial_values = std::move(sum.trial_values);
  out.weights_used = std::move(sum.weights);
  out.weight_independent = sum.weight_independent;
  return out;
}

InvariantResult plane_curve_count(int g, int d, const EvaluationOptions& options) {
  if (g < 0 || g > 1) fail(ErrorKind::UnsupportedGenus, "plane curve counts are native for genus 0 and 1");
  if (d < 1) fail(ErrorKind::InvalidArgument, "degree must be >= 1");
  InvariantQuery q{g, d, 2, std::vector<int>(static_cast<std::size_t>(3 * d + g - 1), 2)};
  return gw_invariant(q, options);
}

Rational wdvv_oracle(int d) {
  if (d < 1) fail(ErrorKind::InvalidArgument, "degree must be >= 1");
  std::vector<BigInt> n(static_cast<std::size_t>(d) + 1);
  n[1] = 1;
  for (int e = 2; e <= d; ++e) {
    BigInt total = 0;
    for (int d1 = 1; d1 < e; ++d1) {
      const int d2 = e - d1;
      const BigInt weight = BigInt(d1 * d1 * d2);
      total += n[d1] * n[d2] * weight *
               (BigInt(d2) * binomial(3 * e - 4, 3 * d1 - 2) - BigInt(d1) * binomial(3 * e - 4, 3 * d1 - 1));
    }
    n[e] = total;
  }
  return Rational(n[d]);
}

IndependenceReport weight_independence_check(const InvariantQuery& query, int trials,
                                             const EvaluationOptions& options) {
  validate(query);
  if (trials < 1) fail(ErrorKind::InvalidArgument, "trials must be >= 1");
  auto opts = options;
  opts.sum.trials = trials;
  opts.sum.fixed_weights.clear();
  const auto result = gw_invariant(query, opts);
  return {result.weight_independent, result.trial_values, result.weights_used};
}

}  // namespace gwloc
