#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gwloc/graph_sum.hpp"
#include "gwloc/integral_cache.hpp"
#include "gwloc/rational.hpp"

namespace gwloc {

/// I_{g,d}^{P^r}(H^{l_1}, ..., H^{l_n}).
struct InvariantQuery {
  int g = 0;
  int d = 1;
  int r = 1;
  std::vector<int> insertions;
};

/// (r+1)d + (r-3)(1-g) + n.
int virtual_dimension(int g, int r, int d, int n);

/// Rejects malformed queries: DimensionMismatch when Σl_m ≠ vdim,
/// UnsupportedGenus for g >= 2, InvalidArgument otherwise.
void validate(const InvariantQuery& query);

struct EvaluationOptions {
  SumOptions sum;
  std::size_t graph_cap = 10'000'000;
  /// Sum graph_contribution over every legged graph instead of summing
  /// leg placements per shape. Same value; exponentially more graphs.
  bool direct = false;
  IntegralCache* cache = nullptr;
  /// Receives {"graph", "weights", "contribution"} per graph and trial.
  std::function<void(const nlohmann::json&)> on_graph;
};

struct InvariantResult {
  Rational value;
  BigInt graph_count;
  std::size_t shapes = 0;
  std::vector<WeightVector> weights_used;
  std::vector<Rational> trial_values;
  bool weight_independent = true;
};

InvariantResult gw_invariant(const InvariantQuery& query, const EvaluationOptions& options = {});

/// Genus-g degree-d plane curves through 3d+g-1 general points.
InvariantResult plane_curve_count(int g, int d, const EvaluationOptions& options = {});

/// N_d from the genus-zero WDVV recursion N_1 = 1,
/// N_d = Σ_{d1+d2=d} N_{d1}N_{d2} d1²d2 (d2·C(3d-4,3d1-2) - d1·C(3d-4,3d1-1)).
Rational wdvv_oracle(int d);

struct IndependenceReport {
  bool independent = true;
  std::vector<Rational> values;
  std::vector<WeightVector> weights;
};

/// Evaluates the query under `trials` independent weight vectors.
IndependenceReport weight_independence_check(const InvariantQuery& query, int trials,
                                             const EvaluationOptions& options = {});

}  // namespace gwloc
