#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gwloc/localization.hpp"
#include "gwloc/rational.hpp"

namespace gwloc {

struct SumOptions {
  std::uint64_t seed = 1;
  unsigned workers = 0;
  /// Number of independent weight vectors; values must agree exactly.
  int trials = 1;
  /// Redraws allowed per trial when a weight vector turns out singular.
  int max_resamples = 32;
  /// When non-empty these vectors are used verbatim, one trial each.
  std::vector<WeightVector> fixed_weights;
};

struct GraphSumResult {
  Rational value;
  std::vector<Rational> trial_values;
  std::vector<WeightVector> weights;
  bool weight_independent = true;
};

using GraphTerm = std::function<Rational(std::size_t index, const WeightVector& w)>;
using GraphObserver = std::function<void(std::size_t index, const WeightVector& w, const Rational& value)>;

/// Σ_i term(i, w) for every trial weight vector. Terms are evaluated in
/// parallel and reduced in index order; a NonGenericWeights or SingularWeight
/// failure discards the vector and draws the next one from the stream.
GraphSumResult sum_over_graphs(std::size_t count, int r, const SumOptions& options, const GraphTerm& term,
                               const GraphObserver& observe = {});

}  // namespace gwloc
