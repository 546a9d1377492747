#include "gwloc/graph_sum.hpp"

#include "gwloc/error.hpp"
#include "gwloc/parallel.hpp"

namespace gwloc {

namespace {

bool resamplable(const Error& e) {
  return e.kind() == ErrorKind::NonGenericWeights || e.kind() == ErrorKind::SingularWeight;
}

Rational evaluate(std::size_t count, const WeightVector& w, const SumOptions& options, const GraphTerm& term,
                  const GraphObserver& observe) {
  const auto values = parallel_map<Rational>(count, options.workers, [&](std::size_t i) { return term(i, w); });
  Rational total;
  for (std::size_t i = 0; i < count; ++i) {
    if (observe) observe(i, w, values[i]);
    total += values[i];
  }
  return total;
}

}  // namespace

GraphSumResult sum_over_graphs(std::size_t count, int r, const SumOptions& options, const GraphTerm& term,
                               const GraphObserver& observe) {
  GraphSumResult out;
  if (!options.fixed_weights.empty()) {
    for (const auto& w : options.fixed_weights) {
      if (w.r() != r) fail(ErrorKind::InvalidArgument, "fixed weight vector has wrong length");
      out.trial_values.push_back(evaluate(count, w, options, term, observe));
      out.weights.push_back(w);
    }
  } else {
    if (options.trials < 1) fail(ErrorKind::InvalidArgument, "trials must be >= 1");
    WeightStream stream(options.seed, r);
    for (int trial = 0; trial < options.trials; ++trial) {
      for (int attempt = 0;; ++attempt) {
        auto w = stream.next();
        try {
          out.trial_values.push_back(evaluate(count, w, options, term, observe));
          out.weights.push_back(std::move(w));
          break;
        } catch (const Error& e) {
          if (!resamplable(e) || attempt >= options.max_resamples) throw;
        }
      }
    }
  }
  out.value = out.trial_values.front();
  for (const auto& v : out.trial_values) out.weight_independent = out.weight_independent && v == out.value;
  return out;
}

}  // namespace gwloc
