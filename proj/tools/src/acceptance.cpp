#include "gwloc/cli/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "gwloc/cli/config.hpp"
#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"
#include "gwloc/gw_calculator.hpp"
#include "gwloc/hodge_table.hpp"
#include "gwloc/moduli_integrals.hpp"
#include "gwloc/multicover.hpp"

namespace gwloc::cli {
namespace {

// Collects failing sub-checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }

  void equal(const Rational& got, const Rational& want, const std::string& what) {
    expect(got == want, what + ": got " + got.str() + ", want " + want.str());
  }

  bool passed() const { return failures_.empty(); }

  std::string summary() const {
    if (failures_.empty()) return std::to_string(total_) + " checks";
    std::string out = std::to_string(failures_.size()) + "/" + std::to_string(total_) + " failed: ";
    for (std::size_t i = 0; i < failures_.size(); ++i) out += (i ? "; " : "") + failures_[i];
    return out;
  }

 private:
  int total_ = 0;
  std::vector<std::string> failures_;
};

std::string tag(const char* name, int a) { return std::string(name) + "(" + std::to_string(a) + ")"; }
std::string tag(const char* name, int a, int b) {
  return std::string(name) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

Rational inverse(long n) { return Rational(1, n); }

SumOptions sum_options(const AcceptanceOptions& o, int trials = 1) {
  SumOptions sum;
  sum.seed = o.seed;
  sum.workers = o.workers;
  sum.trials = trials;
  return sum;
}

EvaluationOptions evaluation(const AcceptanceOptions& o, IntegralCache& cache, int trials = 1) {
  EvaluationOptions options;
  options.sum = sum_options(o, trials);
  options.cache = &cache;
  return options;
}

bool distinct_vectors(const std::vector<WeightVector>& weights) {
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (std::size_t j = i + 1; j < weights.size(); ++j)
      if (weights[i] == weights[j]) return false;
  return true;
}

std::vector<WeightVector> all_permutations(const WeightVector& w) {
  std::vector<int> perm(static_cast<std::size_t>(w.r() + 1));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<WeightVector> out;
  do {
    out.push_back(w.permuted(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

void criterion_1(const AcceptanceOptions& o, Checks& c) {
  IntegralCache cache;
  for (int d = 1; d <= 4; ++d) {
    MulticoverOptions options;
    options.sum = sum_options(o);
    options.cache = &cache;
    c.equal(multicover_graphsum(0, d, options).value, inverse(d * d * d), tag("multicover_graphsum", 0, d));
  }
}

void criterion_2(const AcceptanceOptions&, Checks& c) {
  IntegralCache cache;
  for (int d = 1; d <= 8; ++d) c.equal(mast_sum(d, &cache), inverse(12 * d), tag("mast_sum", d));
}

void criterion_3(const AcceptanceOptions& o, Checks& c) {
  IntegralCache cache;
  for (int d = 1; d <= 3; ++d) {
    MulticoverOptions options;
    options.sum = sum_options(o, 3);
    options.cache = &cache;
    const auto result = multicover_graphsum(1, d, options);
    c.equal(result.value, inverse(12 * d), tag("multicover_graphsum", 1, d));
    c.expect(result.weight_independent, tag("multicover_graphsum", 1, d) + " varies with the weights");
    c.expect(result.weights_used.size() >= 3 && distinct_vectors(result.weights_used),
             tag("multicover_graphsum", 1, d) + " used fewer than 3 distinct weight vectors");
  }
}

void criterion_4(const AcceptanceOptions&, Checks& c) {
  IntegralCache cache;
  for (int d = 1; d <= 8; ++d) {
    c.equal(lemma_lambda_sum(d, &cache), inverse(24 * d), tag("lemma_lambda_sum", d));
    c.equal(lemma_psi_sum(d, &cache), inverse(24 * d), tag("lemma_psi_sum", d));
  }
}

void criterion_5(const AcceptanceOptions&, Checks& c) {
  for (int d = 1; d <= 10; ++d) c.equal(manin_sum(d), Rational(d % 2 == 0 ? 1 : -1), tag("manin_sum", d));
  for (int beta = 1; beta <= 8; ++beta)
    c.equal(s_beta(beta), Rational(beta % 2 == 0 ? 1 : -1), tag("s_beta", beta));
}

void criterion_6(const AcceptanceOptions&, Checks& c) {
  constexpr int order = 10;
  IntegralCache cache;
  const auto gamma = gamma_series(order, &cache);
  const auto via_psi = gamma_series_from_psi(order);
  c.equal(gamma[0], Rational(), "gamma[0]");
  // -log(1+t)/24 = Σ_{k>=1} (-1)^k t^k / (24k)
  for (int k = 1; k <= order; ++k) {
    const Rational want = Rational(k % 2 == 0 ? 1 : -1, 24L * k);
    c.equal(gamma[static_cast<std::size_t>(k)], want, tag("gamma", k));
    c.equal(via_psi[static_cast<std::size_t>(k)], want, tag("gamma_from_psi", k));
  }
}

void criterion_7(const AcceptanceOptions& o, Checks& c) {
  IntegralCache cache;
  for (int d = 1; d <= 4; ++d) {
    const Rational oracle = wdvv_oracle(d);
    c.equal(plane_curve_count(0, d, evaluation(o, cache)).value, oracle, tag("plane_curve_count", 0, d));
  }
  c.equal(wdvv_oracle(3), Rational(12), "wdvv_oracle(3)");
  c.equal(wdvv_oracle(4), Rational(620), "wdvv_oracle(4)");
}

void criterion_8(const AcceptanceOptions& o, Checks& c) {
  IntegralCache cache;
  c.equal(plane_curve_count(1, 3, evaluation(o, cache)).value, Rational(1), "plane_curve_count(1,3)");
}

void criterion_9(const AcceptanceOptions& o, Checks& c) {
  IntegralCache cache;
  const auto result = gw_invariant({0, 1, 1, {}}, evaluation(o, cache));
  c.equal(result.value, Rational(1), "gw_invariant(g=0,d=1,r=1)");
  c.expect(result.graph_count == 1, "expected a single fixed graph, got " + result.graph_count.get_str());
}

void criterion_10(const AcceptanceOptions& o, Checks& c) {
  c.equal(conjecture_value(2, 1).bernoulli_form, Rational(1, 240), "conjecture_value(2,1)");
  c.equal(conjecture_value(2, 2).bernoulli_form, Rational(1, 480), "conjecture_value(2,2)");
  c.equal(conjecture_value(3, 1).bernoulli_form, Rational(1, 3024), "conjecture_value(3,1)");
  for (int g = 2; g <= 6; ++g)
    for (int d = 1; d <= 5; ++d) c.expect(conjecture_value(g, d).agree, tag("closed forms disagree at", g, d));
  if (!o.hodge_table_path.empty()) {
    const auto table = HodgeTable::load(o.hodge_table_path);
    c.equal(mast2_sum(2, 1, &table), conjecture_value(2, 1).bernoulli_form, "mast2_sum(2,1)");
  }
}

// Every combination of exponents on M_{g,n} with n <= 7, checked against the
// string/dilaton recursion.
void psi_oracle_equivalence(Checks& c) {
  IntegralCache cache;
  for (int g = 0; g <= 1; ++g) {
    for (int n = 1; n <= 7; ++n) {
      const int dim = moduli_dimension(g, n);
      if (dim < 0) continue;
      for_each_weak_composition(dim, n, [&](std::span<const int> a) {
        const std::vector<int> exponents(a.begin(), a.end());
        std::ostringstream what;
        what << "<";
        for (int x : exponents) what << " tau_" << x;
        what << " >_" << g;
        c.equal(vertex_integral({g, exponents, 0}, &cache), string_dilaton_oracle(g, exponents), what.str());
      });
    }
  }
}

void invariance(const AcceptanceOptions& o, Checks& c) {
  IntegralCache cache;
  const std::vector<std::pair<std::string, InvariantQuery>> queries{
      {"smoke", {0, 1, 1, {}}},
      {"N_1", {0, 1, 2, {2, 2}}},
      {"N_2", {0, 2, 2, {2, 2, 2, 2, 2}}},
      {"N_3", {0, 3, 2, std::vector<int>(8, 2)}},
      {"N_4", {0, 4, 2, std::vector<int>(11, 2)}},
      {"N^1_3", {1, 3, 2, std::vector<int>(9, 2)}},
      {"lines in P^3 through two points", {0, 1, 3, {3, 3}}},
      {"conics in P^3 meeting 8 lines", {0, 2, 3, std::vector<int>(8, 2)}},
  };
  for (const auto& [name, query] : queries) {
    auto options = evaluation(o, cache);
    const auto report = weight_independence_check(query, 3, options);
    c.expect(report.independent && distinct_vectors(report.weights), name + " varies across weight vectors");

    options.sum.fixed_weights = all_permutations(default_weights(query.r));
    const auto permuted = gw_invariant(query, options);
    c.expect(permuted.weight_independent, name + " varies under permutation of the weights");
    c.equal(permuted.value, report.values.front(), name + " permuted vs random weights");
  }
  for (int g = 0; g <= 1; ++g) {
    for (int d = 1; d <= 3; ++d) {
      MulticoverOptions options;
      options.cache = &cache;
      options.sum = sum_options(o, 3);
      const auto random = multicover_graphsum(g, d, options);
      options.sum.fixed_weights = all_permutations(default_weights(1));
      const auto swapped = multicover_graphsum(g, d, options);
      c.expect(random.weight_independent, tag("multicover", g, d) + " varies across weight vectors");
      c.expect(swapped.weight_independent, tag("multicover", g, d) + " varies under permutation");
      c.equal(swapped.value, random.value, tag("multicover", g, d) + " permuted vs random weights");
    }
  }
}

std::string run_to_string(RunConfig config, unsigned workers) {
  config.workers = workers;
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(config, out, err);
  return std::to_string(status) + "\n" + out.str();
}

void worker_determinism(const AcceptanceOptions& o, Checks& c) {
  std::vector<std::pair<std::string, RunConfig>> configs;
  auto add = [&](const std::string& name, auto&& edit) {
    RunConfig config;
    config.seed = o.seed;
    edit(config);
    configs.emplace_back(name, config);
  };
  add("gw P^2 d=3", [](RunConfig& k) {
    k.command = Command::Gw;
    k.d = 3;
    k.r = 2;
    k.points = 8;
    k.trials = 2;
  });
  add("gw P^2 d=2 direct", [](RunConfig& k) {
    k.command = Command::Gw;
    k.d = 2;
    k.r = 2;
    k.points = 5;
    k.direct = true;
  });
  add("count g=1 d=3", [](RunConfig& k) {
    k.command = Command::Count;
    k.g = 1;
    k.d = 3;
  });
  add("multicover g=1 d=3", [](RunConfig& k) {
    k.command = Command::Multicover;
    k.g = 1;
    k.d = 3;
    k.trials = 3;
  });
  add("series", [](RunConfig& k) {
    k.command = Command::Series;
    k.order = 6;
  });
  add("graphs", [](RunConfig& k) {
    k.command = Command::Graphs;
    k.n = 2;
    k.d = 3;
  });
  for (const auto& [name, config] : configs) {
    const std::string single = run_to_string(config, 1);
    c.expect(single.rfind("0\n", 0) == 0, name + " exited with status " + single.substr(0, single.find('\n')));
    for (unsigned workers : {2u, 4u})
      c.expect(run_to_string(config, workers) == single, name + " differs with " + std::to_string(workers) + " workers");
  }
}

void criterion_11(const AcceptanceOptions& o, Checks& c) {
  psi_oracle_equivalence(c);
  invariance(o, c);
  worker_determinism(o, c);
}

struct Criterion {
  int id;
  const char* title;
  void (*body)(const AcceptanceOptions&, Checks&);
};

constexpr Criterion kCriteria[] = {
    {1, "genus-0 multiple cover graph sum = 1/d^3, d = 1..4", criterion_1},
    {2, "genus-1 multiple cover partition sum = 1/(12d), d = 1..8", criterion_2},
    {3, "genus-1 multiple cover graph sum = 1/(12d), d = 1..3, 3 weight vectors", criterion_3},
    {4, "lambda and psi partition sums = 1/(24d), d = 1..8", criterion_4},
    {5, "Manin sums = (-1)^d, d <= 10; s_beta = (-1)^beta, beta <= 8", criterion_5},
    {6, "gamma(t) = -log(1+t)/24 through order 10", criterion_6},
    {7, "rational plane curves match WDVV, d = 1..4", criterion_7},
    {8, "one plane cubic of genus 1 through 9 points", criterion_8},
    {9, "degree-1 genus-0 invariant of P^1 = 1", criterion_9},
    {10, "genus >= 2 multiple cover predictions", criterion_10},
    {11, "psi oracle, weight invariance and worker determinism", criterion_11},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& report) {
  std::vector<CriterionResult> results;
  for (const auto& criterion : kCriteria) {
    CriterionResult result;
    result.id = criterion.id;
    result.title = criterion.title;
    const auto start = std::chrono::steady_clock::now();
    Checks checks;
    try {
      criterion.body(options, checks);
      result.passed = checks.passed();
      result.detail = checks.summary();
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = std::string("threw: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (report) report(result);
    results.push_back(std::move(result));
  }
  return results;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream out;
  out << (result.passed ? "[PASS] " : "[FAIL] ") << "criterion " << result.id << ": " << result.title << " ("
      << result.detail << ")";
  return out.str();
}

}  // namespace gwloc::cli
