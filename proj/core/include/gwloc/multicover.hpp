#pragma once

#include <cstddef>
#include <vector>

#include "gwloc/fixed_graph.hpp"
#include "gwloc/graph_sum.hpp"
#include "gwloc/hodge_table.hpp"
#include "gwloc/integral_cache.hpp"
#include "gwloc/localization.hpp"
#include "gwloc/rational.hpp"

namespace gwloc {

/// Equivariant Euler class of R^1π_*f*(O(-1)⊕O(-1)) restricted to M_Γ, for
/// maps to P^1. The fibre of O(-1) over p_i has weight μ_i = -λ_i and the
/// degree-d_e edge contributes H^1 weights -(aλ_i + bλ_j)/d_e, a, b >= 1.
/// Both summands are identical, so every factor below is already squared.
struct ObstructionEuler {
  /// ∏_e ∏_{a+b=d_e, a,b>=1} ((aλ_i + bλ_j)/d_e)^2.
  Rational edge_part{1};
  /// Per vertex: (μ^{val-1} (μ - λ)^{g(v)})^2 with λ = c_1(E), λ² = 0.
  std::vector<LambdaPoly> vertex_parts;
  /// Rank of the bundle, 2d + 2g - 2.
  int rank = 0;
};

ObstructionEuler obstruction_euler(const FixedGraph& graph, const WeightVector& w);

/// (1/|A_Γ|) ∫_{M_Γ} e(Ob) / e(N^vir) for one graph of M_{g,0}(P^1, d).
Rational multicover_contribution(const FixedGraph& graph, const WeightVector& w, IntegralCache& cache);

struct MulticoverOptions {
  SumOptions sum;
  std::size_t graph_cap = 10'000'000;
  IntegralCache* cache = nullptr;
};

struct MulticoverResult {
  Rational value;
  std::size_t graph_count = 0;
  std::vector<Rational> trial_values;
  std::vector<WeightVector> weights_used;
  bool weight_independent = true;
};

/// Degree-d multiple-cover contribution in genus g ∈ {0, 1} as a graph sum.
MulticoverResult multicover_graphsum(int g, int d, const MulticoverOptions& options = {});

/// Σ_{m⊢d} (-1)^{d-L(m)} / (Aut(m) ∏m_i) ∫_{M_{1,L(m)}} (1+λ) / ∏(1 - m_i ψ_i).
Rational mast_sum(int d, IntegralCache* cache = nullptr);
/// The λ part of mast_sum alone.
Rational lemma_lambda_sum(int d, IntegralCache* cache = nullptr);
/// The ψ-only part of mast_sum alone (g_d in the generating function).
Rational lemma_psi_sum(int d, IntegralCache* cache = nullptr);

/// Σ_{m⊢d} (-1)^{L(m)} d^{L(m)} / (Aut(m) ∏m_i).
Rational manin_sum(int d);

/// Σ_{m⊢β} (-1)^{L(m)} / (Aut(m) ∏m_i) ∫_{M_{0,L(m)+3}} 1/∏(1 - m_i ψ_i).
Rational s_beta(int beta);

/// ψ(t) = 1 + Σ s_β t^β; entry k is the coefficient of t^k, k = 0..order.
std::vector<Rational> psi_series(int order);

/// γ(t) = Σ (-1)^α g_α t^α from the partition sums; entry 0 is zero.
std::vector<Rational> gamma_series(int order, IntegralCache* cache = nullptr);

/// γ(t) computed instead as (1/24) log ψ(t).
std::vector<Rational> gamma_series_from_psi(int order);

struct ConjectureValue {
  /// |B_2g| d^{2g-3} / (2g (2g-2)!)
  Rational bernoulli_form;
  /// |χ(M_g)| d^{2g-3} / (2g-3)!
  Rational euler_form;
  bool agree = false;
};

/// χ(M_g) = B_2g / (2g (2g-2)), the orbifold Euler characteristic.
Rational orbifold_euler_characteristic(int g);

/// Predicted genus-g (g >= 2) degree-d multiple-cover contribution.
ConjectureValue conjecture_value(int g, int d);

/// Records needed to evaluate mast2_sum(g, d) from a Hodge table.
std::vector<HodgeRecord> mast2_required_records(int g, int d);

/// Σ_{m⊢d} (-1)^{d-L(m)} / (Aut(m) ∏m_i) ∫_{M_{g,L(m)}} (1 + c_1(E) + ... + c_g(E)) / ∏(1 - m_i ψ_i).
/// Genus one is native; genus >= 2 reads every integral from `table` and
/// raises MissingHodgeTable listing the absent records.
Rational mast2_sum(int g, int d, const HodgeTable* table = nullptr, IntegralCache* cache = nullptr);

}  // namespace gwloc
