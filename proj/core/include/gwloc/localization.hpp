#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gwloc/fixed_graph.hpp"
#include "gwloc/integral_cache.hpp"
#include "gwloc/rational.hpp"

namespace gwloc {

/// Torus weights λ_0..λ_r; C* acts on C^{r+1} with weights -λ_i.
class WeightVector {
 public:
  explicit WeightVector(std::vector<Rational> values);

  int r() const { return static_cast<int>(values_.size()) - 1; }
  const Rational& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<Rational>& values() const { return values_; }

  WeightVector scaled(const Rational& factor) const;
  /// Result has λ'_i = λ_{perm[i]}.
  WeightVector permuted(std::span<const int> perm) const;
  std::string str() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Rational> values_;
};

/// λ_k = ±(first prime above 1000(k+1)), signs alternating.
WeightVector default_weights(int r);

/// Deterministic source of weight vectors: the default prime vector first,
/// then pseudo-random integer vectors drawn from a seeded stream.
class WeightStream {
 public:
  WeightStream(std::uint64_t seed, int r);
  WeightVector next();

 private:
  std::mt19937_64 rng_;
  int r_;
  bool first_ = true;
};

/// Polynomial c + c'λ in the genus-one Hodge class, truncated by λ² = 0.
struct LambdaPoly {
  Rational constant{1};
  Rational linear{};

  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
    return {a.constant * b.constant, a.constant * b.linear + a.linear * b.constant};
  }
  friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;
};

/// ∏_{j≠i} (λ_i - λ_j): the Euler class of T_{p_i}P^r.
Rational tangent_product(int label, const WeightVector& w);

/// ω_F = (λ_{i(F)} - λ_{j(F)}) / d_e.
Rational flag_weight(const Flag& flag, const WeightVector& w);

/// Inverse Euler class of the moving part of H^0(C_e, f*TP^r):
/// (-1)^d d^{2d} / ((d!)^2 (λ_i-λ_j)^{2d}) · ∏_{a+b=d, k≠i,j} 1/((aλ_i+bλ_j)/d - λ_k).
/// Throws NonGenericWeights if a denominator vanishes.
Rational edge_factor(int i, int j, int degree, const WeightVector& w);

/// ∏_{j≠i} c_{(λ_i-λ_j)^{-1}}(E^∨)·(λ_i-λ_j)^{g-1} for g ∈ {0, 1}.
LambdaPoly vertex_factor(int genus, int label, const WeightVector& w);

/// Coefficients of ψ^k, k = 0..truncation, in ∏_{j≠i}(λ_i-λ_j) / (ω - ψ).
std::vector<Rational> flag_factor(const Rational& omega, int label, const WeightVector& w, int truncation);

/// ∫_{M_{g,val+legs}} extra · vertex_factor · ∏_F flag_factor(ω_F). Genus-zero
/// vertices of any valence go through integral_g0_closed; genus-one vertices
/// expand the flag series and use memoised vertex integrals.
Rational integrate_vertex(int genus, int label, std::span<const Rational> omegas, int legs,
                          const LambdaPoly& extra, const WeightVector& w, IntegralCache& cache);

/// (1/|A_Γ|)·∏_m λ_{i(m)}^{l_m} ∫_{M_Γ} 1/e(N^vir_Γ) for one legged graph.
Rational graph_contribution(const FixedGraph& graph, const WeightVector& w, std::span<const int> insertions,
                            IntegralCache& cache);

/// Insertion powers grouped as (power, multiplicity), ascending by power.
struct InsertionProfile {
  std::vector<std::pair<int, int>> classes;

  static InsertionProfile of(std::span<const int> insertions);
  int count() const;
};

/// Sum of graph_contribution over every way of attaching the numbered legs
/// to the vertices of a leg-free `shape`, weighted by orbit size. Equals the
/// sum over all legged graphs whose underlying shape is `shape`.
Rational leg_summed_contribution(const FixedGraph& shape, const WeightVector& w, const InsertionProfile& profile,
                                 IntegralCache& cache);

}  // namespace gwloc
