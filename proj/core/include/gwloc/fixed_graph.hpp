#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gwloc/rational.hpp"

namespace gwloc {

/// A connected component of the preimage of the fixed points: it sits over
/// p_label and has arithmetic genus `genus`. Legs are marking indices 1..n.
struct GraphVertex {
  int label = 0;
  int genus = 0;
  std::vector<int> legs;
};

/// A non-contracted component covering the line through p_{i(u)}, p_{i(v)}.
struct GraphEdge {
  int u = 0;
  int v = 0;
  int degree = 1;
};

/// Incident edge-vertex pair. `near_label` is the label of `vertex`.
struct Flag {
  int edge = 0;
  int vertex = 0;
  int near_label = 0;
  int far_label = 0;
  int degree = 1;
};

/// Marked graph indexing a component of the torus-fixed locus of
/// M_{g,n}(P^r, d). Construction validates every structural invariant.
class FixedGraph {
 public:
  FixedGraph(int r, std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges);

  int r() const { return r_; }
  int degree() const { return d_; }
  int legs() const { return n_; }
  int genus() const { return g_; }
  int first_betti() const;

  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  int valence(int vertex) const { return valence_[static_cast<std::size_t>(vertex)]; }
  std::vector<Flag> flags() const;
  std::vector<Flag> flags_at(int vertex) const;

  /// Copy with the given leg sets attached (one entry per vertex).
  FixedGraph with_legs(const std::vector<std::vector<int>>& legs) const;

 private:
  int r_ = 1;
  int d_ = 0;
  int n_ = 0;
  int g_ = 0;
  std::vector<GraphVertex> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<int> valence_;
};

/// Byte string equal for two graphs iff they are isomorphic as marked graphs
/// (labels, genera, edge degrees and numbered legs respected).
std::string canonical_form(const FixedGraph& graph);

/// Vertex permutations (perm[v] = image of v) that extend to automorphisms.
std::vector<std::vector<int>> vertex_automorphisms(const FixedGraph& graph);

/// |Aut(Γ)|: vertex automorphisms times permutations of parallel edges of
/// equal degree.
BigInt graph_automorphism_count(const FixedGraph& graph);

/// |A_Γ| = |Aut(Γ)| · ∏ d_e.
BigInt automorphism_order(const FixedGraph& graph);

/// dim M_Γ = Σ_v max(0, 3g(v) - 3 + val(v) + #legs(v)).
int moduli_dimension(const FixedGraph& graph);

struct EnumerationOptions {
  std::size_t cap = 10'000'000;
  /// Walks the search space in the opposite order; output is unaffected.
  bool reverse_exploration = false;
};

/// Graphs with no legs, one per isomorphism class, sorted by canonical form.
std::vector<FixedGraph> enumerate_shapes(int g, int r, int d, const EnumerationOptions& options = {});

/// Graphs with legs {1..n}, one per isomorphism class, sorted by canonical form.
std::vector<FixedGraph> enumerate_graphs(int g, int n, int r, int d,
                                         const EnumerationOptions& options = {});

/// Number of isomorphism classes of n-legged graphs whose leg-free shape is
/// `shape`, by orbit counting over its vertex automorphisms.
BigInt leg_orbit_count(const FixedGraph& shape, int n);

void to_json(nlohmann::json& out, const FixedGraph& graph);

}  // namespace gwloc
