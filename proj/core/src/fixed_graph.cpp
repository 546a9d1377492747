#include "gwloc/fixed_graph.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"

namespace gwloc {

FixedGraph::FixedGraph(int r, std::vector<GraphVertex> vertices, std::vector<GraphEdge> edges)
    : r_(r), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (r_ < 1) fail(ErrorKind::InvalidArgument, "target dimension r must be >= 1");
  if (vertices_.empty()) fail(ErrorKind::InvalidArgument, "graph needs at least one vertex");
  if (edges_.empty()) fail(ErrorKind::InvalidArgument, "graph needs at least one edge (d >= 1)");
  const int count = static_cast<int>(vertices_.size());

  std::vector<int> all_legs;
  for (auto& v : vertices_) {
    if (v.label < 0 || v.label > r_) fail(ErrorKind::InvalidArgument, "vertex label out of range");
    if (v.genus < 0) fail(ErrorKind::InvalidArgument, "negative vertex genus");
    std::sort(v.legs.begin(), v.legs.end());
    all_legs.insert(all_legs.end(), v.legs.begin(), v.legs.end());
    g_ += v.genus;
  }
  std::sort(all_legs.begin(), all_legs.end());
  for (std::size_t i = 0; i < all_legs.size(); ++i) {
    if (all_legs[i] != static_cast<int>(i) + 1) {
      fail(ErrorKind::InvalidArgument, "legs must partition {1..n}");
    }
  }
  n_ = static_cast<int>(all_legs.size());

  valence_.assign(vertices_.size(), 0);
  std::vector<int> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= count) fail(ErrorKind::InvalidArgument, "edge endpoint out of range");
    if (e.u == e.v) fail(ErrorKind::InvalidArgument, "loops are not allowed");
    if (e.degree < 1) fail(ErrorKind::InvalidArgument, "edge degree must be >= 1");
    if (vertices_[e.u].label == vertices_[e.v].label) {
      fail(ErrorKind::InvalidArgument, "adjacent vertices must carry different labels");
    }
    ++valence_[e.u];
    ++valence_[e.v];
    d_ += e.degree;
    parent[root(e.u)] = root(e.v);
  }
  for (int v = 0; v < count; ++v) {
    if (root(v) != root(0)) fail(ErrorKind::InvalidArgument, "graph must be connected");
  }
  g_ += first_betti();
}

int FixedGraph::first_betti() const {
  return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + 1;
}

std::vector<Flag> FixedGraph::flags() const {
  std::vector<Flag> out;
  out.reserve(2 * edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const int li = vertices_[e.u].label;
    const int lj = vertices_[e.v].label;
    out.push_back({static_cast<int>(i), e.u, li, lj, e.degree});
    out.push_back({static_cast<int>(i), e.v, lj, li, e.degree});
  }
  return out;
}

std::vector<Flag> FixedGraph::flags_at(int vertex) const {
  std::vector<Flag> out;
  for (const auto& f : flags()) {
    if (f.vertex == vertex) out.push_back(f);
  }
  return out;
}

FixedGraph FixedGraph::with_legs(const std::vector<std::vector<int>>& legs) const {
  if (legs.size() != vertices_.size()) fail(ErrorKind::InvalidArgument, "one leg set per vertex required");
  auto vertices = vertices_;
  for (std::size_t v = 0; v < vertices.size(); ++v) vertices[v].legs = legs[v];
  return FixedGraph(r_, std::move(vertices), edges_);
}

namespace {

// Iterated colour refinement; colours are isomorphism-invariant integers.
std::vector<int> refined_colours(const FixedGraph& graph) {
  const auto& vs = graph.vertices();
  const std::size_t count = vs.size();
  std::vector<std::vector<std::pair<int, int>>> adjacency(count);
  for (const auto& e : graph.edges()) {
    adjacency[e.u].push_back({e.degree, e.v});
    adjacency[e.v].push_back({e.degree, e.u});
  }

  auto assign = [](const std::vector<std::vector<int>>& tuples) {
    std::vector<std::vector<int>> sorted = tuples;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> colours(tuples.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      colours[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), tuples[i]) - sorted.begin());
    }
    return std::make_pair(colours, sorted.size());
  };

  std::vector<std::vector<int>> tuples(count);
  for (std::size_t v = 0; v < count; ++v) {
    auto& t = tuples[v];
    t = {vs[v].label, vs[v].genus, static_cast<int>(vs[v].legs.size())};
    t.insert(t.end(), vs[v].legs.begin(), vs[v].legs.end());
  }
  auto [colours, classes] = assign(tuples);

  while (true) {
    for (std::size_t v = 0; v < count; ++v) {
      std::vector<std::pair<int, int>> around;
      for (const auto& [deg, w] : adjacency[v]) around.push_back({deg, colours[w]});
      std::sort(around.begin(), around.end());
      auto& t = tuples[v];
      t = {colours[v]};
      for (const auto& [deg, c] : around) {
        t.push_back(deg);
        t.push_back(c);
      }
    }
    auto [next, next_classes] = assign(tuples);
    colours = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  return colours;
}

// Visits every vertex ordering that lists colour classes in increasing
// colour order, permuting freely inside each class.
void for_each_class_ordering(const std::vector<int>& colours,
                             const std::function<void(const std::vector<int>&)>& visit) {
  std::map<int, std::vector<int>> classes;
  for (std::size_t v = 0; v < colours.size(); ++v) classes[colours[v]].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> blocks;
  for (auto& [c, members] : classes) blocks.push_back(members);

  std::vector<int> order;
  std::function<void(std::size_t)> recurse = [&](std::size_t block) {
    if (block == blocks.size()) {
      visit(order);
      return;
    }
    auto members = blocks[block];
    std::sort(members.begin(), members.end());
    do {
      order.insert(order.end(), members.begin(), members.end());
      recurse(block + 1);
      order.resize(order.size() - members.size());
    } while (std::next_permutation(members.begin(), members.end()));
  };
  recurse(0);
}

std::vector<int> encode(const FixedGraph& graph, const std::vector<int>& order) {
  const auto& vs = graph.vertices();
  std::vector<int> position(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<int>(p);

  std::vector<int> out = {graph.r(), graph.degree(), graph.legs(), graph.genus(),
                          static_cast<int>(vs.size()), static_cast<int>(graph.edges().size())};
  for (int v : order) {
    out.push_back(vs[v].label);
    out.push_back(vs[v].genus);
    out.push_back(static_cast<int>(vs[v].legs.size()));
    out.insert(out.end(), vs[v].legs.begin(), vs[v].legs.end());
  }
  std::vector<std::array<int, 3>> edges;
  for (const auto& e : graph.edges()) {
    const int a = position[e.u];
    const int b = position[e.v];
    edges.push_back({std::min(a, b), std::max(a, b), e.degree});
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) out.insert(out.end(), e.begin(), e.end());
  return out;
}

std::vector<std::array<int, 3>> sorted_edge_multiset(const FixedGraph& graph, const std::vector<int>& perm) {
  std::vector<std::array<int, 3>> out;
  for (const auto& e : graph.edges()) {
    const int a = perm[e.u];
    const int b = perm[e.v];
    out.push_back({std::min(a, b), std::max(a, b), e.degree});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string canonical_form(const FixedGraph& graph) {
  const auto colours = refined_colours(graph);
  std::vector<int> best;
  for_each_class_ordering(colours, [&](const std::vector<int>& order) {
    auto candidate = encode(graph, order);
    if (best.empty() || candidate < best) best = std::move(candidate);
  });
  std::string bytes;
  bytes.reserve(best.size() * 4);
  for (int value : best) {
    const auto u = static_cast<std::uint32_t>(value);
    for (int shift = 0; shift < 32; shift += 8) bytes.push_back(static_cast<char>((u >> shift) & 0xff));
  }
  return bytes;
}

std::vector<std::vector<int>> vertex_automorphisms(const FixedGraph& graph) {
  const auto colours = refined_colours(graph);
  const auto& vs = graph.vertices();
  std::vector<int> identity(vs.size());
  std::iota(identity.begin(), identity.end(), 0);
  const auto reference = sorted_edge_multiset(graph, identity);

  // Orderings list classes in the same sequence, so pairing an ordering
  // with the canonical (sorted) one defines a colour-preserving permutation.
  std::vector<int> base;
  for_each_class_ordering(colours, [&](const std::vector<int>& order) {
    if (base.empty()) base = order;
  });

  std::vector<std::vector<int>> out;
  for_each_class_ordering(colours, [&](const std::vector<int>& order) {
    std::vector<int> perm(vs.size());
    for (std::size_t p = 0; p < order.size(); ++p) perm[base[p]] = order[p];
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const auto& a = vs[v];
      const auto& b = vs[perm[v]];
      if (a.label != b.label || a.genus != b.genus || a.legs != b.legs) return;
    }
    if (sorted_edge_multiset(graph, perm) == reference) out.push_back(std::move(perm));
  });
  return out;
}

BigInt graph_automorphism_count(const FixedGraph& graph) {
  std::map<std::array<int, 3>, unsigned long> multiplicity;
  for (const auto& e : graph.edges()) ++multiplicity[{e.u, e.v, e.degree}];
  BigInt out = static_cast<unsigned long>(vertex_automorphisms(graph).size());
  for (const auto& [key, m] : multiplicity) out *= factorial(m);
  return out;
}

BigInt automorphism_order(const FixedGraph& graph) {
  BigInt out = graph_automorphism_count(graph);
  for (const auto& e : graph.edges()) out *= e.degree;
  return out;
}

int moduli_dimension(const FixedGraph& graph) {
  int total = 0;
  const auto& vs = graph.vertices();
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const int special = graph.valence(static_cast<int>(v)) + static_cast<int>(vs[v].legs.size());
    total += std::max(0, 3 * vs[v].genus - 3 + special);
  }
  return total;
}

namespace {

void check_parameters(int g, int n, int r, int d) {
  if (g < 0 || n < 0 || r < 1 || d < 1) {
    fail(ErrorKind::InvalidArgument, "graph enumeration needs g >= 0, n >= 0, r >= 1, d >= 1");
  }
}

[[noreturn]] void cap_exceeded(std::size_t cap) {
  fail(ErrorKind::GraphCapExceeded, "graph count exceeds cap of " + std::to_string(cap));
}

bool connected(int vertex_count, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> parent(static_cast<std::size_t>(vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (const auto& [a, b] : pairs) parent[root(a)] = root(b);
  for (int v = 1; v < vertex_count; ++v) {
    if (root(v) != root(0)) return false;
  }
  return true;
}

// Multisets of `size` elements from {0..universe-1}, as non-decreasing index
// vectors; `reverse` walks them in the opposite order.
void for_each_multiset(int universe, int size, bool reverse,
                       const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> current;
  std::function<void(int)> recurse = [&](int lowest) {
    if (static_cast<int>(current.size()) == size) {
      visit(current);
      return;
    }
    for (int k = 0; k < universe - lowest; ++k) {
      const int value = reverse ? universe - 1 - k : lowest + k;
      if (value < lowest) continue;
      current.push_back(value);
      recurse(value);
      current.pop_back();
    }
  };
  recurse(0);
}

void for_each_positive_composition(int total, int parts,
                                   const std::function<void(const std::vector<int>&)>& visit) {
  for_each_weak_composition(total - parts, parts, [&](std::span<const int> weak) {
    std::vector<int> out(weak.begin(), weak.end());
    for (auto& x : out) ++x;
    visit(out);
  });
}

void for_each_labelling(int vertex_count, int r, const std::vector<std::pair<int, int>>& pairs, bool reverse,
                        const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> labels(static_cast<std::size_t>(vertex_count), -1);
  std::function<void(int)> recurse = [&](int v) {
    if (v == vertex_count) {
      visit(labels);
      return;
    }
    for (int k = 0; k <= r; ++k) {
      const int label = reverse ? r - k : k;
      bool ok = true;
      for (const auto& [a, b] : pairs) {
        if ((a == v && b < v && labels[b] == label) || (b == v && a < v && labels[a] == label)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      labels[v] = label;
      recurse(v + 1);
    }
    labels[v] = -1;
  };
  recurse(0);
}

}  // namespace

std::vector<FixedGraph> enumerate_shapes(int g, int r, int d, const EnumerationOptions& options) {
  check_parameters(g, 0, r, d);
  const bool rev = options.reverse_exploration;
  std::map<std::string, FixedGraph> found;

  for (int vertex_count = 2; vertex_count <= d + 1; ++vertex_count) {
    std::vector<std::pair<int, int>> all_pairs;
    for (int a = 0; a < vertex_count; ++a) {
      for (int b = a + 1; b < vertex_count; ++b) all_pairs.push_back({a, b});
    }
    for (int betti = 0; betti <= g; ++betti) {
      const int edge_count = vertex_count - 1 + betti;
      if (edge_count < 1 || edge_count > d) continue;
      const int vertex_genus = g - betti;

      for_each_multiset(static_cast<int>(all_pairs.size()), edge_count, rev, [&](const std::vector<int>& picks) {
        std::vector<std::pair<int, int>> pairs;
        for (int p : picks) pairs.push_back(all_pairs[p]);
        if (!connected(vertex_count, pairs)) return;

        for_each_labelling(vertex_count, r, pairs, rev, [&](const std::vector<int>& labels) {
          for_each_positive_composition(d, edge_count, [&](const std::vector<int>& degrees) {
            for_each_weak_composition(vertex_genus, vertex_count, [&](std::span<const int> genera) {
              std::vector<GraphVertex> vertices(static_cast<std::size_t>(vertex_count));
              for (int v = 0; v < vertex_count; ++v) vertices[v] = {labels[v], genera[v], {}};
              std::vector<GraphEdge> edges;
              for (std::size_t e = 0; e < pairs.size(); ++e) {
                edges.push_back({pairs[e].first, pairs[e].second, degrees[e]});
              }
              FixedGraph graph(r, std::move(vertices), std::move(edges));
              auto key = canonical_form(graph);
              if (found.count(key) != 0) return;
              if (found.size() >= options.cap) cap_exceeded(options.cap);
              found.emplace(std::move(key), std::move(graph));
            });
          });
        });
      });
    }
  }

  std::vector<FixedGraph> out;
  out.reserve(found.size());
  for (auto& [key, graph] : found) out.push_back(std::move(graph));
  return out;
}

std::vector<FixedGraph> enumerate_graphs(int g, int n, int r, int d, const EnumerationOptions& options) {
  check_parameters(g, n, r, d);
  const auto shapes = enumerate_shapes(g, r, d, options);
  if (n == 0) return shapes;

  std::vector<std::pair<std::string, FixedGraph>> found;
  for (const auto& shape : shapes) {
    const auto group = vertex_automorphisms(shape);
    const int vertex_count = static_cast<int>(shape.vertices().size());
    std::vector<int> assignment(static_cast<std::size_t>(n), 0);

    // Keep the lexicographically least assignment of each orbit.
    auto minimal = [&]() {
      for (const auto& perm : group) {
        for (int m = 0; m < n; ++m) {
          const int image = perm[assignment[m]];
          if (image < assignment[m]) return false;
          if (image > assignment[m]) break;
        }
      }
      return true;
    };

    std::function<void(int)> recurse = [&](int leg) {
      if (leg == n) {
        if (!minimal()) return;
        std::vector<std::vector<int>> legs(static_cast<std::size_t>(vertex_count));
        for (int m = 0; m < n; ++m) legs[assignment[m]].push_back(m + 1);
        if (found.size() >= options.cap) cap_exceeded(options.cap);
        auto graph = shape.with_legs(legs);
        found.emplace_back(canonical_form(graph), std::move(graph));
        return;
      }
      for (int k = 0; k < vertex_count; ++k) {
        assignment[leg] = options.reverse_exploration ? vertex_count - 1 - k : k;
        recurse(leg + 1);
      }
    };
    recurse(0);
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FixedGraph> out;
  out.reserve(found.size());
  for (auto& [key, graph] : found) out.push_back(std::move(graph));
  return out;
}

BigInt leg_orbit_count(const FixedGraph& shape, int n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "negative leg count");
  const auto group = vertex_automorphisms(shape);
  BigInt fixed_total = 0;
  for (const auto& perm : group) {
    unsigned long fixed = 0;
    for (std::size_t v = 0; v < perm.size(); ++v) fixed += perm[v] == static_cast<int>(v) ? 1 : 0;
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), fixed, static_cast<unsigned long>(n));
    fixed_total += power;
  }
  return fixed_total / static_cast<unsigned long>(group.size());
}

void to_json(nlohmann::json& out, const FixedGraph& graph) {
  out = nlohmann::json::object();
  out["r"] = graph.r();
  out["d"] = graph.degree();
  out["n"] = graph.legs();
  out["g"] = graph.genus();
  auto vertices = nlohmann::json::array();
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    const auto& vx = graph.vertices()[v];
    vertices.push_back({{"id", v}, {"label", vx.label}, {"genus", vx.genus}, {"legs", vx.legs}});
  }
  auto edges = nlohmann::json::array();
  for (const auto& e : graph.edges()) edges.push_back({{"u", e.u}, {"v", e.v}, {"degree", e.degree}});
  out["vertices"] = std::move(vertices);
  out["edges"] = std::move(edges);
  out["aut"] = graph_automorphism_count(graph).get_str();
  out["A_order"] = automorphism_order(graph).get_str();
}

}  // namespace gwloc
