#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geoclust/rational.hpp"

namespace geoclust {

using Node = std::uint32_t;
using NodeMask = std::vector<std::uint8_t>;

inline constexpr Node kNil = std::numeric_limits<Node>::max();
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct WeightedEdge {
  Node u = 0;
  Node v = 0;
  Rational w;
};

// Undirected weighted graph over nodes 0..n-1. A missing edge stands for an
// infinite distance; the triangle inequality is not assumed.
class SemimetricGraph {
 public:
  struct Arc {
    Node to;
    std::uint32_t edge;
  };

  SemimetricGraph() = default;
  // Throws InvalidInput on self-loops, duplicates, non-positive weights or
  // out-of-range endpoints. Edges are stored with u < v, sorted by (u, v).
  SemimetricGraph(std::size_t n, std::vector<WeightedEdge> edges);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  // Arcs out of v, ascending by neighbor id.
  std::span<const Arc> neighbors(Node v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

  // Ascending distinct edge weights.
  const std::vector<Rational>& distinct_weights() const { return weights_; }
  // Index of the edge's weight in distinct_weights().
  std::uint32_t edge_rank(std::uint32_t edge) const { return ranks_[edge]; }
  // Number of distinct weights <= eps; an edge is kept at threshold eps iff
  // its rank is below this value.
  std::uint32_t rank_cutoff(const Rational& eps) const;

  // d(u, v): zero on the diagonal, nullopt when no edge exists.
  std::optional<Rational> distance(Node u, Node v) const;
  // Rank of d(u, v), or nullopt for u == v or a missing edge.
  std::optional<std::uint32_t> distance_rank(Node u, Node v) const;

 private:
  std::size_t n_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<Rational> weights_;
  std::vector<std::uint32_t> ranks_;
};

// Unweighted graph keeping the edges with d(u, v) <= eps, optionally induced
// on a subset of the nodes. Node ids stay those of the source graph.
class ThresholdGraph {
 public:
  ThresholdGraph() = default;
  ThresholdGraph(const SemimetricGraph& g, const Rational& eps);
  ThresholdGraph(const SemimetricGraph& g, const Rational& eps, const NodeMask& present);

  std::size_t size() const { return present_.size(); }
  const Rational& epsilon() const { return eps_; }
  bool contains(Node v) const { return v < present_.size() && present_[v] != 0; }
  const NodeMask& present() const { return present_; }
  // Present nodes in ascending order.
  const std::vector<Node>& vertices() const { return vertices_; }
  std::size_t edge_count() const { return adj_.size() / 2; }

  std::span<const Node> neighbors(Node v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

 private:
  void build(const SemimetricGraph& g, const Rational& eps, const NodeMask* present);

  Rational eps_;
  NodeMask present_;
  std::vector<Node> vertices_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Node> adj_;
};

ThresholdGraph threshold(const SemimetricGraph& g, const Rational& eps);

// Hop distances from source. `mask`, when given, restricts the search to
// the induced subgraph on the marked nodes. Unreached nodes get kUnreachable.
std::vector<std::uint32_t> bfs_distances(const ThresholdGraph& g, Node source,
                                         const NodeMask* mask = nullptr);

// Like bfs_distances but stops expanding at hop `limit`; farther nodes stay
// kUnreachable.
std::vector<std::uint32_t> bfs_distances_bounded(const ThresholdGraph& g, Node source,
                                                 std::uint32_t limit);

// BFS shortest path from s to t, neighbors scanned in ascending id and each
// node's parent is its first discoverer. Throws NoPath.
std::vector<Node> shortest_path(const ThresholdGraph& g, Node s, Node t,
                                const NodeMask* mask = nullptr);

// Sorted node set of v's component.
std::vector<Node> connected_component(const ThresholdGraph& g, Node v,
                                      const NodeMask* mask = nullptr);

// All components, each sorted, listed by ascending smallest member.
std::vector<std::vector<Node>> components(const ThresholdGraph& g);

// Component index per node (kUnreachable for absent nodes), numbered in the
// same order as components().
std::vector<std::uint32_t> component_labels(const ThresholdGraph& g);

// Edges (inside, outside) with exactly one endpoint in u_set, ordered by
// (inside, outside).
std::vector<std::pair<Node, Node>> cut_edges(const ThresholdGraph& g,
                                             std::span<const Node> u_set);

struct SpanningForest {
  std::size_t n = 0;
  std::vector<WeightedEdge> edges;

  SemimetricGraph as_graph() const { return SemimetricGraph(n, edges); }
};

// Kruskal over edges sorted by (w, u, v).
SpanningForest mst(const SemimetricGraph& g);

NodeMask make_mask(std::size_t n, std::span<const Node> nodes);

}  // namespace geoclust
