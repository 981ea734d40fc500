#include "geoclust/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <boost/pending/disjoint_sets.hpp>

#include "geoclust/error.hpp"

namespace geoclust {

SemimetricGraph::SemimetricGraph(std::size_t n, std::vector<WeightedEdge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ >= kNil) throw Error(ErrorKind::InvalidInput, "too many nodes");
  for (auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw Error(ErrorKind::InvalidInput,
                  "edge endpoint out of range: (" + std::to_string(e.u) + ", " +
                      std::to_string(e.v) + ")",
                  {e.u, e.v});
    }
    if (e.u == e.v) {
      throw Error(ErrorKind::InvalidInput, "self-loop at node " + std::to_string(e.u), {e.u});
    }
    if (e.w <= 0) {
      throw Error(ErrorKind::InvalidInput, "non-positive edge weight", {e.u, e.v});
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw Error(ErrorKind::InvalidInput,
                  "duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                      std::to_string(edges_[i].v) + ")",
                  {edges_[i].u, edges_[i].v});
    }
  }

  weights_.reserve(edges_.size());
  for (const auto& e : edges_) weights_.push_back(e.w);
  std::sort(weights_.begin(), weights_.end());
  weights_.erase(std::unique(weights_.begin(), weights_.end()), weights_.end());
  ranks_.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    ranks_[i] = static_cast<std::uint32_t>(
        std::lower_bound(weights_.begin(), weights_.end(), edges_[i].w) - weights_.begin());
  }

  std::vector<std::uint32_t> degree(n_, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  arcs_.resize(offsets_[n_]);
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    arcs_[fill[edges_[i].u]++] = {edges_[i].v, i};
    arcs_[fill[edges_[i].v]++] = {edges_[i].u, i};
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(arcs_.begin() + offsets_[v], arcs_.begin() + offsets_[v + 1],
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
}

std::uint32_t SemimetricGraph::rank_cutoff(const Rational& eps) const {
  return static_cast<std::uint32_t>(
      std::upper_bound(weights_.begin(), weights_.end(), eps) - weights_.begin());
}

std::optional<std::uint32_t> SemimetricGraph::distance_rank(Node u, Node v) const {
  if (u == v || u >= n_ || v >= n_) return std::nullopt;
  const auto arcs = neighbors(u);
  const auto it = std::lower_bound(arcs.begin(), arcs.end(), v,
                                   [](const Arc& a, Node x) { return a.to < x; });
  if (it == arcs.end() || it->to != v) return std::nullopt;
  return ranks_[it->edge];
}

std::optional<Rational> SemimetricGraph::distance(Node u, Node v) const {
  if (u == v) return Rational(0);
  const auto rank = distance_rank(u, v);
  if (!rank) return std::nullopt;
  return weights_[*rank];
}

ThresholdGraph::ThresholdGraph(const SemimetricGraph& g, const Rational& eps) {
  build(g, eps, nullptr);
}

ThresholdGraph::ThresholdGraph(const SemimetricGraph& g, const Rational& eps,
                               const NodeMask& present) {
  if (present.size() != g.size()) {
    throw Error(ErrorKind::InvalidInput, "node mask size does not match the graph");
  }
  build(g, eps, &present);
}

void ThresholdGraph::build(const SemimetricGraph& g, const Rational& eps,
                           const NodeMask* present) {
  eps_ = eps;
  const std::size_t n = g.size();
  present_ = present ? *present : NodeMask(n, 1);
  vertices_.clear();
  for (Node v = 0; v < n; ++v) {
    if (present_[v]) vertices_.push_back(v);
  }
  const std::uint32_t cutoff = g.rank_cutoff(eps);
  offsets_.assign(n + 1, 0);
  adj_.clear();
  for (Node v = 0; v < n; ++v) {
    if (present_[v]) {
      for (const auto& arc : g.neighbors(v)) {
        if (present_[arc.to] && g.edge_rank(arc.edge) < cutoff) adj_.push_back(arc.to);
      }
    }
    offsets_[v + 1] = static_cast<std::uint32_t>(adj_.size());
  }
}

ThresholdGraph threshold(const SemimetricGraph& g, const Rational& eps) {
  return ThresholdGraph(g, eps);
}

namespace {

void check_node(const ThresholdGraph& g, Node v) {
  if (v >= g.size()) {
    throw Error(ErrorKind::InvalidInput, "node " + std::to_string(v) + " out of range", {v});
  }
}

bool usable(const ThresholdGraph& g, const NodeMask* mask, Node v) {
  return g.contains(v) && (!mask || (*mask)[v]);
}

}  // namespace

std::vector<std::uint32_t> bfs_distances(const ThresholdGraph& g, Node source,
                                         const NodeMask* mask) {
  check_node(g, source);
  std::vector<std::uint32_t> dist(g.size(), kUnreachable);
  if (!usable(g, mask, source)) return dist;
  std::vector<Node> queue;
  queue.reserve(g.vertices().size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Node v = queue[head];
    for (const Node w : g.neighbors(v)) {
      if (dist[w] == kUnreachable && (!mask || (*mask)[w])) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> bfs_distances_bounded(const ThresholdGraph& g, Node source,
                                                 std::uint32_t limit) {
  check_node(g, source);
  std::vector<std::uint32_t> dist(g.size(), kUnreachable);
  if (!g.contains(source)) return dist;
  std::vector<Node> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Node v = queue[head];
    if (dist[v] >= limit) continue;
    for (const Node w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<Node> shortest_path(const ThresholdGraph& g, Node s, Node t, const NodeMask* mask) {
  check_node(g, s);
  check_node(g, t);
  if (!usable(g, mask, s) || !usable(g, mask, t)) {
    throw Error(ErrorKind::NoPath, "path endpoint not in the graph", {s, t});
  }
  if (s == t) return {s};
  std::vector<Node> parent(g.size(), kNil);
  std::vector<Node> queue{s};
  parent[s] = s;
  for (std::size_t head = 0; head < queue.size() && parent[t] == kNil; ++head) {
    const Node v = queue[head];
    for (const Node w : g.neighbors(v)) {
      if (parent[w] == kNil && (!mask || (*mask)[w])) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent[t] == kNil) {
    throw Error(ErrorKind::NoPath,
                "no path from " + std::to_string(s) + " to " + std::to_string(t), {s, t});
  }
  std::vector<Node> path;
  for (Node v = t; v != s; v = parent[v]) path.push_back(v);
  path.push_back(s);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Node> connected_component(const ThresholdGraph& g, Node v, const NodeMask* mask) {
  const auto dist = bfs_distances(g, v, mask);
  std::vector<Node> out;
  for (Node x = 0; x < dist.size(); ++x) {
    if (dist[x] != kUnreachable) out.push_back(x);
  }
  return out;
}

std::vector<std::uint32_t> component_labels(const ThresholdGraph& g) {
  std::vector<std::uint32_t> label(g.size(), kUnreachable);
  std::uint32_t next = 0;
  std::vector<Node> stack;
  for (const Node root : g.vertices()) {
    if (label[root] != kUnreachable) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const Node v = stack.back();
      stack.pop_back();
      for (const Node w : g.neighbors(v)) {
        if (label[w] == kUnreachable) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<std::vector<Node>> components(const ThresholdGraph& g) {
  const auto label = component_labels(g);
  std::vector<std::vector<Node>> out;
  for (const Node v : g.vertices()) {
    if (label[v] >= out.size()) out.resize(label[v] + 1);
    out[label[v]].push_back(v);
  }
  return out;
}

std::vector<std::pair<Node, Node>> cut_edges(const ThresholdGraph& g,
                                             std::span<const Node> u_set) {
  NodeMask inside(g.size(), 0);
  for (const Node v : u_set) {
    check_node(g, v);
    inside[v] = 1;
  }
  std::vector<std::pair<Node, Node>> out;
  for (const Node v : g.vertices()) {
    if (!inside[v]) continue;
    for (const Node w : g.neighbors(v)) {
      if (!inside[w]) out.emplace_back(v, w);
    }
  }
  return out;
}

SpanningForest mst(const SemimetricGraph& g) {
  const auto& edges = g.edges();
  std::vector<std::uint32_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0U);
  // Edges are already sorted by (u, v), so a stable sort on rank gives (w, u, v).
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return g.edge_rank(a) < g.edge_rank(b);
  });

  std::vector<std::size_t> rank(g.size()), parent(g.size());
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t v = 0; v < g.size(); ++v) sets.make_set(v);

  SpanningForest forest;
  forest.n = g.size();
  for (const auto idx : order) {
    const auto& e = edges[idx];
    const auto ru = sets.find_set(e.u);
    const auto rv = sets.find_set(e.v);
    if (ru == rv) continue;
    sets.link(ru, rv);
    forest.edges.push_back(e);
    if (forest.edges.size() + 1 == g.size()) break;
  }
  return forest;
}

NodeMask make_mask(std::size_t n, std::span<const Node> nodes) {
  NodeMask mask(n, 0);
  for (const Node v : nodes) {
    if (v >= n) throw Error(ErrorKind::InvalidInput, "node out of range", {v});
    mask[v] = 1;
  }
  return mask;
}

}  // namespace geoclust
