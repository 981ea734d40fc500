#include "geoclust/convexity.hpp"

#include <algorithm>
#include <map>
#include <string>

#include <boost/pending/disjoint_sets.hpp>

#include "geoclust/error.hpp"

namespace geoclust {

void ConvexityParams::validate(std::uint32_t k) const {
  if (beta <= 0 || beta > 1) throw Error(ErrorKind::InvalidInput, "beta must lie in (0, 1]");
  if (gamma <= 0 || gamma > 1) throw Error(ErrorKind::InvalidInput, "gamma must lie in (0, 1]");
  if (radii.empty()) throw Error(ErrorKind::InvalidInput, "no radius given");
  if (radii.size() != 1 && radii.size() != k) {
    throw Error(ErrorKind::InvalidInput, "expected 1 or " + std::to_string(k) + " radii, got " +
                                             std::to_string(radii.size()));
  }
  for (const auto& r : radii) {
    if (r <= 0) throw Error(ErrorKind::InvalidInput, "radii must be positive");
  }
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::Connectivity: return "connectivity";
    case Property::MetricMargin: return "metric-margin";
    case Property::Geodesic: return "geodesic";
  }
  return "unknown";
}

namespace {

// Block-cut structure of a threshold graph: vertex nodes 0..n-1, block nodes
// n..n+b-1, each vertex linked to every block containing it. Simple paths
// between two vertices only use vertices of the blocks on their tree path.
class BlockTree {
 public:
  explicit BlockTree(const ThresholdGraph& g) : n_(g.size()) {
    find_blocks(g);
    build_tree();
  }

  // Marks the vertices that can appear on a simple x-y path.
  void mark_allowed(Node x, Node y, NodeMask& allowed, std::vector<Node>& touched) const {
    std::uint32_t a = x;
    std::uint32_t b = y;
    auto take = [&](std::uint32_t node) {
      if (node < n_) return;
      for (const Node v : blocks_[node - n_]) {
        if (!allowed[v]) {
          allowed[v] = 1;
          touched.push_back(v);
        }
      }
    };
    while (depth_[a] > depth_[b]) {
      take(a);
      a = parent_[a];
    }
    while (depth_[b] > depth_[a]) {
      take(b);
      b = parent_[b];
    }
    while (a != b) {
      take(a);
      take(b);
      a = parent_[a];
      b = parent_[b];
    }
    take(a);
  }

 private:
  void find_blocks(const ThresholdGraph& g) {
    std::vector<std::uint32_t> disc(n_, kUnreachable), low(n_, 0);
    struct Frame {
      Node v;
      Node parent;
      std::uint32_t idx;
    };
    std::vector<Frame> frames;
    std::vector<std::pair<Node, Node>> edge_stack;
    std::uint32_t time = 0;
    for (const Node root : g.vertices()) {
      if (disc[root] != kUnreachable) continue;
      disc[root] = low[root] = time++;
      frames.push_back({root, kNil, 0});
      while (!frames.empty()) {
        Frame& f = frames.back();
        const Node v = f.v;
        const auto nbrs = g.neighbors(v);
        if (f.idx < nbrs.size()) {
          const Node w = nbrs[f.idx++];
          if (disc[w] == kUnreachable) {
            edge_stack.emplace_back(v, w);
            disc[w] = low[w] = time++;
            frames.push_back({w, v, 0});
          } else if (w != f.parent && disc[w] < disc[v]) {
            edge_stack.emplace_back(v, w);
            low[v] = std::min(low[v], disc[w]);
          }
          continue;
        }
        frames.pop_back();
        if (frames.empty()) break;
        const Node p = frames.back().v;
        low[p] = std::min(low[p], low[v]);
        if (low[v] >= disc[p]) {
          std::vector<Node> block;
          while (true) {
            const auto e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e.first);
            block.push_back(e.second);
            if (e.first == p && e.second == v) break;
          }
          std::sort(block.begin(), block.end());
          block.erase(std::unique(block.begin(), block.end()), block.end());
          blocks_.push_back(std::move(block));
        }
      }
    }
  }

  void build_tree() {
    const std::size_t total = n_ + blocks_.size();
    std::vector<std::vector<std::uint32_t>> adj(total);
    for (std::uint32_t b = 0; b < blocks_.size(); ++b) {
      for (const Node v : blocks_[b]) {
        adj[v].push_back(static_cast<std::uint32_t>(n_) + b);
        adj[n_ + b].push_back(v);
      }
    }
    parent_.assign(total, kUnreachable);
    depth_.assign(total, 0);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t root = 0; root < total; ++root) {
      if (parent_[root] != kUnreachable) continue;
      parent_[root] = root;
      queue.assign(1, root);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto v = queue[head];
        for (const auto w : adj[v]) {
          if (parent_[w] == kUnreachable) {
            parent_[w] = v;
            depth_[w] = depth_[v] + 1;
            queue.push_back(w);
          }
        }
      }
    }
  }

  std::size_t n_;
  std::vector<std::vector<Node>> blocks_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> depth_;
};

std::uint32_t length_bound(const Rational& gamma, std::uint32_t d) {
  const BigInt f = floor_of((1 + gamma) * d);
  return f >= kUnreachable ? kUnreachable - 1 : f.convert_to<std::uint32_t>();
}

// min over nodes z outside the cluster of d(v, z) + d(z, y), by bucketed BFS.
std::vector<std::uint32_t> detour_bound(const ThresholdGraph& g, const NodeMask& inside,
                                        const std::vector<std::uint32_t>& dist_y) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> h(n, kUnreachable);
  std::vector<std::vector<Node>> buckets;
  for (const Node z : g.vertices()) {
    if (inside[z] || dist_y[z] == kUnreachable) continue;
    h[z] = dist_y[z];
    if (buckets.size() <= h[z]) buckets.resize(h[z] + 1);
    buckets[h[z]].push_back(z);
  }
  for (std::uint32_t b = 0; b < buckets.size(); ++b) {
    for (std::size_t i = 0; i < buckets[b].size(); ++i) {
      const Node v = buckets[b][i];
      if (h[v] != b) continue;
      for (const Node w : g.neighbors(v)) {
        if (h[w] > b + 1) {
          h[w] = b + 1;
          if (buckets.size() <= b + 1) buckets.resize(b + 2);
          buckets[b + 1].push_back(w);
        }
      }
    }
  }
  return h;
}

class GeodesicSearch {
 public:
  GeodesicSearch(const ThresholdGraph& g, const BlockTree& tree, const Rational& gamma,
                 std::uint64_t budget, std::uint64_t& expansions)
      : g_(g), tree_(tree), gamma_(gamma), budget_(budget), expansions_(expansions),
        allowed_(g.size(), 0), visited_(g.size(), 0) {}

  // First violating path for the cluster, scanning pairs (x, y) with x < y.
  std::optional<std::vector<Node>> find(const std::vector<Node>& members, const NodeMask& inside) {
    std::map<Node, std::vector<std::uint32_t>> rows;
    for (const Node v : members) rows.emplace(v, bfs_distances(g_, v));
    bool has_foreign = false;
    for (const Node v : g_.vertices()) has_foreign = has_foreign || !inside[v];
    if (!has_foreign) return std::nullopt;

    for (const Node y : members) {
      const auto& dist_y = rows.at(y);
      std::vector<std::uint32_t> h;
      for (const Node x : members) {
        if (x >= y) break;
        const std::uint32_t d = dist_y[x];
        if (d == kUnreachable) continue;
        const std::uint32_t limit = length_bound(gamma_, d);
        if (h.empty()) h = detour_bound(g_, inside, dist_y);
        if (h[x] > limit) continue;

        std::vector<Node> touched;
        tree_.mark_allowed(x, y, allowed_, touched);
        const auto& dist_x = rows.at(x);
        bool candidate = false;
        for (const Node z : touched) {
          if (!inside[z] && dist_x[z] != kUnreachable && dist_y[z] != kUnreachable &&
              std::uint64_t{dist_x[z]} + dist_y[z] <= limit) {
            candidate = true;
            break;
          }
        }
        std::optional<std::vector<Node>> found;
        if (candidate) found = search(x, y, limit, inside, dist_y, h);
        for (const Node v : touched) allowed_[v] = 0;
        if (found) return found;
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<std::vector<Node>> search(Node x, Node y, std::uint32_t limit,
                                          const NodeMask& inside,
                                          const std::vector<std::uint32_t>& dist_y,
                                          const std::vector<std::uint32_t>& h) {
    struct Frame {
      Node v;
      std::uint32_t idx;
    };
    std::vector<Frame> frames{{x, 0}};
    std::vector<Node> path{x};
    visited_[x] = 1;
    std::uint32_t foreign = 0;
    std::optional<std::vector<Node>> result;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const Node v = f.v;
      bool pushed = false;
      if (v == y) {
        if (foreign > 0) {
          result = path;
          break;
        }
      } else {
        const auto nbrs = g_.neighbors(v);
        const auto len = static_cast<std::uint32_t>(path.size());
        while (f.idx < nbrs.size()) {
          const Node w = nbrs[f.idx++];
          if (!allowed_[w] || visited_[w] || dist_y[w] == kUnreachable) continue;
          if (std::uint64_t{len} + dist_y[w] > limit) continue;
          if (foreign == 0 && inside[w] && (h[w] == kUnreachable || std::uint64_t{len} + h[w] > limit)) {
            continue;
          }
          if (++expansions_ > budget_) {
            for (const Node p : path) visited_[p] = 0;
            throw Error(ErrorKind::TooLarge,
                        "geodesic path enumeration exceeded its budget of " +
                            std::to_string(budget_) + " expansions");
          }
          visited_[w] = 1;
          path.push_back(w);
          if (!inside[w]) ++foreign;
          frames.push_back({w, 0});
          pushed = true;
          break;
        }
      }
      if (pushed) continue;
      visited_[v] = 0;
      if (!inside[v]) --foreign;
      path.pop_back();
      frames.pop_back();
    }
    for (const Node p : path) visited_[p] = 0;
    return result;
  }

  const ThresholdGraph& g_;
  const BlockTree& tree_;
  const Rational& gamma_;
  std::uint64_t budget_;
  std::uint64_t& expansions_;
  NodeMask allowed_;
  NodeMask visited_;
};

std::optional<Violation> connectivity_violation(const ThresholdGraph& g, ClusterId i,
                                                const std::vector<Node>& members,
                                                const NodeMask& inside) {
  if (members.size() <= 1) return std::nullopt;
  const auto dist = bfs_distances(g, members.front(), &inside);
  for (const Node v : members) {
    if (dist[v] == kUnreachable) {
      return Violation{i, Property::Connectivity, g.epsilon(), {members.front(), v}};
    }
  }
  return std::nullopt;
}

std::optional<Violation> margin_violation(const SemimetricGraph& g, ClusterId i,
                                          const std::vector<Node>& members,
                                          const NodeMask& inside, const Rational& beta,
                                          const Rational& eps) {
  const std::uint32_t cutoff = g.rank_cutoff(beta * eps);
  for (const Node x : members) {
    for (const auto& arc : g.neighbors(x)) {
      if (!inside[arc.to] && g.edge_rank(arc.edge) < cutoff) {
        return Violation{i, Property::MetricMargin, eps, {x, arc.to}};
      }
    }
  }
  return std::nullopt;
}

void check_sizes(const SemimetricGraph& g, const Clustering& c) {
  if (c.size() != g.size()) {
    throw Error(ErrorKind::InvalidInput, "clustering has " + std::to_string(c.size()) +
                                             " labels for " + std::to_string(g.size()) + " nodes");
  }
  c.validate();
}

void check_parameter(const Rational& value, const char* name) {
  if (value <= 0 || value > 1) {
    throw Error(ErrorKind::InvalidInput, std::string(name) + " must lie in (0, 1]");
  }
}

void finish(ConvexityVerdict& verdict, const SemimetricGraph& g,
            const std::vector<std::vector<Node>>& clusters) {
  std::sort(verdict.violations.begin(), verdict.violations.end(),
            [](const Violation& a, const Violation& b) {
              return a.cluster != b.cluster ? a.cluster < b.cluster : a.property < b.property;
            });
  verdict.ok = verdict.violations.empty();
  for (const auto& members : clusters) {
    try {
      verdict.min_radii.emplace_back(min_radius(g, members));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Disconnected) throw;
      verdict.min_radii.emplace_back(std::nullopt);
    }
  }
}

}  // namespace

ConvexityVerdict check_convex(const SemimetricGraph& g, const Clustering& c, const Rational& eps,
                              const Rational& beta, const Rational& gamma,
                              const CheckOptions& options) {
  check_sizes(g, c);
  check_parameter(beta, "beta");
  check_parameter(gamma, "gamma");
  if (eps <= 0) throw Error(ErrorKind::InvalidInput, "radius must be positive");

  ConvexityVerdict verdict;
  verdict.declared_radii.assign(1, eps);
  const auto clusters = c.clusters();
  const ThresholdGraph tg(g, eps);
  const BlockTree tree(tg);
  GeodesicSearch search(tg, tree, gamma, options.expansion_budget, verdict.expansions);
  for (ClusterId i = 0; i < c.k; ++i) {
    const auto& members = clusters[i];
    const NodeMask inside = make_mask(g.size(), members);
    if (auto v = connectivity_violation(tg, i, members, inside)) verdict.violations.push_back(*v);
    if (auto v = margin_violation(g, i, members, inside, beta, eps)) verdict.violations.push_back(*v);
    if (auto path = search.find(members, inside)) {
      verdict.violations.push_back(Violation{i, Property::Geodesic, eps, std::move(*path)});
    }
  }
  finish(verdict, g, clusters);
  return verdict;
}

ConvexityVerdict check_convex_generalized(const SemimetricGraph& g, const Clustering& c,
                                          std::span<const Rational> radii,
                                          const Rational& beta, const Rational& gamma,
                                          const CheckOptions& options) {
  check_sizes(g, c);
  check_parameter(beta, "beta");
  check_parameter(gamma, "gamma");
  if (radii.size() != c.k) {
    throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(c.k) + " radii, got " +
                                             std::to_string(radii.size()));
  }
  for (const auto& r : radii) {
    if (r <= 0) throw Error(ErrorKind::InvalidInput, "radii must be positive");
  }

  ConvexityVerdict verdict;
  verdict.declared_radii.assign(radii.begin(), radii.end());
  const auto clusters = c.clusters();
  std::vector<NodeMask> inside;
  for (const auto& members : clusters) inside.push_back(make_mask(g.size(), members));

  std::vector<Rational> levels(g.distinct_weights().begin(), g.distinct_weights().end());
  const Rational top = *std::max_element(radii.begin(), radii.end());
  levels.erase(std::upper_bound(levels.begin(), levels.end(), top), levels.end());
  levels.insert(levels.end(), radii.begin(), radii.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<std::uint8_t> geodesic_done(c.k, 0);
  for (const auto& eps : levels) {
    const ThresholdGraph tg(g, eps);
    std::optional<BlockTree> tree;
    for (ClusterId i = 0; i < c.k; ++i) {
      if (eps > radii[i]) continue;
      if (eps == radii[i]) {
        if (auto v = connectivity_violation(tg, i, clusters[i], inside[i])) {
          verdict.violations.push_back(*v);
        }
      }
      if (geodesic_done[i]) continue;
      if (!tree) tree.emplace(tg);
      GeodesicSearch search(tg, *tree, gamma, options.expansion_budget, verdict.expansions);
      if (auto path = search.find(clusters[i], inside[i])) {
        verdict.violations.push_back(Violation{i, Property::Geodesic, eps, std::move(*path)});
        geodesic_done[i] = 1;
      }
    }
  }
  for (ClusterId i = 0; i < c.k; ++i) {
    if (auto v = margin_violation(g, i, clusters[i], inside[i], beta, radii[i])) {
      verdict.violations.push_back(*v);
    }
  }
  finish(verdict, g, clusters);
  return verdict;
}

ConvexityVerdict check_convex(const SemimetricGraph& g, const Clustering& c,
                              const ConvexityParams& params, bool generalized,
                              const CheckOptions& options) {
  params.validate(c.k);
  if (!generalized) {
    if (!params.identical()) {
      throw Error(ErrorKind::InvalidInput, "identical-radius check needs a single radius");
    }
    return check_convex(g, c, params.radii.front(), params.beta, params.gamma, options);
  }
  std::vector<Rational> radii = params.radii;
  if (params.identical()) radii.assign(c.k, params.radii.front());
  return check_convex_generalized(g, c, radii, params.beta, params.gamma, options);
}

bool confirms(const SemimetricGraph& g, const Clustering& c, const Rational& beta,
              const Rational& gamma, const Violation& v) {
  if (v.cluster >= c.k || c.size() != g.size()) return false;
  const auto& w = v.witness;
  for (const Node x : w) {
    if (x >= g.size()) return false;
  }
  auto in = [&](Node x) { return c.labels[x] == v.cluster; };
  switch (v.property) {
    case Property::Connectivity: {
      if (w.size() != 2 || !in(w[0]) || !in(w[1])) return false;
      const NodeMask inside = make_mask(g.size(), c.members(v.cluster));
      const ThresholdGraph tg(g, v.epsilon);
      return bfs_distances(tg, w[0], &inside)[w[1]] == kUnreachable;
    }
    case Property::MetricMargin: {
      if (w.size() != 2 || !in(w[0]) || in(w[1])) return false;
      const auto d = g.distance(w[0], w[1]);
      return d && *d <= beta * v.epsilon;
    }
    case Property::Geodesic: {
      if (w.size() < 2 || !in(w.front()) || !in(w.back())) return false;
      NodeMask seen(g.size(), 0);
      bool leaves = false;
      for (std::size_t idx = 0; idx < w.size(); ++idx) {
        if (seen[w[idx]]) return false;
        seen[w[idx]] = 1;
        leaves = leaves || !in(w[idx]);
        if (idx > 0) {
          const auto d = g.distance(w[idx - 1], w[idx]);
          if (!d || *d > v.epsilon) return false;
        }
      }
      if (!leaves) return false;
      const ThresholdGraph tg(g, v.epsilon);
      const auto d = bfs_distances(tg, w.front())[w.back()];
      if (d == kUnreachable) return false;
      return Rational(static_cast<long long>(w.size() - 1)) <= (1 + gamma) * d;
    }
  }
  return false;
}

Rational min_radius(const SemimetricGraph& g, std::span<const Node> cluster) {
  if (cluster.empty()) throw Error(ErrorKind::InvalidInput, "empty cluster");
  const NodeMask inside = make_mask(g.size(), cluster);
  std::size_t size = 0;
  for (const auto m : inside) size += m;
  if (size == 1) {
    if (g.distinct_weights().empty()) {
      throw Error(ErrorKind::Disconnected, "graph has no edges to define a radius",
                  {cluster.front()});
    }
    return g.distinct_weights().front();
  }

  std::vector<std::uint32_t> internal;
  for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    if (inside[edge.u] && inside[edge.v]) internal.push_back(e);
  }
  std::stable_sort(internal.begin(), internal.end(), [&](std::uint32_t a, std::uint32_t b) {
    return g.edge_rank(a) < g.edge_rank(b);
  });
  std::vector<std::size_t> rank(g.size()), parent(g.size());
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (Node v = 0; v < g.size(); ++v) {
    if (inside[v]) sets.make_set(v);
  }
  std::size_t pieces = size;
  for (const auto e : internal) {
    const auto& edge = g.edges()[e];
    const auto a = sets.find_set(edge.u);
    const auto b = sets.find_set(edge.v);
    if (a == b) continue;
    sets.link(a, b);
    if (--pieces == 1) return edge.w;
  }
  throw Error(ErrorKind::Disconnected, "cluster is not connected at any threshold",
              std::vector<Node>(cluster.begin(), cluster.end()));
}

}  // namespace geoclust
