#include "geoclust/radii.hpp"

#include <algorithm>
#include <string>

#include "geoclust/error.hpp"

namespace geoclust {

bool is_connected(const ThresholdGraph& g, ClusterId i, Oracle& oracle) {
  const Node u = oracle.seed(g.vertices(), i);
  if (u == kNil) {
    throw Error(ErrorKind::EmptyCluster,
                "cluster " + std::to_string(i) + " has no node in the graph");
  }
  const auto dist = bfs_distances(g, u);
  std::vector<Node> rest;
  for (const Node v : g.vertices()) {
    if (dist[v] == kUnreachable) rest.push_back(v);
  }
  return oracle.seed(rest, i) == kNil;
}

namespace {

Rational search(const SemimetricGraph& forest_graph, ClusterId i, Oracle& oracle) {
  std::vector<Rational> w{Rational(0)};
  const auto& distinct = forest_graph.distinct_weights();
  w.insert(w.end(), distinct.begin(), distinct.end());
  std::size_t lo = 0;
  std::size_t hi = w.size() - 1;
  while (w[lo] < w[hi]) {
    const std::size_t mid = (lo + hi) / 2;
    if (is_connected(ThresholdGraph(forest_graph, w[mid]), i, oracle)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (w[hi] == 0) {
    // Only a single-node cluster is connected with no edges at all.
    if (distinct.empty()) {
      throw Error(ErrorKind::Disconnected, "graph has no edges to define a radius");
    }
    return distinct.front();
  }
  return w[hi];
}

}  // namespace

Rational get_epsilon(const SpanningForest& forest, ClusterId i, Oracle& oracle) {
  return search(forest.as_graph(), i, oracle);
}

RadiiReport get_epsilons(const SemimetricGraph& g, std::uint32_t k, Oracle& oracle) {
  if (oracle.size() != g.size()) {
    throw Error(ErrorKind::InvalidInput, "oracle and graph disagree on the node count");
  }
  const std::uint64_t seed0 = oracle.seed_count();
  const SpanningForest forest = mst(g);
  const SemimetricGraph forest_graph = forest.as_graph();
  RadiiReport report;
  report.mst_edge_count = forest.edges.size();
  report.distinct_weights = forest_graph.distinct_weights().size();
  for (ClusterId i = 0; i < k; ++i) report.radii.push_back(search(forest_graph, i, oracle));
  report.seed_used = oracle.seed_count() - seed0;
  return report;
}

}  // namespace geoclust
