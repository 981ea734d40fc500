#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "geoclust/error.hpp"
#include "geoclust/graph.hpp"
#include "geoclust/instances.hpp"

using namespace geoclust;

namespace {

SemimetricGraph complete_unit(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (Node u = 0; u < n; ++u) {
    for (Node v = u + 1; v < n; ++v) edges.push_back({u, v, Rational(1)});
  }
  return SemimetricGraph(n, edges);
}

SemimetricGraph path_graph(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (Node v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, Rational(1)});
  return SemimetricGraph(n, edges);
}

std::set<std::vector<Node>> as_set(const std::vector<std::vector<Node>>& comps) {
  return {comps.begin(), comps.end()};
}

}  // namespace

TEST(SemimetricGraph, RejectsBadEdges) {
  auto kind = [](std::vector<WeightedEdge> edges) {
    try {
      SemimetricGraph g(3, std::move(edges));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ContractViolation;
  };
  EXPECT_EQ(kind({{0, 0, Rational(1)}}), ErrorKind::InvalidInput);
  EXPECT_EQ(kind({{0, 1, Rational(1)}, {1, 0, Rational(2)}}), ErrorKind::InvalidInput);
  EXPECT_EQ(kind({{0, 1, Rational(0)}}), ErrorKind::InvalidInput);
  EXPECT_EQ(kind({{0, 3, Rational(1)}}), ErrorKind::InvalidInput);
}

TEST(SemimetricGraph, DistancesAndRanks) {
  const SemimetricGraph g(4, {{2, 1, Rational(3, 2)}, {0, 1, Rational(1, 2)}, {0, 3, Rational(3, 2)}});
  EXPECT_EQ(g.distance(1, 2), Rational(3, 2));
  EXPECT_EQ(g.distance(3, 3), Rational(0));
  EXPECT_FALSE(g.distance(2, 3).has_value());
  ASSERT_EQ(g.distinct_weights().size(), 2U);
  EXPECT_EQ(g.rank_cutoff(Rational(1, 4)), 0U);
  EXPECT_EQ(g.rank_cutoff(Rational(1, 2)), 1U);
  EXPECT_EQ(g.rank_cutoff(Rational(10)), 2U);
  EXPECT_EQ(g.edges().front().u, 0U);
  EXPECT_EQ(g.edges().front().v, 1U);
}

TEST(Threshold, CompleteGraphAtAndBelowTheWeight) {
  const auto g = complete_unit(6);
  EXPECT_EQ(threshold(g, Rational(1)).edge_count(), 15U);
  EXPECT_EQ(threshold(g, Rational(1, 2)).edge_count(), 0U);
}

TEST(Threshold, IsMonotoneInEps) {
  std::mt19937_64 rng(11);
  const auto g = bf::random_graph(rng, 30, 0.3, 8);
  std::size_t previous = 0;
  for (const auto& w : g.distinct_weights()) {
    const auto tg = threshold(g, w);
    EXPECT_GE(tg.edge_count(), previous);
    previous = tg.edge_count();
  }
}

TEST(Threshold, InducedSubgraphDropsAbsentNodes) {
  const auto g = path_graph(5);
  const ThresholdGraph tg(g, Rational(1), make_mask(5, std::vector<Node>{0, 1, 3, 4}));
  EXPECT_EQ(tg.edge_count(), 2U);
  EXPECT_FALSE(tg.contains(2));
  EXPECT_EQ(components(tg).size(), 2U);
}

TEST(Bfs, PathAndTwoComponents) {
  const auto tg = threshold(path_graph(3), Rational(1));
  EXPECT_EQ(bfs_distances(tg, 0), (std::vector<std::uint32_t>{0, 1, 2}));
  const SemimetricGraph two(4, {{0, 1, Rational(1)}, {2, 3, Rational(1)}});
  const auto d = bfs_distances(threshold(two, Rational(1)), 0);
  EXPECT_EQ(d[2], kUnreachable);
  EXPECT_EQ(d[3], kUnreachable);
}

TEST(Bfs, MatchesFloydWarshall) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = bf::random_graph(rng, 50, 0.08, 4);
    const Rational eps(3, 4);
    const auto ref = bf::hops(g, eps);
    const auto tg = threshold(g, eps);
    for (Node s = 0; s < g.size(); ++s) {
      const auto d = bfs_distances(tg, s);
      for (Node t = 0; t < g.size(); ++t) {
        EXPECT_EQ(d[t] == kUnreachable, ref[s][t] == bf::kInf);
        if (d[t] != kUnreachable) EXPECT_EQ(d[t], ref[s][t]);
      }
    }
  }
}

TEST(Bfs, BoundedStopsAtTheLimit) {
  const auto tg = threshold(path_graph(6), Rational(1));
  const auto d = bfs_distances_bounded(tg, 0, 2);
  EXPECT_EQ(d[2], 2U);
  EXPECT_EQ(d[3], kUnreachable);
}

TEST(ShortestPath, TrivialCases) {
  const auto tg = threshold(path_graph(5), Rational(1));
  EXPECT_EQ(shortest_path(tg, 2, 2), std::vector<Node>{2});
  EXPECT_EQ(shortest_path(tg, 0, 4), (std::vector<Node>{0, 1, 2, 3, 4}));
  const SemimetricGraph two(4, {{0, 1, Rational(1)}, {2, 3, Rational(1)}});
  try {
    shortest_path(threshold(two, Rational(1)), 0, 3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoPath);
  }
}

TEST(ShortestPath, PrefersTheAscendingIdRoute) {
  // 2x3 grid:  0-1-2 / 3-4-5 ; from 0 to 5 there are three shortest routes.
  const SemimetricGraph g(6, {{0, 1, Rational(1)},
                              {1, 2, Rational(1)},
                              {3, 4, Rational(1)},
                              {4, 5, Rational(1)},
                              {0, 3, Rational(1)},
                              {1, 4, Rational(1)},
                              {2, 5, Rational(1)}});
  const auto tg = threshold(g, Rational(1));
  // Brute force: among all shortest paths, the one whose parent chain is
  // fixed by first discovery in BFS order scanning ascending ids. BFS from 0
  // discovers 1 then 3; 1 discovers 2 and 4; 2 discovers 5 before 4 does.
  EXPECT_EQ(shortest_path(tg, 0, 5), (std::vector<Node>{0, 1, 2, 5}));
  EXPECT_EQ(shortest_path(tg, 5, 0), (std::vector<Node>{5, 2, 1, 0}));
}

TEST(Components, EdgelessConnectedAndCaterpillar) {
  const SemimetricGraph lonely(3, {});
  EXPECT_EQ(connected_component(threshold(lonely, Rational(1)), 1), std::vector<Node>{1});
  const auto full = threshold(complete_unit(5), Rational(1));
  EXPECT_EQ(connected_component(full, 3).size(), 5U);

  const Instance cat = generate("caterpillar", FamilyParams::parse("n=12"), 4);
  const auto tg = threshold(cat.graph, Rational(1));
  EXPECT_EQ(connected_component(tg, 0).size(), 12U);
  EXPECT_EQ(as_set(components(tg)), bf::components(cat.graph, Rational(1)));
}

TEST(Components, LabelsAgreeWithComponentList) {
  std::mt19937_64 rng(3);
  const auto g = bf::random_graph(rng, 40, 0.05, 3);
  const auto tg = threshold(g, Rational(1, 2));
  const auto comps = components(tg);
  const auto labels = component_labels(tg);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (const Node v : comps[c]) EXPECT_EQ(labels[v], c);
  }
  EXPECT_EQ(as_set(comps), bf::components(g, Rational(1, 2)));
}

TEST(CutEdges, AllNodesStarAndWhirl) {
  const auto full = threshold(complete_unit(4), Rational(1));
  EXPECT_TRUE(cut_edges(full, std::vector<Node>{0, 1, 2, 3}).empty());
  const SemimetricGraph star(4, {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {0, 3, Rational(1)}});
  EXPECT_EQ(cut_edges(threshold(star, Rational(1)), std::vector<Node>{0}).size(), 3U);

  const Instance whirl = generate("whirl", {}, 0);
  const auto tg = threshold(whirl.graph, Rational(1));
  const auto cluster = whirl.truth.members(0);
  std::vector<std::pair<Node, Node>> expected;
  for (const auto& e : whirl.graph.edges()) {
    if (e.w > 1 || whirl.truth.labels[e.u] == whirl.truth.labels[e.v]) continue;
    expected.push_back(whirl.truth.labels[e.u] == 0 ? std::pair{e.u, e.v} : std::pair{e.v, e.u});
  }
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(cut_edges(tg, cluster), expected);
  EXPECT_FALSE(expected.empty());
}

TEST(Mst, TreeAndTriangle) {
  const SemimetricGraph tree(4, {{0, 1, Rational(3)}, {1, 2, Rational(1)}, {1, 3, Rational(2)}});
  EXPECT_EQ(mst(tree).edges.size(), 3U);
  const SemimetricGraph tri(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}, {0, 2, Rational(3)}});
  const auto f = mst(tri);
  ASSERT_EQ(f.edges.size(), 2U);
  EXPECT_EQ(f.edges[0].w + f.edges[1].w, Rational(3));
}

TEST(Mst, ThresholdComponentsMatchTheGraph) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = bf::random_graph(rng, 30, 0.2, 10);
    const auto forest = mst(g).as_graph();
    for (const auto& w : g.distinct_weights()) {
      EXPECT_EQ(as_set(components(threshold(forest, w))), bf::components(g, w));
    }
  }
}

TEST(Mst, SpansEveryComponentWithMinimalWeight) {
  std::mt19937_64 rng(23);
  const auto g = bf::random_graph(rng, 7, 0.6, 5);
  const auto f = mst(g);
  EXPECT_EQ(f.edges.size(), g.size() - bf::components(g, Rational(1000)).size());
  // Cheapest edge subset of the same size with the same components.
  Rational total(0);
  for (const auto& e : f.edges) total += e.w;
  std::vector<WeightedEdge> all = g.edges();
  const std::size_t m = all.size();
  ASSERT_LE(m, 24U);
  Rational best(-1);
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != f.edges.size()) continue;
    std::vector<WeightedEdge> pick;
    Rational sum(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        pick.push_back(all[i]);
        sum += all[i].w;
      }
    }
    if (best >= 0 && sum >= best) continue;
    const SemimetricGraph h(g.size(), pick);
    if (bf::components(h, Rational(1000)) == bf::components(g, Rational(1000))) best = sum;
  }
  EXPECT_EQ(total, best);
}
