#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geoclust/graph.hpp"
#include "geoclust/metrics.hpp"
#include "geoclust/oracle.hpp"

namespace geoclust {

// Partition of the separated vertex set: s_i holds no node of C_j and s_j
// holds no node of C_i, where (u_i, u_j) is the cut edge it was built from.
struct SeparatorPair {
  ClusterId i = 0;
  Node u_i = kNil;
  Node u_j = kNil;
  std::vector<Node> s_i;
  std::vector<Node> s_j;
};

struct PhaseCounts {
  std::uint64_t cut_edge_scq = 0;
  std::uint64_t separator_scq = 0;
  std::uint64_t new_seed_scq = 0;
  std::uint64_t verify_scq = 0;
  std::uint64_t seed_discovery = 0;
  std::uint64_t mbs_calls = 0;
  std::uint64_t iterations = 0;

  PhaseCounts& operator+=(const PhaseCounts& o);
};

// Hooks for inspecting intermediate states; default implementations ignore
// everything.
class RecoveryObserver {
 public:
  virtual ~RecoveryObserver() = default;
  // Shortest path from s_i to a node outside C_i inside the current region.
  virtual void on_path(ClusterId, const ThresholdGraph&, std::span<const Node> /*region*/,
                       std::span<const Node> /*path*/) {}
  virtual void on_separator(const ThresholdGraph&, const SeparatorPair&) {}
  // Branch 1: foreign seed, 2: margin-based search, 3: far cut edge.
  virtual void on_new_seed(ClusterId, Node, int /*branch*/) {}
};

struct RecoveryOptions {
  bool naive_find_new_seed = false;
  // Spends two extra SCQ per cut edge (reported as verify_scq and left out
  // of scq_used) to confirm the edge really leaves C_i.
  bool check_contracts = false;
  RecoveryObserver* observer = nullptr;
};

struct RecoveryReport {
  Clustering predicted;
  std::uint64_t scq_used = 0;
  std::uint64_t seed_used = 0;
  PhaseCounts phases;
  std::optional<std::uint64_t> budget;
  double elapsed_seconds = 0.0;
};

struct SeedDiscoveryState {
  std::vector<Node> u_list;
  std::size_t processed = 0;
  // Nodes known to lie outside C_i.
  NodeMask foreign;
  // Nodes within hop distance < 2/gamma + 1 of a processed u.
  NodeMask near;
};

// Z intersected with the cluster of u: one SCQ per component of the graph on
// Z keeping distances <= beta * eps, asked of its smallest node.
std::vector<Node> mbs(const SemimetricGraph& g, std::span<const Node> z, const Rational& eps,
                      const Rational& beta, Node u, Oracle& oracle);

// Binary search along a path starting at s_i whose C_i nodes form a prefix.
// Returns (last C_i node, first other node).
std::pair<Node, Node> find_cut_edge(std::span<const Node> path, Node s_i, Oracle& oracle);

SeparatorPair cluster_separator(const ThresholdGraph& g, const SemimetricGraph& metric, Node u_i,
                                Node u_j, const Rational& beta, const Rational& gamma,
                                Oracle& oracle);

// A node of region outside C_i, or kNil when region == C_i.
Node find_new_seed(const ThresholdGraph& g, const SemimetricGraph& metric, const NodeMask& region,
                   const Rational& beta, const Rational& gamma, std::span<const Node> seeds,
                   SeedDiscoveryState& state, ClusterId i, Oracle& oracle,
                   bool naive = false, int* branch = nullptr);

// seeds[h] is a known member of C_h, or kNil. g.epsilon() is the radius.
std::vector<Node> recover_single_cluster(const ThresholdGraph& g, const SemimetricGraph& metric,
                                         const Rational& beta, const Rational& gamma,
                                         std::span<const Node> seeds, ClusterId i,
                                         Oracle& oracle, const RecoveryOptions& options = {},
                                         PhaseCounts* phases = nullptr);

RecoveryReport recover_clustering(const SemimetricGraph& g, const Rational& eps,
                                  const Rational& beta, const Rational& gamma,
                                  std::span<const Node> seeds, Oracle& oracle,
                                  const RecoveryOptions& options = {});

// Clusters with their own radii, recovered in nondecreasing radius order.
RecoveryReport recover_clustering2(const SemimetricGraph& g, std::span<const Rational> radii,
                                   const Rational& beta, const Rational& gamma,
                                   std::span<const Node> seeds, Oracle& oracle,
                                   const RecoveryOptions& options = {});

std::uint64_t ceil_log2(std::uint64_t n);

// k^2 ceil(log2 n) + k^2 P*(beta gamma) + k^2 P*(beta gamma / (2 + gamma)).
std::uint64_t query_budget(PackingCalculator& packing, std::size_t n, std::uint32_t k,
                           const Rational& beta, const Rational& gamma);

}  // namespace geoclust
