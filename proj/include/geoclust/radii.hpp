#pragma once

#include <cstdint>
#include <vector>

#include "geoclust/graph.hpp"
#include "geoclust/oracle.hpp"

namespace geoclust {

struct RadiiReport {
  std::vector<Rational> radii;
  std::uint64_t seed_used = 0;
  std::size_t mst_edge_count = 0;
  // Distinct forest weights (the search range, excluding the leading 0).
  std::size_t distinct_weights = 0;
};

// Two SEED queries: does C_i sit inside a single component of g? Throws
// EmptyCluster when g holds no node of C_i.
bool is_connected(const ThresholdGraph& g, ClusterId i, Oracle& oracle);

// Binary search over 0 and the distinct forest weights for the smallest
// threshold at which C_i is connected. A singleton cluster resolves to the
// smallest forest weight.
Rational get_epsilon(const SpanningForest& forest, ClusterId i, Oracle& oracle);

// One spanning forest, then get_epsilon for every cluster.
RadiiReport get_epsilons(const SemimetricGraph& g, std::uint32_t k, Oracle& oracle);

}  // namespace geoclust
