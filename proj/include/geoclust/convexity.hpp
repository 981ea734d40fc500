#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "geoclust/graph.hpp"
#include "geoclust/oracle.hpp"

namespace geoclust {

struct ConvexityParams {
  Rational beta;
  Rational gamma;
  // A single entry is the shared radius; otherwise one radius per cluster.
  std::vector<Rational> radii;

  bool identical() const { return radii.size() == 1; }
  const Rational& radius(ClusterId i) const { return identical() ? radii.front() : radii.at(i); }
  // Throws InvalidInput unless 0 < beta, gamma <= 1, radii are positive and
  // (when per-cluster) there are k of them.
  void validate(std::uint32_t k) const;
};

enum class Property { Connectivity, MetricMargin, Geodesic };
std::string_view to_string(Property p);

struct Violation {
  ClusterId cluster = 0;
  Property property = Property::Connectivity;
  // Threshold of the graph in which the violation was observed (for the
  // margin, the radius whose multiple beta * radius is breached).
  Rational epsilon;
  // Connectivity: (x, y) in the cluster but disconnected in its induced
  // subgraph. Margin: (x, y) with x inside, y outside, d(x, y) <= beta * eps.
  // Geodesic: a simple path between two cluster members, short enough, that
  // visits a node outside the cluster.
  std::vector<Node> witness;
};

struct ConvexityVerdict {
  bool ok = true;
  std::vector<Violation> violations;
  std::vector<Rational> declared_radii;
  // Smallest radius connecting each cluster; nullopt when none does.
  std::vector<std::optional<Rational>> min_radii;
  std::uint64_t expansions = 0;
};

struct CheckOptions {
  std::uint64_t expansion_budget = 10'000'000;
};

// Identical radius eps for every cluster. At most one violation is reported
// per (cluster, property).
ConvexityVerdict check_convex(const SemimetricGraph& g, const Clustering& c, const Rational& eps,
                              const Rational& beta, const Rational& gamma,
                              const CheckOptions& options = {});

// Per-cluster radii with the hereditary geodesic condition, checked at every
// distinct weight up to each radius.
ConvexityVerdict check_convex_generalized(const SemimetricGraph& g, const Clustering& c,
                                          std::span<const Rational> radii,
                                          const Rational& beta, const Rational& gamma,
                                          const CheckOptions& options = {});

// Dispatches on params.identical().
ConvexityVerdict check_convex(const SemimetricGraph& g, const Clustering& c,
                              const ConvexityParams& params, bool generalized,
                              const CheckOptions& options = {});

// Re-derives the violation from its witness alone.
bool confirms(const SemimetricGraph& g, const Clustering& c, const Rational& beta,
              const Rational& gamma, const Violation& v);

// Smallest eps at which the cluster's induced subgraph in G_X(eps) is
// connected. A singleton gets the smallest edge weight of g. Throws
// Disconnected when no threshold connects the cluster.
Rational min_radius(const SemimetricGraph& g, std::span<const Node> cluster);

}  // namespace geoclust
