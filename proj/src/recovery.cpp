#include "geoclust/recovery.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>

#include "geoclust/error.hpp"

namespace geoclust {

PhaseCounts& PhaseCounts::operator+=(const PhaseCounts& o) {
  cut_edge_scq += o.cut_edge_scq;
  separator_scq += o.separator_scq;
  new_seed_scq += o.new_seed_scq;
  verify_scq += o.verify_scq;
  seed_discovery += o.seed_discovery;
  mbs_calls += o.mbs_calls;
  iterations += o.iterations;
  return *this;
}

std::vector<Node> mbs(const SemimetricGraph& g, std::span<const Node> z, const Rational& eps,
                      const Rational& beta, Node u, Oracle& oracle) {
  NodeMask in_z(g.size(), 0);
  for (const Node v : z) {
    if (v >= g.size()) throw Error(ErrorKind::InvalidInput, "node out of range", {v});
    in_z[v] = 1;
  }
  const std::uint32_t cutoff = g.rank_cutoff(beta * eps);
  NodeMask done(g.size(), 0);
  std::vector<Node> out;
  std::vector<Node> component;
  for (Node root = 0; root < g.size(); ++root) {
    if (!in_z[root] || done[root]) continue;
    component.assign(1, root);
    done[root] = 1;
    for (std::size_t head = 0; head < component.size(); ++head) {
      for (const auto& arc : g.neighbors(component[head])) {
        if (in_z[arc.to] && !done[arc.to] && g.edge_rank(arc.edge) < cutoff) {
          done[arc.to] = 1;
          component.push_back(arc.to);
        }
      }
    }
    if (oracle.scq(root, u)) out.insert(out.end(), component.begin(), component.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Node, Node> find_cut_edge(std::span<const Node> path, Node s_i, Oracle& oracle) {
  if (path.size() < 2) {
    throw Error(ErrorKind::InvalidInput, "cut edge search needs a path with at least one edge");
  }
  std::size_t a = 0;
  std::size_t b = path.size() - 1;
  while (b > a + 1) {
    const std::size_t m = (a + b) / 2;
    if (oracle.scq(s_i, path[m])) {
      a = m;
    } else {
      b = m;
    }
  }
  return {path[a], path[a + 1]};
}

SeparatorPair cluster_separator(const ThresholdGraph& g, const SemimetricGraph& metric, Node u_i,
                                Node u_j, const Rational& beta, const Rational& gamma,
                                Oracle& oracle) {
  const auto dist_i = bfs_distances(g, u_i);
  const auto dist_j = bfs_distances(g, u_j);
  // For an integer hop count h: h < 1/gamma  <=>  h < ceil(1/gamma).
  const std::uint32_t near = ceil_to_hops(1 / gamma);
  std::vector<Node> z;
  for (const Node x : g.vertices()) {
    if (dist_i[x] < near) z.push_back(x);
  }
  const auto z_i = mbs(metric, z, g.epsilon(), beta, u_i, oracle);
  NodeMask in_si(g.size(), 0);
  for (const Node x : z_i) in_si[x] = 1;

  SeparatorPair sep;
  sep.u_i = u_i;
  sep.u_j = u_j;
  for (const Node x : g.vertices()) {
    const bool in_z = dist_i[x] < near;
    const bool side_i = in_z ? in_si[x] != 0 : dist_i[x] <= dist_j[x];
    (side_i ? sep.s_i : sep.s_j).push_back(x);
  }
  return sep;
}

Node find_new_seed(const ThresholdGraph& g, const SemimetricGraph& metric, const NodeMask& region,
                   const Rational& beta, const Rational& gamma, std::span<const Node> seeds,
                   SeedDiscoveryState& state, ClusterId i, Oracle& oracle, bool naive,
                   int* branch) {
  auto report = [&](int b, Node x) {
    if (branch) *branch = b;
    return x;
  };

  Node best = kNil;
  for (ClusterId h = 0; h < seeds.size(); ++h) {
    const Node s = seeds[h];
    if (h != i && s != kNil && s < region.size() && region[s]) best = std::min(best, s);
  }
  if (best != kNil) return report(1, best);

  const std::size_t n = g.size();
  // For an integer hop count h: h < 2/gamma + 1  <=>  h < ceil(2/gamma + 1).
  const std::uint32_t reach = ceil_to_hops(2 / gamma + 1);
  if (naive) {
    state.foreign.assign(n, 0);
    state.near.assign(n, 0);
    state.processed = 0;
  } else {
    state.foreign.resize(n, 0);
    state.near.resize(n, 0);
  }
  for (; state.processed < state.u_list.size(); ++state.processed) {
    const Node u = state.u_list[state.processed];
    const auto dist = bfs_distances_bounded(g, u, reach == 0 ? 0 : reach - 1);
    std::vector<Node> z;
    for (const Node x : g.vertices()) {
      if (dist[x] >= reach) continue;
      state.near[x] = 1;
      if (region[x]) z.push_back(x);
    }
    const auto z_i = mbs(metric, z, g.epsilon(), beta, u, oracle);
    std::size_t k = 0;
    for (const Node x : z) {
      while (k < z_i.size() && z_i[k] < x) ++k;
      if (k == z_i.size() || z_i[k] != x) state.foreign[x] = 1;
    }
  }
  for (const Node x : g.vertices()) {
    if (region[x] && state.foreign[x]) return report(2, x);
  }
  for (const Node x : g.vertices()) {
    if (!region[x] || state.near[x]) continue;
    for (const Node y : g.neighbors(x)) {
      if (!region[y]) return report(3, x);
    }
  }
  return report(0, kNil);
}

namespace {

class ScqMeter {
 public:
  explicit ScqMeter(const Oracle& oracle) : oracle_(oracle), start_(oracle.scq_count()) {}
  std::uint64_t used() const { return oracle_.scq_count() - start_; }

 private:
  const Oracle& oracle_;
  std::uint64_t start_;
};

}  // namespace

std::vector<Node> recover_single_cluster(const ThresholdGraph& g, const SemimetricGraph& metric,
                                         const Rational& beta, const Rational& gamma,
                                         std::span<const Node> seeds, ClusterId i,
                                         Oracle& oracle, const RecoveryOptions& options,
                                         PhaseCounts* phases) {
  PhaseCounts local;
  PhaseCounts& counts = phases ? *phases : local;
  if (i >= seeds.size() || seeds[i] == kNil || !g.contains(seeds[i])) {
    throw Error(ErrorKind::InvalidInput, "no usable seed for cluster " + std::to_string(i));
  }
  const Node s_i = seeds[i];
  const std::size_t n = g.size();

  NodeMask region(n, 0);
  std::size_t region_size = 0;
  for (const Node v : connected_component(g, s_i)) {
    region[v] = 1;
    ++region_size;
  }
  SeedDiscoveryState state;
  std::uint64_t rounds = 0;
  while (true) {
    int branch = 0;
    Node x = kNil;
    {
      const ScqMeter meter(oracle);
      const std::size_t before = options.naive_find_new_seed ? 0 : state.processed;
      x = find_new_seed(g, metric, region, beta, gamma, seeds, state, i, oracle,
                        options.naive_find_new_seed, &branch);
      counts.new_seed_scq += meter.used();
      counts.mbs_calls += state.processed - before;
    }
    if (x == kNil) break;
    if (options.observer) options.observer->on_new_seed(i, x, branch);
    if (++rounds > n) {
      throw Error(ErrorKind::PartitionError,
                  "cluster " + std::to_string(i) + " did not converge within n rounds");
    }
    ++counts.iterations;

    const auto path = shortest_path(g, s_i, x, &region);
    if (options.observer) {
      std::vector<Node> members;
      for (const Node v : g.vertices()) {
        if (region[v]) members.push_back(v);
      }
      options.observer->on_path(i, g, members, path);
    }
    std::pair<Node, Node> edge;
    {
      const ScqMeter meter(oracle);
      edge = find_cut_edge(path, s_i, oracle);
      counts.cut_edge_scq += meter.used();
    }
    const auto [u_i, u_j] = edge;
    if (options.check_contracts) {
      const ScqMeter meter(oracle);
      const bool ok = oracle.scq(s_i, u_i) && !oracle.scq(s_i, u_j);
      counts.verify_scq += meter.used();
      if (!ok) {
        throw Error(ErrorKind::ContractViolation,
                    "path from the seed of cluster " + std::to_string(i) + " is not prefixed",
                    {u_i, u_j});
      }
    }
    state.u_list.push_back(u_i);

    SeparatorPair sep;
    {
      const ScqMeter meter(oracle);
      sep = cluster_separator(g, metric, u_i, u_j, beta, gamma, oracle);
      counts.separator_scq += meter.used();
    }
    counts.mbs_calls += 1;
    sep.i = i;
    if (options.observer) options.observer->on_separator(g, sep);

    NodeMask keep(n, 0);
    for (const Node v : sep.s_i) {
      if (region[v]) keep[v] = 1;
    }
    if (!keep[s_i]) {
      throw Error(ErrorKind::PartitionError,
                  "separator removed the seed of cluster " + std::to_string(i), {s_i});
    }
    const auto next = connected_component(g, s_i, &keep);
    if (next.size() >= region_size) {
      throw Error(ErrorKind::PartitionError,
                  "separator made no progress on cluster " + std::to_string(i), {u_i, u_j});
    }
    std::fill(region.begin(), region.end(), 0);
    for (const Node v : next) region[v] = 1;
    region_size = next.size();
  }
  std::vector<Node> out;
  for (const Node v : g.vertices()) {
    if (region[v]) out.push_back(v);
  }
  return out;
}

namespace {

void assign(std::vector<ClusterId>& labels, ClusterId i, const std::vector<Node>& members) {
  std::vector<Node> clash;
  for (const Node v : members) {
    if (labels[v] != kNil && labels[v] != i) clash.push_back(v);
    labels[v] = i;
  }
  if (!clash.empty()) {
    throw Error(ErrorKind::PartitionError,
                "cluster " + std::to_string(i) + " overlaps an earlier cluster", clash);
  }
}

Clustering finish_partition(std::vector<ClusterId> labels, std::uint32_t k) {
  std::vector<Node> missing;
  for (Node v = 0; v < labels.size(); ++v) {
    if (labels[v] == kNil) missing.push_back(v);
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::PartitionError,
                std::to_string(missing.size()) + " nodes were not assigned to any cluster",
                missing);
  }
  return Clustering(std::move(labels), k);
}

void check_inputs(const SemimetricGraph& g, std::span<const Node> seeds, Oracle& oracle) {
  if (oracle.size() != g.size()) {
    throw Error(ErrorKind::InvalidInput, "oracle and graph disagree on the node count");
  }
  if (seeds.size() != oracle.cluster_count()) {
    throw Error(ErrorKind::InvalidInput, "expected one seed per cluster");
  }
  for (const Node s : seeds) {
    if (s >= g.size()) throw Error(ErrorKind::InvalidInput, "seed out of range", {s});
  }
}

}  // namespace

RecoveryReport recover_clustering(const SemimetricGraph& g, const Rational& eps,
                                  const Rational& beta, const Rational& gamma,
                                  std::span<const Node> seeds, Oracle& oracle,
                                  const RecoveryOptions& options) {
  check_inputs(g, seeds, oracle);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t scq0 = oracle.scq_count();
  const std::uint64_t seed0 = oracle.seed_count();
  RecoveryReport report;
  const ThresholdGraph tg(g, eps);
  std::vector<ClusterId> labels(g.size(), kNil);
  const auto k = static_cast<std::uint32_t>(seeds.size());
  for (ClusterId i = 0; i < k; ++i) {
    const auto members =
        recover_single_cluster(tg, g, beta, gamma, seeds, i, oracle, options, &report.phases);
    assign(labels, i, members);
  }
  report.predicted = finish_partition(std::move(labels), k);
  report.scq_used = oracle.scq_count() - scq0 - report.phases.verify_scq;
  report.seed_used = oracle.seed_count() - seed0;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

RecoveryReport recover_clustering2(const SemimetricGraph& g, std::span<const Rational> radii,
                                   const Rational& beta, const Rational& gamma,
                                   std::span<const Node> seeds, Oracle& oracle,
                                   const RecoveryOptions& options) {
  check_inputs(g, seeds, oracle);
  if (radii.size() != seeds.size()) {
    throw Error(ErrorKind::InvalidInput, "expected one radius per cluster");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t scq0 = oracle.scq_count();
  const std::uint64_t seed0 = oracle.seed_count();
  RecoveryReport report;
  const auto k = static_cast<std::uint32_t>(seeds.size());

  std::vector<ClusterId> order(k);
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](ClusterId a, ClusterId b) { return radii[a] < radii[b]; });

  NodeMask alive(g.size(), 1);
  std::vector<ClusterId> labels(g.size(), kNil);
  for (std::size_t pos = 0; pos < k; ++pos) {
    const ClusterId i = order[pos];
    const Node s_i = seeds[i];
    if (!alive[s_i]) {
      throw Error(ErrorKind::PartitionError,
                  "seed of cluster " + std::to_string(i) + " was claimed by another cluster",
                  {s_i});
    }
    const ThresholdGraph remaining(g, radii[i], alive);
    const auto component = connected_component(remaining, s_i);
    const ThresholdGraph star(g, radii[i], make_mask(g.size(), component));

    std::vector<Node> local_seeds(k, kNil);
    local_seeds[i] = s_i;
    for (std::size_t later = pos + 1; later < k; ++later) {
      const ClusterId j = order[later];
      local_seeds[j] = oracle.seed(component, j);
      ++report.phases.seed_discovery;
    }
    const auto members = recover_single_cluster(star, g, beta, gamma, local_seeds, i, oracle,
                                                options, &report.phases);
    assign(labels, i, members);
    for (const Node v : members) alive[v] = 0;
  }
  report.predicted = finish_partition(std::move(labels), k);
  report.scq_used = oracle.scq_count() - scq0 - report.phases.verify_scq;
  report.seed_used = oracle.seed_count() - seed0;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::uint64_t ceil_log2(std::uint64_t n) {
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

std::uint64_t query_budget(PackingCalculator& packing, std::size_t n, std::uint32_t k,
                           const Rational& beta, const Rational& gamma) {
  const std::uint64_t kk = std::uint64_t{k} * k;
  const Rational bg = beta * gamma;
  return kk * ceil_log2(n) + kk * packing.pstar(bg) + kk * packing.pstar(bg / (2 + gamma));
}

}  // namespace geoclust
