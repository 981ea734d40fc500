#include "geoclust/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "geoclust/error.hpp"

namespace geoclust {

namespace {

using Bits = std::uint64_t;

constexpr Bits bit(std::uint32_t i) { return Bits{1} << i; }

// Greedy clique cover of `p`; its size bounds the independence number.
std::uint32_t clique_cover_bound(Bits p, std::span<const Bits> adj) {
  std::uint32_t cliques = 0;
  while (p) {
    const auto v = static_cast<std::uint32_t>(std::countr_zero(p));
    Bits clique = bit(v);
    Bits cand = p & adj[v];
    while (cand) {
      const auto w = static_cast<std::uint32_t>(std::countr_zero(cand));
      clique |= bit(w);
      cand &= adj[w];
    }
    p &= ~clique;
    ++cliques;
  }
  return cliques;
}

void mis_search(Bits p, std::uint32_t size, std::span<const Bits> adj, std::uint32_t& best) {
  for (bool changed = true; changed && p;) {
    changed = false;
    for (Bits scan = p; scan;) {
      const auto v = static_cast<std::uint32_t>(std::countr_zero(scan));
      scan &= scan - 1;
      if (!(p & bit(v))) continue;
      const Bits nb = adj[v] & p;
      if (std::popcount(nb) <= 1) {
        // Degree 0 or 1: some maximum independent set contains v.
        p &= ~(bit(v) | nb);
        scan &= p;
        ++size;
        changed = true;
      }
    }
  }
  if (!p) {
    best = std::max(best, size);
    return;
  }
  if (size + static_cast<std::uint32_t>(std::popcount(p)) <= best) return;
  if (size + clique_cover_bound(p, adj) <= best) return;

  std::uint32_t pick = 0;
  int pick_degree = -1;
  for (Bits scan = p; scan; scan &= scan - 1) {
    const auto v = static_cast<std::uint32_t>(std::countr_zero(scan));
    const int deg = std::popcount(adj[v] & p);
    if (deg > pick_degree) {
      pick_degree = deg;
      pick = v;
    }
  }
  mis_search(p & ~(bit(pick) | adj[pick]), size + 1, adj, best);
  mis_search(p & ~bit(pick), size, adj, best);
}

}  // namespace

std::uint32_t max_independent_set(std::span<const std::uint64_t> adjacency) {
  if (adjacency.size() > kMaxBallCap) {
    throw Error(ErrorKind::InvalidInput, "independent set solver limited to 64 vertices");
  }
  if (adjacency.empty()) return 0;
  const Bits all = adjacency.size() == 64 ? ~Bits{0} : bit(static_cast<std::uint32_t>(adjacency.size())) - 1;
  std::uint32_t best = 0;
  mis_search(all, 0, adjacency, best);
  return best;
}

PackingCalculator::PackingCalculator(const SemimetricGraph& g, std::size_t ball_cap)
    : g_(g), cap_(ball_cap), balls_(g.size()) {
  if (ball_cap == 0 || ball_cap > kMaxBallCap) {
    throw Error(ErrorKind::InvalidInput,
                "ball cap must lie in 1.." + std::to_string(kMaxBallCap));
  }
}

const PackingCalculator::Ball& PackingCalculator::ball(Node center) {
  if (center >= g_.size()) {
    throw Error(ErrorKind::InvalidInput, "center out of range", {center});
  }
  auto& slot = balls_[center];
  if (slot) return *slot;

  Ball b;
  const auto arcs = g_.neighbors(center);
  std::vector<std::pair<std::uint32_t, Node>> order;
  for (const auto& arc : arcs) order.emplace_back(g_.edge_rank(arc.edge), arc.to);
  std::sort(order.begin(), order.end());
  b.members.push_back(center);
  b.rank_from_center.push_back(0);
  for (const auto& [rank, v] : order) {
    b.members.push_back(v);
    b.rank_from_center.push_back(rank);
  }
  // Pairwise ranks are only needed for balls the solver accepts.
  const std::size_t m = std::min(b.members.size(), cap_);
  b.pair_rank.assign(m * m, kUnreachable);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c = a + 1; c < m; ++c) {
      const auto r = g_.distance_rank(b.members[a], b.members[c]);
      if (r) b.pair_rank[a * m + c] = b.pair_rank[c * m + a] = *r;
    }
  }
  slot = std::move(b);
  return *slot;
}

std::uint64_t PackingCalculator::solve(const Ball& b, std::size_t count,
                                       std::uint32_t sep_cutoff) const {
  if (count > cap_) {
    throw Error(ErrorKind::BallTooLarge,
                "ball around node " + std::to_string(b.members.front()) + " holds " +
                    std::to_string(count) + " points, above the cap of " +
                    std::to_string(cap_),
                {b.members.front()});
  }
  const std::size_t m = std::min(b.members.size(), cap_);
  std::array<Bits, kMaxBallCap> adj{};
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t c = a + 1; c < count; ++c) {
      if (b.pair_rank[a * m + c] < sep_cutoff) {
        adj[a] |= bit(static_cast<std::uint32_t>(c));
        adj[c] |= bit(static_cast<std::uint32_t>(a));
      }
    }
  }
  return max_independent_set(std::span<const Bits>(adj.data(), count));
}

std::uint64_t PackingCalculator::packing_number(Node center, const Rational& r,
                                                const Rational& sep) {
  if (r <= 0 || sep <= 0) {
    throw Error(ErrorKind::InvalidInput, "packing radius and separation must be positive");
  }
  const Ball& b = ball(center);
  const std::uint32_t r_cutoff = g_.rank_cutoff(r);
  std::size_t count = 1;
  while (count < b.members.size() && b.rank_from_center[count] < r_cutoff) ++count;
  return solve(b, count, g_.rank_cutoff(sep));
}

std::uint64_t PackingCalculator::pstar(const Rational& eta) {
  if (eta <= 0) throw Error(ErrorKind::InvalidInput, "pstar needs eta > 0");
  if (const auto it = cache_.find(eta); it != cache_.end()) return it->second;

  const auto& weights = g_.distinct_weights();
  std::uint64_t best = g_.size() == 0 ? 0 : 1;
  for (Node x = 0; x < g_.size(); ++x) {
    const Ball& b = ball(x);
    // Packing of a fixed ball only shrinks as r grows, so within a ball's
    // range of radii the smallest r (a distance value from x) is the one to
    // try.
    for (std::size_t i = 1; i < b.members.size(); ++i) {
      if (i + 1 < b.members.size() && b.rank_from_center[i + 1] == b.rank_from_center[i]) {
        continue;
      }
      const Rational sep = eta * weights[b.rank_from_center[i]];
      best = std::max(best, solve(b, i + 1, g_.rank_cutoff(sep)));
    }
  }
  cache_.emplace(eta, best);
  return best;
}

PackingProfile PackingCalculator::profile() {
  PackingProfile p;
  p.mu = density_constant();
  p.dens = std::log2(static_cast<double>(p.mu));
  p.pstar_cache = cache_;
  return p;
}

std::uint64_t packing_number(const SemimetricGraph& g, Node center, const Rational& r,
                             const Rational& sep, std::size_t ball_cap) {
  PackingCalculator calc(g, ball_cap);
  return calc.packing_number(center, r, sep);
}

PackingProfile density_constant(const SemimetricGraph& g, std::size_t ball_cap) {
  PackingCalculator calc(g, ball_cap);
  return calc.profile();
}

std::uint64_t pstar(const SemimetricGraph& g, const Rational& eta, std::size_t ball_cap) {
  PackingCalculator calc(g, ball_cap);
  return calc.pstar(eta);
}

}  // namespace geoclust
