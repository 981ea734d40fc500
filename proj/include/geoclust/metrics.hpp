#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "geoclust/graph.hpp"

namespace geoclust {

inline constexpr std::size_t kDefaultBallCap = 40;
// Hard ceiling imposed by the 64-bit set representation of a ball.
inline constexpr std::size_t kMaxBallCap = 64;

struct PackingProfile {
  std::uint64_t mu = 1;
  double dens = 0.0;
  std::map<Rational, std::uint64_t> pstar_cache;
};

// Exact packing numbers over closed balls B(x, r) = {y : d(x, y) <= r}.
// Balls larger than `ball_cap` raise BallTooLarge instead of being
// approximated.
class PackingCalculator {
 public:
  explicit PackingCalculator(const SemimetricGraph& g, std::size_t ball_cap = kDefaultBallCap);

  // Largest subset of B(center, r) with pairwise distances > sep.
  std::uint64_t packing_number(Node center, const Rational& r, const Rational& sep);

  // Max over x and r of packing_number(x, r, eta * r). Cached per eta.
  std::uint64_t pstar(const Rational& eta);

  // mu(X) = pstar(1/2).
  std::uint64_t density_constant() { return pstar(Rational(1, 2)); }

  PackingProfile profile();

  std::size_t ball_cap() const { return cap_; }

 private:
  struct Ball {
    // Center first, then the other members by (distance rank, id).
    std::vector<Node> members;
    std::vector<std::uint32_t> rank_from_center;
    // Pairwise distance ranks; kUnreachable for missing edges.
    std::vector<std::uint32_t> pair_rank;
  };

  const Ball& ball(Node center);
  std::uint64_t solve(const Ball& b, std::size_t count, std::uint32_t sep_cutoff) const;

  const SemimetricGraph& g_;
  std::size_t cap_;
  std::vector<std::optional<Ball>> balls_;
  std::map<Rational, std::uint64_t> cache_;
};

std::uint64_t packing_number(const SemimetricGraph& g, Node center, const Rational& r,
                             const Rational& sep, std::size_t ball_cap = kDefaultBallCap);
PackingProfile density_constant(const SemimetricGraph& g, std::size_t ball_cap = kDefaultBallCap);
std::uint64_t pstar(const SemimetricGraph& g, const Rational& eta,
                    std::size_t ball_cap = kDefaultBallCap);

// Maximum independent set size of a graph on at most 64 vertices given as
// adjacency bitsets.
std::uint32_t max_independent_set(std::span<const std::uint64_t> adjacency);

}  // namespace geoclust
