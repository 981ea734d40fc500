#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geoclust/graph.hpp"
#include "geoclust/oracle.hpp"
#include "geoclust/radii.hpp"
#include "geoclust/recovery.hpp"

namespace geoclust {

struct EqualityCheck {
  bool equal = false;
  std::uint64_t scq = 0;
  std::uint64_t seed = 0;
};

// Decides candidate == truth (as partitions) with at most k SCQ per candidate
// cluster and one SEED per cluster, or two with `paranoid`. Each candidate
// cluster's smallest node is labelled by SCQ against seeds[0..k-2]; when the
// labels are distinct, SEED(X \ C, label) = NIL for every cluster proves
// equality. Throws NotAPartition when the candidate is not a partition of
// the oracle's node set.
EqualityCheck check_clustering(const Clustering& candidate, std::span<const Node> seeds,
                               Oracle& oracle, bool paranoid = false);

bool clustering_matches_truth(const Clustering& candidate, std::span<const Node> seeds,
                              Oracle& oracle, bool paranoid = false);

enum class UnknownParam { Beta, Gamma };
enum class BaseMode { Identical, Multi, LearnedRadii };

struct GuessOptions {
  bool paranoid_equality = false;
  // Guesses 2^-j for j = 0..max_exponent.
  unsigned max_exponent = 64;
  RecoveryOptions recovery;
};

struct GuessRound {
  unsigned j = 0;
  Rational guess;
  bool matched = false;
  // Error kind name when the base recoverer gave up, empty otherwise.
  std::string failure;
  std::uint64_t scq = 0;
  std::uint64_t seed = 0;
};

struct GuessReport {
  Clustering predicted;
  Rational guess;
  std::vector<GuessRound> rounds;
  std::uint64_t scq_used = 0;
  std::uint64_t seed_used = 0;
  // Part of the totals spent on equality checks.
  std::uint64_t equality_scq = 0;
  std::uint64_t equality_seed = 0;
  PhaseCounts phases;
  std::optional<RadiiReport> radii;
};

// Runs the base recoverer with guesses 2^0, 2^-1, ... for the unknown
// parameter until its output passes the equality check. `radii` holds the
// shared radius (Identical), one per cluster (Multi), or is ignored
// (LearnedRadii, where they are learned once up front). Throws GuessUnderflow
// when no guess down to 2^-max_exponent succeeds.
GuessReport recover_unknown_param(const SemimetricGraph& g, UnknownParam unknown,
                                  const Rational& known, BaseMode mode,
                                  std::span<const Rational> radii, std::span<const Node> seeds,
                                  Oracle& oracle, const GuessOptions& options = {});

}  // namespace geoclust
