#include "geoclust/paramsearch.hpp"

#include <string>

#include "geoclust/error.hpp"

namespace geoclust {

EqualityCheck check_clustering(const Clustering& candidate, std::span<const Node> seeds,
                               Oracle& oracle, bool paranoid) {
  if (candidate.size() != oracle.size()) {
    throw Error(ErrorKind::NotAPartition, "candidate covers " +
                                              std::to_string(candidate.size()) + " nodes, not " +
                                              std::to_string(oracle.size()));
  }
  try {
    candidate.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::NotAPartition, e.what());
  }
  const std::uint32_t k = oracle.cluster_count();
  if (seeds.size() != k) throw Error(ErrorKind::InvalidInput, "expected one seed per cluster");

  const std::uint64_t scq0 = oracle.scq_count();
  const std::uint64_t seed0 = oracle.seed_count();
  EqualityCheck out;
  auto finish = [&](bool equal) {
    out.equal = equal;
    out.scq = oracle.scq_count() - scq0;
    out.seed = oracle.seed_count() - seed0;
    return out;
  };
  if (candidate.k != k) return finish(false);

  std::vector<std::uint8_t> used(k, 0);
  for (const auto& members : candidate.clusters()) {
    const Node x = members.front();
    ClusterId label = k - 1;
    for (ClusterId h = 0; h + 1 < k; ++h) {
      if (oracle.scq(x, seeds[h])) {
        label = h;
        break;
      }
    }
    if (used[label]) return finish(false);
    used[label] = 1;

    std::vector<Node> outside;
    outside.reserve(candidate.size() - members.size());
    for (Node v = 0; v < candidate.size(); ++v) {
      if (candidate.labels[v] != candidate.labels[x]) outside.push_back(v);
    }
    if (oracle.seed(outside, label) != kNil) return finish(false);
    if (paranoid && oracle.seed(members, label) == kNil) return finish(false);
  }
  return finish(true);
}

bool clustering_matches_truth(const Clustering& candidate, std::span<const Node> seeds,
                              Oracle& oracle, bool paranoid) {
  return check_clustering(candidate, seeds, oracle, paranoid).equal;
}

GuessReport recover_unknown_param(const SemimetricGraph& g, UnknownParam unknown,
                                  const Rational& known, BaseMode mode,
                                  std::span<const Rational> radii, std::span<const Node> seeds,
                                  Oracle& oracle, const GuessOptions& options) {
  if (known <= 0 || known > 1) {
    throw Error(ErrorKind::InvalidInput, "the known parameter must lie in (0, 1]");
  }
  const std::uint32_t k = oracle.cluster_count();
  const std::uint64_t scq0 = oracle.scq_count();
  const std::uint64_t seed0 = oracle.seed_count();
  GuessReport report;

  std::vector<Rational> base_radii(radii.begin(), radii.end());
  if (mode == BaseMode::LearnedRadii) {
    report.radii = get_epsilons(g, k, oracle);
    base_radii = report.radii->radii;
  } else if (mode == BaseMode::Identical && base_radii.size() != 1) {
    throw Error(ErrorKind::InvalidInput, "identical mode takes a single radius");
  } else if (mode == BaseMode::Multi && base_radii.size() != k) {
    throw Error(ErrorKind::InvalidInput, "expected one radius per cluster");
  }

  for (unsigned j = 0; j <= options.max_exponent; ++j) {
    const Rational guess = inverse_power_of_two(j);
    const Rational& beta = unknown == UnknownParam::Beta ? guess : known;
    const Rational& gamma = unknown == UnknownParam::Gamma ? guess : known;
    GuessRound round;
    round.j = j;
    round.guess = guess;
    const std::uint64_t round_scq = oracle.scq_count();
    const std::uint64_t round_seed = oracle.seed_count();
    try {
      RecoveryReport base =
          mode == BaseMode::Identical
              ? recover_clustering(g, base_radii.front(), beta, gamma, seeds, oracle,
                                   options.recovery)
              : recover_clustering2(g, base_radii, beta, gamma, seeds, oracle, options.recovery);
      report.phases += base.phases;
      const EqualityCheck eq =
          check_clustering(base.predicted, seeds, oracle, options.paranoid_equality);
      report.equality_scq += eq.scq;
      report.equality_seed += eq.seed;
      round.matched = eq.equal;
      if (eq.equal) report.predicted = std::move(base.predicted);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PartitionError && e.kind() != ErrorKind::ContractViolation &&
          e.kind() != ErrorKind::NoPath) {
        throw;
      }
      round.failure = std::string(to_string(e.kind()));
    }
    round.scq = oracle.scq_count() - round_scq;
    round.seed = oracle.seed_count() - round_seed;
    report.rounds.push_back(round);
    if (round.matched) {
      report.guess = guess;
      report.scq_used = oracle.scq_count() - scq0 - report.phases.verify_scq;
      report.seed_used = oracle.seed_count() - seed0;
      return report;
    }
  }
  throw Error(ErrorKind::GuessUnderflow, "no guess down to 2^-" +
                                             std::to_string(options.max_exponent) +
                                             " produced the true clustering");
}

}  // namespace geoclust
