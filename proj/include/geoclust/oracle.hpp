#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geoclust/graph.hpp"

namespace geoclust {

using ClusterId = std::uint32_t;

// Partition of 0..n-1 into k non-empty clusters.
struct Clustering {
  std::vector<ClusterId> labels;
  std::uint32_t k = 0;

  Clustering() = default;
  Clustering(std::vector<ClusterId> labels, std::uint32_t k);

  std::size_t size() const { return labels.size(); }
  // Sorted members of cluster i.
  std::vector<Node> members(ClusterId i) const;
  std::vector<std::vector<Node>> clusters() const;

  // Throws InvalidInput unless every label is < k and every cluster is used.
  void validate() const;

  // Relabels so that clusters are numbered by ascending smallest member.
  Clustering canonical() const;
  // Same partition, ignoring cluster ids.
  bool same_partition(const Clustering& other) const;

  bool operator==(const Clustering&) const = default;
};

// What recovery algorithms see of the ground truth.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual bool scq(Node x, Node y) = 0;
  // A member of C_i inside s, or kNil.
  virtual Node seed(std::span<const Node> s, ClusterId i) = 0;

  virtual std::size_t size() const = 0;
  virtual std::uint32_t cluster_count() const = 0;
  virtual std::uint64_t scq_count() const = 0;
  virtual std::uint64_t seed_count() const = 0;
};

enum class SeedPolicyKind { FirstById, AdversarialMinMax, Scripted };

struct SeedPolicy {
  SeedPolicyKind kind = SeedPolicyKind::FirstById;
  // For Scripted: nodes tried first, in order; ties fall back to min id.
  std::vector<Node> script;

  // "first-by-id", "adversarial-minmax", or "scripted:3,1,4".
  static SeedPolicy parse(std::string_view text);
  std::string name() const;
};

class OracleSession final : public Oracle {
 public:
  explicit OracleSession(Clustering truth, SeedPolicy policy = {});

  bool scq(Node x, Node y) override;
  Node seed(std::span<const Node> s, ClusterId i) override;

  std::size_t size() const override { return truth_.size(); }
  std::uint32_t cluster_count() const override { return truth_.k; }
  std::uint64_t scq_count() const override { return scq_count_; }
  std::uint64_t seed_count() const override { return seed_count_; }

  const SeedPolicy& policy() const { return policy_; }

 private:
  void check_node(Node v) const;

  Clustering truth_;
  SeedPolicy policy_;
  std::vector<std::uint32_t> script_rank_;
  std::uint64_t scq_count_ = 0;
  std::uint64_t seed_count_ = 0;
};

// Answers repeated SCQ pairs from a cache; only cache misses reach (and are
// counted by) the wrapped oracle.
class MemoizingOracle final : public Oracle {
 public:
  explicit MemoizingOracle(Oracle& inner) : inner_(inner) {}

  bool scq(Node x, Node y) override;
  Node seed(std::span<const Node> s, ClusterId i) override { return inner_.seed(s, i); }

  std::size_t size() const override { return inner_.size(); }
  std::uint32_t cluster_count() const override { return inner_.cluster_count(); }
  std::uint64_t scq_count() const override { return inner_.scq_count(); }
  std::uint64_t seed_count() const override { return inner_.seed_count(); }
  std::uint64_t cache_hits() const { return hits_; }

 private:
  Oracle& inner_;
  std::map<std::pair<Node, Node>, bool> cache_;
  std::uint64_t hits_ = 0;
};

}  // namespace geoclust
