#include "geoclust/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "geoclust/error.hpp"

namespace geoclust {

Clustering::Clustering(std::vector<ClusterId> labels_in, std::uint32_t k_in)
    : labels(std::move(labels_in)), k(k_in) {}

std::vector<Node> Clustering::members(ClusterId i) const {
  std::vector<Node> out;
  for (Node v = 0; v < labels.size(); ++v) {
    if (labels[v] == i) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<Node>> Clustering::clusters() const {
  std::vector<std::vector<Node>> out(k);
  for (Node v = 0; v < labels.size(); ++v) {
    if (labels[v] < k) out[labels[v]].push_back(v);
  }
  return out;
}

void Clustering::validate() const {
  std::vector<std::uint8_t> used(k, 0);
  for (Node v = 0; v < labels.size(); ++v) {
    if (labels[v] >= k) {
      throw Error(ErrorKind::InvalidInput,
                  "label " + std::to_string(labels[v]) + " of node " + std::to_string(v) +
                      " is not below k = " + std::to_string(k),
                  {v});
    }
    used[labels[v]] = 1;
  }
  for (ClusterId i = 0; i < k; ++i) {
    if (!used[i]) {
      throw Error(ErrorKind::InvalidInput, "cluster " + std::to_string(i) + " is empty");
    }
  }
}

Clustering Clustering::canonical() const {
  std::vector<ClusterId> remap(k, kNil);
  std::vector<ClusterId> out(labels.size());
  ClusterId next = 0;
  for (Node v = 0; v < labels.size(); ++v) {
    auto& r = remap.at(labels[v]);
    if (r == kNil) r = next++;
    out[v] = r;
  }
  return Clustering(std::move(out), next);
}

bool Clustering::same_partition(const Clustering& other) const {
  if (labels.size() != other.labels.size()) return false;
  const Clustering a = canonical();
  const Clustering b = other.canonical();
  return a.k == b.k && a.labels == b.labels;
}

SeedPolicy SeedPolicy::parse(std::string_view text) {
  SeedPolicy p;
  if (text == "first-by-id") return p;
  if (text == "adversarial-minmax") {
    p.kind = SeedPolicyKind::AdversarialMinMax;
    return p;
  }
  constexpr std::string_view prefix = "scripted:";
  if (text == "scripted" || text.starts_with(prefix)) {
    p.kind = SeedPolicyKind::Scripted;
    std::string_view rest = text.size() > prefix.size() ? text.substr(prefix.size()) : "";
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      Node v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size()) {
        throw Error(ErrorKind::InvalidPolicy, "bad scripted seed entry '" + std::string(item) + "'");
      }
      p.script.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return p;
  }
  throw Error(ErrorKind::InvalidPolicy, "unknown seed policy '" + std::string(text) + "'");
}

std::string SeedPolicy::name() const {
  switch (kind) {
    case SeedPolicyKind::FirstById: return "first-by-id";
    case SeedPolicyKind::AdversarialMinMax: return "adversarial-minmax";
    case SeedPolicyKind::Scripted: {
      std::string out = "scripted:";
      for (std::size_t i = 0; i < script.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(script[i]);
      }
      return out;
    }
  }
  return "unknown";
}

OracleSession::OracleSession(Clustering truth, SeedPolicy policy)
    : truth_(std::move(truth)), policy_(std::move(policy)) {
  truth_.validate();
  if (policy_.kind == SeedPolicyKind::AdversarialMinMax && truth_.k != 2) {
    throw Error(ErrorKind::InvalidPolicy,
                "adversarial-minmax needs exactly 2 clusters, got " + std::to_string(truth_.k));
  }
  if (policy_.kind == SeedPolicyKind::Scripted) {
    script_rank_.assign(truth_.size(), kUnreachable);
    for (std::uint32_t r = 0; r < policy_.script.size(); ++r) {
      const Node v = policy_.script[r];
      check_node(v);
      if (script_rank_[v] == kUnreachable) script_rank_[v] = r;
    }
  }
}

void OracleSession::check_node(Node v) const {
  if (v >= truth_.size()) {
    throw Error(ErrorKind::InvalidInput, "node " + std::to_string(v) + " out of range", {v});
  }
}

bool OracleSession::scq(Node x, Node y) {
  check_node(x);
  check_node(y);
  ++scq_count_;
  return truth_.labels[x] == truth_.labels[y];
}

Node OracleSession::seed(std::span<const Node> s, ClusterId i) {
  if (i >= truth_.k) {
    throw Error(ErrorKind::InvalidInput, "cluster id " + std::to_string(i) + " out of range");
  }
  ++seed_count_;
  Node best = kNil;
  const bool take_max = policy_.kind == SeedPolicyKind::AdversarialMinMax && i == 1;
  const bool scripted = policy_.kind == SeedPolicyKind::Scripted;
  for (const Node v : s) {
    check_node(v);
    if (truth_.labels[v] != i) continue;
    if (best == kNil) {
      best = v;
    } else if (scripted) {
      const auto rv = script_rank_[v];
      const auto rb = script_rank_[best];
      if (rv < rb || (rv == rb && v < best)) best = v;
    } else if (take_max ? v > best : v < best) {
      best = v;
    }
  }
  return best;
}

bool MemoizingOracle::scq(Node x, Node y) {
  const auto key = std::minmax(x, y);
  if (const auto it = cache_.find(key); it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  const bool answer = inner_.scq(x, y);
  cache_.emplace(key, answer);
  return answer;
}

}  // namespace geoclust
