#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geoclust/convexity.hpp"
#include "geoclust/graph.hpp"
#include "geoclust/oracle.hpp"

namespace geoclust {

struct Instance {
  SemimetricGraph graph;
  Clustering truth;
  ConvexityParams params;
  std::vector<Node> seeds;
  std::string family;
  // Hidden choices and tags: "convex" (bool), "generalized" (bool),
  // "violates" (property name) and family-specific values.
  nlohmann::json construction_record = nlohmann::json::object();

  bool generalized() const {
    return construction_record.value("generalized", !params.identical());
  }
};

// String key/value options for a generator, e.g. parsed from "n=40,k=3".
class FamilyParams {
 public:
  FamilyParams() = default;
  explicit FamilyParams(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  // "a=1,b=2/3"; an empty string gives no options.
  static FamilyParams parse(std::string_view text);

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  Rational get_rational(const std::string& key, const Rational& fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

const std::vector<std::string>& family_names();

// Deterministic in (family, params, rng_seed). Throws InvalidInput for an
// unknown family or bad options and RejectionExhausted when random-convex
// cannot certify a draw within 100 attempts.
//
// Options per family (defaults in brackets):
//   whirl            segments [8], beta [1/4], gamma [1/2]
//   oort             beta [1/2], gamma [1/10]
//   violate-*        n [20 for geodesic], m [5, margin], beta, gamma
//   caterpillar      n [30], beta [1/2], gamma [1/2]
//   complete-random  n [64], beta [1/2], gamma [1/2]
//   radii-path       n [128], k [2], beta [1/2], gamma [1]
//   random-convex    n [random 20..200], k [random 2..5], beta, gamma,
//                    eps [1], two_scale [0], tight [0], chords, long,
//                    extra_bridges [0]
Instance generate(std::string_view family, const FamilyParams& params, std::uint64_t rng_seed);

// Runs the checker matching the instance's tags.
ConvexityVerdict check_instance(const Instance& inst, const CheckOptions& options = {});

// SCQ spent by a prober that compares a LOW point with the UP points in id
// order until it finds the hidden singleton; the last candidate is never
// asked. Requires a caterpillar instance.
std::uint64_t probe_hidden_point(const Instance& caterpillar, Oracle& oracle);

// Mean cost of the prober above over a uniformly random hidden UP point,
// computed by enumeration.
Rational expected_probe_cost(std::size_t up_count);

}  // namespace geoclust
