#include "geoclust/instances.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "geoclust/error.hpp"

namespace geoclust {

FamilyParams FamilyParams::parse(std::string_view text) {
  FamilyParams out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorKind::InvalidInput, "expected key=value, got '" + std::string(item) + "'");
    }
    out.set(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  return out;
}

std::int64_t FamilyParams::get_int(const std::string& key, std::int64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidInput, "option " + key + " must be an integer");
}

Rational FamilyParams::get_rational(const std::string& key, const Rational& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_rational(it->second);
}

bool FamilyParams::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw Error(ErrorKind::InvalidInput, "option " + key + " must be a boolean");
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{
      "whirl",      "oort",        "violate-connectivity", "violate-margin", "violate-geodesic",
      "caterpillar", "complete-random", "radii-path",       "random-convex"};
  return names;
}

namespace {

// Portable draws: the std distributions differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct Point {
  Rational x;
  Rational y;
};

Rational squared_distance(const Point& a, const Point& b) {
  const Rational dx = a.x - b.x;
  const Rational dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Edges between all pairs within Euclidean distance sqrt(max_square), or all
// pairs when max_square is absent. Irrational lengths are rounded up to the
// 1/1024 grid.
std::vector<WeightedEdge> euclidean_edges(const std::vector<Point>& pts,
                                          const std::optional<Rational>& max_square) {
  std::vector<WeightedEdge> edges;
  for (Node u = 0; u < pts.size(); ++u) {
    for (Node v = u + 1; v < pts.size(); ++v) {
      const Rational sq = squared_distance(pts[u], pts[v]);
      if (max_square && sq > *max_square) continue;
      edges.push_back({u, v, sqrt_round_up(sq)});
    }
  }
  return edges;
}

std::vector<Node> random_seeds(const Clustering& c, Rng& rng) {
  std::vector<Node> seeds;
  for (const auto& members : c.clusters()) seeds.push_back(rng.pick(members));
  return seeds;
}

nlohmann::json points_json(const std::vector<Point>& pts) {
  auto out = nlohmann::json::array();
  for (const auto& p : pts) out.push_back({format_rational(p.x), format_rational(p.y)});
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::InvalidInput, message);
}

std::uint32_t positive_count(const FamilyParams& p, const std::string& key, std::int64_t fallback,
                             std::int64_t minimum, std::int64_t maximum = 100000) {
  const std::int64_t v = p.get_int(key, fallback);
  require(v >= minimum && v <= maximum, "option " + key + " must lie in [" +
                                            std::to_string(minimum) + ", " +
                                            std::to_string(maximum) + "]");
  return static_cast<std::uint32_t>(v);
}

Instance finish(std::string family, std::size_t n, std::vector<WeightedEdge> edges,
               std::vector<ClusterId> labels, std::uint32_t k, ConvexityParams params,
               nlohmann::json record, Rng& rng) {
  Instance inst;
  inst.family = std::move(family);
  inst.graph = SemimetricGraph(n, std::move(edges));
  inst.truth = Clustering(std::move(labels), k);
  inst.truth.validate();
  params.validate(k);
  inst.params = std::move(params);
  inst.seeds = random_seeds(inst.truth, rng);
  inst.construction_record = std::move(record);
  return inst;
}

ConvexityParams shared(const FamilyParams& p, const Rational& beta, const Rational& gamma,
                       const Rational& eps) {
  return {p.get_rational("beta", beta), p.get_rational("gamma", gamma), {eps}};
}

// Two point chains winding around the origin as a square spiral, the second
// the mirror image of the first. Consecutive points are 1 apart and the two
// arms are never closer than 3/2 except at their inner tips (1/2 apart).
Instance make_whirl(const FamilyParams& p, Rng& rng) {
  const std::uint32_t segments = positive_count(p, "segments", 8, 1, 64);
  std::vector<Point> arm{{Rational(1, 4), Rational(0)}};
  const int dx[4] = {1, 0, -1, 0};
  const int dy[4] = {0, 1, 0, -1};
  for (std::uint32_t s = 0; s < segments; ++s) {
    const std::uint32_t length = 2 + 4 * (s / 2);
    for (std::uint32_t t = 0; t < length; ++t) {
      const Point& last = arm.back();
      arm.push_back({last.x + dx[s % 4], last.y + dy[s % 4]});
    }
  }
  std::vector<Point> pts = arm;
  for (const auto& q : arm) pts.push_back({-q.x, -q.y});
  std::vector<ClusterId> labels(pts.size(), 0);
  std::fill(labels.begin() + static_cast<std::ptrdiff_t>(arm.size()), labels.end(), 1U);

  nlohmann::json record{{"convex", true},
                        {"generalized", false},
                        {"reconstruction", true},
                        {"segments", segments},
                        {"points", points_json(pts)}};
  return finish("whirl", pts.size(), euclidean_edges(pts, Rational(9)), std::move(labels), 2,
                shared(p, Rational(1, 4), Rational(1, 2), Rational(1)), std::move(record), rng);
}

// A square ring of side 12 sampled every 1 around a 5x5 grid of spacing 2.
Instance make_oort(const FamilyParams& p, Rng& rng) {
  std::vector<Point> pts;
  for (int t = 0; t < 48; ++t) {
    const int side = t / 12;
    const int off = t % 12;
    switch (side) {
      case 0: pts.push_back({Rational(-6 + off), Rational(-6)}); break;
      case 1: pts.push_back({Rational(6), Rational(-6 + off)}); break;
      case 2: pts.push_back({Rational(6 - off), Rational(6)}); break;
      default: pts.push_back({Rational(-6), Rational(6 - off)}); break;
    }
  }
  const std::size_t ring = pts.size();
  for (int a = -4; a <= 4; a += 2) {
    for (int b = -4; b <= 4; b += 2) pts.push_back({Rational(a), Rational(b)});
  }
  std::vector<ClusterId> labels(pts.size(), 0);
  std::fill(labels.begin() + static_cast<std::ptrdiff_t>(ring), labels.end(), 1U);

  ConvexityParams params{p.get_rational("beta", Rational(1, 2)),
                         p.get_rational("gamma", Rational(1, 10)),
                         {Rational(1), Rational(2)}};
  nlohmann::json record{{"convex", true},
                        {"generalized", true},
                        {"reconstruction", true},
                        {"radii", {"1", "2"}},
                        {"points", points_json(pts)}};
  return finish("oort", pts.size(), euclidean_edges(pts, Rational(9)), std::move(labels), 2,
                std::move(params), std::move(record), rng);
}

// Four groups of three collinear points 1/2 apart, 10 apart from each other;
// clusters take alternating groups and so fall apart at eps = 1.
Instance make_violate_connectivity(const FamilyParams& p, Rng& rng) {
  std::vector<Point> pts;
  std::vector<ClusterId> labels;
  for (int g = 0; g < 4; ++g) {
    for (int t = 0; t < 3; ++t) {
      pts.push_back({Rational(10 * g) + Rational(t, 2), Rational(0)});
      labels.push_back(static_cast<ClusterId>(g % 2));
    }
  }
  nlohmann::json record{{"convex", false},
                        {"generalized", false},
                        {"violates", "connectivity"},
                        {"points", points_json(pts)}};
  return finish("violate-connectivity", pts.size(), euclidean_edges(pts, std::nullopt),
                std::move(labels), 2, shared(p, Rational(1, 2), Rational(1, 2), Rational(1)),
                std::move(record), rng);
}

// Two unit-spaced chains whose facing endpoints are only 1/10 apart.
Instance make_violate_margin(const FamilyParams& p, Rng& rng) {
  const std::uint32_t m = positive_count(p, "m", 5, 2, 1000);
  const Rational gap = p.get_rational("gap", Rational(1, 10));
  std::vector<Point> pts;
  std::vector<ClusterId> labels;
  for (std::uint32_t t = 0; t < m; ++t) {
    pts.push_back({Rational(t), Rational(0)});
    labels.push_back(0);
  }
  for (std::uint32_t t = 0; t < m; ++t) {
    pts.push_back({Rational(m - 1) + gap + t, Rational(0)});
    labels.push_back(1);
  }
  ConvexityParams params = shared(p, Rational(1, 4), Rational(1, 2), Rational(1));
  require(gap > 0 && gap <= params.beta, "gap must lie in (0, beta]");
  nlohmann::json record{{"convex", false},
                        {"generalized", false},
                        {"violates", "metric-margin"},
                        {"gap", format_rational(gap)},
                        {"points", points_json(pts)}};
  return finish("violate-margin", pts.size(), euclidean_edges(pts, std::nullopt),
                std::move(labels), 2, std::move(params), std::move(record), rng);
}

// Points 1/2 apart on a line with alternating labels: each cluster is a
// unit-spaced chain, but short detours pass through the other one.
Instance make_violate_geodesic(const FamilyParams& p, Rng& rng) {
  const std::uint32_t n = positive_count(p, "n", 20, 6, 2000);
  std::vector<Point> pts;
  std::vector<ClusterId> labels;
  for (std::uint32_t t = 0; t < n; ++t) {
    pts.push_back({Rational(t, 2), Rational(0)});
    labels.push_back(t % 2);
  }
  nlohmann::json record{{"convex", false},
                        {"generalized", false},
                        {"violates", "geodesic"},
                        {"points", points_json(pts)}};
  return finish("violate-geodesic", n, euclidean_edges(pts, std::nullopt), std::move(labels), 2,
                shared(p, Rational(1, 4), Rational(1, 2), Rational(1)), std::move(record), rng);
}

// UP = (2j, 1), LOW = (j, 0); one uniformly chosen UP point forms the second
// cluster. UP nodes come first.
Instance make_caterpillar(const FamilyParams& p, Rng& rng) {
  const std::uint32_t n = positive_count(p, "n", 30, 6, 3000);
  require(n % 3 == 0, "caterpillar needs n divisible by 3");
  const std::uint32_t up = n / 3;
  std::vector<Point> pts;
  for (std::uint32_t j = 1; j <= up; ++j) pts.push_back({Rational(2 * j), Rational(1)});
  for (std::uint32_t j = 1; j <= 2 * up; ++j) pts.push_back({Rational(j), Rational(0)});
  const auto hidden = static_cast<Node>(rng.below(up));
  std::vector<ClusterId> labels(n, 0);
  labels[hidden] = 1;
  nlohmann::json record{{"convex", true},
                        {"generalized", false},
                        {"up_count", up},
                        {"hidden", hidden},
                        {"points", points_json(pts)}};
  return finish("caterpillar", n, euclidean_edges(pts, std::nullopt), std::move(labels), 2,
                shared(p, Rational(1, 2), Rational(1, 2), Rational(1)), std::move(record), rng);
}

// Unit-weight complete graph with a uniformly random 2-partition (both parts
// non-empty).
Instance make_complete_random(const FamilyParams& p, Rng& rng) {
  const std::uint32_t n = positive_count(p, "n", 64, 2, 2000);
  std::vector<ClusterId> labels(n);
  bool mixed = false;
  while (!mixed) {
    for (auto& l : labels) l = static_cast<ClusterId>(rng.below(2));
    mixed = std::find(labels.begin(), labels.end(), labels.front() ^ 1U) != labels.end();
  }
  std::vector<WeightedEdge> edges;
  for (Node u = 0; u < n; ++u) {
    for (Node v = u + 1; v < n; ++v) edges.push_back({u, v, Rational(1)});
  }
  nlohmann::json record{{"convex", true}, {"generalized", false}, {"labels", labels}};
  return finish("complete-random", n, std::move(edges), std::move(labels), 2,
                shared(p, Rational(1, 2), Rational(1, 2), Rational(1)), std::move(record), rng);
}

// k/2 disjoint paths of n/(k/2) nodes each. Path h has weights
// 2h + 1 + beta (t + 1) / m on its t-th edge, so later paths are strictly
// heavier; a random cut j* splits it into clusters 2h (first j* nodes) and
// 2h + 1.
Instance make_radii_path(const FamilyParams& p, Rng& rng) {
  const std::uint32_t n = positive_count(p, "n", 128, 8, 100000);
  const std::uint32_t k = positive_count(p, "k", 2, 2, 1000);
  require(k % 2 == 0, "radii-path needs an even k");
  const std::uint32_t paths = k / 2;
  require(n % paths == 0, "radii-path needs n divisible by k/2");
  const std::uint32_t m = n / paths;
  require(m >= 4, "each path needs at least 4 nodes");
  const Rational beta = p.get_rational("beta", Rational(1, 2));
  const Rational gamma = p.get_rational("gamma", Rational(1));

  std::vector<WeightedEdge> edges;
  std::vector<ClusterId> labels(n);
  std::vector<Rational> radii(k);
  auto cuts = nlohmann::json::array();
  for (std::uint32_t h = 0; h < paths; ++h) {
    const Node base = h * m;
    auto weight = [&](std::uint32_t t) { return Rational(2 * h + 1) + beta * (t + 1) / m; };
    for (std::uint32_t t = 0; t + 1 < m; ++t) edges.push_back({base + t, base + t + 1, weight(t)});
    // Both parts keep at least two nodes so each radius is one of its edges.
    const auto cut = static_cast<std::uint32_t>(2 + rng.below(m - 3));
    for (std::uint32_t t = 0; t < m; ++t) labels[base + t] = 2 * h + (t < cut ? 0 : 1);
    radii[2 * h] = weight(cut - 2);
    radii[2 * h + 1] = weight(m - 2);
    cuts.push_back(cut);
  }
  auto radii_json = nlohmann::json::array();
  for (const auto& r : radii) radii_json.push_back(format_rational(r));
  nlohmann::json record{{"convex", true},
                        {"generalized", true},
                        {"cuts", cuts},
                        {"path_length", m},
                        {"radii", radii_json}};
  return finish("radii-path", n, std::move(edges), std::move(labels), k,
                ConvexityParams{beta, gamma, radii}, std::move(record), rng);
}

constexpr std::size_t kDegreeCap = 30;

class RandomConvexBuilder {
 public:
  RandomConvexBuilder(const FamilyParams& p, Rng& rng) : p_(p), rng_(rng) {
    n_ = positive_count(p, "n", static_cast<std::int64_t>(20 + rng.below(181)), 2, 5000);
    k_ = positive_count(p, "k", static_cast<std::int64_t>(2 + rng.below(4)), 1, 1000);
    require(n_ >= 2 * k_, "random-convex needs n >= 2k");
    beta_ = p.get_rational("beta", rng.pick(std::vector<Rational>{
                                       Rational(1, 4), Rational(1, 2), Rational(3, 4)}));
    gamma_ = p.get_rational("gamma", rng.pick(std::vector<Rational>{Rational(1, 2), Rational(1)}));
    require(beta_ > 0 && beta_ <= 1, "beta must lie in (0, 1]");
    eps_ = p.get_rational("eps", Rational(1));
    require(eps_ > 0, "eps must be positive");
    two_scale_ = p.get_bool("two_scale", false);
    tight_ = p.get_bool("tight", false);
    chords_ = positive_count(p, "chords", n_ / 10, 0);
    long_edges_ = positive_count(p, "long", n_ / 5, 0);
    extra_bridges_ = positive_count(p, "extra_bridges", 0, 0);
  }

  Instance build() {
    for (int attempt = 0; attempt < 100; ++attempt) {
      Instance inst = draw(attempt);
      if (check_instance(inst).ok) return inst;
    }
    throw Error(ErrorKind::RejectionExhausted,
                "no random-convex draw passed the checker in 100 attempts");
  }

 private:
  bool add_edge(Node u, Node v, const Rational& w) {
    if (u == v) return false;
    if (degree_[u] >= kDegreeCap || degree_[v] >= kDegreeCap) return false;
    if (!pairs_.insert({std::min(u, v), std::max(u, v)}).second) return false;
    ++degree_[u];
    ++degree_[v];
    edges_.push_back({u, v, w});
    return true;
  }

  Rational inner_weight(const Rational& radius) {
    static const std::vector<Rational> factors{Rational(1, 5), Rational(1, 2), Rational(3, 4),
                                               Rational(1)};
    return rng_.pick(factors) * radius;
  }

  Rational bridge_weight(const Rational& radius) {
    // At beta = 1 a bridge must be longer than the radius itself.
    const std::vector<Rational> factors =
        beta_ < 1 ? std::vector<Rational>{(1 + beta_) / 2, (1 + 3 * beta_) / 4, Rational(1)}
                  : std::vector<Rational>{Rational(9, 8), Rational(5, 4), Rational(3, 2)};
    return (tight_ ? factors.front() : rng_.pick(factors)) * radius;
  }

  Node random_member(std::uint32_t c) {
    // Prefer nodes with spare degree; fall back to any member.
    const auto& ms = members_[c];
    for (int tries = 0; tries < 16; ++tries) {
      const Node v = rng_.pick(ms);
      if (degree_[v] < kDegreeCap) return v;
    }
    return rng_.pick(ms);
  }

  Instance draw(int attempt) {
    edges_.clear();
    pairs_.clear();
    degree_.assign(n_, 0);
    members_.assign(k_, {});

    std::vector<std::uint32_t> sizes(k_, 2);
    for (std::uint32_t t = 2 * k_; t < n_; ++t) ++sizes[rng_.below(k_)];
    std::vector<Rational> scale(k_, eps_);
    if (two_scale_) {
      for (std::uint32_t c = 0; c < k_; ++c) scale[c] = eps_ * (1 + rng_.below(2));
      if (k_ >= 2) {
        scale[0] = eps_;
        scale[1] = 2 * eps_;
        rng_.shuffle(scale);
      }
    }
    const Rational max_scale = *std::max_element(scale.begin(), scale.end());

    std::vector<ClusterId> labels;
    Node next = 0;
    for (std::uint32_t c = 0; c < k_; ++c) {
      for (std::uint32_t t = 0; t < sizes[c]; ++t) {
        members_[c].push_back(next);
        labels.push_back(c);
        if (t > 0) {
          const std::uint32_t back = 1 + static_cast<std::uint32_t>(rng_.below(std::min(3U, t)));
          add_edge(next - back, next, inner_weight(scale[c]));
        }
        ++next;
      }
    }
    for (std::uint32_t t = 0; t < chords_; ++t) {
      const std::uint32_t c = static_cast<std::uint32_t>(rng_.below(k_));
      add_edge(rng_.pick(members_[c]), rng_.pick(members_[c]), inner_weight(scale[c]));
    }
    auto bridge = [&](std::uint32_t a, std::uint32_t b) {
      const Rational w = bridge_weight(std::max(scale[a], scale[b]));
      for (int tries = 0; tries < 32; ++tries) {
        if (add_edge(random_member(a), random_member(b), w)) return;
      }
    };
    for (std::uint32_t c = 1; c < k_; ++c) bridge(static_cast<std::uint32_t>(rng_.below(c)), c);
    for (std::uint32_t t = 0; t < extra_bridges_ && k_ >= 2; ++t) {
      const auto a = static_cast<std::uint32_t>(rng_.below(k_));
      auto b = static_cast<std::uint32_t>(rng_.below(k_ - 1));
      if (b >= a) ++b;
      bridge(a, b);
    }
    for (std::uint32_t t = 0; t < long_edges_; ++t) {
      const Rational w =
          tight_ ? max_scale * Rational(1025, 1024)
                 : max_scale * (1 + Rational(static_cast<long long>(1 + rng_.below(8)), 8));
      add_edge(static_cast<Node>(rng_.below(n_)), static_cast<Node>(rng_.below(n_)), w);
    }

    // Scatter ids so that clusters are not contiguous ranges.
    std::vector<Node> perm(n_);
    std::iota(perm.begin(), perm.end(), 0U);
    rng_.shuffle(perm);
    std::vector<WeightedEdge> edges;
    for (const auto& e : edges_) edges.push_back({perm[e.u], perm[e.v], e.w});
    std::vector<ClusterId> permuted(n_);
    for (Node v = 0; v < n_; ++v) permuted[perm[v]] = labels[v];

    const SemimetricGraph g(n_, edges);
    const Clustering truth(permuted, k_);
    std::vector<Rational> min_radii;
    auto min_json = nlohmann::json::array();
    for (const auto& ms : truth.clusters()) {
      min_radii.push_back(min_radius(g, ms));
      min_json.push_back(format_rational(min_radii.back()));
    }
    ConvexityParams params{beta_, gamma_, two_scale_ ? min_radii : std::vector<Rational>{eps_}};
    auto scale_json = nlohmann::json::array();
    for (const auto& s : scale) scale_json.push_back(format_rational(s));
    nlohmann::json record{{"convex", true},
                          {"generalized", two_scale_},
                          {"attempt", attempt},
                          {"two_scale", two_scale_},
                          {"tight", tight_},
                          {"scales", scale_json},
                          {"min_radii", min_json}};
    return finish("random-convex", n_, std::move(edges), std::move(permuted), k_,
                  std::move(params), std::move(record), rng_);
  }

  const FamilyParams& p_;
  Rng& rng_;
  std::uint32_t n_ = 0;
  std::uint32_t k_ = 0;
  Rational beta_;
  Rational gamma_;
  Rational eps_;
  bool two_scale_ = false;
  bool tight_ = false;
  std::uint32_t chords_ = 0;
  std::uint32_t long_edges_ = 0;
  std::uint32_t extra_bridges_ = 0;

  std::vector<WeightedEdge> edges_;
  std::set<std::pair<Node, Node>> pairs_;
  std::vector<std::size_t> degree_;
  std::vector<std::vector<Node>> members_;
};

}  // namespace

Instance generate(std::string_view family, const FamilyParams& params, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  if (family == "whirl") return make_whirl(params, rng);
  if (family == "oort") return make_oort(params, rng);
  if (family == "violate-connectivity") return make_violate_connectivity(params, rng);
  if (family == "violate-margin") return make_violate_margin(params, rng);
  if (family == "violate-geodesic") return make_violate_geodesic(params, rng);
  if (family == "caterpillar") return make_caterpillar(params, rng);
  if (family == "complete-random") return make_complete_random(params, rng);
  if (family == "radii-path") return make_radii_path(params, rng);
  if (family == "random-convex") return RandomConvexBuilder(params, rng).build();
  throw Error(ErrorKind::InvalidInput, "unknown family '" + std::string(family) + "'");
}

ConvexityVerdict check_instance(const Instance& inst, const CheckOptions& options) {
  return check_convex(inst.graph, inst.truth, inst.params, inst.generalized(), options);
}

std::uint64_t probe_hidden_point(const Instance& caterpillar, Oracle& oracle) {
  if (caterpillar.family != "caterpillar") {
    throw Error(ErrorKind::InvalidInput, "probe_hidden_point needs a caterpillar instance");
  }
  const auto up = caterpillar.construction_record.at("up_count").get<std::uint32_t>();
  const Node reference = up;
  const std::uint64_t before = oracle.scq_count();
  for (Node v = 0; v + 1 < up; ++v) {
    if (!oracle.scq(reference, v)) break;
  }
  return oracle.scq_count() - before;
}

Rational expected_probe_cost(std::size_t up_count) {
  if (up_count == 0) throw Error(ErrorKind::InvalidInput, "no UP points");
  // Hidden at position p costs p + 1 probes, except the last which costs
  // up_count - 1.
  Rational total(0);
  for (std::size_t pos = 0; pos < up_count; ++pos) {
    total += pos + 1 < up_count ? Rational(static_cast<long long>(pos + 1))
                                : Rational(static_cast<long long>(up_count - 1));
  }
  return total / static_cast<long long>(up_count);
}

}  // namespace geoclust
