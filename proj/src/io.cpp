#include "geoclust/io.hpp"

#include <fstream>

namespace geoclust {

nlohmann::json instance_to_json(const Instance& inst) {
  auto edges = nlohmann::json::array();
  for (const auto& e : inst.graph.edges()) edges.push_back({e.u, e.v, format_rational(e.w)});
  nlohmann::json radii;
  if (inst.params.identical()) {
    radii = format_rational(inst.params.radii.front());
  } else {
    radii = nlohmann::json::array();
    for (const auto& r : inst.params.radii) radii.push_back(format_rational(r));
  }
  return {{"format_version", kFormatVersion},
          {"family", inst.family},
          {"n", inst.graph.size()},
          {"k", inst.truth.k},
          {"edges", edges},
          {"labels", inst.truth.labels},
          {"seeds", inst.seeds},
          {"params",
           {{"beta", format_rational(inst.params.beta)},
            {"gamma", format_rational(inst.params.gamma)},
            {"radii", radii}}},
          {"construction_record", inst.construction_record}};
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::InvalidInput, "instance file: " + what);
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t unsigned_of(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    bad(what + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

Rational rational_of(const nlohmann::json& j, const std::string& what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  bad(what + " must be a rational string such as \"3/4\"");
}

}  // namespace

Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("top level must be an object");
  const auto version = unsigned_of(field(j, "format_version"), "format_version");
  if (version != kFormatVersion) bad("unsupported format_version " + std::to_string(version));

  const std::size_t n = unsigned_of(field(j, "n"), "n");
  const auto k = static_cast<std::uint32_t>(unsigned_of(field(j, "k"), "k"));

  const auto& edges_j = field(j, "edges");
  if (!edges_j.is_array()) bad("edges must be an array");
  std::vector<WeightedEdge> edges;
  for (const auto& e : edges_j) {
    if (!e.is_array() || e.size() != 3) bad("each edge must be [u, v, \"weight\"]");
    edges.push_back({static_cast<Node>(unsigned_of(e[0], "edge endpoint")),
                     static_cast<Node>(unsigned_of(e[1], "edge endpoint")),
                     rational_of(e[2], "edge weight")});
  }

  const auto& labels_j = field(j, "labels");
  if (!labels_j.is_array() || labels_j.size() != n) bad("labels must hold n entries");
  std::vector<ClusterId> labels;
  for (const auto& l : labels_j) labels.push_back(static_cast<ClusterId>(unsigned_of(l, "label")));

  const auto& seeds_j = field(j, "seeds");
  if (!seeds_j.is_array() || seeds_j.size() != k) bad("seeds must hold k entries");
  std::vector<Node> seeds;
  for (const auto& s : seeds_j) {
    const auto v = unsigned_of(s, "seed");
    if (v >= n) bad("seed out of range");
    seeds.push_back(static_cast<Node>(v));
  }

  const auto& params_j = field(j, "params");
  if (!params_j.is_object()) bad("params must be an object");
  ConvexityParams params;
  params.beta = rational_of(field(params_j, "beta"), "beta");
  params.gamma = rational_of(field(params_j, "gamma"), "gamma");
  const auto& radii_j = field(params_j, "radii");
  if (radii_j.is_array()) {
    for (const auto& r : radii_j) params.radii.push_back(rational_of(r, "radius"));
  } else {
    params.radii.push_back(rational_of(radii_j, "radius"));
  }

  Instance inst;
  inst.graph = SemimetricGraph(n, std::move(edges));
  inst.truth = Clustering(std::move(labels), k);
  inst.truth.validate();
  params.validate(k);
  inst.params = std::move(params);
  for (ClusterId i = 0; i < k; ++i) {
    if (inst.truth.labels[seeds[i]] != i) bad("seed " + std::to_string(i) + " is not in its cluster");
  }
  inst.seeds = std::move(seeds);
  inst.family = j.value("family", std::string("custom"));
  inst.construction_record = j.value("construction_record", nlohmann::json::object());
  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  write_text(path, dump(instance_to_json(inst)));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  return instance_from_json(j);
}

nlohmann::json verdict_to_json(const ConvexityVerdict& verdict) {
  auto violations = nlohmann::json::array();
  for (const auto& v : verdict.violations) {
    violations.push_back({{"cluster", v.cluster},
                          {"property", std::string(to_string(v.property))},
                          {"epsilon", format_rational(v.epsilon)},
                          {"witness", v.witness}});
  }
  auto declared = nlohmann::json::array();
  for (const auto& r : verdict.declared_radii) declared.push_back(format_rational(r));
  auto minimal = nlohmann::json::array();
  // Clusters whose declared radius is not their minimal one.
  auto differing = nlohmann::json::array();
  for (std::size_t i = 0; i < verdict.min_radii.size(); ++i) {
    const auto& r = verdict.min_radii[i];
    minimal.push_back(r ? nlohmann::json(format_rational(*r)) : nlohmann::json(nullptr));
    const auto& declared =
        verdict.declared_radii.size() == 1 ? verdict.declared_radii.front() : verdict.declared_radii.at(i);
    if (!r || *r != declared) differing.push_back(i);
  }
  return {{"ok", verdict.ok},
          {"violations", violations},
          {"declared_radii", declared},
          {"min_radii", minimal},
          {"radius_differs", differing},
          {"expansions", verdict.expansions}};
}

nlohmann::json error_to_json(const Error& e) {
  return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}, {"nodes", e.nodes()}};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::InvalidInput, "failed writing " + path);
}

}  // namespace geoclust
