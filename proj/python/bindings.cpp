#include <optional>
#include <string>
#include <tuple>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geoclust/error.hpp"
#include "geoclust/instances.hpp"
#include "geoclust/io.hpp"
#include "geoclust/metrics.hpp"
#include "geoclust/paramsearch.hpp"
#include "geoclust/radii.hpp"
#include "geoclust/recovery.hpp"

namespace py = pybind11;
using namespace geoclust;

namespace {

std::vector<std::string> strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(format_rational(v));
  return out;
}

FamilyParams to_params(const py::dict& d) {
  FamilyParams p;
  for (const auto& [key, value] : d) p.set(py::str(key), py::str(value));
  return p;
}

py::dict recovery_dict(const RecoveryReport& r, const Instance& inst) {
  py::dict d;
  d["labels"] = r.predicted.labels;
  d["exact"] = r.predicted == inst.truth;
  d["scq_used"] = r.scq_used;
  d["seed_used"] = r.seed_used;
  return d;
}

}  // namespace

PYBIND11_MODULE(geoclust, m) {
  m.doc() = "Exact recovery of convex clusterings with same-cluster and seed queries";

  py::register_exception<Error>(m, "GeoclustError", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("family", [](const Instance& i) { return i.family; })
      .def_property_readonly("n", [](const Instance& i) { return i.graph.size(); })
      .def_property_readonly("k", [](const Instance& i) { return i.truth.k; })
      .def_property_readonly("labels", [](const Instance& i) { return i.truth.labels; })
      .def_property_readonly("seeds", [](const Instance& i) { return i.seeds; })
      .def_property_readonly("beta", [](const Instance& i) { return format_rational(i.params.beta); })
      .def_property_readonly("gamma",
                             [](const Instance& i) { return format_rational(i.params.gamma); })
      .def_property_readonly("radii", [](const Instance& i) { return strings(i.params.radii); })
      .def_property_readonly("generalized", &Instance::generalized)
      .def_property_readonly("edges",
                             [](const Instance& i) {
                               std::vector<std::tuple<Node, Node, std::string>> out;
                               for (const auto& e : i.graph.edges()) {
                                 out.emplace_back(e.u, e.v, format_rational(e.w));
                               }
                               return out;
                             })
      .def("to_json", [](const Instance& i) { return dump(instance_to_json(i)); })
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + i.family + " n=" + std::to_string(i.graph.size()) +
               " k=" + std::to_string(i.truth.k) + ">";
      });

  m.def("families", &family_names);

  m.def(
      "generate",
      [](const std::string& family, const py::dict& params, std::uint64_t rng_seed) {
        return generate(family, to_params(params), rng_seed);
      },
      py::arg("family"), py::arg("params") = py::dict(), py::arg("rng_seed") = 0);

  m.def(
      "from_json", [](const std::string& text) { return instance_from_json(nlohmann::json::parse(text)); },
      py::arg("text"));
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));

  m.def(
      "check",
      [](const Instance& inst, std::optional<bool> generalized) {
        const auto verdict = check_convex(inst.graph, inst.truth, inst.params,
                                          generalized.value_or(inst.generalized()));
        py::dict d;
        d["ok"] = verdict.ok;
        py::list violations;
        for (const auto& v : verdict.violations) {
          py::dict item;
          item["cluster"] = v.cluster;
          item["property"] = std::string(to_string(v.property));
          item["epsilon"] = format_rational(v.epsilon);
          item["witness"] = v.witness;
          violations.append(item);
        }
        d["violations"] = violations;
        return d;
      },
      py::arg("instance"), py::arg("generalized") = py::none());

  m.def(
      "recover",
      [](const Instance& inst, const std::string& mode, const std::string& seed_policy) {
        OracleSession oracle(inst.truth, SeedPolicy::parse(seed_policy));
        if (mode == "identical") {
          if (!inst.params.identical()) {
            throw Error(ErrorKind::InvalidInput, "instance declares per-cluster radii");
          }
          return recovery_dict(recover_clustering(inst.graph, inst.params.radii.front(),
                                                  inst.params.beta, inst.params.gamma,
                                                  inst.seeds, oracle),
                               inst);
        }
        std::vector<Rational> radii;
        if (mode == "multi") {
          radii = inst.params.identical()
                      ? std::vector<Rational>(inst.truth.k, inst.params.radii.front())
                      : inst.params.radii;
        } else if (mode == "learn-radii") {
          radii = get_epsilons(inst.graph, inst.truth.k, oracle).radii;
        } else {
          throw Error(ErrorKind::InvalidInput, "unknown mode '" + mode + "'");
        }
        return recovery_dict(recover_clustering2(inst.graph, radii, inst.params.beta,
                                                 inst.params.gamma, inst.seeds, oracle),
                             inst);
      },
      py::arg("instance"), py::arg("mode") = "identical", py::arg("seed_policy") = "first-by-id");

  m.def(
      "learn_radii",
      [](const Instance& inst, const std::string& seed_policy) {
        OracleSession oracle(inst.truth, SeedPolicy::parse(seed_policy));
        const auto r = get_epsilons(inst.graph, inst.truth.k, oracle);
        py::dict d;
        d["radii"] = strings(r.radii);
        d["seed_used"] = r.seed_used;
        d["mst_edge_count"] = r.mst_edge_count;
        return d;
      },
      py::arg("instance"), py::arg("seed_policy") = "first-by-id");

  m.def(
      "min_radius",
      [](const Instance& inst, ClusterId i) {
        return format_rational(min_radius(inst.graph, inst.truth.members(i)));
      },
      py::arg("instance"), py::arg("cluster"));

  m.def(
      "pstar",
      [](const Instance& inst, const std::string& eta, std::size_t ball_cap) {
        return pstar(inst.graph, parse_rational(eta), ball_cap);
      },
      py::arg("instance"), py::arg("eta"), py::arg("ball_cap") = kDefaultBallCap);

  m.def(
      "query_budget",
      [](const Instance& inst, std::size_t ball_cap) {
        PackingCalculator packing(inst.graph, ball_cap);
        return query_budget(packing, inst.graph.size(), inst.truth.k, inst.params.beta,
                            inst.params.gamma);
      },
      py::arg("instance"), py::arg("ball_cap") = kDefaultBallCap);

  m.def(
      "matches_truth",
      [](const Instance& inst, const std::vector<ClusterId>& labels, std::uint32_t k,
         bool paranoid) {
        OracleSession oracle(inst.truth);
        return clustering_matches_truth(Clustering(labels, k), inst.seeds, oracle, paranoid);
      },
      py::arg("instance"), py::arg("labels"), py::arg("k"), py::arg("paranoid") = false);
}
