#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "geoclust/error.hpp"
#include "geoclust/instances.hpp"
#include "geoclust/io.hpp"

using namespace geoclust;

namespace {

ErrorKind load_kind(const nlohmann::json& j) {
  try {
    instance_from_json(j);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ContractViolation;
}

}  // namespace

TEST(InstanceJson, RoundTripsEveryFamily) {
  for (const auto& family : family_names()) {
    const Instance inst = geoclust::generate(family, {}, 2);
    const auto j = instance_to_json(inst);
    const Instance back = instance_from_json(nlohmann::json::parse(dump(j)));
    EXPECT_EQ(back.truth, inst.truth) << family;
    EXPECT_EQ(back.seeds, inst.seeds);
    EXPECT_EQ(back.params.radii, inst.params.radii);
    EXPECT_EQ(back.params.beta, inst.params.beta);
    EXPECT_EQ(back.graph.edge_count(), inst.graph.edge_count());
    EXPECT_EQ(back.generalized(), inst.generalized());
    EXPECT_EQ(dump(instance_to_json(back)), dump(j));
  }
}

TEST(InstanceJson, SaveAndLoadFile) {
  const auto path = std::filesystem::temp_directory_path() / "geoclust_io_test.json";
  const Instance inst = generate("oort", {}, 1);
  save_instance(inst, path.string());
  const Instance back = load_instance(path.string());
  EXPECT_EQ(back.truth, inst.truth);
  std::filesystem::remove(path);
  EXPECT_THROW(load_instance(path.string()), Error);
}

TEST(InstanceJson, RejectsMalformedInput) {
  const auto good = instance_to_json(generate("caterpillar", FamilyParams::parse("n=12"), 0));
  EXPECT_EQ(load_kind(nlohmann::json::array()), ErrorKind::InvalidInput);

  auto j = good;
  j.erase("seeds");
  EXPECT_EQ(load_kind(j), ErrorKind::InvalidInput);

  j = good;
  j["format_version"] = 99;
  EXPECT_EQ(load_kind(j), ErrorKind::InvalidInput);

  j = good;
  j["seeds"] = {j["seeds"][1], j["seeds"][0]};
  EXPECT_EQ(load_kind(j), ErrorKind::InvalidInput);

  j = good;
  j["edges"][0][2] = "0";
  EXPECT_EQ(load_kind(j), ErrorKind::InvalidInput);

  j = good;
  j["edges"][0][2] = 0.5;
  EXPECT_EQ(load_kind(j), ErrorKind::InvalidInput);

  j = good;
  j["labels"].erase(0);
  EXPECT_EQ(load_kind(j), ErrorKind::InvalidInput);

  j = good;
  j["params"]["beta"] = "3/2";
  EXPECT_EQ(load_kind(j), ErrorKind::InvalidInput);

  j = good;
  j["n"] = -1;
  EXPECT_EQ(load_kind(j), ErrorKind::InvalidInput);
}

TEST(InstanceJson, BadFileContents) {
  const auto path = std::filesystem::temp_directory_path() / "geoclust_io_bad.json";
  write_text(path.string(), "{ not json");
  try {
    load_instance(path.string());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
  std::filesystem::remove(path);
}

TEST(ErrorJson, CarriesKindMessageAndNodes) {
  const auto j = error_to_json(Error(ErrorKind::PartitionError, "overlap", {3, 4}));
  EXPECT_EQ(j.at("error"), "PartitionError");
  EXPECT_EQ(j.at("message"), "overlap");
  EXPECT_EQ(j.at("nodes"), nlohmann::json::array({3, 4}));
}

TEST(VerdictJson, ListsViolations) {
  const Instance inst = generate("violate-margin", {}, 0);
  const auto j = verdict_to_json(check_instance(inst));
  EXPECT_FALSE(j.at("ok").get<bool>());
  ASSERT_FALSE(j.at("violations").empty());
  EXPECT_EQ(j.at("violations")[0].at("property"), "metric-margin");
}

TEST(VerdictJson, FlagsRadiiAboveTheMinimum) {
  const Instance oort = generate("oort", {}, 0);
  EXPECT_TRUE(verdict_to_json(check_instance(oort)).at("radius_differs").empty());
  const Instance whirl = generate("whirl", {}, 0);
  const auto j = verdict_to_json(check_convex(whirl.graph, whirl.truth, Rational(2), Rational(1, 8),
                                              whirl.params.gamma));
  EXPECT_EQ(j.at("radius_differs"), nlohmann::json::array({0, 1}));
}
