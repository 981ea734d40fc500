#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "geoclust/error.hpp"
#include "geoclust/instances.hpp"
#include "geoclust/io.hpp"
#include "geoclust/metrics.hpp"
#include "geoclust/paramsearch.hpp"
#include "geoclust/radii.hpp"
#include "geoclust/recovery.hpp"

namespace geoclust::cli {
namespace {

using nlohmann::json;

json rationals_json(const std::vector<Rational>& values) {
  auto out = json::array();
  for (const auto& v : values) out.push_back(format_rational(v));
  return out;
}

json phases_json(const PhaseCounts& p) {
  return {{"cut_edge_scq", p.cut_edge_scq},       {"separator_scq", p.separator_scq},
          {"new_seed_scq", p.new_seed_scq},       {"verify_scq", p.verify_scq},
          {"seed_discovery", p.seed_discovery},   {"mbs_calls", p.mbs_calls},
          {"iterations", p.iterations}};
}

json radii_json(const RadiiReport& r) {
  return {{"radii", rationals_json(r.radii)},
          {"seed_used", r.seed_used},
          {"mst_edge_count", r.mst_edge_count},
          {"distinct_weights", r.distinct_weights}};
}

// Writes to `path`, or to `out` when no path was given.
void emit(const json& report, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << dump(report);
  } else {
    write_text(path, dump(report));
  }
}

std::optional<std::uint64_t> budget_for(const Instance& inst, std::size_t ball_cap) {
  try {
    PackingCalculator packing(inst.graph, ball_cap);
    return query_budget(packing, inst.graph.size(), inst.truth.k, inst.params.beta,
                        inst.params.gamma);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BallTooLarge) throw;
    return std::nullopt;
  }
}

std::vector<Rational> per_cluster_radii(const Instance& inst) {
  if (!inst.params.identical()) return inst.params.radii;
  return std::vector<Rational>(inst.truth.k, inst.params.radii.front());
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::string params;
  std::uint64_t rng_seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const Instance inst = generate(a.family, FamilyParams::parse(a.params), a.rng_seed);
  save_instance(inst, a.out);
  out << dump({{"family", inst.family},
               {"n", inst.graph.size()},
               {"k", inst.truth.k},
               {"edges", inst.graph.edge_count()},
               {"out", a.out}});
  return kOk;
}

// --- check -----------------------------------------------------------------

struct CheckArgs {
  std::string instance;
  bool generalized = false;
  std::uint64_t expansion_budget = CheckOptions{}.expansion_budget;
  std::string report;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  const bool generalized = a.generalized || inst.generalized();
  CheckOptions options;
  options.expansion_budget = a.expansion_budget;
  const ConvexityVerdict verdict =
      check_convex(inst.graph, inst.truth, inst.params, generalized, options);
  json report = verdict_to_json(verdict);
  report["command"] = "check";
  report["family"] = inst.family;
  report["generalized"] = generalized;
  emit(report, a.report, out);
  return verdict.ok ? kOk : kViolation;
}

// --- recover ---------------------------------------------------------------

struct RecoverArgs {
  std::string instance;
  std::string mode = "identical";
  std::string base;
  std::string seed_policy = "first-by-id";
  bool paranoid_equality = false;
  bool check_contracts = false;
  bool naive = false;
  bool timing = false;
  std::size_t ball_cap = kMaxBallCap;
  std::string report;
};

BaseMode parse_base(const std::string& text, const Instance& inst) {
  if (text.empty()) return inst.params.identical() ? BaseMode::Identical : BaseMode::Multi;
  if (text == "identical") return BaseMode::Identical;
  if (text == "multi") return BaseMode::Multi;
  if (text == "learn-radii") return BaseMode::LearnedRadii;
  throw Error(ErrorKind::InvalidInput, "unknown base mode '" + text + "'");
}

int cmd_recover(const RecoverArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  const SeedPolicy policy = SeedPolicy::parse(a.seed_policy);
  OracleSession oracle(inst.truth, policy);
  RecoveryOptions options;
  options.naive_find_new_seed = a.naive;
  options.check_contracts = a.check_contracts;

  json report{{"command", "recover"},
              {"mode", a.mode},
              {"family", inst.family},
              {"n", inst.graph.size()},
              {"k", inst.truth.k},
              {"seed_policy", policy.name()},
              {"params",
               {{"beta", format_rational(inst.params.beta)},
                {"gamma", format_rational(inst.params.gamma)},
                {"radii", rationals_json(inst.params.radii)}}}};
  const auto budget = budget_for(inst, a.ball_cap);
  report["budget"] = budget ? json(*budget) : json(nullptr);

  std::optional<Clustering> predicted;
  double elapsed = 0.0;
  try {
    if (a.mode == "identical" || a.mode == "multi" || a.mode == "learn-radii") {
      RecoveryReport r;
      if (a.mode == "identical") {
        if (!inst.params.identical()) {
          throw Error(ErrorKind::InvalidInput, "instance declares per-cluster radii; use multi");
        }
        r = recover_clustering(inst.graph, inst.params.radii.front(), inst.params.beta,
                               inst.params.gamma, inst.seeds, oracle, options);
      } else if (a.mode == "multi") {
        r = recover_clustering2(inst.graph, per_cluster_radii(inst), inst.params.beta,
                                inst.params.gamma, inst.seeds, oracle, options);
      } else {
        const RadiiReport learned = get_epsilons(inst.graph, inst.truth.k, oracle);
        report["learned_radii"] = radii_json(learned);
        r = recover_clustering2(inst.graph, learned.radii, inst.params.beta, inst.params.gamma,
                                inst.seeds, oracle, options);
      }
      report["phases"] = phases_json(r.phases);
      elapsed = r.elapsed_seconds;
      predicted = std::move(r.predicted);
    } else if (a.mode == "guess-beta" || a.mode == "guess-gamma") {
      const bool beta = a.mode == "guess-beta";
      const BaseMode base = parse_base(a.base, inst);
      GuessOptions guess_options;
      guess_options.paranoid_equality = a.paranoid_equality;
      guess_options.recovery = options;
      const auto start = std::chrono::steady_clock::now();
      GuessReport g = recover_unknown_param(
          inst.graph, beta ? UnknownParam::Beta : UnknownParam::Gamma,
          beta ? inst.params.gamma : inst.params.beta, base,
          base == BaseMode::Identical ? inst.params.radii : per_cluster_radii(inst), inst.seeds,
          oracle, guess_options);
      elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      auto rounds = json::array();
      for (const auto& r : g.rounds) {
        rounds.push_back({{"j", r.j},
                          {"guess", format_rational(r.guess)},
                          {"matched", r.matched},
                          {"failure", r.failure},
                          {"scq", r.scq},
                          {"seed", r.seed}});
      }
      report["guess"] = {{"unknown", beta ? "beta" : "gamma"},
                         {"paranoid_equality", a.paranoid_equality},
                         {"value", format_rational(g.guess)},
                         {"rounds", rounds},
                         {"equality_scq", g.equality_scq},
                         {"equality_seed", g.equality_seed}};
      if (g.radii) report["learned_radii"] = radii_json(*g.radii);
      report["phases"] = phases_json(g.phases);
      predicted = std::move(g.predicted);
    } else {
      throw Error(ErrorKind::InvalidInput, "unknown mode '" + a.mode + "'");
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PartitionError && e.kind() != ErrorKind::ContractViolation &&
        e.kind() != ErrorKind::GuessUnderflow && e.kind() != ErrorKind::NoPath) {
      throw;
    }
    report["error"] = error_to_json(e);
  }

  report["scq_used"] = oracle.scq_count();
  report["seed_used"] = oracle.seed_count();
  if (report.contains("phases")) {
    // Contract-check SCQ are diagnostics, not algorithm cost.
    report["scq_used"] = oracle.scq_count() - report["phases"]["verify_scq"].get<std::uint64_t>();
  }
  report["within_budget"] =
      budget ? json(report["scq_used"].get<std::uint64_t>() <= *budget) : json(nullptr);
  const bool exact = predicted && *predicted == inst.truth;
  report["exact"] = exact;
  if (predicted) {
    report["predicted"] = predicted->labels;
    std::vector<Node> misplaced;
    for (Node v = 0; v < inst.graph.size(); ++v) {
      if (predicted->labels[v] != inst.truth.labels[v]) misplaced.push_back(v);
    }
    report["misplaced"] = misplaced;
  } else {
    report["predicted"] = nullptr;
  }
  if (a.timing) report["elapsed_seconds"] = elapsed;
  emit(report, a.report, out);
  return exact ? kOk : kMismatch;
}

// --- learn-radii -----------------------------------------------------------

struct LearnArgs {
  std::string instance;
  std::string seed_policy = "first-by-id";
  std::string report;
};

int cmd_learn_radii(const LearnArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  const SeedPolicy policy = SeedPolicy::parse(a.seed_policy);
  OracleSession oracle(inst.truth, policy);
  const RadiiReport learned = get_epsilons(inst.graph, inst.truth.k, oracle);
  std::vector<Rational> brute;
  for (const auto& members : inst.truth.clusters()) brute.push_back(min_radius(inst.graph, members));
  const std::uint64_t levels = learned.distinct_weights;
  json report = radii_json(learned);
  report["command"] = "learn-radii";
  report["family"] = inst.family;
  report["n"] = inst.graph.size();
  report["k"] = inst.truth.k;
  report["seed_policy"] = policy.name();
  report["min_radii"] = rationals_json(brute);
  report["matches_min_radii"] = learned.radii == brute;
  report["seed_bound"] = 2 * std::uint64_t{inst.truth.k} * (ceil_log2(levels) + 1);
  emit(report, a.report, out);
  return kOk;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string suite;
  std::string out;
  std::size_t ball_cap = kMaxBallCap;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

FamilyParams params_of(const json& j) {
  if (j.is_null()) return {};
  if (j.is_string()) return FamilyParams::parse(j.get<std::string>());
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "suite params must be a string or object");
  FamilyParams p;
  for (const auto& [key, value] : j.items()) {
    p.set(key, value.is_string() ? value.get<std::string>() : value.dump());
  }
  return p;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  std::ifstream in(a.suite);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + a.suite);
  json suite;
  try {
    in >> suite;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, a.suite + ": " + e.what());
  }
  if (!suite.contains("entries") || !suite["entries"].is_array()) {
    throw Error(ErrorKind::InvalidInput, "suite needs an 'entries' array");
  }

  std::ostringstream csv;
  csv << "family,n,k,beta,gamma,dens,pstar_bg,pstar_bg2g,scq,seed,budget,ok\n";
  std::size_t rows = 0;
  std::size_t failures = 0;
  for (const auto& entry : suite["entries"]) {
    const std::string family = entry.at("family").get<std::string>();
    const FamilyParams params = params_of(entry.value("params", json()));
    const std::string mode = entry.value("mode", std::string());
    const SeedPolicy policy = SeedPolicy::parse(entry.value("seed_policy", std::string("first-by-id")));
    std::vector<std::uint64_t> seeds;
    if (entry.contains("rng_seeds")) {
      seeds = entry["rng_seeds"].get<std::vector<std::uint64_t>>();
    } else {
      const auto first = entry.value("first_seed", std::uint64_t{0});
      const auto count = entry.value("count", std::uint64_t{1});
      for (std::uint64_t s = 0; s < count; ++s) seeds.push_back(first + s);
    }
    for (const auto rng_seed : seeds) {
      const Instance inst = generate(family, params, rng_seed);
      OracleSession oracle(inst.truth, policy);
      const std::string m = mode.empty() ? (inst.generalized() ? "multi" : "identical") : mode;
      bool exact = false;
      try {
        RecoveryReport r;
        if (m == "identical") {
          r = recover_clustering(inst.graph, inst.params.radii.front(), inst.params.beta,
                                 inst.params.gamma, inst.seeds, oracle);
        } else if (m == "multi") {
          r = recover_clustering2(inst.graph, per_cluster_radii(inst), inst.params.beta,
                                  inst.params.gamma, inst.seeds, oracle);
        } else if (m == "learn-radii") {
          const auto learned = get_epsilons(inst.graph, inst.truth.k, oracle);
          r = recover_clustering2(inst.graph, learned.radii, inst.params.beta, inst.params.gamma,
                                  inst.seeds, oracle);
        } else {
          throw Error(ErrorKind::InvalidInput, "unknown bench mode '" + m + "'");
        }
        exact = r.predicted == inst.truth;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::PartitionError && e.kind() != ErrorKind::NoPath) throw;
      }

      std::string dens = "";
      std::string p1 = "";
      std::string p2 = "";
      std::string budget = "";
      bool ok = exact;
      try {
        PackingCalculator packing(inst.graph, a.ball_cap);
        const Rational bg = inst.params.beta * inst.params.gamma;
        dens = fixed6(packing.profile().dens);
        p1 = std::to_string(packing.pstar(bg));
        p2 = std::to_string(packing.pstar(bg / (2 + inst.params.gamma)));
        const auto b = query_budget(packing, inst.graph.size(), inst.truth.k, inst.params.beta,
                                    inst.params.gamma);
        budget = std::to_string(b);
        ok = ok && oracle.scq_count() <= b;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BallTooLarge) throw;
      }
      if (!ok) ++failures;
      ++rows;
      csv << family << ',' << inst.graph.size() << ',' << inst.truth.k << ','
          << format_rational(inst.params.beta) << ',' << format_rational(inst.params.gamma) << ','
          << dens << ',' << p1 << ',' << p2 << ',' << oracle.scq_count() << ','
          << oracle.seed_count() << ',' << budget << ',' << (ok ? 1 : 0) << '\n';
    }
  }
  std::filesystem::create_directories(a.out);
  const std::string path = (std::filesystem::path(a.out) / "bench.csv").string();
  write_text(path, csv.str());
  out << dump({{"command", "bench"}, {"rows", rows}, {"failures", failures}, {"csv", path}});
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact recovery of convex clusterings with same-cluster and seed queries"};
  app.name("geoclust");
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--family", gen.family, "Instance family")->required();
  gen_cmd->add_option("--params", gen.params, "Family options as key=value,key=value");
  gen_cmd->add_option("--rng-seed", gen.rng_seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output instance file")->required();

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check convexity of the ground truth");
  check_cmd->add_option("--instance", check.instance)->required();
  check_cmd->add_flag("--generalized", check.generalized, "Use per-cluster radii");
  check_cmd->add_option("--expansion-budget", check.expansion_budget);
  check_cmd->add_option("--report", check.report, "Write the verdict here instead of stdout");

  RecoverArgs recover;
  auto* recover_cmd = app.add_subcommand("recover", "Recover the clustering with oracle queries");
  recover_cmd->add_option("--instance", recover.instance)->required();
  recover_cmd->add_option("--mode", recover.mode)
      ->check(CLI::IsMember({"identical", "multi", "learn-radii", "guess-beta", "guess-gamma"}));
  recover_cmd->add_option("--base", recover.base, "Base recoverer for guess modes")
      ->check(CLI::IsMember({"identical", "multi", "learn-radii"}));
  recover_cmd->add_option("--seed-policy", recover.seed_policy);
  recover_cmd->add_flag("--paranoid-equality", recover.paranoid_equality);
  recover_cmd->add_flag("--check-contracts", recover.check_contracts);
  recover_cmd->add_flag("--naive-find-new-seed", recover.naive);
  recover_cmd->add_flag("--timing", recover.timing, "Include wall-clock time in the report");
  recover_cmd->add_option("--ball-cap", recover.ball_cap)->check(CLI::Range(1, 64));
  recover_cmd->add_option("--report", recover.report);

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn-radii", "Learn the cluster radii with SEED queries");
  learn_cmd->add_option("--instance", learn.instance)->required();
  learn_cmd->add_option("--seed-policy", learn.seed_policy);
  learn_cmd->add_option("--report", learn.report);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a suite and write bench.csv");
  bench_cmd->add_option("--suite", bench.suite)->required();
  bench_cmd->add_option("--out", bench.out)->required();
  bench_cmd->add_option("--ball-cap", bench.ball_cap)->check(CLI::Range(1, 64));

  std::vector<std::string> argv_store{"geoclust"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return kInputError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*check_cmd) return cmd_check(check, out);
    if (*recover_cmd) return cmd_recover(recover, out);
    if (*learn_cmd) return cmd_learn_radii(learn, out);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const Error& e) {
    err << error_to_json(e).dump() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace geoclust::cli
