// Command line front end: every subcommand prints exactly one JSON report
// to stdout and logs to stderr. Exit codes: 0 = success / property holds,
// 1 = the checked property fails, 2 = unusable input.
//
// Reports are deterministic functions of the inputs: parallelism (--jobs)
// and wall time never appear in the payload, only in the stderr log line.

#include "tpd/contraction.hpp"
#include "tpd/detail/rng.hpp"
#include "tpd/dynamics.hpp"
#include "tpd/fixtures.hpp"
#include "tpd/fuzz.hpp"
#include "tpd/metric_space.hpp"
#include "tpd/space_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailed = 1;
constexpr int kExitInputError = 2;

struct Outcome {
  int exit_code = kExitOk;
  json payload;
};

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tpd::SpaceFormatError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// A space file plus everything commands derive from it.
struct LoadedSpace {
  tpd::SpaceDocument doc;
  std::string digest;
};

LoadedSpace load(const std::string& path) {
  const std::string bytes = read_file_bytes(path);
  json parsed;
  try {
    parsed = json::parse(bytes);
  } catch (const json::exception& e) {
    throw tpd::SpaceFormatError(path + ": " + e.what());
  }
  return LoadedSpace{tpd::parse_space_document(parsed),
                     tpd::content_digest(bytes)};
}

tpd::FiniteMetricSpace to_space(const tpd::SpaceDocument& doc) {
  return tpd::FiniteMetricSpace(doc.labels, doc.dist);
}

tpd::SelfMap to_map(const tpd::SpaceDocument& doc) {
  if (!doc.map) {
    throw tpd::SpaceFormatError("space file has no \"map\" entry");
  }
  return tpd::SelfMap(*doc.map);
}

std::string params_digest(const json& params) {
  return tpd::content_digest(params.dump());
}

void emit_space(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tpd::SpaceFormatError("cannot write " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certifies total-pairwise-distance contraction on finite "
               "metric spaces and reports the periodic structure"};
  app.require_subcommand(1);

  std::string space_path;
  int arity = 2;
  std::string alpha_text;
  int start = 0;
  std::uint64_t seed = tpd::kDefaultFuzzSeed;
  int trials = 200;
  int max_points = 8;
  std::string emit_path;
  std::uint64_t budget = tpd::kDefaultTupleBudget;
  int jobs = 1;

  // Ladder construction knobs.
  int ladder_n = 4;
  std::string ladder_eps = "1/100";
  std::string ladder_a = "10";
  int ladder_depth = 6;

  // Two-cycle construction knobs.
  std::string grid_max = "10";
  std::string grid_step = "1";

  int subset_points = 6;

  auto* validate = app.add_subcommand(
      "validate", "check the metric axioms of a space file");
  validate->add_option("--space", space_path, "space file")->required();

  auto* alpha_cmd = app.add_subcommand(
      "alpha", "exact contraction coefficient for the given arity");
  alpha_cmd->add_option("--space", space_path, "space file (needs map)")->required();
  alpha_cmd->add_option("--arity", arity, "tuple size (default 2)");
  alpha_cmd->add_option("--budget", budget, "tuple budget before sampling");
  alpha_cmd->add_option("--jobs", jobs, "worker threads");

  auto* certify_cmd = app.add_subcommand(
      "certify", "check S(T tuple) <= alpha * S(tuple) for every tuple");
  certify_cmd->add_option("--space", space_path, "space file (needs map)")->required();
  certify_cmd->add_option("--arity", arity, "tuple size (default 2)");
  certify_cmd->add_option("--alpha", alpha_text, "claimed factor, e.g. 3/4")
      ->required();

  auto* orbit_cmd = app.add_subcommand(
      "orbit", "follow a point until the orbit closes");
  orbit_cmd->add_option("--space", space_path, "space file (needs map)")->required();
  orbit_cmd->add_option("--start", start, "starting point index")->required();
  orbit_cmd->add_option("--arity", arity, "window size for the sums");

  auto* periodic_cmd = app.add_subcommand(
      "periodic", "periodic points with their prime periods");
  periodic_cmd->add_option("--space", space_path, "space file (needs map)")->required();

  auto* theorem_cmd = app.add_subcommand(
      "theorem", "certified coefficient < 1 must bound the periodic structure");
  theorem_cmd->add_option("--space", space_path, "space file (needs map)")->required();
  theorem_cmd->add_option("--arity", arity, "tuple size (default 2)");
  theorem_cmd->add_option("--budget", budget, "tuple budget before sampling");
  theorem_cmd->add_option("--jobs", jobs, "worker threads");

  auto* ladder_cmd = app.add_subcommand(
      "ladder", "build the column-ladder space with a limit point");
  ladder_cmd->add_option("--arity", ladder_n, "tuple size the ladder is tuned for");
  ladder_cmd->add_option("--eps", ladder_eps, "within-column scale");
  ladder_cmd->add_option("--a", ladder_a, "between-column scale");
  ladder_cmd->add_option("--depth", ladder_depth, "columns materialized");
  ladder_cmd->add_option("--emit", emit_path, "write the space file here");

  auto* twocycle_cmd = app.add_subcommand(
      "twocycle", "build the swap-plus-grid space with a two-cycle");
  twocycle_cmd->add_option("--grid-max", grid_max, "largest grid coordinate");
  twocycle_cmd->add_option("--grid-step", grid_step, "grid spacing");
  twocycle_cmd->add_option("--emit", emit_path, "write the space file here");

  auto* subsetmap_cmd = app.add_subcommand(
      "subsetmap", "build a random space whose map only hits a subset");
  subsetmap_cmd->add_option("--seed", seed, "instance seed");
  subsetmap_cmd->add_option("--max-points", subset_points, "number of points");
  subsetmap_cmd->add_option("--emit", emit_path, "write the space file here");

  auto* fuzz_cmd = app.add_subcommand(
      "fuzz", "property checks over a seeded corpus of random spaces");
  fuzz_cmd->add_option("--seed", seed, "corpus master seed");
  fuzz_cmd->add_option("--trials", trials, "number of spaces");
  fuzz_cmd->add_option("--max-points", max_points, "largest space size");
  fuzz_cmd->add_option("--budget", budget, "tuple budget before sampling");
  fuzz_cmd->add_option("--jobs", jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const auto started = std::chrono::steady_clock::now();
  std::string command;
  Outcome outcome;
  std::string digest;

  try {
    if (app.got_subcommand(validate)) {
      command = "validate";
      LoadedSpace in = load(space_path);
      digest = in.digest;
      const tpd::ValidationReport report = tpd::validate_metric(in.doc.dist);
      outcome.payload = tpd::to_json(report);
      outcome.exit_code = report.valid ? kExitOk : kExitPropertyFailed;
    } else if (app.got_subcommand(alpha_cmd)) {
      command = "alpha";
      LoadedSpace in = load(space_path);
      digest = in.digest;
      const tpd::FiniteMetricSpace space = to_space(in.doc);
      const tpd::SelfMap map = to_map(in.doc);
      tpd::CoefficientOptions options;
      options.arity = arity;
      if (in.doc.domain) options.domain = *in.doc.domain;
      options.budget = budget;
      options.jobs = jobs;
      outcome.payload =
          tpd::to_json(tpd::contraction_coefficient(space, map, options));
    } else if (app.got_subcommand(certify_cmd)) {
      command = "certify";
      LoadedSpace in = load(space_path);
      digest = in.digest;
      const tpd::FiniteMetricSpace space = to_space(in.doc);
      const tpd::SelfMap map = to_map(in.doc);
      const tpd::Rational alpha = tpd::parse_rational(alpha_text);
      const tpd::CertifyResult result =
          tpd::certify(space, map, arity, alpha,
                       in.doc.domain ? *in.doc.domain : std::vector<int>{});
      outcome.payload = tpd::to_json(result, alpha);
      outcome.exit_code = result.certified ? kExitOk : kExitPropertyFailed;
    } else if (app.got_subcommand(orbit_cmd)) {
      command = "orbit";
      LoadedSpace in = load(space_path);
      digest = in.digest;
      const tpd::FiniteMetricSpace space = to_space(in.doc);
      const tpd::SelfMap map = to_map(in.doc);
      outcome.payload = tpd::to_json(
          tpd::iterate_orbit(space, map, start, arity, space.size() + 1));
    } else if (app.got_subcommand(periodic_cmd)) {
      command = "periodic";
      LoadedSpace in = load(space_path);
      digest = in.digest;
      to_space(in.doc);  // reject non-metric inputs
      const tpd::SelfMap map = to_map(in.doc);
      outcome.payload = json{{"periodic_points", tpd::to_json(tpd::periodic_points(map))}};
    } else if (app.got_subcommand(theorem_cmd)) {
      command = "theorem";
      LoadedSpace in = load(space_path);
      digest = in.digest;
      const tpd::FiniteMetricSpace space = to_space(in.doc);
      const tpd::SelfMap map = to_map(in.doc);
      const tpd::TheoremCheck check =
          tpd::verify_periodic_bound(space, map, arity, budget, jobs);
      outcome.payload = tpd::to_json(check);
      outcome.exit_code =
          check.conclusion_holds ? kExitOk : kExitPropertyFailed;
    } else if (app.got_subcommand(ladder_cmd)) {
      command = "ladder";
      tpd::LadderParams params;
      params.n = ladder_n;
      params.eps = tpd::parse_rational(ladder_eps);
      params.a = tpd::parse_rational(ladder_a);
      params.depth = ladder_depth;
      const json params_json{{"n", params.n},
                             {"eps", tpd::to_string(params.eps)},
                             {"a", tpd::to_string(params.a)},
                             {"depth", params.depth}};
      digest = params_digest(params_json);
      const tpd::LadderSpace ladder = tpd::build_ladder_space(params);
      const json doc = tpd::space_to_json(ladder.space, &ladder.map,
                                          &ladder.analysis_domain);
      if (!emit_path.empty()) emit_space(emit_path, doc);
      outcome.payload = json{{"params", params_json},
                             {"points", ladder.space.size()},
                             {"space", doc}};
    } else if (app.got_subcommand(twocycle_cmd)) {
      command = "twocycle";
      const tpd::Rational gmax = tpd::parse_rational(grid_max);
      const tpd::Rational gstep = tpd::parse_rational(grid_step);
      const json params_json{{"grid_max", tpd::to_string(gmax)},
                             {"grid_step", tpd::to_string(gstep)}};
      digest = params_digest(params_json);
      const tpd::TwoCycleSpace fixture = tpd::build_two_cycle_space(gmax, gstep);
      const json doc = tpd::space_to_json(fixture.space, &fixture.map);
      if (!emit_path.empty()) emit_space(emit_path, doc);
      outcome.payload = json{{"params", params_json},
                             {"points", fixture.space.size()},
                             {"space", doc}};
    } else if (app.got_subcommand(subsetmap_cmd)) {
      command = "subsetmap";
      const json params_json{{"seed", seed}, {"points", subset_points}};
      digest = params_digest(params_json);
      // Subset size varies with the seed but is always a proper subset.
      const int subset_size =
          1 + static_cast<int>(tpd::detail::splitmix64(seed ^ 0xabcdULL) %
                               static_cast<std::uint64_t>(
                                   std::max(1, subset_points - 1)));
      const tpd::SubsetMapSpace fixture =
          tpd::build_subset_map_space(seed, subset_points, subset_size);
      const json doc = tpd::space_to_json(fixture.space, &fixture.map);
      if (!emit_path.empty()) emit_space(emit_path, doc);
      const auto periodic = tpd::periodic_points(fixture.map);
      bool contained = true;
      for (const tpd::PeriodicPoint& p : periodic) {
        if (p.index >= subset_size) contained = false;
      }
      outcome.payload = json{{"params", params_json},
                             {"subset", fixture.subset},
                             {"periodic_points", tpd::to_json(periodic)},
                             {"periodic_inside_subset", contained},
                             {"space", doc}};
      outcome.exit_code = contained ? kExitOk : kExitPropertyFailed;
    } else if (app.got_subcommand(fuzz_cmd)) {
      command = "fuzz";
      tpd::FuzzOptions options;
      options.master_seed = seed;
      options.trials = trials;
      options.max_points = max_points;
      options.jobs = jobs;
      options.budget = budget;
      const json params_json{{"seed", seed},
                             {"trials", trials},
                             {"max_points", max_points},
                             {"budget", budget}};
      digest = params_digest(params_json);
      const tpd::FuzzReport report = tpd::run_fuzz(options);
      outcome.payload = tpd::to_json(report);
      outcome.exit_code = report.clean() ? kExitOk : kExitPropertyFailed;
    }
  } catch (const tpd::SpaceFormatError& e) {
    std::cerr << "[tpd] input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const tpd::MetricValidationError& e) {
    std::cerr << "[tpd] input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const tpd::CannotRepairError& e) {
    std::cerr << "[tpd] input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "[tpd] input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "[tpd] error: " << e.what() << '\n';
    return kExitInputError;
  }

  json out{{"command", command}, {"input_digest", digest}};
  out.update(outcome.payload);
  std::cout << out.dump(2) << '\n';

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "[tpd] command=" << command << " jobs=" << jobs
            << " elapsed_ms=" << elapsed.count() << '\n';
  return outcome.exit_code;
}
