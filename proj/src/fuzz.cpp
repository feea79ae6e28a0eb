#include "tpd/fuzz.hpp"

#include "tpd/detail/rng.hpp"
#include "tpd/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace tpd {

namespace {

// Independent periodic-point oracle: applies the map step by step from
// every point and takes the first return time. Quadratic and obviously
// correct, unlike the graph traversal it cross-checks.
std::vector<PeriodicPoint> periodic_points_oracle(const SelfMap& map) {
  std::vector<PeriodicPoint> out;
  const int n = map.size();
  for (int x = 0; x < n; ++x) {
    int y = x;
    for (int k = 1; k <= n; ++k) {
      y = map(y);
      if (y == x) {
        out.push_back({x, k});
        break;
      }
    }
  }
  return out;
}

struct TrialParams {
  std::uint64_t seed;
  int points;
  int scale;
};

TrialParams trial_params(std::uint64_t master_seed, int trial, int max_points) {
  const std::uint64_t base =
      detail::splitmix64(master_seed + 0x9e3779b97f4a7c15ULL *
                                          (static_cast<std::uint64_t>(trial) + 1));
  TrialParams p;
  p.seed = base;
  p.points = 2 + static_cast<int>(detail::splitmix64(base ^ 0x1ULL) %
                                  static_cast<std::uint64_t>(max_points - 1));
  p.scale = 1 + static_cast<int>(detail::splitmix64(base ^ 0x2ULL) % 12ULL);
  return p;
}

}  // namespace

RandomSpace corpus_instance(std::uint64_t master_seed, int trial,
                            int max_points) {
  const TrialParams p = trial_params(master_seed, trial, max_points);
  return random_space(p.seed, p.points, p.scale);
}

FuzzReport run_fuzz(const FuzzOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (options.max_points < 2) {
    throw std::invalid_argument("max_points must be >= 2");
  }

  FuzzReport report;
  report.trials = options.trials;

  for (int trial = 0; trial < options.trials; ++trial) {
    const TrialParams params =
        trial_params(options.master_seed, trial, options.max_points);
    const RandomSpace instance =
        random_space(params.seed, params.points, params.scale);
    const FiniteMetricSpace& space = instance.space;
    const SelfMap& map = instance.map;
    const int n = space.size();

    auto note = [&](const std::string& what) {
      std::ostringstream os;
      os << "trial " << trial << " (seed " << params.seed << ", " << n
         << " points, scale " << params.scale << "): " << what;
      report.failures.push_back(os.str());
    };

    // Coefficients for every arity the checks below look at.
    const int max_arity = std::min(n, 5);
    std::map<int, ContractionReport> coefficient;
    for (int arity = 2; arity <= max_arity; ++arity) {
      CoefficientOptions copts;
      copts.arity = arity;
      copts.budget = options.budget;
      copts.jobs = options.jobs;
      coefficient.emplace(arity, contraction_coefficient(space, map, copts));
    }

    // Fast periodic points vs. the brute-force oracle.
    const std::vector<PeriodicPoint> periodic = periodic_points(map);
    ++report.periodic_oracle_checks;
    if (periodic != periodic_points_oracle(map)) {
      ++report.periodic_oracle_mismatches;
      note("periodic points disagree with the step-by-step oracle");
    }

    // Certified coefficient below 1 must bound the periodic structure.
    for (int arity = 2; arity <= std::min(max_arity, 4); ++arity) {
      const ContractionReport& r = coefficient.at(arity);
      const bool certified =
          r.mode == EnumerationMode::Exhaustive && r.alpha_hat < 1;
      if (certified) ++report.certified_by_arity[arity];
      ++report.theorem_checks;
      if (certified) {
        bool ok = static_cast<int>(periodic.size()) <= arity - 1;
        for (const PeriodicPoint& p : periodic) {
          if (p.prime_period > arity - 1) ok = false;
        }
        if (!ok) {
          ++report.theorem_violations;
          note("certified arity " + std::to_string(arity) +
               " but the periodic structure exceeds the bound");
        }
      }
    }

    // alpha_hat is non-increasing in the arity.
    for (int arity = 3; arity <= max_arity; ++arity) {
      ++report.monotonicity_checks;
      if (coefficient.at(arity).alpha_hat > coefficient.at(arity - 1).alpha_hat) {
        ++report.monotonicity_violations;
        note("alpha_hat(" + std::to_string(arity) + ") > alpha_hat(" +
             std::to_string(arity - 1) + ")");
      }
    }

    // Tuples with repeated points never contract worse than distinct ones:
    // the repeated-point coefficient over k distinct values dominates the
    // distinct-tuple coefficient of arity k.
    if (n <= 6) {
      for (int tuple_size = 3; tuple_size <= 5; ++tuple_size) {
        for (int k = 2; k <= std::min(tuple_size - 1, n); ++k) {
          ++report.multiset_checks;
          const Rational repeated =
              multiset_coefficient(space, map, tuple_size, k);
          if (repeated < coefficient.at(k).alpha_hat) {
            ++report.multiset_violations;
            note("multiset coefficient (" + std::to_string(tuple_size) + "," +
                 std::to_string(k) + ") fell below alpha_hat(" +
                 std::to_string(k) + ")");
          }
        }
      }
    }

    // Certified arity 2 is a metric contraction: unique fixed point,
    // convergence from every start, geometric tail bounds along the orbit.
    const ContractionReport& pairwise = coefficient.at(2);
    if (pairwise.mode == EnumerationMode::Exhaustive && pairwise.alpha_hat < 1) {
      ++report.banach_instances;
      bool ok = periodic.size() == 1 && periodic.front().prime_period == 1;
      if (ok) {
        const int fixed = periodic.front().index;
        for (int start = 0; start < n && ok; ++start) {
          const auto reached = picard_fixed_point(space, map, start);
          if (!reached || reached->first != fixed) ok = false;
          const OrbitTrace trace = iterate_orbit(space, map, start, 2, n + 1);
          if (!tail_bound_check(trace, space, pairwise.alpha_hat)) ok = false;
        }
      }
      if (!ok) {
        ++report.banach_violations;
        note("certified arity 2 but fixed-point behavior failed");
      }
    }
  }
  return report;
}

nlohmann::json to_json(const FuzzReport& report) {
  nlohmann::json certified = nlohmann::json::object();
  for (const auto& [arity, count] : report.certified_by_arity) {
    certified[std::to_string(arity)] = count;
  }
  return nlohmann::json{
      {"trials", report.trials},
      {"certified_by_arity", std::move(certified)},
      {"theorem_checks", report.theorem_checks},
      {"theorem_violations", report.theorem_violations},
      {"periodic_oracle_checks", report.periodic_oracle_checks},
      {"periodic_oracle_mismatches", report.periodic_oracle_mismatches},
      {"monotonicity_checks", report.monotonicity_checks},
      {"monotonicity_violations", report.monotonicity_violations},
      {"multiset_checks", report.multiset_checks},
      {"multiset_violations", report.multiset_violations},
      {"banach_instances", report.banach_instances},
      {"banach_violations", report.banach_violations},
      {"clean", report.clean()},
      {"failures", report.failures}};
}

}  // namespace tpd
