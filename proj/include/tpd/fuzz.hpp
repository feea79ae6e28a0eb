#pragma once

#include "tpd/contraction.hpp"
#include "tpd/metric_space.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tpd {

inline constexpr std::uint64_t kDefaultFuzzSeed = 0x7f4a7c15ULL;

struct FuzzOptions {
  std::uint64_t master_seed = kDefaultFuzzSeed;
  int trials = 200;
  int max_points = 8;   // spaces have 2..max_points points
  int jobs = 1;
  std::uint64_t budget = kDefaultTupleBudget;
};

// Aggregate outcome of running the property checks over a seeded corpus of
// random spaces. Each violation is also described in `failures` with the
// trial seed so the instance can be replayed. All fields are deterministic
// functions of FuzzOptions minus `jobs`.
struct FuzzReport {
  int trials = 0;
  std::map<int, int> certified_by_arity;

  int theorem_checks = 0;
  int theorem_violations = 0;     // certified but the periodic bound failed
  int periodic_oracle_checks = 0;
  int periodic_oracle_mismatches = 0;  // fast path vs. step-by-step oracle
  int monotonicity_checks = 0;
  int monotonicity_violations = 0;     // alpha_hat(n) > alpha_hat(n-1)
  int multiset_checks = 0;
  int multiset_violations = 0;    // multiset coefficient below alpha_hat(k)
  int banach_instances = 0;       // spaces with certified arity-2 coefficient
  int banach_violations = 0;      // fixed-point/convergence/tail-bound failure

  std::vector<std::string> failures;

  bool clean() const {
    return theorem_violations == 0 && periodic_oracle_mismatches == 0 &&
           monotonicity_violations == 0 && multiset_violations == 0 &&
           banach_violations == 0;
  }
};

/// Generates the corpus deterministically from master_seed (trial t uses an
/// independent derived seed; point count in [2, max_points], weight scale
/// in [1, 12]) and checks, per trial:
///   - periodic points against a step-by-step brute-force oracle,
///   - the periodic-structure bound for arities 2..4 when certified,
///   - monotonicity of the coefficient in the arity,
///   - the repeated-point (multiset) coefficient dominating alpha_hat,
///     for tuple sizes up to 5 on spaces with at most 6 points,
///   - fixed-point existence, uniqueness, convergence from every start,
///     and the geometric tail bounds whenever arity 2 is certified.
FuzzReport run_fuzz(const FuzzOptions& options);

/// Per-trial instance of the corpus `run_fuzz` walks, for replaying.
RandomSpace corpus_instance(std::uint64_t master_seed, int trial,
                            int max_points);

nlohmann::json to_json(const FuzzReport& report);

}  // namespace tpd
