#pragma once

#include "tpd/metric_space.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tpd {

// Above this many tuples the coefficient search switches from exhaustive
// enumeration to seeded sampling (which yields a lower bound only).
inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultSampleSeed = 0x5eedULL;

enum class EnumerationMode { Exhaustive, Sampled };

const char* mode_name(EnumerationMode mode);

// Result of maximizing S(T x_1, ..., T x_n) / S(x_1, ..., x_n) over
// pairwise-distinct tuples, where S is the sum of all pairwise distances.
//
// Exhaustive mode: alpha_hat is the exact maximum and `witness` is the
// first attaining tuple in lexicographic order. Sampled mode: alpha_hat is
// a lower bound for the true maximum (witness still attains it). Both modes
// are deterministic and independent of the `jobs` parallelism.
struct ContractionReport {
  int arity = 0;
  Rational alpha_hat;
  std::vector<int> witness;  // ascending point indices into the space
  std::uint64_t tuples_examined = 0;
  EnumerationMode mode = EnumerationMode::Exhaustive;
};

struct CoefficientOptions {
  int arity = 2;
  // Points the tuples are drawn from; empty means every point of the space.
  // Deduplicated and sorted internally; witness indices refer to the space.
  std::vector<int> domain;
  std::uint64_t budget = kDefaultTupleBudget;
  int jobs = 1;
  std::uint64_t sample_seed = kDefaultSampleSeed;
};

/// Sum of d(points[i], points[j]) over all index pairs i < j. Repeated
/// points are permitted (their mutual distance contributes zero). Throws
/// std::invalid_argument for tuples shorter than 2 or out-of-range indices.
Rational total_pairwise_distance(const FiniteMetricSpace& space,
                                 std::span<const int> points);

ContractionReport contraction_coefficient(const FiniteMetricSpace& space,
                                          const SelfMap& map,
                                          const CoefficientOptions& options);

inline ContractionReport contraction_coefficient(
    const FiniteMetricSpace& space, const SelfMap& map, int arity) {
  CoefficientOptions options;
  options.arity = arity;
  return contraction_coefficient(space, map, options);
}

struct CertifyResult {
  bool certified = false;
  // First tuple (lexicographically) with S(T tuple) > alpha * S(tuple);
  // empty when certified.
  std::vector<int> counterexample;
};

/// Decides exhaustively whether every pairwise-distinct `arity`-tuple from
/// `domain` satisfies S(T tuple) <= alpha * S(tuple). Aborts at the first
/// counterexample. alpha must be >= 0; membership in the contracting class
/// additionally requires alpha < 1.
CertifyResult certify(const FiniteMetricSpace& space, const SelfMap& map,
                      int arity, const Rational& alpha,
                      std::vector<int> domain = {});

/// First tuple (lexicographically) whose ratio reaches `threshold`, if any.
/// Early-aborting form of the question "is the coefficient >= threshold".
std::optional<std::vector<int>> find_ratio_at_least(
    const FiniteMetricSpace& space, const SelfMap& map, int arity,
    const Rational& threshold, std::vector<int> domain = {});

/// Exact maximum of the S-ratio over tuples of `tuple_size` points that
/// take exactly `support_size` distinct values (2 <= support_size <=
/// tuple_size - 1). Enumerates supports times multiplicity patterns; the
/// ratio of such a tuple depends only on those two.
Rational multiset_coefficient(const FiniteMetricSpace& space,
                              const SelfMap& map, int tuple_size,
                              int support_size);

struct LipschitzViolation {
  int other;                // the point y that witnesses the failure
  Rational image_distance;  // d(T at, T y)
  Rational allowed;         // alpha * d(at, y)
};

/// All y != at with d(T at, T y) > alpha * d(at, y). Empty result means the
/// map is pointwise alpha-Lipschitz at `at`.
std::vector<LipschitzViolation> pointwise_lipschitz_check(
    const FiniteMetricSpace& space, const SelfMap& map, int at,
    const Rational& alpha);

}  // namespace tpd
