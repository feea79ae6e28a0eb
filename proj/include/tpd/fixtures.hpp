#pragma once

#include "tpd/metric_space.hpp"

#include <cstdint>
#include <vector>

namespace tpd {

// ============================================================================
// Ladder space
// ============================================================================
//
// Columns of n-1 points each, hanging off a limit point x*. Distances
// within column i are eps/2^(i-1) for odd i and eps/2^(i-2) for even i;
// consecutive columns are a/2^(i-1) apart, non-adjacent columns are joined
// by the chain through the columns between them, and x* sits at the limit
// of the column chain. The map shifts every column one step deeper.
//
// The construction is truncated at `depth` columns; the deepest column maps
// to x* (the limit it converges to), which keeps the map total without
// introducing new periodic points. Tuples that touch the deepest column see
// truncation artifacts, so `analysis_domain` excludes it: x* plus columns
// 1 through depth-1.

struct LadderParams {
  int n = 4;            // tuple arity the construction is tuned for; n-1 points per column
  Rational eps = Rational(1, 100);
  Rational a = Rational(10);
  int depth = 6;        // columns materialized
};

struct LadderSpace {
  FiniteMetricSpace space;
  SelfMap map;
  std::vector<int> analysis_domain;
};

/// Point 0 is x*; column i (1-based), row l (1-based) is point
/// 1 + (i-1)(n-1) + (l-1), labeled "x_i^l". Throws std::invalid_argument
/// for n < 3, depth < 2, eps <= 0, a <= 0, and MetricValidationError
/// (naming a violated instance) if the parameters break an axiom.
LadderSpace build_ladder_space(const LadderParams& params);

// ============================================================================
// Two-cycle space
// ============================================================================
//
// Points 0 and 1 plus a grid 3, 3+step, ..., up to grid_max, all on the
// rational line with d(x, y) = |x - y|. The map swaps 0 and 1 and sends
// every grid point to 1, so {0, 1} is a two-cycle and nothing is fixed.

struct TwoCycleSpace {
  FiniteMetricSpace space;
  SelfMap map;
};

TwoCycleSpace build_two_cycle_space(const Rational& grid_max,
                                    const Rational& grid_step);

// ============================================================================
// Subset-image space
// ============================================================================
//
// A seeded random space whose map only hits the subset Y = {0, ...,
// subset_size - 1}. Every cycle of such a map lives inside Y, so the
// periodic points always lie in the image subset.

struct SubsetMapSpace {
  FiniteMetricSpace space;
  SelfMap map;
  std::vector<int> subset;  // the allowed image points, ascending
};

SubsetMapSpace build_subset_map_space(std::uint64_t seed, int n_points,
                                      int subset_size);

}  // namespace tpd
