#pragma once

#include "tpd/contraction.hpp"
#include "tpd/metric_space.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tpd {

// Orbit of a point under repeated application of the map, recorded up to
// and including the first revisit, together with the sums of consecutive
// windows. visited = x_0, x_1, ..., x_{t+c} where x_{t+c} == x_t; t is the
// tail length and c the cycle length. tuple_sums[i] is the total pairwise
// distance of the window (x_i, ..., x_{i+arity-1}); sums are recorded for
// the leading run of windows whose points are pairwise distinct.
struct OrbitTrace {
  int start = 0;
  int arity = 2;
  std::vector<int> visited;
  int tail_length = 0;
  int cycle_length = 0;
  std::vector<Rational> tuple_sums;
};

/// Follows the orbit until it revisits a point (throws std::runtime_error
/// if that takes more than max_steps applications; n steps always suffice
/// on an n-point space).
OrbitTrace iterate_orbit(const FiniteMetricSpace& space, const SelfMap& map,
                         int start, int arity, int max_steps);

struct PeriodicPoint {
  int index = 0;
  int prime_period = 0;  // smallest p >= 1 with T^p(index) == index

  friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;
};

/// All periodic points with their prime periods, ascending by index.
/// Linear time in the number of points (functional-graph traversal).
std::vector<PeriodicPoint> periodic_points(const SelfMap& map);

// Outcome of checking the periodic-structure bound: when the arity-n
// coefficient is exhaustively certified below 1, every periodic point must
// have prime period at most n-1 and there can be at most n-1 of them.
// `conclusion_holds` is vacuously true when the premise fails (not
// certified), and reports whether the bound held when it applies.
struct TheoremCheck {
  int arity = 0;
  Rational alpha_hat;
  bool certified = false;
  std::vector<PeriodicPoint> periodic;
  bool conclusion_holds = false;
};

TheoremCheck verify_periodic_bound(const FiniteMetricSpace& space,
                                   const SelfMap& map, int arity,
                                   std::uint64_t budget = kDefaultTupleBudget,
                                   int jobs = 1);

/// Checks the geometric decay bounds along an orbit for a contraction
/// factor alpha in [0, 1): with s_i the window sums and m the length of the
/// leading run where consecutive windows are jointly pairwise distinct,
///   d(x_i, x_{i+1}) <= s_i <= alpha^i * s_0          for i < m, and
///   d(x_j, x_{j+p}) <  alpha^j * s_0 / (1 - alpha)   for j + p <= m, p >= 1.
/// Returns true when every applicable instance holds (vacuously for m = 0).
bool tail_bound_check(const OrbitTrace& trace, const FiniteMetricSpace& space,
                      const Rational& alpha);

/// Iterates from `start` until the orbit closes; returns (fixed point,
/// steps to reach it) if the orbit ends in a fixed point, nullopt if it
/// ends in a longer cycle.
std::optional<std::pair<int, int>> picard_fixed_point(
    const FiniteMetricSpace& space, const SelfMap& map, int start);

}  // namespace tpd
