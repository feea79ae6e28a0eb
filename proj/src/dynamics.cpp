#include "tpd/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace tpd {

namespace {

bool pairwise_distinct(const std::vector<int>& visited, int first, int count) {
  for (int i = first; i < first + count; ++i) {
    for (int j = i + 1; j < first + count; ++j) {
      if (visited[i] == visited[j]) return false;
    }
  }
  return true;
}

}  // namespace

OrbitTrace iterate_orbit(const FiniteMetricSpace& space, const SelfMap& map,
                         int start, int arity, int max_steps) {
  require_compatible(space, map);
  if (start < 0 || start >= space.size()) {
    throw std::invalid_argument("start point out of range");
  }
  if (arity < 2) throw std::invalid_argument("arity must be at least 2");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");

  OrbitTrace trace;
  trace.start = start;
  trace.arity = arity;

  std::vector<int> first_seen(space.size(), -1);
  int current = start;
  first_seen[current] = 0;
  trace.visited.push_back(current);
  for (int step = 1;; ++step) {
    if (step > max_steps) {
      throw std::runtime_error("orbit did not close within " +
                               std::to_string(max_steps) + " steps");
    }
    current = map(current);
    trace.visited.push_back(current);
    if (first_seen[current] >= 0) {
      trace.tail_length = first_seen[current];
      trace.cycle_length = step - first_seen[current];
      break;
    }
    first_seen[current] = step;
  }

  // Window sums for the leading run of pairwise-distinct windows.
  const int windows = static_cast<int>(trace.visited.size()) - arity + 1;
  for (int i = 0; i < windows; ++i) {
    if (!pairwise_distinct(trace.visited, i, arity)) break;
    trace.tuple_sums.push_back(total_pairwise_distance(
        space, std::span<const int>(trace.visited.data() + i,
                                    static_cast<std::size_t>(arity))));
  }
  return trace;
}

std::vector<PeriodicPoint> periodic_points(const SelfMap& map) {
  const int n = map.size();
  // 0 = unvisited, 1 = on the current path, 2 = resolved.
  std::vector<char> state(n, 0);
  std::vector<int> cycle_len(n, 0);  // > 0 exactly for periodic points
  std::vector<int> path;

  for (int v = 0; v < n; ++v) {
    if (state[v] != 0) continue;
    path.clear();
    int u = v;
    while (state[u] == 0) {
      state[u] = 1;
      path.push_back(u);
      u = map(u);
    }
    if (state[u] == 1) {
      // Found a new cycle: it starts where u sits on the current path.
      const auto at = std::find(path.begin(), path.end(), u);
      const int length = static_cast<int>(path.end() - at);
      for (auto it = at; it != path.end(); ++it) cycle_len[*it] = length;
    }
    for (int w : path) state[w] = 2;
  }

  std::vector<PeriodicPoint> result;
  for (int i = 0; i < n; ++i) {
    if (cycle_len[i] > 0) result.push_back({i, cycle_len[i]});
  }
  return result;
}

TheoremCheck verify_periodic_bound(const FiniteMetricSpace& space,
                                   const SelfMap& map, int arity,
                                   std::uint64_t budget, int jobs) {
  CoefficientOptions options;
  options.arity = arity;
  options.budget = budget;
  options.jobs = jobs;
  ContractionReport report = contraction_coefficient(space, map, options);

  TheoremCheck check;
  check.arity = arity;
  check.alpha_hat = std::move(report.alpha_hat);
  check.certified = report.mode == EnumerationMode::Exhaustive &&
                    check.alpha_hat < 1;
  check.periodic = periodic_points(map);

  if (!check.certified) {
    check.conclusion_holds = true;  // nothing asserted without the premise
    return check;
  }
  bool ok = static_cast<int>(check.periodic.size()) <= arity - 1;
  for (const PeriodicPoint& p : check.periodic) {
    if (p.prime_period < 1 || p.prime_period > arity - 1) ok = false;
  }
  check.conclusion_holds = ok;
  return check;
}

bool tail_bound_check(const OrbitTrace& trace, const FiniteMetricSpace& space,
                      const Rational& alpha) {
  if (alpha < 0 || alpha >= 1) {
    throw std::invalid_argument("alpha must lie in [0, 1)");
  }
  const int arity = trace.arity;
  // Length of the leading run where windows i and i+1 are jointly
  // pairwise distinct, i.e. the orbit points x_i, ..., x_{i+arity} are all
  // different. The decay bounds only speak about that run.
  int m = 0;
  while (m + arity + 1 <= static_cast<int>(trace.visited.size())) {
    bool distinct = true;
    for (int i = m; i <= m + arity && distinct; ++i) {
      for (int j = i + 1; j <= m + arity; ++j) {
        if (trace.visited[i] == trace.visited[j]) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) break;
    ++m;
  }
  if (m == 0) return true;
  if (m + 1 > static_cast<int>(trace.tuple_sums.size())) {
    // Joint distinctness of windows i, i+1 implies each window is
    // distinct, so the sums must cover the run.
    throw std::invalid_argument("trace is missing window sums for its tail");
  }

  const Rational& s0 = trace.tuple_sums[0];
  std::vector<Rational> alpha_pow(m + 1);
  alpha_pow[0] = Rational(1);
  for (int i = 1; i <= m; ++i) alpha_pow[i] = alpha_pow[i - 1] * alpha;

  for (int i = 0; i < m; ++i) {
    const Rational& step =
        space.distance(trace.visited[i], trace.visited[i + 1]);
    if (step > trace.tuple_sums[i]) return false;
    if (trace.tuple_sums[i] > alpha_pow[i] * s0) return false;
  }
  const Rational cauchy_scale = s0 / (Rational(1) - alpha);
  for (int j = 0; j < m; ++j) {
    for (int p = 1; j + p <= m; ++p) {
      const Rational& gap =
          space.distance(trace.visited[j], trace.visited[j + p]);
      if (!(gap < alpha_pow[j] * cauchy_scale)) return false;
    }
  }
  return true;
}

std::optional<std::pair<int, int>> picard_fixed_point(
    const FiniteMetricSpace& space, const SelfMap& map, int start) {
  OrbitTrace trace = iterate_orbit(space, map, start, 2, map.size() + 1);
  if (trace.cycle_length != 1) return std::nullopt;
  return std::make_pair(trace.visited[trace.tail_length], trace.tail_length);
}

}  // namespace tpd
