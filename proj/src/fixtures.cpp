#include "tpd/fixtures.hpp"

#include "tpd/detail/rng.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace tpd {

namespace {

Rational pow2(int k) {  // 2^k for k >= 0
  return Rational(BigInt(1) << k);
}

}  // namespace

LadderSpace build_ladder_space(const LadderParams& params) {
  const int n = params.n;
  const int depth = params.depth;
  const Rational& eps = params.eps;
  const Rational& a = params.a;
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  if (depth < 2) throw std::invalid_argument("depth must be at least 2");
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  if (a <= 0) throw std::invalid_argument("a must be positive");

  const int per_column = n - 1;
  const int total = 1 + depth * per_column;

  // Distance between two points of column i (0 when l == m).
  auto within = [&](int i) -> Rational {
    return (i % 2 == 1) ? Rational(eps / pow2(i - 1)) : Rational(eps / pow2(i - 2));
  };
  // Distance between columns i < j: the chain through consecutive columns,
  // consecutive columns i and i+1 being a/2^(i-1) apart. Row indices do
  // not matter across columns.
  auto across = [&](int i, int j) {
    Rational sum(0);
    for (int t = i; t < j; ++t) sum += a / pow2(t - 1);
    return sum;
  };
  // Distance from column i to the limit point: columns head toward x* along
  // the chain whose total length from column 1 is 2a, so the remainder past
  // column i is 2a minus the chain from column 1 (adjusted within column 1).
  auto to_limit = [&](int i, int l) -> Rational {
    if (i == 1) return (l == 1) ? Rational(a + a) : Rational(a + a - eps);
    return a + a - across(1, i);
  };

  std::vector<std::string> labels(total);
  labels[0] = "x*";
  auto index_of = [&](int i, int l) { return 1 + (i - 1) * per_column + (l - 1); };
  for (int i = 1; i <= depth; ++i) {
    for (int l = 1; l <= per_column; ++l) {
      labels[index_of(i, l)] =
          "x_" + std::to_string(i) + "^" + std::to_string(l);
    }
  }

  Matrix dist(total, std::vector<Rational>(total, Rational(0)));
  auto set = [&](int p, int q, const Rational& d) {
    dist[p][q] = d;
    dist[q][p] = d;
  };
  for (int i = 1; i <= depth; ++i) {
    for (int l = 1; l <= per_column; ++l) {
      const int p = index_of(i, l);
      set(0, p, to_limit(i, l));
      for (int m = l + 1; m <= per_column; ++m) set(p, index_of(i, m), within(i));
      for (int j = i + 1; j <= depth; ++j) {
        const Rational d = across(i, j);
        for (int m = 1; m <= per_column; ++m) set(p, index_of(j, m), d);
      }
    }
  }

  // Construction validates; geometrically impossible parameter choices
  // surface here as MetricValidationError naming the violated instance.
  FiniteMetricSpace space(std::move(labels), std::move(dist));

  std::vector<int> image(total);
  image[0] = 0;
  for (int i = 1; i <= depth; ++i) {
    for (int l = 1; l <= per_column; ++l) {
      image[index_of(i, l)] = (i < depth) ? index_of(i + 1, l) : 0;
    }
  }

  std::vector<int> analysis;
  analysis.push_back(0);
  for (int i = 1; i <= depth - 1; ++i) {
    for (int l = 1; l <= per_column; ++l) analysis.push_back(index_of(i, l));
  }
  return LadderSpace{std::move(space), SelfMap(std::move(image)),
                     std::move(analysis)};
}

TwoCycleSpace build_two_cycle_space(const Rational& grid_max,
                                    const Rational& grid_step) {
  if (grid_step <= 0) throw std::invalid_argument("grid_step must be positive");
  if (grid_max < 3) {
    throw std::invalid_argument("grid_max must be at least 3");
  }

  std::vector<Rational> coords{Rational(0), Rational(1)};
  for (Rational v(3); v <= grid_max; v += grid_step) coords.push_back(v);

  const int total = static_cast<int>(coords.size());
  std::vector<std::string> labels;
  labels.reserve(total);
  for (const Rational& v : coords) labels.push_back(to_string(v));

  Matrix dist(total, std::vector<Rational>(total, Rational(0)));
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      Rational gap = coords[j] - coords[i];
      if (gap < 0) gap = -gap;
      dist[i][j] = gap;
      dist[j][i] = std::move(gap);
    }
  }

  std::vector<int> image(total, 1);  // grid points collapse onto 1
  image[0] = 1;
  image[1] = 0;
  return TwoCycleSpace{FiniteMetricSpace(std::move(labels), std::move(dist)),
                       SelfMap(std::move(image))};
}

SubsetMapSpace build_subset_map_space(std::uint64_t seed, int n_points,
                                      int subset_size) {
  if (n_points < 2) throw std::invalid_argument("need at least two points");
  if (subset_size < 1 || subset_size > n_points - 1) {
    throw std::invalid_argument(
        "subset_size must satisfy 1 <= subset_size <= n_points - 1");
  }

  // Same generator-weight scheme as random_space, then a map restricted to
  // the subset. Kept separate so the draw order stays a stable contract.
  std::mt19937_64 rng(seed);
  constexpr std::uint64_t kScale = 10;
  Matrix weights(n_points, std::vector<Rational>(n_points, Rational(0)));
  for (int i = 0; i < n_points; ++i) {
    for (int j = i + 1; j < n_points; ++j) {
      const auto w = 1 + detail::bounded(rng, kScale);
      weights[i][j] = Rational(w);
      weights[j][i] = weights[i][j];
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n_points);
  for (int i = 0; i < n_points; ++i) labels.push_back("p" + std::to_string(i));
  FiniteMetricSpace space = metric_closure(weights, std::move(labels));

  std::vector<int> subset(subset_size);
  for (int i = 0; i < subset_size; ++i) subset[i] = i;
  std::vector<int> image(n_points);
  for (int i = 0; i < n_points; ++i) {
    image[i] = subset[detail::bounded(rng, static_cast<std::uint64_t>(subset_size))];
  }
  return SubsetMapSpace{std::move(space), SelfMap(std::move(image)),
                        std::move(subset)};
}

}  // namespace tpd
