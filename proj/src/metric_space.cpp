#include "tpd/metric_space.hpp"

#include "tpd/detail/rng.hpp"

#include <utility>

namespace tpd {

namespace {

void require_square(const Matrix& dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw std::invalid_argument("distance matrix is empty");
  for (const auto& row : dist) {
    if (row.size() != n) {
      throw std::invalid_argument("distance matrix is not square");
    }
  }
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

const char* axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::ZeroDiagonal: return "zero_diagonal";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::Positivity: return "positivity";
    case Axiom::Triangle: return "triangle";
  }
  return "unknown";
}

std::string describe(const AxiomViolation& v) {
  std::string out = axiom_name(v.axiom);
  out += " at (";
  bool first = true;
  for (int idx : v.indices) {
    if (idx < 0) break;
    if (!first) out += ",";
    out += std::to_string(idx);
    first = false;
  }
  out += "): " + to_string(v.lhs);
  switch (v.axiom) {
    case Axiom::ZeroDiagonal: out += " != 0"; break;
    case Axiom::Symmetry: out += " != " + to_string(v.rhs); break;
    case Axiom::Positivity: out += " <= 0"; break;
    case Axiom::Triangle: out += " > " + to_string(v.rhs); break;
  }
  return out;
}

ValidationReport validate_metric(const Matrix& dist) {
  require_square(dist);
  const int n = static_cast<int>(dist.size());
  ValidationReport report;
  auto add = [&report](Axiom axiom, std::array<int, 3> idx, Rational lhs,
                       Rational rhs) {
    report.valid = false;
    report.violations.push_back(
        {axiom, idx, std::move(lhs), std::move(rhs)});
  };

  for (int i = 0; i < n; ++i) {
    if (dist[i][i] != 0) {
      add(Axiom::ZeroDiagonal, {i, -1, -1}, dist[i][i], Rational(0));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i]) {
        add(Axiom::Symmetry, {i, j, -1}, dist[i][j], dist[j][i]);
      }
      if (dist[i][j] <= 0) {
        add(Axiom::Positivity, {i, j, -1}, dist[i][j], Rational(0));
      }
    }
  }
  // Every ordered instance d(i,k) <= d(i,j) + d(j,k) with i, j, k distinct.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const Rational bound = dist[i][j] + dist[j][k];
        if (dist[i][k] > bound) {
          add(Axiom::Triangle, {i, j, k}, dist[i][k], bound);
        }
      }
    }
  }
  return report;
}

MetricValidationError::MetricValidationError(const std::string& what,
                                             ValidationReport report)
    : std::runtime_error(what), report_(std::move(report)) {}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     Matrix dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  require_square(dist_);
  if (labels_.empty()) labels_ = default_labels(dist_.size());
  if (labels_.size() != dist_.size()) {
    throw std::invalid_argument("label count does not match matrix size");
  }
  ValidationReport report = validate_metric(dist_);
  if (!report.valid) {
    std::string message =
        "not a metric space: " + describe(report.violations.front());
    if (report.violations.size() > 1) {
      message +=
          " (and " + std::to_string(report.violations.size() - 1) + " more)";
    }
    throw MetricValidationError(message, std::move(report));
  }
}

SelfMap::SelfMap(std::vector<int> image) : image_(std::move(image)) {
  if (image_.empty()) throw std::invalid_argument("self-map table is empty");
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (image_[i] < 0 || image_[i] >= n) {
      throw std::invalid_argument("self-map entry " + std::to_string(i) +
                                  " -> " + std::to_string(image_[i]) +
                                  " is out of range");
    }
  }
}

void require_compatible(const FiniteMetricSpace& space, const SelfMap& map) {
  if (space.size() != map.size()) {
    throw std::invalid_argument("self-map is over " +
                                std::to_string(map.size()) +
                                " points but the space has " +
                                std::to_string(space.size()));
  }
}

FiniteMetricSpace metric_closure(const Matrix& dist,
                                 std::vector<std::string> labels) {
  require_square(dist);
  const int n = static_cast<int>(dist.size());
  for (int i = 0; i < n; ++i) {
    if (dist[i][i] != 0) {
      throw std::invalid_argument("generator weights have a nonzero diagonal");
    }
    for (int j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i]) {
        throw std::invalid_argument("generator weights are not symmetric");
      }
      if (dist[i][j] < 0) {
        throw std::invalid_argument("generator weights must be positive");
      }
      if (dist[i][j] == 0) {
        throw CannotRepairError("generator weight (" + std::to_string(i) +
                                "," + std::to_string(j) +
                                ") is zero; points would coincide");
      }
    }
  }

  // Shortest paths shrink entries toward triangle consistency and never
  // create a new zero (every path between distinct points has positive
  // weight), so the result is a metric.
  Matrix closed = dist;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Rational via = closed[i][k] + closed[k][j];
        if (via < closed[i][j]) closed[i][j] = via;
      }
    }
  }
  if (labels.empty()) labels = default_labels(closed.size());
  return FiniteMetricSpace(std::move(labels), std::move(closed));
}

RandomSpace random_space(std::uint64_t seed, int n_points, int scale) {
  if (n_points < 2) throw std::invalid_argument("need at least two points");
  if (scale < 1) throw std::invalid_argument("scale must be >= 1");

  std::mt19937_64 rng(seed);
  const int n = n_points;
  Matrix weights(n, std::vector<Rational>(n, Rational(0)));
  // Draw order is part of the contract: upper triangle row-major, then the
  // map table. Changing it would silently re-key every seeded corpus.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto w = 1 + detail::bounded(rng, static_cast<std::uint64_t>(scale));
      weights[i][j] = Rational(w);
      weights[j][i] = weights[i][j];
    }
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  FiniteMetricSpace space = metric_closure(weights, std::move(labels));

  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) {
    image[i] = static_cast<int>(
        detail::bounded(rng, static_cast<std::uint64_t>(n)));
  }
  return RandomSpace{std::move(space), SelfMap(std::move(image))};
}

}  // namespace tpd
