#pragma once

#include "tpd/rational.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpd {

// Square matrix of exact distances, row-major.
using Matrix = std::vector<std::vector<Rational>>;

// ============================================================================
// Validation
// ============================================================================

enum class Axiom { ZeroDiagonal, Symmetry, Positivity, Triangle };

const char* axiom_name(Axiom axiom);

// One concrete violated axiom instance. Slots of `indices` that the axiom
// does not use are -1 (ZeroDiagonal/Positivity use one or two indices,
// Triangle uses three: d(i,k) <= d(i,j) + d(j,k) with lhs = d(i,k)).
struct AxiomViolation {
  Axiom axiom;
  std::array<int, 3> indices;
  Rational lhs;
  Rational rhs;
};

struct ValidationReport {
  bool valid = true;
  std::vector<AxiomViolation> violations;
};

/// Checks every axiom instance over the whole matrix: zero diagonal,
/// symmetry, strictly positive off-diagonal entries, and all ordered
/// triangle inequalities. All violations are reported, not just the first.
/// Throws std::invalid_argument if the matrix is empty or not square.
ValidationReport validate_metric(const Matrix& dist);

std::string describe(const AxiomViolation& violation);

class MetricValidationError : public std::runtime_error {
 public:
  MetricValidationError(const std::string& what, ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// metric_closure received generator weights it cannot turn into a metric
// (a zero off-diagonal entry would force two points to coincide).
class CannotRepairError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ============================================================================
// Core types
// ============================================================================

// Immutable finite metric space: point labels plus an exact distance matrix.
// Construction validates all axioms and throws MetricValidationError if any
// fail, so a live instance is always a genuine metric space.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, Matrix dist);

  int size() const { return static_cast<int>(labels_.size()); }
  const Rational& distance(int i, int j) const { return dist_[i][j]; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& matrix() const { return dist_; }

 private:
  std::vector<std::string> labels_;
  Matrix dist_;
};

// Total self-map of {0, ..., n-1} given by its image table.
// Construction rejects out-of-range entries.
class SelfMap {
 public:
  explicit SelfMap(std::vector<int> image);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

 private:
  std::vector<int> image_;
};

/// Throws std::invalid_argument unless map.size() == space.size().
void require_compatible(const FiniteMetricSpace& space, const SelfMap& map);

// ============================================================================
// Construction helpers
// ============================================================================

/// Repairs symmetric positive generator weights into a metric by shortest
/// paths (Floyd-Warshall over exact rationals), then builds the space.
/// Preconditions on `dist`: square, zero diagonal, symmetric, off-diagonal
/// entries > 0 (std::invalid_argument otherwise, CannotRepairError for a
/// zero off-diagonal entry). `labels` defaults to "0", "1", ....
FiniteMetricSpace metric_closure(const Matrix& dist,
                                 std::vector<std::string> labels = {});

struct RandomSpace {
  FiniteMetricSpace space;
  SelfMap map;
};

/// Deterministic pseudo-random instance: draws integer generator weights in
/// [1, scale] for the upper triangle (row-major), repairs them with
/// metric_closure, then draws the map table (n_points values in [0, n)).
/// Identical (seed, n_points, scale) yields an identical instance on every
/// platform; see detail/rng.hpp for the pinned generator.
RandomSpace random_space(std::uint64_t seed, int n_points, int scale);

}  // namespace tpd
