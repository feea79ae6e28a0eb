#pragma once

#include "tpd/contraction.hpp"
#include "tpd/dynamics.hpp"
#include "tpd/metric_space.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpd {

// Space file layout (JSON object):
//   labels  array of point names (strings)
//   dist    square matrix; entries are exact rational literals ("3/2") or
//           integers; floating-point entries are rejected
//   map     optional self-map table (map[i] = image point index)
//   domain  optional list of point indices restricting tuple enumeration
struct SpaceDocument {
  std::vector<std::string> labels;
  Matrix dist;
  std::optional<std::vector<int>> map;
  std::optional<std::vector<int>> domain;
};

class SpaceFormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the document structure (not the metric axioms; run validate_metric
/// or construct a FiniteMetricSpace for that). Throws SpaceFormatError
/// naming the offending entry.
SpaceDocument parse_space_document(const nlohmann::json& doc);

/// Reads and parses a space file. Throws SpaceFormatError for unreadable
/// files and malformed JSON as well.
SpaceDocument load_space_file(const std::string& path);

nlohmann::json space_to_json(const FiniteMetricSpace& space,
                             const SelfMap* map = nullptr,
                             const std::vector<int>* domain = nullptr);

nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const ContractionReport& report);
nlohmann::json to_json(const CertifyResult& result, const Rational& alpha);
nlohmann::json to_json(const OrbitTrace& trace);
nlohmann::json to_json(const std::vector<PeriodicPoint>& points);
nlohmann::json to_json(const TheoremCheck& check);

/// FNV-1a 64-bit digest rendered as 16 hex digits; used to stamp reports
/// with the exact input they were computed from.
std::string content_digest(std::string_view bytes);

}  // namespace tpd
