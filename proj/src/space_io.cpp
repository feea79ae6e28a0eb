#include "tpd/space_io.hpp"

#include <fstream>
#include <sstream>

namespace tpd {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw SpaceFormatError(message);
}

Rational parse_entry(const json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(where + ": " + e.what());
    }
  }
  if (value.is_number_integer()) {
    return Rational(value.get<std::int64_t>());
  }
  // Floats are rejected rather than rounded: every entry must be exact.
  fail(where + ": expected an integer or a rational string, got " +
       std::string(value.type_name()));
}

std::vector<int> parse_index_array(const json& value, const std::string& where,
                                   int limit) {
  if (!value.is_array()) fail(where + ": expected an array");
  std::vector<int> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const json& entry = value[i];
    if (!entry.is_number_integer()) {
      fail(where + "[" + std::to_string(i) + "]: expected an integer");
    }
    const auto v = entry.get<std::int64_t>();
    if (v < 0 || v >= limit) {
      fail(where + "[" + std::to_string(i) + "]: index " + std::to_string(v) +
           " out of range [0, " + std::to_string(limit) + ")");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace

SpaceDocument parse_space_document(const json& doc) {
  if (!doc.is_object()) fail("space document: expected a JSON object");
  if (!doc.contains("labels") || !doc["labels"].is_array()) {
    fail("labels: expected an array of strings");
  }
  if (!doc.contains("dist") || !doc["dist"].is_array()) {
    fail("dist: expected an array of rows");
  }

  SpaceDocument out;
  for (std::size_t i = 0; i < doc["labels"].size(); ++i) {
    const json& label = doc["labels"][i];
    if (!label.is_string()) {
      fail("labels[" + std::to_string(i) + "]: expected a string");
    }
    out.labels.push_back(label.get<std::string>());
  }
  const std::size_t n = out.labels.size();
  if (n == 0) fail("labels: must not be empty");

  const json& dist = doc["dist"];
  if (dist.size() != n) {
    fail("dist: expected " + std::to_string(n) + " rows, got " +
         std::to_string(dist.size()));
  }
  out.dist.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = dist[i];
    if (!row.is_array() || row.size() != n) {
      fail("dist[" + std::to_string(i) + "]: expected a row of " +
           std::to_string(n) + " entries");
    }
    out.dist[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      out.dist[i].push_back(parse_entry(
          row[j], "dist[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    }
  }

  const int limit = static_cast<int>(n);
  if (doc.contains("map")) {
    out.map = parse_index_array(doc["map"], "map", limit);
    if (out.map->size() != n) {
      fail("map: expected " + std::to_string(n) + " entries, got " +
           std::to_string(out.map->size()));
    }
  }
  if (doc.contains("domain")) {
    out.domain = parse_index_array(doc["domain"], "domain", limit);
  }
  return out;
}

SpaceDocument load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(path + ": " + e.what());
  }
  return parse_space_document(doc);
}

json space_to_json(const FiniteMetricSpace& space, const SelfMap* map,
                   const std::vector<int>* domain) {
  json doc;
  doc["labels"] = space.labels();
  json rows = json::array();
  for (int i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < space.size(); ++j) {
      row.push_back(to_string(space.distance(i, j)));
    }
    rows.push_back(std::move(row));
  }
  doc["dist"] = std::move(rows);
  if (map != nullptr) doc["map"] = map->image();
  if (domain != nullptr) doc["domain"] = *domain;
  return doc;
}

json to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const AxiomViolation& v : report.violations) {
    json item;
    item["axiom"] = axiom_name(v.axiom);
    json idx = json::array();
    for (int i : v.indices) {
      if (i >= 0) idx.push_back(i);
    }
    item["indices"] = std::move(idx);
    item["lhs"] = to_string(v.lhs);
    item["rhs"] = to_string(v.rhs);
    violations.push_back(std::move(item));
  }
  return json{{"valid", report.valid}, {"violations", std::move(violations)}};
}

json to_json(const ContractionReport& report) {
  return json{{"arity", report.arity},
              {"alpha_hat", to_string(report.alpha_hat)},
              {"witness", report.witness},
              {"tuples_examined", report.tuples_examined},
              {"mode", mode_name(report.mode)}};
}

json to_json(const CertifyResult& result, const Rational& alpha) {
  json out{{"alpha", to_string(alpha)}, {"certified", result.certified}};
  if (!result.certified) out["counterexample"] = result.counterexample;
  return out;
}

json to_json(const OrbitTrace& trace) {
  json sums = json::array();
  for (const Rational& s : trace.tuple_sums) sums.push_back(to_string(s));
  return json{{"start", trace.start},
              {"arity", trace.arity},
              {"visited", trace.visited},
              {"tail_length", trace.tail_length},
              {"cycle_length", trace.cycle_length},
              {"tuple_sums", std::move(sums)}};
}

json to_json(const std::vector<PeriodicPoint>& points) {
  json out = json::array();
  for (const PeriodicPoint& p : points) {
    out.push_back(json{{"index", p.index}, {"prime_period", p.prime_period}});
  }
  return out;
}

json to_json(const TheoremCheck& check) {
  return json{{"arity", check.arity},
              {"alpha_hat", to_string(check.alpha_hat)},
              {"certified", check.certified},
              {"periodic_points", to_json(check.periodic)},
              {"conclusion_holds", check.conclusion_holds}};
}

std::string content_digest(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

}  // namespace tpd
