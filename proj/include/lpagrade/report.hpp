#pragma once

#include "lpagrade/lpa_classify.hpp"
#include "lpagrade/matricial.hpp"
#include "lpagrade/matrix_ring.hpp"
#include "lpagrade/monoid.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace lpagrade {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "lpa-grade 0.3.0";

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json to_json(const BigInt& x);
Json to_json(const IntVector& v);
Json to_json(const Cycle& c);

Json to_json(const EdlEntry& e);
Json to_json(const ClassificationReport& r);

/// Shift lists are expanded with repetition; throws ResourceLimitError for
/// blocks above kMaxExpandedBlock.
Json to_json(const GradedMatricialAlgebra& a);
Json to_json(const KTheoryPresentation& k);

Json to_json(const MatrixRingClassification& c);
/// Reads {"rank": r, "support": [[...], ...], "shifts": [[...], ...]}.
/// Throws ParseError on malformed input.
ShiftedMatrixRing matrix_ring_from_json(const Json& j);

Json to_json(const Graph& g, const RewriteCertificate& c);
Json to_json(const Graph& g, const SearchResult& r);
Json to_json(const Bounds& b);

/// Graphviz digraph: sinks drawn as double circles, cycle vertices bold,
/// edges labelled with their ids. Vertices and edges in declaration order.
std::string emit_dot(const Graph& g);

/// Lowercase hex SHA-256 of the input bytes.
std::string content_digest(std::string_view bytes);

struct ReportDocument {
  std::string tool_version = kToolVersion;
  std::string input_digest;
  std::string subcommand;
  Json payload;
  Json bounds_used = Json::object();
};

Json to_json(const ReportDocument& d);

}  // namespace lpagrade
