#include "lpagrade/report.hpp"

#include "lpagrade/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <sstream>

namespace lpagrade {

Json to_json(const BigInt& x) {
  if (auto small = to_int64(x)) return *small;
  return x.str();
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Cycle& c) {
  return Json{{"base", c.base}, {"length", c.length()}, {"edges", c.edges}};
}

namespace {

Json optional_cycle(const std::optional<Cycle>& c) { return c ? to_json(*c) : Json(nullptr); }

Json counts(const std::vector<BigInt>& xs) {
  Json out = Json::array();
  for (const BigInt& x : xs) out.push_back(to_json(x));
  return out;
}

Json expanded(const ShiftMultiset& shifts) {
  if (total_count(shifts) > BigInt(kMaxExpandedBlock))
    throw ResourceLimitError("block size exceeds " + std::to_string(kMaxExpandedBlock));
  Json out = Json::array();
  for (const auto& [shift, count] : shifts)
    for (BigInt i = 0; i < count; ++i) out.push_back(shift);
  return out;
}

}  // namespace

Json to_json(const EdlEntry& e) {
  return Json{{"cycle", to_json(e.cycle)},
              {"base", e.base},
              {"m", e.period},
              {"residue_counts", counts(e.residue_counts)},
              {"k", e.k ? to_json(*e.k) : Json(nullptr)}};
}

Json to_json(const ClassificationReport& r) {
  Json edl = nullptr;
  if (r.edl) {
    Json entries = Json::array();
    for (const EdlEntry& e : r.edl->entries) entries.push_back(to_json(e));
    edl = Json{{"overall", r.edl->overall}, {"entries", std::move(entries)}};
  }
  return Json{
      {"unital", r.unital},
      {"finite", r.finite},
      {"no_sinks", r.no_sinks},
      {"no_exit", r.no_exit},
      {"strongly_graded", r.strongly_graded},
      {"crossed_product", r.crossed_product},
      {"skew_group_ring", r.skew_group_ring},
      {"group_ring", r.group_ring},
      {"graded_unit_regular", r.graded_unit_regular},
      {"edl", std::move(edl)},
      {"witnesses",
       Json{{"sinks", r.sink_list},
            {"sinks_receiving_edges", r.sinks_receiving_edges},
            {"exit_cycle", optional_cycle(r.exit_cycle)},
            {"edl_failing_cycle", optional_cycle(r.edl_failing_cycle)},
            {"non_unit_cycle", optional_cycle(r.non_unit_cycle)}}}};
}

Json to_json(const GradedMatricialAlgebra& a) {
  Json sink_blocks = Json::array();
  for (const SinkBlock& b : a.sink_blocks)
    sink_blocks.push_back(
        Json{{"sink", b.sink}, {"size", to_json(b.size())}, {"shifts", expanded(b.shifts)}});
  Json cycle_blocks = Json::array();
  for (const CycleBlock& b : a.cycle_blocks)
    cycle_blocks.push_back(Json{{"cycle_base", b.cycle.base},
                                {"cycle_edges", b.cycle.edges},
                                {"m", b.period},
                                {"size", to_json(b.size())},
                                {"shifts", expanded(b.shifts)}});
  return Json{{"sink_blocks", std::move(sink_blocks)}, {"cycle_blocks", std::move(cycle_blocks)}};
}

Json to_json(const KTheoryPresentation& k) {
  Json components = Json::array();
  for (const KComponent& c : k.components) {
    if (const auto* f = std::get_if<FreeComponent>(&c)) {
      Json unit = Json::object();
      for (const auto& [shift, count] : f->unit) unit[std::to_string(shift)] = to_json(count);
      components.push_back(Json{{"free", true}, {"unit", std::move(unit)}});
    } else {
      const auto& z = std::get<CyclicComponent>(c);
      components.push_back(Json{{"cyclic", z.period}, {"unit", counts(z.unit)}});
    }
  }
  return Json{{"components", std::move(components)}};
}

Json to_json(const MatrixRingClassification& c) {
  struct {
    Json operator()(std::monostate) const { return Json{{"kind", "none"}}; }
    Json operator()(const witness::InfiniteQuotient&) const {
      return Json{{"kind", "infinite_quotient"}};
    }
    Json operator()(const witness::MissingCoset& w) const {
      return Json{{"kind", "missing_coset"}, {"coset", to_json(w.coset.value)}};
    }
    Json operator()(const witness::UnequalMultiplicity& w) const {
      return Json{{"kind", "unequal_multiplicity"},
                  {"first", to_json(w.first.value)},
                  {"first_count", to_json(w.first_count)},
                  {"second", to_json(w.second.value)},
                  {"second_count", to_json(w.second_count)}};
    }
    Json operator()(const witness::ProperSubgroup& w) const {
      return Json{{"kind", "proper_subgroup"}, {"coset", to_json(w.coset.value)}};
    }
  } visit_witness;
  return Json{{"strongly_graded", c.strongly_graded},
              {"crossed_product", c.crossed_product},
              {"skew_group_ring", c.skew_group_ring},
              {"group_ring", c.group_ring},
              {"witness", std::visit(visit_witness, c.witness)}};
}

namespace {

BigInt json_integer(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start &&
        s.find_first_not_of("0123456789", start) == std::string::npos)
      return BigInt(s);
  }
  throw ParseError(0, "expected an integer, got " + j.dump());
}

std::vector<IntVector> json_vectors(const Json& j, std::size_t rank, const char* field) {
  if (!j.is_array()) throw ParseError(0, std::string("'") + field + "' must be an array");
  std::vector<IntVector> out;
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != rank)
      throw ParseError(0, std::string("every entry of '") + field + "' must have " +
                              std::to_string(rank) + " integers");
    IntVector v(static_cast<Eigen::Index>(rank));
    for (std::size_t i = 0; i < rank; ++i) v(static_cast<Eigen::Index>(i)) = json_integer(row[i]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

ShiftedMatrixRing matrix_ring_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError(0, "matrix ring input must be a JSON object");
  for (const char* key : {"rank", "support", "shifts"})
    if (!j.contains(key)) throw ParseError(0, std::string("missing field '") + key + "'");
  if (!j["rank"].is_number_unsigned() || j["rank"].get<std::size_t>() == 0)
    throw ParseError(0, "'rank' must be a positive integer");
  ShiftedMatrixRing ring;
  ring.ambient_rank = j["rank"].get<std::size_t>();
  ring.support = Lattice{ring.ambient_rank, json_vectors(j["support"], ring.ambient_rank, "support")};
  ring.shifts = json_vectors(j["shifts"], ring.ambient_rank, "shifts");
  return ring;
}

namespace {

const char* kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::Equivalence: return "equivalence";
    case CertificateKind::LessEq: return "less_eq";
    case CertificateKind::Periodicity: return "periodicity";
  }
  return "equivalence";
}

Json steps_json(const Graph& g, const std::vector<RewriteStep>& steps) {
  Json out = Json::array();
  for (const RewriteStep& s : steps)
    out.push_back(Json{{"vertex", g.vertex_id(s.vertex)}, {"degree", s.degree}, {"count", to_json(s.count)}});
  return out;
}

}  // namespace

Json to_json(const Graph& g, const RewriteCertificate& c) {
  Json out{{"kind", kind_name(c.kind)},
           {"left_reduct", format_element(g, c.left_reduct)},
           {"right_reduct", format_element(g, c.right_reduct)},
           {"steps_left", steps_json(g, c.steps_left)},
           {"steps_right", steps_json(g, c.steps_right)}};
  if (c.period) out["period"] = *c.period;
  if (c.multiple) out["multiple"] = to_json(*c.multiple);
  return out;
}

Json to_json(const Bounds& b) { return Json{{"depth", b.depth}, {"width_cap", b.width_cap}}; }

Json to_json(const Graph& g, const SearchResult& r) {
  if (const auto* p = std::get_if<Proved>(&r))
    return Json{{"verdict", "proved"}, {"certificate", to_json(g, p->certificate)}};
  const auto& u = std::get<Unknown>(r);
  return Json{{"verdict", "unknown"}, {"reason", u.reason}, {"bounds", to_json(u.bounds)}};
}

namespace {

std::string dot_id(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string emit_dot(const Graph& g) {
  // v lies on a cycle iff v is reachable from one of its successors.
  std::vector<bool> on_cycle(g.vertex_count(), false);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::size_t> next;
    for (std::size_t e : g.out_edges(v)) next.push_back(g.edges()[e].target);
    on_cycle[v] = !next.empty() && reachable_mask(g, next)[v];
  }

  std::ostringstream out;
  out << "digraph {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "  " << dot_id(g.vertex_id(v));
    if (g.is_sink(v))
      out << " [shape=doublecircle, comment=\"sink\"]";
    else if (on_cycle[v])
      out << " [style=bold, comment=\"cycle\"]";
    out << ";\n";
  }
  for (const Edge& e : g.edges())
    out << "  " << dot_id(g.vertex_id(e.source)) << " -> " << dot_id(g.vertex_id(e.target))
        << " [label=" << dot_id(e.id) << "];\n";
  out << "}\n";
  return out.str();
}

std::string content_digest(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &length, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Json to_json(const ReportDocument& d) {
  return Json{{"tool_version", d.tool_version},
              {"input_digest", d.input_digest},
              {"subcommand", d.subcommand},
              {"payload", d.payload},
              {"bounds_used", d.bounds_used}};
}

}  // namespace lpagrade
