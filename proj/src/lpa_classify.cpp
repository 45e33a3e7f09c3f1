#include "lpagrade/lpa_classify.hpp"

#include "lpagrade/error.hpp"

namespace lpagrade {

EdlEntry edl_entry(const Graph& g, const Cycle& c, const std::string& base) {
  EdlEntry entry;
  entry.cycle = c;
  entry.base = base;
  entry.period = c.length();
  entry.residue_counts.assign(entry.period, BigInt(0));

  const auto m = static_cast<std::int64_t>(entry.period);
  for (const auto& [length, count] : paths_into(g, base, c))
    entry.residue_counts[static_cast<std::size_t>(floor_mod(length, m))] += count;

  const BigInt& first = entry.residue_counts.front();
  bool equal = first > 0;
  for (const BigInt& count : entry.residue_counts) equal = equal && count == first;
  if (equal) entry.k = first;
  return entry;
}

EdlReport check_edl(const Graph& g, std::size_t max_cycles) {
  EdlReport report;
  for (const Cycle& c : enumerate_cycles(g, max_cycles)) {
    if (cycle_has_exit(g, c))
      throw PreconditionError("graph is not no-exit: the cycle based at '" + c.base +
                              "' has an exit");
    EdlEntry entry = edl_entry(g, c, c.base);
    report.overall = report.overall && entry.k.has_value();
    report.entries.push_back(std::move(entry));
  }
  return report;
}

ClassificationReport classify_lpa(const Graph& g, std::size_t max_cycles) {
  ClassificationReport r;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_sink(v)) continue;
    r.sink_list.push_back(g.vertex_id(v));
    if (!g.in_edges(v).empty()) r.sinks_receiving_edges.push_back(g.vertex_id(v));
  }
  r.no_sinks = r.sink_list.empty();

  const std::vector<Cycle> cycles = enumerate_cycles(g, max_cycles);
  r.no_exit = true;
  for (const Cycle& c : cycles) {
    if (cycle_has_exit(g, c)) {
      r.no_exit = false;
      r.exit_cycle = c;
      break;
    }
  }
  for (const Cycle& c : cycles) {
    if (c.length() != 1) {
      r.non_unit_cycle = c;
      break;
    }
  }

  bool edl_holds = false;
  if (r.no_exit) {
    EdlReport edl = check_edl(g, max_cycles);
    edl_holds = edl.overall;
    for (const EdlEntry& e : edl.entries) {
      if (!e.k) {
        r.edl_failing_cycle = e.cycle;
        break;
      }
    }
    if (r.no_sinks) r.edl = std::move(edl);
  }

  r.strongly_graded = r.no_sinks;
  r.crossed_product = r.no_sinks && r.no_exit && edl_holds;
  r.skew_group_ring = r.crossed_product;
  r.group_ring = r.crossed_product && !r.non_unit_cycle.has_value();
  r.graded_unit_regular = r.no_exit && r.sinks_receiving_edges.empty() && edl_holds;
  return r;
}

}  // namespace lpagrade
