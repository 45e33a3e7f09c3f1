#pragma once

#include "lpagrade/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lpagrade {

/// Residue data of one cycle for Condition (EDL).
struct EdlEntry {
  Cycle cycle;
  std::string base;                   ///< vertex the paths end in
  std::size_t period = 0;             ///< cycle length m
  std::vector<BigInt> residue_counts; ///< index j: paths with length = j mod m
  std::optional<BigInt> k;            ///< common count, when all are equal and positive
};

struct EdlReport {
  std::vector<EdlEntry> entries;
  bool overall = true;
};

/// Residue profile of paths into `base` (a vertex of `c`) that avoid `c`.
EdlEntry edl_entry(const Graph& g, const Cycle& c, const std::string& base);

/// EDL for every cycle, evaluated at each cycle's canonical base. Throws
/// PreconditionError when some cycle has an exit.
EdlReport check_edl(const Graph& g, std::size_t max_cycles = kDefaultMaxCycles);

struct ClassificationReport {
  bool unital = true;
  bool finite = true;
  bool no_sinks = false;
  bool no_exit = false;
  std::optional<EdlReport> edl;

  bool strongly_graded = false;
  bool crossed_product = false;
  bool skew_group_ring = false;
  bool group_ring = false;
  bool graded_unit_regular = false;

  // witnesses
  std::vector<std::string> sink_list;
  std::vector<std::string> sinks_receiving_edges;
  std::optional<Cycle> exit_cycle;
  std::optional<Cycle> edl_failing_cycle;
  std::optional<Cycle> non_unit_cycle;
};

ClassificationReport classify_lpa(const Graph& g,
                                  std::size_t max_cycles = kDefaultMaxCycles);

}  // namespace lpagrade
