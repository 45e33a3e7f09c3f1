#include "lpagrade/error.hpp"
#include "lpagrade/lpa_classify.hpp"
#include "lpagrade/matricial.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace lpagrade;
using lpatest::build;

namespace {

std::vector<BigInt> big(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

// The verdicts recomputed from walk enumeration alone.
struct Expected {
  bool strongly, crossed, group, unit_regular;
};

Expected expected_verdicts(const Graph& g) {
  bool no_sinks = true, sink_receives = false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.out_edges(v).empty()) continue;
    no_sinks = false;
    sink_receives = sink_receives || !g.in_edges(v).empty();
  }
  const auto cycles = lpatest::brute_cycles(g);
  bool no_exit = true, unit_cycles = true;
  for (const Cycle& c : cycles) {
    unit_cycles = unit_cycles && c.length() == 1;
    std::set<std::size_t> on;
    for (const auto& id : c.edges) on.insert(g.edges()[*g.find_edge(id)].source);
    for (std::size_t v : on)
      for (std::size_t e : g.out_edges(v))
        if (std::find(c.edges.begin(), c.edges.end(), g.edges()[e].id) == c.edges.end()) no_exit = false;
  }
  bool edl = no_exit;
  if (no_exit) {
    for (const Cycle& c : cycles) {
      const auto m = static_cast<std::int64_t>(c.length());
      std::vector<BigInt> residues(c.length(), 0);
      const auto paths = lpatest::brute_paths_into(g, g.vertex_index(c.base), c,
                                                   g.edge_count() + g.vertex_count() + 2);
      for (const auto& [l, k] : paths) residues[floor_mod(l, m)] += k;
      for (const auto& r : residues) edl = edl && r == residues[0];
    }
  }
  const bool crossed = no_sinks && no_exit && edl;
  return {no_sinks, crossed, crossed && unit_cycles, no_exit && !sink_receives && edl};
}

}  // namespace

TEST_CASE("check_edl examples") {
  auto r = check_edl(lpatest::paper_graph(1));
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].period == 2);
  CHECK(r.entries[0].residue_counts == big({1, 2}));
  CHECK_FALSE(r.entries[0].k);
  CHECK_FALSE(r.overall);

  for (int which : {2, 3}) {
    r = check_edl(lpatest::paper_graph(which));
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].residue_counts == big({2, 2}));
    CHECK(r.entries[0].k == BigInt(2));
    CHECK(r.overall);
  }

  r = check_edl(parse_graph("edge l: v -> v"));
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].residue_counts == big({1}));
  CHECK(r.entries[0].k == BigInt(1));

  CHECK(check_edl(parse_graph("edge e: u -> v")).overall);  // no cycles
  CHECK_THROWS_AS(check_edl(parse_graph("edge a: v -> w\nedge b: w -> v\nedge c: v -> z")),
                  PreconditionError);
}

TEST_CASE("classify_lpa examples") {
  auto r = classify_lpa(lpatest::paper_graph(1));
  CHECK(r.strongly_graded);
  CHECK_FALSE(r.crossed_product);
  CHECK(r.edl_failing_cycle);
  CHECK(r.edl);

  for (int which : {2, 3}) {
    r = classify_lpa(lpatest::paper_graph(which));
    CHECK(r.crossed_product);
    CHECK(r.skew_group_ring);
    CHECK_FALSE(r.group_ring);
    REQUIRE(r.non_unit_cycle);
    CHECK(r.non_unit_cycle->length() == 2);
  }

  r = classify_lpa(parse_graph("vertex v"));
  CHECK_FALSE(r.strongly_graded);
  CHECK(r.graded_unit_regular);
  CHECK(r.sink_list == std::vector<std::string>{"v"});
  CHECK(r.sinks_receiving_edges.empty());
  CHECK_FALSE(r.edl);

  r = classify_lpa(parse_graph("edge l: v -> v"));
  CHECK(r.group_ring);
  CHECK(r.crossed_product);
  CHECK(r.unital);
  CHECK(r.finite);

  r = classify_lpa(parse_graph("edge a: v -> w\nedge b: w -> v\nedge c: v -> z\nedge d: z -> z"));
  CHECK(r.strongly_graded);
  CHECK_FALSE(r.no_exit);
  CHECK_FALSE(r.crossed_product);
  CHECK(r.exit_cycle);
  CHECK_FALSE(r.edl);

  // A sink that receives an edge blocks unit-regularity.
  r = classify_lpa(parse_graph("edge e: u -> v"));
  CHECK_FALSE(r.graded_unit_regular);
  CHECK(r.sinks_receiving_edges == std::vector<std::string>{"v"});
}

TEST_CASE("verdicts match enumeration from definitions") {
  for (const auto& list : lpatest::exhaustive_graphs(4, 5)) {
    const Graph g = build(list);
    const auto r = classify_lpa(g);
    const auto e = expected_verdicts(g);
    CHECK(r.strongly_graded == e.strongly);
    CHECK(r.crossed_product == e.crossed);
    CHECK(r.group_ring == e.group);
    CHECK(r.graded_unit_regular == e.unit_regular);
  }
}

TEST_CASE("hierarchy and unit-regular corollary on the corpus") {
  for (const auto& list : lpatest::classification_corpus()) {
    const auto r = classify_lpa(build(list));
    CHECK((!r.group_ring || r.skew_group_ring));
    CHECK(r.skew_group_ring == r.crossed_product);
    CHECK((!r.crossed_product || r.strongly_graded));
    CHECK(r.crossed_product == (r.strongly_graded && r.graded_unit_regular));
    CHECK(r.strongly_graded == r.no_sinks);
    if (r.edl) {
      bool all = true;
      for (const auto& e : r.edl->entries) all = all && e.k.has_value();
      CHECK(r.edl->overall == all);
    }
  }
}

TEST_CASE("EDL verdict does not depend on the chosen cycle vertex") {
  for (const auto& list : lpatest::exhaustive_graphs(4, 5)) {
    const Graph g = build(list);
    if (!is_no_exit(g)) continue;
    for (const Cycle& c : enumerate_cycles(g)) {
      const EdlEntry at_base = edl_entry(g, c, c.base);
      BigInt total = 0;
      for (const auto& x : at_base.residue_counts) total += x;
      CHECK(total == total_count(paths_into(g, c.base, c)));
      for (std::size_t v : cycle_vertices(g, c)) {
        const EdlEntry other = edl_entry(g, c, g.vertex_id(v));
        CHECK(other.k == at_base.k);
      }
    }
  }
}

TEST_CASE("blockwise matrix-ring verdicts agree with classify_lpa") {
  for (const auto& list : lpatest::classification_corpus()) {
    const Graph g = build(list);
    if (!is_no_exit(g) || !sinks(g).empty()) continue;
    const auto r = classify_lpa(g);
    const auto a = matricial_representation(g);
    bool strongly = true, crossed = true, group = true;
    for (const auto& b : a.cycle_blocks) {
      const auto c = classify_matrix_ring(as_matrix_ring(b));
      strongly = strongly && c.strongly_graded;
      crossed = crossed && c.crossed_product;
      group = group && c.group_ring;
    }
    CHECK(r.strongly_graded == strongly);
    CHECK(r.crossed_product == crossed);
    CHECK(r.group_ring == group);
  }
}
