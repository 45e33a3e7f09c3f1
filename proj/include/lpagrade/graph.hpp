#pragma once

#include "lpagrade/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace lpagrade {

struct Edge {
  std::string id;
  std::size_t source;
  std::size_t target;
};

/// Finite directed multigraph with named vertices and edges. Vertices and
/// edges keep declaration order; indices into `vertices()`/`edges()` are the
/// handles used throughout the library.
class Graph {
 public:
  Graph() = default;

  /// Adds a vertex; throws PreconditionError on a duplicate id.
  std::size_t add_vertex(std::string id);
  /// Adds an edge between declared vertices; throws on duplicate edge id.
  std::size_t add_edge(std::string id, std::size_t source, std::size_t target);

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Throws PreconditionError for an unknown id.
  std::size_t vertex_index(std::string_view id) const;

  const std::string& vertex_id(std::size_t v) const { return vertices_.at(v); }
  std::span<const std::size_t> out_edges(std::size_t v) const { return out_.at(v); }
  std::span<const std::size_t> in_edges(std::size_t v) const { return in_.at(v); }
  bool is_sink(std::size_t v) const { return out_.at(v).empty(); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
};

struct ParseOptions {
  /// When set, edges may only mention vertices declared by earlier `vertex` lines.
  bool strict = false;
};

/// Parses the line-oriented graph format:
///   # comment
///   vertex <id>
///   edge <id>: <src> -> <dst>
Graph parse_graph(std::string_view text, ParseOptions options = {});

/// A closed path whose edges have pairwise distinct sources, rotated so that
/// its first edge leaves the lexicographically smallest vertex (`base`).
struct Cycle {
  std::vector<std::string> edges;
  std::string base;

  std::size_t length() const noexcept { return edges.size(); }
  friend auto operator<=>(const Cycle&, const Cycle&) = default;
};

/// Vertex indices of a cycle of `g`, in traversal order starting at the base.
std::vector<std::size_t> cycle_vertices(const Graph& g, const Cycle& c);
/// Edge indices of a cycle of `g`; throws PreconditionError if `c` is not a
/// cycle of `g`.
std::vector<std::size_t> cycle_edge_indices(const Graph& g, const Cycle& c);

/// Multiset of path lengths: length -> positive multiplicity.
using LengthMultiset = std::map<std::int64_t, BigInt>;

BigInt total_count(const LengthMultiset& lengths);

inline constexpr std::size_t kDefaultMaxCycles = 100000;

std::set<std::string> sinks(const Graph& g);

/// All cycles up to rotation, canonical rotation, sorted by (base, length,
/// edge ids). Throws ResourceLimitError past `max_cycles`.
std::vector<Cycle> enumerate_cycles(const Graph& g,
                                    std::size_t max_cycles = kDefaultMaxCycles);

bool cycle_has_exit(const Graph& g, const Cycle& c);
bool is_no_exit(const Graph& g, std::size_t max_cycles = kDefaultMaxCycles);

/// Forward-reachable closure of `start` (start included).
std::set<std::string> reachable_from(const Graph& g,
                                     const std::set<std::string>& start);
std::vector<bool> reachable_mask(const Graph& g,
                                 std::span<const std::size_t> start);

/// Adjacency matrix A with A(i, j) = number of edges i -> j.
IntMatrix adjacency_matrix(const Graph& g);

/// Number of paths of exactly `length` edges ending at each vertex, via
/// repeated squaring of the adjacency matrix.
IntVector path_counts_of_length(const Graph& g, std::uint64_t length);
BigInt count_paths_of_length(const Graph& g, std::string_view target,
                             std::uint64_t length);

/// Lengths of all paths ending at `target` that avoid `forbidden_cycle`
/// (a path contains the cycle when it runs through `m` consecutive cycle
/// edges). Without a cycle, `target` must be a sink. The trivial path counts.
/// Throws PreconditionError when the graph is not no-exit around `target`.
LengthMultiset paths_into(const Graph& g, std::string_view target,
                          const std::optional<Cycle>& forbidden_cycle);

struct ConditionYVerified {
  std::size_t depth;
};
struct ConditionYUnknown {
  std::vector<std::string> walk;  // edge ids
  std::size_t k;
};
using ConditionYResult = std::variant<ConditionYVerified, ConditionYUnknown>;

/// One-sided bounded check of Condition (Y): every extendable walk of length
/// `depth` and every k <= k_max has a prefix q with a path of length |q| + k
/// ending at the end of q.
ConditionYResult condition_y_bounded(const Graph& g, std::size_t k_max,
                                     std::size_t depth);

}  // namespace lpagrade
