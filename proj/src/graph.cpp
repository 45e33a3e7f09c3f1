#include "lpagrade/graph.hpp"

#include "lpagrade/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace lpagrade {

std::size_t Graph::add_vertex(std::string id) {
  if (vertex_lookup_.contains(id))
    throw PreconditionError("duplicate vertex identifier '" + id + "'");
  const std::size_t index = vertices_.size();
  vertex_lookup_.emplace(id, index);
  vertices_.push_back(std::move(id));
  out_.emplace_back();
  in_.emplace_back();
  return index;
}

std::size_t Graph::add_edge(std::string id, std::size_t source,
                            std::size_t target) {
  if (edge_lookup_.contains(id))
    throw PreconditionError("duplicate edge identifier '" + id + "'");
  if (source >= vertices_.size() || target >= vertices_.size())
    throw PreconditionError("edge '" + id + "' names an unknown vertex");
  const std::size_t index = edges_.size();
  edge_lookup_.emplace(id, index);
  edges_.push_back(Edge{std::move(id), source, target});
  out_[source].push_back(index);
  in_[target].push_back(index);
  return index;
}

std::optional<std::size_t> Graph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Graph::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw PreconditionError("unknown vertex '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v' || c == ':' || c == '>';
  });
}

}  // namespace

Graph parse_graph(std::string_view text, ParseOptions options) {
  Graph g;
  std::set<std::string, std::less<>> declared;
  std::size_t line_no = 0;

  auto resolve = [&](std::string_view id) -> std::size_t {
    if (auto v = g.find_vertex(id)) return *v;
    if (options.strict)
      throw ParseError(line_no, "edge endpoint '" + std::string(id) +
                                    "' is not a declared vertex");
    return g.add_vertex(std::string(id));
  };

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;

    const auto ws = line.find_first_of(" \t");
    const std::string_view keyword = line.substr(0, ws);
    const std::string_view rest =
        ws == std::string_view::npos ? std::string_view{} : trim(line.substr(ws));

    if (keyword == "vertex") {
      if (!valid_identifier(rest))
        throw ParseError(line_no, "malformed vertex declaration");
      if (declared.contains(rest))
        throw ParseError(line_no, "duplicate vertex identifier '" +
                                      std::string(rest) + "'");
      declared.emplace(rest);
      if (!g.find_vertex(rest)) g.add_vertex(std::string(rest));
    } else if (keyword == "edge") {
      const auto colon = rest.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(line_no, "malformed edge: expected '<id>: <src> -> <dst>'");
      const std::string_view id = trim(rest.substr(0, colon));
      const std::string_view ends = rest.substr(colon + 1);
      const auto arrow = ends.find("->");
      if (arrow == std::string_view::npos)
        throw ParseError(line_no, "malformed edge: missing '->'");
      const std::string_view src = trim(ends.substr(0, arrow));
      const std::string_view dst = trim(ends.substr(arrow + 2));
      if (!valid_identifier(id) || !valid_identifier(src) || !valid_identifier(dst))
        throw ParseError(line_no, "malformed edge: invalid identifier");
      if (g.find_edge(id))
        throw ParseError(line_no, "duplicate edge identifier '" + std::string(id) + "'");
      const std::size_t s = resolve(src);
      const std::size_t t = resolve(dst);
      g.add_edge(std::string(id), s, t);
    } else {
      throw ParseError(line_no, "unknown statement '" + std::string(keyword) + "'");
    }
  }
  if (g.vertex_count() == 0) throw ParseError(0, "empty vertex set");
  return g;
}

// ---------------------------------------------------------------------------
// Sinks, cycles

std::set<std::string> sinks(const Graph& g) {
  std::set<std::string> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) out.insert(g.vertex_id(v));
  return out;
}

BigInt total_count(const LengthMultiset& lengths) {
  BigInt total = 0;
  for (const auto& [length, count] : lengths) total += count;
  return total;
}

namespace {

bool cycle_less(const Cycle& a, const Cycle& b) {
  if (a.base != b.base) return a.base < b.base;
  if (a.length() != b.length()) return a.length() < b.length();
  return a.edges < b.edges;
}

// Johnson's elementary-circuit enumeration, run over edges so that parallel
// edges yield distinct circuits. Vertices are ranked by id so that every
// circuit is found from its lexicographically smallest vertex exactly once.
class CircuitFinder {
 public:
  CircuitFinder(const Graph& g, std::size_t cap) : g_(g), cap_(cap) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return g.vertex_id(a) < g.vertex_id(b);
    });
    rank_.resize(n);
    for (std::size_t i = 0; i < n; ++i) rank_[order[i]] = i;
    order_ = std::move(order);
    blocked_.assign(n, false);
    blocked_by_.assign(n, {});
  }

  std::vector<Cycle> run() {
    for (std::size_t s : order_) {
      start_ = s;
      for (std::size_t v = 0; v < g_.vertex_count(); ++v) {
        if (rank_[v] >= rank_[s]) {
          blocked_[v] = false;
          blocked_by_[v].clear();
        }
      }
      circuit(s);
    }
    std::sort(found_.begin(), found_.end(), cycle_less);
    return std::move(found_);
  }

 private:
  bool circuit(std::size_t v) {
    bool closed = false;
    blocked_[v] = true;
    for (std::size_t e : g_.out_edges(v)) {
      const std::size_t w = g_.edges()[e].target;
      if (rank_[w] < rank_[start_]) continue;
      if (w == start_) {
        path_.push_back(e);
        emit();
        path_.pop_back();
        closed = true;
      } else if (!blocked_[w]) {
        path_.push_back(e);
        if (circuit(w)) closed = true;
        path_.pop_back();
      }
    }
    if (closed) {
      unblock(v);
    } else {
      for (std::size_t e : g_.out_edges(v)) {
        const std::size_t w = g_.edges()[e].target;
        if (rank_[w] < rank_[start_]) continue;
        auto& list = blocked_by_[w];
        if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
      }
    }
    return closed;
  }

  void unblock(std::size_t v) {
    blocked_[v] = false;
    auto pending = std::move(blocked_by_[v]);
    blocked_by_[v].clear();
    for (std::size_t w : pending)
      if (blocked_[w]) unblock(w);
  }

  void emit() {
    if (found_.size() >= cap_)
      throw ResourceLimitError("cycle count exceeds cap of " + std::to_string(cap_));
    Cycle c;
    c.base = g_.vertex_id(start_);
    c.edges.reserve(path_.size());
    for (std::size_t e : path_) c.edges.push_back(g_.edges()[e].id);
    found_.push_back(std::move(c));
  }

  const Graph& g_;
  std::size_t cap_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
  std::vector<bool> blocked_;
  std::vector<std::vector<std::size_t>> blocked_by_;
  std::vector<std::size_t> path_;
  std::size_t start_ = 0;
  std::vector<Cycle> found_;
};

}  // namespace

std::vector<Cycle> enumerate_cycles(const Graph& g, std::size_t max_cycles) {
  return CircuitFinder(g, max_cycles).run();
}

std::vector<std::size_t> cycle_edge_indices(const Graph& g, const Cycle& c) {
  if (c.edges.empty()) throw PreconditionError("cycle has no edges");
  std::vector<std::size_t> idx;
  idx.reserve(c.edges.size());
  for (const auto& id : c.edges) {
    auto e = g.find_edge(id);
    if (!e) throw PreconditionError("not a cycle of the graph: unknown edge '" + id + "'");
    idx.push_back(*e);
  }
  std::set<std::size_t> sources;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Edge& cur = g.edges()[idx[i]];
    const Edge& next = g.edges()[idx[(i + 1) % idx.size()]];
    if (cur.target != next.source)
      throw PreconditionError("not a cycle of the graph: edges do not compose");
    if (!sources.insert(cur.source).second)
      throw PreconditionError("not a cycle of the graph: repeated source vertex");
  }
  const std::size_t first = g.edges()[idx.front()].source;
  if (g.vertex_id(first) != c.base)
    throw PreconditionError("not a cycle of the graph: base is not the first source");
  for (std::size_t s : sources)
    if (g.vertex_id(s) < c.base)
      throw PreconditionError("not a cycle of the graph: base is not the smallest vertex");
  return idx;
}

std::vector<std::size_t> cycle_vertices(const Graph& g, const Cycle& c) {
  std::vector<std::size_t> out;
  for (std::size_t e : cycle_edge_indices(g, c)) out.push_back(g.edges()[e].source);
  return out;
}

bool cycle_has_exit(const Graph& g, const Cycle& c) {
  const auto idx = cycle_edge_indices(g, c);
  const std::set<std::size_t> on_cycle(idx.begin(), idx.end());
  for (std::size_t e : idx) {
    for (std::size_t out : g.out_edges(g.edges()[e].source))
      if (!on_cycle.contains(out)) return true;
  }
  return false;
}

bool is_no_exit(const Graph& g, std::size_t max_cycles) {
  for (const Cycle& c : enumerate_cycles(g, max_cycles))
    if (cycle_has_exit(g, c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Reachability and path counting

std::vector<bool> reachable_mask(const Graph& g, std::span<const std::size_t> start) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<std::size_t> queue;
  for (std::size_t v : start) {
    if (!seen.at(v)) {
      seen[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : g.out_edges(v)) {
      const std::size_t w = g.edges()[e].target;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

std::set<std::string> reachable_from(const Graph& g,
                                     const std::set<std::string>& start) {
  std::vector<std::size_t> idx;
  for (const auto& id : start) idx.push_back(g.vertex_index(id));
  const auto mask = reachable_mask(g, idx);
  std::set<std::string> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (mask[v]) out.insert(g.vertex_id(v));
  return out;
}

IntMatrix adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  IntMatrix a = IntMatrix::Zero(n, n);
  for (const Edge& e : g.edges())
    a(static_cast<Eigen::Index>(e.source), static_cast<Eigen::Index>(e.target)) += 1;
  return a;
}

IntVector path_counts_of_length(const Graph& g, std::uint64_t length) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  IntMatrix result = IntMatrix::Identity(n, n);
  IntMatrix base = adjacency_matrix(g);
  while (length > 0) {
    if (length & 1U) result = (result * base).eval();
    length >>= 1U;
    if (length > 0) base = (base * base).eval();
  }
  // Column sums: paths of the given length from any vertex into each target.
  return result.colwise().sum();
}

BigInt count_paths_of_length(const Graph& g, std::string_view target,
                             std::uint64_t length) {
  const std::size_t t = g.vertex_index(target);
  return path_counts_of_length(g, length)(static_cast<Eigen::Index>(t));
}

// ---------------------------------------------------------------------------
// paths_into

namespace {

void add_shifted(LengthMultiset& into, const LengthMultiset& from, std::int64_t by) {
  for (const auto& [length, count] : from) into[length + by] += count;
}

}  // namespace

LengthMultiset paths_into(const Graph& g, std::string_view target,
                          const std::optional<Cycle>& forbidden_cycle) {
  const std::size_t t = g.vertex_index(target);
  std::vector<bool> on_cycle(g.vertex_count(), false);
  std::vector<bool> cycle_edge(g.edge_count(), false);
  std::vector<std::size_t> ring;  // ring[j]: vertex j steps behind t

  if (forbidden_cycle) {
    const auto idx = cycle_edge_indices(g, *forbidden_cycle);
    for (std::size_t e : idx) {
      cycle_edge[e] = true;
      on_cycle[g.edges()[e].source] = true;
    }
    if (!on_cycle[t])
      throw PreconditionError("target '" + std::string(target) +
                              "' does not lie on the forbidden cycle");
    if (cycle_has_exit(g, *forbidden_cycle))
      throw PreconditionError("graph is not no-exit: the cycle based at '" +
                              forbidden_cycle->base + "' has an exit");
    std::size_t v = t;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      ring.push_back(v);
      std::size_t prev = v;
      for (std::size_t e : g.in_edges(v))
        if (cycle_edge[e]) prev = g.edges()[e].source;
      v = prev;
    }
  } else if (!g.is_sink(t)) {
    throw PreconditionError("target '" + std::string(target) +
                            "' is not a sink and no cycle was given");
  }

  enum class Mark { White, Gray, Black };
  std::vector<Mark> mark(g.vertex_count(), Mark::White);
  std::vector<LengthMultiset> memo(g.vertex_count());

  // Paths ending at u through edges outside the forbidden cycle.
  std::function<const LengthMultiset&(std::size_t)> into = [&](std::size_t u)
      -> const LengthMultiset& {
    if (mark[u] == Mark::Black) return memo[u];
    if (mark[u] == Mark::Gray)
      throw PreconditionError("graph is not no-exit: a cycle off the allowed one reaches '" +
                              std::string(target) + "'");
    mark[u] = Mark::Gray;
    LengthMultiset acc{{0, BigInt(1)}};
    for (std::size_t e : g.in_edges(u)) {
      if (cycle_edge[e]) continue;
      const std::size_t s = g.edges()[e].source;
      if (on_cycle[s])
        throw PreconditionError("graph is not no-exit: the forbidden cycle has an exit");
      add_shifted(acc, into(s), 1);
    }
    memo[u] = std::move(acc);
    mark[u] = Mark::Black;
    return memo[u];
  };

  if (!forbidden_cycle) return into(t);

  LengthMultiset result;
  for (std::size_t j = 0; j < ring.size(); ++j)
    add_shifted(result, into(ring[j]), static_cast<std::int64_t>(j));
  return result;
}

// ---------------------------------------------------------------------------
// Condition (Y)

ConditionYResult condition_y_bounded(const Graph& g, std::size_t k_max,
                                     std::size_t depth) {
  const std::size_t n = g.vertex_count();

  // A walk extends to an infinite path iff its end can reach a cycle.
  std::vector<bool> on_cycle(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> succ;
    for (std::size_t e : g.out_edges(v)) succ.push_back(g.edges()[e].target);
    on_cycle[v] = reachable_mask(g, succ)[v];
  }
  std::vector<bool> extendable(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (!on_cycle[v]) continue;
    // Reverse closure: everything that reaches v.
    std::deque<std::size_t> queue{v};
    extendable[v] = true;
    while (!queue.empty()) {
      const std::size_t w = queue.front();
      queue.pop_front();
      for (std::size_t e : g.in_edges(w)) {
        const std::size_t s = g.edges()[e].source;
        if (!extendable[s]) {
          extendable[s] = true;
          queue.push_back(s);
        }
      }
    }
  }

  // has_path[L][v]: some path of length L ends at v.
  std::vector<std::vector<bool>> has_path;
  const std::size_t max_len = depth + k_max;
  for (std::size_t len = 0; len <= max_len; ++len) {
    const IntVector counts = path_counts_of_length(g, len);
    std::vector<bool> row(n);
    for (std::size_t v = 0; v < n; ++v) row[v] = counts(static_cast<Eigen::Index>(v)) > 0;
    has_path.push_back(std::move(row));
  }

  for (std::size_t k = 1; k <= k_max; ++k) {
    // bad[j][v]: a walk from v of length depth - j (extendable at its end)
    // whose prefixes of lengths j..depth, read from the walk start at offset
    // j, all fail.
    std::vector<std::vector<bool>> bad(depth + 1, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v)
      bad[depth][v] = extendable[v] && !has_path[depth + k][v];
    for (std::size_t j = depth; j-- > 0;) {
      for (std::size_t v = 0; v < n; ++v) {
        if (has_path[j + k][v]) continue;
        for (std::size_t e : g.out_edges(v)) {
          if (bad[j + 1][g.edges()[e].target]) {
            bad[j][v] = true;
            break;
          }
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!bad[0][v]) continue;
      ConditionYUnknown witness{{}, k};
      std::size_t cur = v;
      for (std::size_t j = 0; j < depth; ++j) {
        for (std::size_t e : g.out_edges(cur)) {
          const std::size_t w = g.edges()[e].target;
          if (bad[j + 1][w]) {
            witness.walk.push_back(g.edges()[e].id);
            cur = w;
            break;
          }
        }
      }
      return witness;
    }
  }
  return ConditionYVerified{depth};
}

}  // namespace lpagrade
