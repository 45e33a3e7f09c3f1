#include "support/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpatest {

using lpagrade::BigInt;
using lpagrade::Cycle;
using lpagrade::Graph;

std::set<Cycle> brute_cycles(const Graph& g) {
  std::set<Cycle> out;
  std::vector<std::size_t> path;  // edge indices
  std::vector<bool> used(g.vertex_count(), false);

  auto record = [&] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < path.size(); ++i)
      if (g.vertex_id(g.edges()[path[i]].source) < g.vertex_id(g.edges()[path[best]].source))
        best = i;
    Cycle c;
    for (std::size_t i = 0; i < path.size(); ++i)
      c.edges.push_back(g.edges()[path[(best + i) % path.size()]].id);
    c.base = g.vertex_id(g.edges()[path[best]].source);
    out.insert(c);
  };
  auto walk = [&](auto&& self, std::size_t start, std::size_t at) -> void {
    for (std::size_t e : g.out_edges(at)) {
      const std::size_t t = g.edges()[e].target;
      path.push_back(e);
      if (t == start) {
        record();
      } else if (!used[t]) {
        used[t] = true;
        self(self, start, t);
        used[t] = false;
      }
      path.pop_back();
    }
  };
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    used[s] = true;
    walk(walk, s, s);
    used[s] = false;
  }
  return out;
}

lpagrade::LengthMultiset brute_paths_into(const Graph& g, std::size_t target,
                                          const std::optional<Cycle>& forbidden,
                                          std::size_t max_length) {
  std::vector<bool> in_cycle(g.edge_count(), false);
  std::size_t m = 0;
  if (forbidden) {
    for (const auto& id : forbidden->edges) in_cycle[*g.find_edge(id)] = true;
    m = forbidden->length();
  }
  lpagrade::LengthMultiset out;
  // Suffix grows to the left; `run` counts leading cycle edges.
  auto grow = [&](auto&& self, std::size_t head, std::size_t length, std::size_t run) -> void {
    out[static_cast<std::int64_t>(length)] += 1;
    if (length == max_length) throw std::runtime_error("path set not finite at max_length");
    for (std::size_t e : g.in_edges(head)) {
      const std::size_t r = in_cycle[e] ? run + 1 : 0;
      if (forbidden && r >= m) continue;
      self(self, g.edges()[e].source, length + 1, r);
    }
  };
  grow(grow, target, 0, 0);
  return out;
}

BigInt brute_count_paths(const Graph& g, std::size_t target, std::size_t length) {
  if (length == 0) return 1;
  BigInt total = 0;
  for (std::size_t e : g.in_edges(target))
    total += brute_count_paths(g, g.edges()[e].source, length - 1);
  return total;
}

bool brute_lattice_contains(const std::vector<lpagrade::IntVector>& generators,
                            const lpagrade::IntVector& gamma, long bound) {
  const std::size_t k = generators.size();
  if (k == 0) return gamma.isZero();
  std::vector<long> c(k, -bound);
  while (true) {
    lpagrade::IntVector sum = lpagrade::IntVector::Zero(gamma.size());
    for (std::size_t i = 0; i < k; ++i) sum += generators[i] * BigInt(c[i]);
    if (sum == gamma) return true;
    std::size_t i = 0;
    while (i < k && c[i] == bound) c[i++] = -bound;
    if (i == k) return false;
    ++c[i];
  }
}

bool brute_condition_y(const Graph& g, std::size_t k_max, std::size_t depth) {
  const std::size_t n = g.vertex_count();
  // Vertices from which arbitrarily long walks start.
  std::vector<bool> infinite(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> start{v};
    const auto reach = lpagrade::reachable_mask(g, start);
    for (std::size_t w = 0; w < n; ++w) {
      if (!reach[w]) continue;
      std::vector<std::size_t> next;
      for (std::size_t e : g.out_edges(w)) next.push_back(g.edges()[e].target);
      if (!next.empty() && lpagrade::reachable_mask(g, next)[w]) infinite[v] = true;
    }
  }
  std::vector<std::size_t> walk_ends;  // vertex after each prefix
  bool ok = true;
  auto extend = [&](auto&& self, std::size_t at) -> void {
    if (!ok) return;
    if (walk_ends.size() == depth + 1) {
      if (!infinite[at]) return;
      for (std::size_t k = 1; k <= k_max; ++k) {
        bool some = false;
        for (std::size_t len = 0; len < walk_ends.size() && !some; ++len)
          some = brute_count_paths(g, walk_ends[len], len + k) > 0;
        if (!some) ok = false;
      }
      return;
    }
    for (std::size_t e : g.out_edges(at)) {
      const std::size_t t = g.edges()[e].target;
      walk_ends.push_back(t);
      self(self, t);
      walk_ends.pop_back();
    }
  };
  for (std::size_t v = 0; v < n && ok; ++v) {
    walk_ends = {v};
    extend(extend, v);
  }
  return ok;
}

namespace {

std::set<lpagrade::MonoidElement> closure(const Graph& g, const lpagrade::MonoidElement& a,
                                          std::int64_t threshold) {
  std::set<lpagrade::MonoidElement> seen{a};
  std::vector<lpagrade::MonoidElement> stack{a};
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (const auto& [t, k] : x.terms()) {
      if (t.degree >= threshold || g.is_sink(t.vertex)) continue;
      auto y = lpagrade::apply_a1(g, x, t);
      if (seen.insert(y).second) stack.push_back(std::move(y));
    }
  }
  return seen;
}

std::int64_t base_degree(const lpagrade::MonoidElement& a, const lpagrade::MonoidElement& b) {
  if (a.empty()) return b.empty() ? 0 : b.min_degree();
  if (b.empty()) return a.min_degree();
  return std::min(a.min_degree(), b.min_degree());
}

}  // namespace

bool closure_equiv(const Graph& g, const lpagrade::MonoidElement& a,
                   const lpagrade::MonoidElement& b, std::int64_t depth) {
  const std::int64_t threshold = base_degree(a, b) + depth;
  const auto ca = closure(g, a, threshold);
  const auto cb = closure(g, b, threshold);
  return std::any_of(ca.begin(), ca.end(), [&](const auto& x) { return cb.contains(x); });
}

bool closure_leq(const Graph& g, const lpagrade::MonoidElement& a,
                 const lpagrade::MonoidElement& b, std::int64_t depth) {
  const std::int64_t threshold = base_degree(a, b) + depth;
  const auto ca = closure(g, a, threshold);
  const auto cb = closure(g, b, threshold);
  for (const auto& x : ca)
    for (const auto& y : cb)
      if (x.contained_in(y)) return true;
  return false;
}

}  // namespace lpatest

namespace lpatest {

lpagrade::MatrixRingClassification brute_classify_matrix_ring(const lpagrade::ShiftedMatrixRing& ring) {
  using lpagrade::IntVector;
  const auto& L = ring.support;
  const std::size_t r = ring.ambient_rank;
  lpagrade::MatrixRingClassification out;

  // Finite quotient iff the generators span a full-rank lattice.
  std::size_t rank = 0;
  if (!L.generators.empty()) {
    const auto h = lpagrade::hermite_normal_form(L.generator_matrix());
    for (Eigen::Index i = 0; i < h.H.rows(); ++i)
      if (!h.H.row(i).isZero()) ++rank;
  }
  if (rank < r) return out;

  std::vector<IntVector> reps{IntVector::Zero(static_cast<Eigen::Index>(r))};
  auto find = [&](const IntVector& x) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (lpagrade::lattice_contains_hermite(L, x - reps[i])) return i;
    return std::nullopt;
  };
  for (std::size_t next = 0; next < reps.size(); ++next) {
    for (std::size_t axis = 0; axis < r; ++axis) {
      IntVector y = reps[next];
      y(static_cast<Eigen::Index>(axis)) += 1;
      if (!find(y)) reps.push_back(y);
    }
  }

  std::vector<BigInt> count(reps.size(), 0);
  for (const auto& s : ring.shifts) count[*find(s)] += 1;
  out.strongly_graded = std::all_of(count.begin(), count.end(), [](const BigInt& c) { return c > 0; });
  out.crossed_product = out.strongly_graded &&
                        std::all_of(count.begin(), count.end(), [&](const BigInt& c) { return c == count[0]; });
  out.skew_group_ring = out.crossed_product;
  out.group_ring = out.crossed_product && reps.size() == 1;
  return out;
}

lpagrade::ShiftedMatrixRing random_matrix_ring(std::mt19937_64& rng, std::size_t max_rank,
                                               std::size_t max_shifts) {
  std::uniform_int_distribution<std::size_t> rank(1, max_rank), gens(0, 3), n(1, max_shifts);
  std::uniform_int_distribution<int> gen_entry(-4, 4), shift_entry(-6, 6);
  lpagrade::ShiftedMatrixRing ring;
  ring.ambient_rank = rank(rng);
  ring.support.ambient_rank = ring.ambient_rank;
  const auto r = static_cast<Eigen::Index>(ring.ambient_rank);
  for (std::size_t k = gens(rng); k > 0; --k) {
    lpagrade::IntVector v(r);
    for (auto& x : v) x = gen_entry(rng);
    ring.support.generators.push_back(v);
  }
  for (std::size_t k = n(rng); k > 0; --k) {
    lpagrade::IntVector v(r);
    for (auto& x : v) x = shift_entry(rng);
    ring.shifts.push_back(v);
  }
  return ring;
}

}  // namespace lpatest
