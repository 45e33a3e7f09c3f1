#include "lpagrade/monoid.hpp"

#include "lpagrade/error.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <functional>
#include <numeric>

namespace lpagrade {

// ---------------------------------------------------------------------------
// MonoidElement

MonoidElement::MonoidElement(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
  for (const auto& [t, k] : terms_)
    if (k < 0) throw PreconditionError("monoid multiplicities must be nonnegative");
}

MonoidElement MonoidElement::single(std::size_t vertex, std::int64_t degree,
                                    const BigInt& multiplicity) {
  MonoidElement a;
  a.add(Term{degree, vertex}, multiplicity);
  return a;
}

BigInt MonoidElement::count(const Term& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void MonoidElement::add(const Term& t, const BigInt& multiplicity) {
  if (multiplicity == 0) return;
  terms_[t] += multiplicity;
}

void MonoidElement::remove(const Term& t, const BigInt& multiplicity) {
  auto it = terms_.find(t);
  if (it == terms_.end() || it->second < multiplicity)
    throw PreconditionError("term occurrence absent from element");
  it->second -= multiplicity;
  if (it->second == 0) terms_.erase(it);
}

std::int64_t MonoidElement::min_degree() const {
  if (terms_.empty()) throw PreconditionError("zero element has no degree");
  return terms_.begin()->first.degree;
}

std::int64_t MonoidElement::max_degree() const {
  if (terms_.empty()) throw PreconditionError("zero element has no degree");
  return terms_.rbegin()->first.degree;
}

std::set<std::size_t> MonoidElement::support() const {
  std::set<std::size_t> out;
  for (const auto& [t, k] : terms_) out.insert(t.vertex);
  return out;
}

MonoidElement MonoidElement::shifted(std::int64_t n) const {
  MonoidElement out;
  for (const auto& [t, k] : terms_) out.terms_.emplace(Term{t.degree + n, t.vertex}, k);
  return out;
}

MonoidElement MonoidElement::scaled(const BigInt& k) const {
  if (k < 0) throw PreconditionError("negative scale");
  if (k == 0) return {};
  MonoidElement out;
  for (const auto& [t, m] : terms_) out.terms_.emplace(t, m * k);
  return out;
}

bool MonoidElement::contained_in(const MonoidElement& other) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& kv) { return kv.second <= other.count(kv.first); });
}

MonoidElement operator+(const MonoidElement& a, const MonoidElement& b) {
  MonoidElement out = a;
  for (const auto& [t, k] : b.terms()) out.add(t, k);
  return out;
}

MonoidElement one_E(const Graph& g) {
  MonoidElement a;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) a.add(Term{0, v});
  return a;
}

// ---------------------------------------------------------------------------
// Text form

MonoidElement parse_element(const Graph& g, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  MonoidElement out;
  if (text.empty() || text == "0") return out;

  while (true) {
    const auto plus = text.find('+');
    std::string_view item = trim(text.substr(0, plus));
    if (item.empty()) throw ParseError(0, "empty term in monoid element");

    BigInt multiplicity = 1;
    if (const auto star = item.find('*'); star != std::string_view::npos) {
      const std::string_view k = trim(item.substr(0, star));
      if (k.empty() || !std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError(0, "bad multiplier '" + std::string(k) + "'");
      multiplicity = BigInt(std::string(k));
      item = trim(item.substr(star + 1));
    }
    const auto at = item.rfind('@');
    if (at == std::string_view::npos)
      throw ParseError(0, "term '" + std::string(item) + "' lacks '@degree'");
    const std::string_view vertex = trim(item.substr(0, at));
    const std::string_view degree_text = trim(item.substr(at + 1));
    std::int64_t degree = 0;
    const auto [ptr, ec] =
        std::from_chars(degree_text.data(), degree_text.data() + degree_text.size(), degree);
    if (ec != std::errc{} || ptr != degree_text.data() + degree_text.size() ||
        degree > (INT64_MAX >> 2) || degree < (INT64_MIN >> 2))
      throw ParseError(0, "bad degree '" + std::string(degree_text) + "'");
    const auto v = g.find_vertex(vertex);
    if (!v) throw ParseError(0, "unknown vertex '" + std::string(vertex) + "' in element");
    out.add(Term{degree, *v}, multiplicity);

    if (plus == std::string_view::npos) break;
    text = text.substr(plus + 1);
  }
  return out;
}

std::string format_element(const Graph& g, const MonoidElement& a) {
  if (a.empty()) return "0";
  std::string out;
  for (const auto& [t, k] : a.terms()) {
    if (!out.empty()) out += '+';
    if (k != 1) out += k.str() + '*';
    out += g.vertex_id(t.vertex) + '@' + std::to_string(t.degree);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

void expand_in_place(const Graph& g, MonoidElement& a, std::size_t vertex, std::int64_t degree,
                     const BigInt& count) {
  if (g.is_sink(vertex))
    throw PreconditionError("(A1) does not apply to the sink '" + g.vertex_id(vertex) + "'");
  a.remove(Term{degree, vertex}, count);
  for (std::size_t e : g.out_edges(vertex)) a.add(Term{degree + 1, g.edges()[e].target}, count);
}

std::int64_t lcm_capped(std::int64_t a, std::int64_t b, std::int64_t cap) {
  const std::int64_t l = std::lcm(a, b);
  return std::min(l, cap);
}

}  // namespace

MonoidElement apply_a1(const Graph& g, const MonoidElement& a, const Term& at) {
  if (at.vertex >= g.vertex_count()) throw PreconditionError("unknown vertex index");
  MonoidElement out = a;
  expand_in_place(g, out, at.vertex, at.degree, 1);
  return out;
}

Bounds default_bounds(const Graph& g, std::size_t max_cycles) {
  std::size_t longest = 0;
  for (const Cycle& c : enumerate_cycles(g, max_cycles)) longest = std::max(longest, c.length());
  return Bounds{static_cast<std::int64_t>(2 * g.vertex_count() + 2 * longest), 100000};
}

std::int64_t default_n_max(const Graph& g, std::size_t max_cycles) {
  constexpr std::int64_t kCap = 10000;
  std::int64_t n = 1;
  for (const Cycle& c : enumerate_cycles(g, max_cycles))
    n = lcm_capped(n, static_cast<std::int64_t>(c.length()), kCap);
  return n;
}

ClosureResult forward_closure_below(const Graph& g, const MonoidElement& a,
                                    std::int64_t threshold, std::size_t width_cap) {
  ClosureResult out;
  out.elements.insert(a);
  std::deque<MonoidElement> queue{a};
  while (!queue.empty()) {
    const MonoidElement x = std::move(queue.front());
    queue.pop_front();
    for (const auto& [t, k] : x.terms()) {
      if (t.degree >= threshold) break;  // terms iterate by degree
      if (g.is_sink(t.vertex)) continue;
      MonoidElement y = apply_a1(g, x, t);
      if (out.elements.insert(y).second) {
        if (out.elements.size() > width_cap) {
          out.elements.erase(y);
          out.truncated = true;
          return out;
        }
        queue.push_back(std::move(y));
      }
    }
  }
  return out;
}

ClosureResult forward_closure(const Graph& g, const MonoidElement& a, std::int64_t depth,
                              std::size_t width_cap) {
  if (a.empty()) return ClosureResult{{a}, false};
  return forward_closure_below(g, a, a.min_degree() + depth, width_cap);
}

// ---------------------------------------------------------------------------
// Level-synchronized searches
//
// Rewriting only raises degrees, so the terms of the lowest degree present
// can never be produced again. For a ~ b this forces, at that level, the
// unmatched copies on each side to be rewritten, while matched copies may be
// left alone. Processing levels upward therefore rewrites exactly what every
// common reduct must rewrite, and the search is exact for the degree window.
//
// For [a] <= [b] the left side is handled the same way. On the right, copies
// that are not matched at their level can never be matched later, so
// rewriting all of them only adds material: the reducts of a + d decompose
// as a' + d' (each (A1) step acts on a single term), hence a + d -> c and
// b -> c for some d iff some reduct a' of a is pointwise below some reduct e
// of b, with d = e - a' rewriting to itself in zero steps.

namespace {

struct LevelState {
  const Graph& g;
  MonoidElement left;
  MonoidElement right;
  std::vector<RewriteStep> steps_left;
  std::vector<RewriteStep> steps_right;

  void expand_left(std::size_t v, std::int64_t d, const BigInt& k) {
    expand_in_place(g, left, v, d, k);
    steps_left.push_back(RewriteStep{v, d, k});
  }
  void expand_right(std::size_t v, std::int64_t d, const BigInt& k) {
    expand_in_place(g, right, v, d, k);
    steps_right.push_back(RewriteStep{v, d, k});
  }

  // Counts at one level for every vertex that appears on either side.
  std::map<std::size_t, std::pair<BigInt, BigInt>> level(std::int64_t d) const {
    std::map<std::size_t, std::pair<BigInt, BigInt>> out;
    for (auto it = left.terms().lower_bound(Term{d, 0});
         it != left.terms().end() && it->first.degree == d; ++it)
      out[it->first.vertex].first = it->second;
    for (auto it = right.terms().lower_bound(Term{d, 0});
         it != right.terms().end() && it->first.degree == d; ++it)
      out[it->first.vertex].second = it->second;
    return out;
  }

  // Smallest degree >= d carrying a term on either side.
  std::optional<std::int64_t> next_level(std::int64_t d) const {
    std::optional<std::int64_t> best;
    auto l = left.terms().lower_bound(Term{d, 0});
    if (l != left.terms().end()) best = l->first.degree;
    auto r = right.terms().lower_bound(Term{d, 0});
    if (r != right.terms().end() && (!best || r->first.degree < *best)) best = r->first.degree;
    return best;
  }
};

std::int64_t window_base(const MonoidElement& a, const MonoidElement& b) {
  if (a.empty()) return b.min_degree();
  if (b.empty()) return a.min_degree();
  return std::min(a.min_degree(), b.min_degree());
}

Unknown unknown(std::string reason, const Bounds& bounds) {
  return Unknown{std::move(reason), bounds};
}

}  // namespace

SearchResult equiv_bounded(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                           const Bounds& bounds) {
  LevelState s{g, a, b, {}, {}};
  if (a == b) return Proved{RewriteCertificate{CertificateKind::Equivalence, a, b, {}, {}, {}, {}}};
  if (a.empty() || b.empty())
    return unknown("only one operand is zero; rewriting never produces or removes all terms",
                   bounds);
  const std::int64_t threshold = window_base(a, b) + bounds.depth;

  std::optional<std::int64_t> d = window_base(a, b);
  while (d && s.left != s.right) {
    if (*d >= threshold)
      return unknown("no common reduct below degree " + std::to_string(threshold), bounds);
    for (const auto& [v, counts] : s.level(*d)) {
      const auto& [l, r] = counts;
      if (l == r) continue;
      if (g.is_sink(v))
        return unknown("unmatched sink term " + g.vertex_id(v) + "@" + std::to_string(*d) +
                           " cannot be rewritten",
                       bounds);
      if (l > r)
        s.expand_left(v, *d, l - r);
      else
        s.expand_right(v, *d, r - l);
    }
    d = s.next_level(*d + 1);
  }
  if (s.left != s.right) return unknown("no common reduct", bounds);
  return Proved{RewriteCertificate{CertificateKind::Equivalence, s.left, s.right,
                                   std::move(s.steps_left), std::move(s.steps_right), {}, {}}};
}

SearchResult leq_bounded(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                         const Bounds& bounds) {
  LevelState s{g, a, b, {}, {}};
  auto proved = [&] {
    return Proved{RewriteCertificate{CertificateKind::LessEq, s.left, s.right,
                                     std::move(s.steps_left), std::move(s.steps_right), {}, {}}};
  };
  if (a.contained_in(b)) return proved();
  if (b.empty()) return unknown("right operand is zero", bounds);
  const std::int64_t threshold = window_base(a, b) + bounds.depth;

  std::optional<std::int64_t> d = window_base(a, b);
  while (d && *d < threshold) {
    if (s.left.contained_in(s.right)) return proved();
    for (const auto& [v, counts] : s.level(*d)) {
      const auto& [l, r] = counts;
      if (l > r) {
        if (g.is_sink(v))
          return unknown("unmatched sink term " + g.vertex_id(v) + "@" + std::to_string(*d) +
                             " on the left cannot be rewritten",
                         bounds);
        s.expand_left(v, *d, l - r);
      } else if (r > l && !g.is_sink(v)) {
        s.expand_right(v, *d, r - l);
      }
    }
    d = s.next_level(*d + 1);
  }
  if (s.left.contained_in(s.right)) return proved();
  return unknown("no comparable reducts below degree " + std::to_string(threshold), bounds);
}

bool is_periodic_graph(const Graph& g, const MonoidElement& a, std::size_t max_cycles) {
  if (a.empty()) throw PreconditionError("periodicity is undefined for the zero element");
  const auto support = a.support();
  const std::vector<std::size_t> start(support.begin(), support.end());
  const std::vector<bool> reach = reachable_mask(g, start);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (reach[v] && g.is_sink(v)) return false;
  for (const Cycle& c : enumerate_cycles(g, max_cycles)) {
    const auto verts = cycle_vertices(g, c);
    const bool touches = std::any_of(verts.begin(), verts.end(), [&](std::size_t v) { return reach[v]; });
    if (touches && cycle_has_exit(g, c)) return false;
  }
  return true;
}

SearchResult is_periodic_oracle(const Graph& g, const MonoidElement& a, std::int64_t n_max,
                                const Bounds& bounds) {
  if (a.empty()) throw PreconditionError("periodicity is undefined for the zero element");
  for (std::int64_t n = 1; n <= n_max; ++n) {
    SearchResult r = equiv_bounded(g, a, a.shifted(n), bounds);
    if (auto* p = std::get_if<Proved>(&r)) {
      p->certificate.kind = CertificateKind::Periodicity;
      p->certificate.period = n;
      return r;
    }
  }
  return unknown("no period n <= " + std::to_string(n_max) + " found", bounds);
}

SearchResult strong_order_unit_bounded(const Graph& g, const MonoidElement& a,
                                       const BigInt& n_max, const Bounds& bounds) {
  if (a.empty()) throw PreconditionError("strong order-unit probe must be nonzero");
  const MonoidElement unit = one_E(g);
  auto attempt = [&](const BigInt& n) { return leq_bounded(g, a, unit.scaled(n), bounds); };

  if (n_max < 1) return unknown("multiple bound is below 1", bounds);
  SearchResult top = attempt(n_max);
  if (!is_proved(top))
    return unknown("a <= N 1_E not shown for N <= " + n_max.str() + ": " +
                       std::get<Unknown>(top).reason,
                   bounds);
  // leq_bounded(a, N 1_E) is monotone in N.
  BigInt lo = 1, hi = n_max;
  SearchResult best = std::move(top);
  while (lo < hi) {
    const BigInt mid = (lo + hi) / 2;
    SearchResult r = attempt(mid);
    if (is_proved(r)) {
      hi = mid;
      best = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  // `best` comes from the last successful probe, which sits at `hi`.
  std::get<Proved>(best).certificate.multiple = hi;
  return best;
}

// ---------------------------------------------------------------------------
// Bound constant of the sink-free estimate

BigInt strong_unit_constant(const Graph& g, std::size_t max_cycles) {
  const std::size_t n = g.vertex_count();
  for (std::size_t v = 0; v < n; ++v)
    if (g.is_sink(v)) throw PreconditionError("the bound constant needs a graph without sinks");

  const std::vector<Cycle> cycles = enumerate_cycles(g, max_cycles);
  // Per vertex: the first cycle (canonical order) through it and its position.
  std::vector<std::optional<std::pair<std::vector<std::size_t>, std::size_t>>> home(n);
  for (const Cycle& c : cycles) {
    const auto verts = cycle_vertices(g, c);
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (!home[verts[i]]) home[verts[i]] = std::make_pair(verts, i);
  }

  // v -> sum x^{k_i} v_i with every v_i on a cycle; vertices off cycles
  // form an acyclic region so the recursion terminates.
  std::vector<std::optional<MonoidElement>> reduct(n);
  std::function<const MonoidElement&(std::size_t)> reduce = [&](std::size_t v)
      -> const MonoidElement& {
    if (reduct[v]) return *reduct[v];
    MonoidElement a;
    if (home[v]) {
      a.add(Term{0, v});
    } else {
      for (std::size_t e : g.out_edges(v)) a = a + reduce(g.edges()[e].target).shifted(1);
    }
    reduct[v] = std::move(a);
    return *reduct[v];
  };

  BigInt l = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::map<std::size_t, BigInt> parallel;
    for (std::size_t e : g.out_edges(v)) parallel[g.edges()[e].target] += 1;
    for (const auto& [w, k] : parallel) l = std::max(l, k);

    std::map<std::size_t, BigInt> chosen;  // multiset of the w_i
    for (const auto& [t, k] : reduce(v).terms()) {
      const auto& [ring, pos] = *home[t.vertex];
      const auto m = static_cast<std::int64_t>(ring.size());
      const std::int64_t back = floor_mod(static_cast<std::int64_t>(pos) - (t.degree + 1), m);
      chosen[ring[static_cast<std::size_t>(back)]] += k;
    }
    for (const auto& [w, k] : chosen) l = std::max(l, k);
  }
  return l;
}

BigInt strong_unit_bound(const Graph& g, const MonoidElement& a, std::size_t max_cycles) {
  const BigInt l = strong_unit_constant(g, max_cycles);
  const BigInt vertices = static_cast<unsigned long>(g.vertex_count());
  BigInt total = 0;
  for (const auto& [t, k] : a.terms()) {
    if (t.degree == 0) {
      total += k;
      continue;
    }
    const auto e = static_cast<unsigned>(t.degree < 0 ? -t.degree : t.degree);
    total += k * boost::multiprecision::pow(vertices, e - 1) * boost::multiprecision::pow(l, e);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Certificate replay

namespace {

bool replay(const Graph& g, MonoidElement& state, const std::vector<RewriteStep>& steps) {
  for (const RewriteStep& s : steps) {
    if (s.vertex >= g.vertex_count() || s.count <= 0 || g.is_sink(s.vertex)) return false;
    if (state.count(Term{s.degree, s.vertex}) < s.count) return false;
    expand_in_place(g, state, s.vertex, s.degree, s.count);
  }
  return true;
}

}  // namespace

bool verify_certificate(const Graph& g, const MonoidElement& left, const MonoidElement& right,
                        const RewriteCertificate& cert) {
  if (cert.kind == CertificateKind::Periodicity &&
      (!cert.period || *cert.period <= 0 || right != left.shifted(*cert.period)))
    return false;
  MonoidElement l = left;
  MonoidElement r = right;
  if (!replay(g, l, cert.steps_left) || !replay(g, r, cert.steps_right)) return false;
  if (l != cert.left_reduct || r != cert.right_reduct) return false;
  if (cert.kind == CertificateKind::LessEq) return l.contained_in(r);
  return l == r;
}

}  // namespace lpagrade
