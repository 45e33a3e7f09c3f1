#pragma once

#include "lpagrade/graph.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace lpagrade {

/// Generator x^degree [vertex] of the free commutative Z-monoid on E^0.
/// Ordered by degree first so that maps iterate level by level.
struct Term {
  std::int64_t degree = 0;
  std::size_t vertex = 0;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Element of F_E^Gamma (Gamma = <x> infinite cyclic): a finite sum of
/// terms with positive multiplicities. The zero element is empty.
class MonoidElement {
 public:
  using Terms = std::map<Term, BigInt>;

  MonoidElement() = default;
  explicit MonoidElement(Terms terms);

  static MonoidElement single(std::size_t vertex, std::int64_t degree,
                              const BigInt& multiplicity = 1);

  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  BigInt count(const Term& t) const;

  void add(const Term& t, const BigInt& multiplicity = 1);
  /// Throws PreconditionError when fewer than `multiplicity` copies exist.
  void remove(const Term& t, const BigInt& multiplicity = 1);

  std::int64_t min_degree() const;
  std::int64_t max_degree() const;
  std::set<std::size_t> support() const;

  /// x^n * a: every degree raised by n.
  MonoidElement shifted(std::int64_t n) const;
  MonoidElement scaled(const BigInt& k) const;

  /// Pointwise a <= b.
  bool contained_in(const MonoidElement& other) const;

  friend MonoidElement operator+(const MonoidElement& a, const MonoidElement& b);
  friend bool operator==(const MonoidElement&, const MonoidElement&) = default;
  friend bool operator<(const MonoidElement& a, const MonoidElement& b) {
    return a.terms_ < b.terms_;
  }

 private:
  Terms terms_;
};

/// 1_E = sum of all vertices at degree 0.
MonoidElement one_E(const Graph& g);

/// Parses "v@0+2*w@1" (multiplier optional, "0" or "" is the zero element).
MonoidElement parse_element(const Graph& g, std::string_view text);
std::string format_element(const Graph& g, const MonoidElement& a);

/// One application of (A1): one copy of x^d v becomes sum_{e in s^-1(v)} x^{d+1} r(e).
MonoidElement apply_a1(const Graph& g, const MonoidElement& a, const Term& at);

/// `count` simultaneous applications of (A1) to copies of x^degree [vertex].
struct RewriteStep {
  std::size_t vertex = 0;
  std::int64_t degree = 0;
  BigInt count = 1;
  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

/// Search limits. A rewrite may only touch occurrences whose degree is below
/// (lowest degree among the operands) + depth.
struct Bounds {
  std::int64_t depth = 1;
  std::size_t width_cap = 100000;
};

Bounds default_bounds(const Graph& g, std::size_t max_cycles = kDefaultMaxCycles);

/// lcm of all cycle lengths, capped at 10^4 (1 for acyclic graphs).
std::int64_t default_n_max(const Graph& g, std::size_t max_cycles = kDefaultMaxCycles);

struct ClosureResult {
  std::set<MonoidElement> elements;
  bool truncated = false;
};

/// Everything reachable from `a` by rewriting occurrences of degree < threshold.
ClosureResult forward_closure_below(const Graph& g, const MonoidElement& a,
                                    std::int64_t threshold, std::size_t width_cap);
/// Threshold = min degree of `a` + depth.
ClosureResult forward_closure(const Graph& g, const MonoidElement& a, std::int64_t depth,
                              std::size_t width_cap);

enum class CertificateKind { Equivalence, LessEq, Periodicity };

/// Replayable evidence: steps_left rewrites the left operand to left_reduct,
/// steps_right rewrites the right operand to right_reduct. For Equivalence
/// and Periodicity the two reducts coincide; for LessEq left_reduct is
/// pointwise below right_reduct.
struct RewriteCertificate {
  CertificateKind kind = CertificateKind::Equivalence;
  MonoidElement left_reduct;
  MonoidElement right_reduct;
  std::vector<RewriteStep> steps_left;
  std::vector<RewriteStep> steps_right;
  std::optional<std::int64_t> period;  ///< Periodicity: a ~ x^period a
  std::optional<BigInt> multiple;      ///< strong order-unit: a <= multiple * 1_E
};

struct Proved {
  RewriteCertificate certificate;
};

struct Unknown {
  std::string reason;
  Bounds bounds;
};

using SearchResult = std::variant<Proved, Unknown>;

inline bool is_proved(const SearchResult& r) { return std::holds_alternative<Proved>(r); }

/// Proved iff the bounded closures of a and b meet (a common reduct exists).
SearchResult equiv_bounded(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                           const Bounds& bounds);

/// Proved iff some reduct of a sits pointwise below some reduct of b, i.e.
/// [a] <= [b] with witness d = (reduct of b) - (reduct of a).
SearchResult leq_bounded(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                         const Bounds& bounds);

/// Structural periodicity test: from the support of a no sink is reachable
/// and every reachable cycle has no exit.
bool is_periodic_graph(const Graph& g, const MonoidElement& a,
                       std::size_t max_cycles = kDefaultMaxCycles);

/// Smallest n <= n_max with a ~ x^n a within bounds.
SearchResult is_periodic_oracle(const Graph& g, const MonoidElement& a, std::int64_t n_max,
                                const Bounds& bounds);

/// Smallest N <= n_max with a <= N * 1_E within bounds.
SearchResult strong_order_unit_bounded(const Graph& g, const MonoidElement& a,
                                       const BigInt& n_max, const Bounds& bounds);

/// The constant l from the sink-free strong-order-unit estimate
/// x^n[v] <= |E^0|^(n-1) l^n 1_E. Throws PreconditionError if g has sinks.
BigInt strong_unit_constant(const Graph& g, std::size_t max_cycles = kDefaultMaxCycles);

/// Upper bound on the smallest N with [a] <= N 1_E for a sink-free graph:
/// sum over terms of 1 (degree 0) or |E^0|^(|d|-1) l^|d|.
BigInt strong_unit_bound(const Graph& g, const MonoidElement& a,
                         std::size_t max_cycles = kDefaultMaxCycles);

/// Replays a certificate step by step against the operands.
bool verify_certificate(const Graph& g, const MonoidElement& left,
                        const MonoidElement& right, const RewriteCertificate& cert);

}  // namespace lpagrade
