#pragma once

#include "lpagrade/graph.hpp"
#include "lpagrade/lattice.hpp"
#include "lpagrade/monoid.hpp"

#include <optional>
#include <random>
#include <set>
#include <vector>

// Slow, direct reimplementations used to check the library.
namespace lpatest {

/// Cycles found by walking every edge sequence with distinct sources from
/// every start vertex, rotated to start at the smallest vertex id.
std::set<lpagrade::Cycle> brute_cycles(const lpagrade::Graph& g);

/// Paths ending at `target` enumerated edge by edge, backwards. Paths that
/// contain m consecutive edges of `forbidden` (m = its length) are skipped.
/// Throws std::runtime_error if a path of length max_length survives, i.e.
/// the set is not provably finite at that length.
lpagrade::LengthMultiset brute_paths_into(const lpagrade::Graph& g, std::size_t target,
                                          const std::optional<lpagrade::Cycle>& forbidden,
                                          std::size_t max_length);

/// Paths of exactly `length` edges ending at `target`, counted by DFS.
lpagrade::BigInt brute_count_paths(const lpagrade::Graph& g, std::size_t target,
                                   std::size_t length);

/// gamma = sum c_i g_i for some integer c with |c_i| <= bound.
bool brute_lattice_contains(const std::vector<lpagrade::IntVector>& generators,
                            const lpagrade::IntVector& gamma, long bound);

/// Literal definition of Condition (Y) restricted to walks of length
/// `depth` that extend to infinite paths, by walk enumeration.
bool brute_condition_y(const lpagrade::Graph& g, std::size_t k_max, std::size_t depth);

/// Closures of a and b under single (A1) steps inside the degree window
/// meet.
bool closure_equiv(const lpagrade::Graph& g, const lpagrade::MonoidElement& a,
                   const lpagrade::MonoidElement& b, std::int64_t depth);

/// Some element of the closure of a is pointwise below some element of the
/// closure of b.
bool closure_leq(const lpagrade::Graph& g, const lpagrade::MonoidElement& a,
                 const lpagrade::MonoidElement& b, std::int64_t depth);

}  // namespace lpatest

#include "lpagrade/matrix_ring.hpp"

namespace lpatest {

/// Classification by explicit coset enumeration: cosets are discovered by
/// breadth-first search from 0 along the unit vectors, and two vectors are
/// identified when their difference solves against the Hermite basis.
lpagrade::MatrixRingClassification brute_classify_matrix_ring(const lpagrade::ShiftedMatrixRing& ring);

/// Random ring with rank <= max_rank, support generators in [-4, 4], and
/// 1..max_shifts shifts with entries in [-6, 6].
lpagrade::ShiftedMatrixRing random_matrix_ring(std::mt19937_64& rng, std::size_t max_rank,
                                               std::size_t max_shifts);

}  // namespace lpatest
