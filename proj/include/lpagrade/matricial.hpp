#pragma once

#include "lpagrade/graph.hpp"
#include "lpagrade/matrix_ring.hpp"

#include <variant>
#include <vector>

namespace lpagrade {

/// Multiset of integer shifts: shift -> multiplicity.
using ShiftMultiset = std::map<std::int64_t, BigInt>;

/// M_k(K)(gamma_1, ..., gamma_k) contributed by one sink.
struct SinkBlock {
  std::string sink;
  ShiftMultiset shifts;

  BigInt size() const { return total_count(shifts); }
};

/// M_n(K[x^m, x^-m])(delta_1, ..., delta_n) contributed by one cycle.
struct CycleBlock {
  Cycle cycle;
  std::size_t period = 1;
  ShiftMultiset shifts;

  BigInt size() const { return total_count(shifts); }
};

struct GradedMatricialAlgebra {
  std::vector<SinkBlock> sink_blocks;
  std::vector<CycleBlock> cycle_blocks;
};

/// Block decomposition of L_K(E) for a finite no-exit graph: one sink block
/// per sink (shifts = lengths of paths into it), one cycle block per cycle
/// (shifts = lengths of paths into its base avoiding the cycle).
GradedMatricialAlgebra matricial_representation(const Graph& g,
                                                std::size_t max_cycles = kDefaultMaxCycles);

/// Normalizes shifts with moves that preserve the graded isomorphism class:
/// reduction mod m in cycle blocks, a common translation per block, and
/// reordering. Idempotent.
GradedMatricialAlgebra canonicalize(const GradedMatricialAlgebra& a);

/// Block kinds, periods and shifts agree (labels ignored).
bool same_shape(const GradedMatricialAlgebra& a, const GradedMatricialAlgebra& b);

/// True when the canonical forms agree, which implies a graded isomorphism.
/// False means "not identified", not "not isomorphic".
bool graded_iso_sufficient(const GradedMatricialAlgebra& a, const GradedMatricialAlgebra& b);

/// Z[x, x^-1] summand with order-unit given by the sink block's shifts.
struct FreeComponent {
  ShiftMultiset unit;
  friend bool operator==(const FreeComponent&, const FreeComponent&) = default;
};

/// Z[x]/(x^m = 1) summand with order-unit sum_j unit[j] x^j.
struct CyclicComponent {
  std::size_t period = 1;
  std::vector<BigInt> unit;
  friend bool operator==(const CyclicComponent&, const CyclicComponent&) = default;
};

using KComponent = std::variant<FreeComponent, CyclicComponent>;

struct KTheoryPresentation {
  std::vector<KComponent> components;
};

KTheoryPresentation k_theory_presentation(const GradedMatricialAlgebra& a);

inline constexpr std::size_t kMaxExpandedBlock = 1000000;

/// The block as a shifted matrix ring over Z (r = 1). Sink blocks have
/// support 0 (K trivially graded), cycle blocks support mZ.
ShiftedMatrixRing as_matrix_ring(const SinkBlock& block);
ShiftedMatrixRing as_matrix_ring(const CycleBlock& block);

}  // namespace lpagrade
