#pragma once

#include "lpagrade/lattice.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <variant>
#include <vector>

namespace lpagrade {

/// M_n(K)(gamma_1, ..., gamma_n) over a graded division ring K with support
/// Gamma_K, for Gamma = Z^r. K enters only through its support lattice.
struct ShiftedMatrixRing {
  std::size_t ambient_rank = 1;
  Lattice support;
  std::vector<IntVector> shifts;
};

/// Order-unit sum gamma_1 Gamma_K + ... + gamma_n Gamma_K in Z[Gamma/Gamma_K].
using OrderUnitVector = std::map<CosetRep, BigInt>;

namespace witness {
struct InfiniteQuotient {};
struct MissingCoset {
  CosetRep coset;
};
struct UnequalMultiplicity {
  CosetRep first;
  BigInt first_count;
  CosetRep second;
  BigInt second_count;
};
/// Gamma_K is a proper subgroup: `coset` is a nonzero coset of Gamma/Gamma_K.
struct ProperSubgroup {
  CosetRep coset;
};
}  // namespace witness

using MatrixRingWitness =
    std::variant<std::monostate, witness::InfiniteQuotient, witness::MissingCoset,
                 witness::UnequalMultiplicity, witness::ProperSubgroup>;

struct MatrixRingClassification {
  bool strongly_graded = false;
  bool crossed_product = false;
  bool skew_group_ring = false;
  bool group_ring = false;
  MatrixRingWitness witness;
};

/// Checks the shape and returns the quotient Gamma/Gamma_K.
QuotientStructure validate(const ShiftedMatrixRing& ring);

OrderUnitVector order_unit(const ShiftedMatrixRing& ring, const QuotientStructure& q);

/// Strongly graded iff every coset occurs among the shifts; crossed product
/// (= skew group ring) iff additionally all coset multiplicities agree; group
/// ring iff Gamma = Gamma_K.
MatrixRingClassification classify_matrix_ring(const ShiftedMatrixRing& ring);

/// Stab(u) = Gamma, tested by translating u by every coset representative.
bool stabilizer_is_full(const ShiftedMatrixRing& ring);

/// Orbit of gamma Gamma_K under translation by Gamma. Throws for an infinite
/// quotient.
std::set<CosetRep> orbit_of_coset(const ShiftedMatrixRing& ring, const IntVector& gamma);

/// M_n(K[x^m, x^-m])(gamma_1, ..., gamma_n) classified by residue counting
/// alone. Independent of the lattice machinery.
MatrixRingClassification classify_laurent_matrix_ring(std::int64_t period,
                                                       const std::vector<std::int64_t>& shifts);

/// The r = 1 ring with Gamma_K = m Z and the given integer shifts.
ShiftedMatrixRing laurent_matrix_ring(std::int64_t period,
                                      const std::vector<std::int64_t>& shifts);

}  // namespace lpagrade
