#include "lpagrade/matrix_ring.hpp"

#include "lpagrade/error.hpp"

namespace lpagrade {

QuotientStructure validate(const ShiftedMatrixRing& ring) {
  if (ring.shifts.empty()) throw PreconditionError("a matrix ring needs at least one shift");
  if (ring.support.ambient_rank != ring.ambient_rank)
    throw PreconditionError("support lattice rank differs from ring rank");
  for (const IntVector& s : ring.shifts)
    if (s.size() != static_cast<Eigen::Index>(ring.ambient_rank))
      throw PreconditionError("shift vector length does not match rank");
  return quotient_structure(ring.support);
}

OrderUnitVector order_unit(const ShiftedMatrixRing& ring, const QuotientStructure& q) {
  OrderUnitVector u;
  for (const IntVector& s : ring.shifts) u[coset_canonical(q, s)] += 1;
  return u;
}

MatrixRingClassification classify_matrix_ring(const ShiftedMatrixRing& ring) {
  const QuotientStructure q = validate(ring);
  MatrixRingClassification out;
  if (!q.is_finite()) {
    out.witness = witness::InfiniteQuotient{};
    return out;
  }
  const OrderUnitVector u = order_unit(ring, q);
  const std::vector<CosetRep> cosets = enumerate_cosets(q);

  for (const CosetRep& c : cosets) {
    if (!u.contains(c)) {
      out.witness = witness::MissingCoset{c};
      return out;
    }
  }
  out.strongly_graded = true;

  const auto& [first, first_count] = *u.begin();
  for (const auto& [coset, count] : u) {
    if (count != first_count) {
      out.witness = witness::UnequalMultiplicity{first, first_count, coset, count};
      return out;
    }
  }
  out.crossed_product = true;
  out.skew_group_ring = true;

  if (cosets.size() > 1) {
    out.witness = witness::ProperSubgroup{cosets[1]};
    return out;
  }
  out.group_ring = true;
  return out;
}

bool stabilizer_is_full(const ShiftedMatrixRing& ring) {
  const QuotientStructure q = validate(ring);
  if (!q.is_finite()) return false;
  const OrderUnitVector u = order_unit(ring, q);
  for (const CosetRep& delta : enumerate_cosets(q)) {
    OrderUnitVector moved;
    for (const auto& [coset, count] : u)
      moved[coset_canonical(q, coset.value + delta.value)] += count;
    if (moved != u) return false;
  }
  return true;
}

std::set<CosetRep> orbit_of_coset(const ShiftedMatrixRing& ring, const IntVector& gamma) {
  const QuotientStructure q = validate(ring);
  std::set<CosetRep> orbit;
  for (const CosetRep& delta : enumerate_cosets(q))
    orbit.insert(coset_canonical(q, gamma + delta.value));
  return orbit;
}

MatrixRingClassification classify_laurent_matrix_ring(
    std::int64_t period, const std::vector<std::int64_t>& shifts) {
  if (period <= 0) throw PreconditionError("period must be positive");
  if (shifts.empty()) throw PreconditionError("a matrix ring needs at least one shift");
  std::vector<std::int64_t> k(static_cast<std::size_t>(period), 0);
  for (std::int64_t s : shifts) ++k[static_cast<std::size_t>(floor_mod(s, period))];

  const auto residue = [](std::int64_t j) { return CosetRep{int_vector({j})}; };
  MatrixRingClassification out;
  for (std::int64_t j = 0; j < period; ++j) {
    if (k[static_cast<std::size_t>(j)] == 0) {
      out.witness = witness::MissingCoset{residue(j)};
      return out;
    }
  }
  out.strongly_graded = true;
  for (std::int64_t j = 1; j < period; ++j) {
    if (k[static_cast<std::size_t>(j)] != k[0]) {
      out.witness = witness::UnequalMultiplicity{residue(0), BigInt(k[0]), residue(j),
                                                 BigInt(k[static_cast<std::size_t>(j)])};
      return out;
    }
  }
  out.crossed_product = out.skew_group_ring = true;
  if (period != 1) {
    out.witness = witness::ProperSubgroup{residue(1)};
    return out;
  }
  out.group_ring = true;
  return out;
}

ShiftedMatrixRing laurent_matrix_ring(std::int64_t period,
                                      const std::vector<std::int64_t>& shifts) {
  ShiftedMatrixRing ring;
  ring.ambient_rank = 1;
  ring.support = Lattice{1, {int_vector({static_cast<long>(period)})}};
  for (std::int64_t s : shifts) ring.shifts.push_back(int_vector({static_cast<long>(s)}));
  return ring;
}

}  // namespace lpagrade
