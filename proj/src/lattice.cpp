#include "lpagrade/lattice.hpp"

#include "lpagrade/error.hpp"

namespace lpagrade {

IntMatrix Lattice::generator_matrix() const {
  const auto r = static_cast<Eigen::Index>(ambient_rank);
  IntMatrix m(static_cast<Eigen::Index>(generators.size()), r);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != r)
      throw PreconditionError("lattice generator has length " +
                              std::to_string(generators[i].size()) + ", expected " +
                              std::to_string(ambient_rank));
    m.row(static_cast<Eigen::Index>(i)) = generators[i];
  }
  return m;
}

bool operator<(const CosetRep& a, const CosetRep& b) {
  const Eigen::Index n = std::min(a.value.size(), b.value.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a.value(i) != b.value(i)) return a.value(i) < b.value(i);
  }
  return a.value.size() < b.value.size();
}

QuotientStructure quotient_structure(const Lattice& lattice) {
  if (lattice.ambient_rank == 0) throw PreconditionError("ambient rank must be positive");
  const auto r = static_cast<Eigen::Index>(lattice.ambient_rank);
  QuotientStructure q;
  q.ambient_rank = lattice.ambient_rank;
  q.diagonal.assign(lattice.ambient_rank, BigInt(0));

  const IntMatrix m = lattice.generator_matrix();
  if (m.rows() == 0) {
    q.transform = IntMatrix::Identity(r, r);
    q.inverse_transform = IntMatrix::Identity(r, r);
  } else {
    auto snf = smith_normal_form(m);
    const Eigen::Index d = std::min(snf.S.rows(), snf.S.cols());
    for (Eigen::Index i = 0; i < d; ++i) q.diagonal[static_cast<std::size_t>(i)] = snf.S(i, i);
    q.transform = std::move(snf.V);
    q.inverse_transform = std::move(snf.V_inverse);
  }

  BigInt order = 1;
  for (const BigInt& d : q.diagonal) {
    if (d == 0) {
      ++q.free_rank;
    } else {
      order *= d;
      if (d >= 2) q.invariant_factors.push_back(d);
    }
  }
  if (q.free_rank == 0) q.order = order;
  return q;
}

CosetRep coset_canonical(const QuotientStructure& q, const IntVector& gamma) {
  if (gamma.size() != static_cast<Eigen::Index>(q.ambient_rank))
    throw PreconditionError("vector length " + std::to_string(gamma.size()) +
                            " does not match ambient rank " +
                            std::to_string(q.ambient_rank));
  IntVector y = gamma * q.transform;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const BigInt& d = q.diagonal[static_cast<std::size_t>(i)];
    if (d != 0) y(i) = floor_mod(y(i), d);
  }
  return CosetRep{y * q.inverse_transform};
}

std::vector<CosetRep> enumerate_cosets(const QuotientStructure& q,
                                       std::size_t max_cosets) {
  if (!q.is_finite())
    throw PreconditionError("quotient is infinite; cosets cannot be enumerated");
  if (*q.order > BigInt(max_cosets))
    throw ResourceLimitError("coset count " + q.order->str() + " exceeds cap of " +
                             std::to_string(max_cosets));
  const auto r = static_cast<Eigen::Index>(q.ambient_rank);
  const std::size_t count = q.order->convert_to<std::size_t>();

  std::vector<CosetRep> out;
  out.reserve(count);
  IntVector y = IntVector::Zero(r);
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(CosetRep{y * q.inverse_transform});
    // Odometer over the finite Smith coordinates, last coordinate fastest.
    for (Eigen::Index i = r; i-- > 0;) {
      const BigInt& d = q.diagonal[static_cast<std::size_t>(i)];
      if (d <= 1) continue;
      y(i) += 1;
      if (y(i) < d) break;
      y(i) = 0;
    }
  }
  return out;
}

bool lattice_contains(const QuotientStructure& q, const IntVector& gamma) {
  return coset_canonical(q, gamma) ==
         coset_canonical(q, IntVector::Zero(static_cast<Eigen::Index>(q.ambient_rank)));
}

bool lattice_contains_hermite(const Lattice& lattice, const IntVector& gamma) {
  if (gamma.size() != static_cast<Eigen::Index>(lattice.ambient_rank))
    throw PreconditionError("vector length does not match ambient rank");
  const IntMatrix m = lattice.generator_matrix();
  if (m.rows() == 0) return gamma.isZero();
  const IntMatrix h = hermite_normal_form(m).H;
  IntVector rest = gamma;
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    while (col < h.cols() && h(i, col) == 0) {
      if (rest(col) != 0) return false;
      ++col;
    }
    if (col == h.cols()) break;
    if (rest(col) % h(i, col) != 0) return false;
    const BigInt c = rest(col) / h(i, col);
    rest -= c * h.row(i);
    ++col;
  }
  return rest.isZero();
}

IntVector int_vector(std::initializer_list<long> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long x : entries) v(i++) = x;
  return v;
}

}  // namespace lpagrade
