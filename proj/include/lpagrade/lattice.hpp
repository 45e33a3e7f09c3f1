#pragma once

#include "lpagrade/integer.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace lpagrade {

// ---------------------------------------------------------------------------
// Normal forms over any exact integer scalar (BigInt in practice).

template <typename Scalar>
struct HermiteForm {
  Matrix<Scalar> H;  ///< row echelon form, positive pivots, reduced above
  Matrix<Scalar> U;  ///< unimodular, H = U * m
};

template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> S;          ///< diagonal, d_1 | d_2 | ..., nonnegative
  Matrix<Scalar> U;          ///< unimodular, S = U * m * V
  Matrix<Scalar> V;          ///< unimodular
  Matrix<Scalar> V_inverse;  ///< exact inverse of V
};

namespace detail {

template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

template <typename Scalar>
void swap_rows(Matrix<Scalar>& m, Eigen::Index i, Eigen::Index j) {
  if (i != j) m.row(i).swap(m.row(j));
}

template <typename Scalar>
void swap_cols(Matrix<Scalar>& m, Eigen::Index i, Eigen::Index j) {
  if (i != j) m.col(i).swap(m.col(j));
}

// row(i) -= q * row(j)
template <typename Scalar>
void sub_row(Matrix<Scalar>& m, Eigen::Index i, Eigen::Index j, const Scalar& q) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) -= q * m(j, c);
}

// col(i) -= q * col(j)
template <typename Scalar>
void sub_col(Matrix<Scalar>& m, Eigen::Index i, Eigen::Index j, const Scalar& q) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, i) -= q * m(r, j);
}

}  // namespace detail

/// Row-style Hermite normal form: rows of `m` are lattice generators and
/// `H = U * m` has the same row lattice.
template <typename Derived>
HermiteForm<typename Derived::Scalar> hermite_normal_form(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using detail::floor_div;
  HermiteForm<Scalar> out{m.eval(), Matrix<Scalar>::Identity(m.rows(), m.rows())};
  auto& H = out.H;
  auto& U = out.U;
  const Eigen::Index rows = H.rows();
  const Eigen::Index cols = H.cols();

  Eigen::Index p = 0;
  for (Eigen::Index c = 0; c < cols && p < rows; ++c) {
    // Euclid down column c on rows p..rows-1.
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index i = p; i < rows; ++i) {
        if (H(i, c) != 0 && (best < 0 || abs(H(i, c)) < abs(H(best, c)))) best = i;
      }
      if (best < 0) break;
      detail::swap_rows(H, p, best);
      detail::swap_rows(U, p, best);
      bool clear = true;
      for (Eigen::Index i = p + 1; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        const Scalar q = H(i, c) / H(p, c);
        detail::sub_row(H, i, p, q);
        detail::sub_row(U, i, p, q);
        if (H(i, c) != 0) clear = false;
      }
      if (clear) break;
    }
    if (H(p, c) == 0) continue;
    if (H(p, c) < 0) {
      H.row(p) *= Scalar(-1);
      U.row(p) *= Scalar(-1);
    }
    for (Eigen::Index i = 0; i < p; ++i) {
      const Scalar q = floor_div(H(i, c), H(p, c));
      if (q != 0) {
        detail::sub_row(H, i, p, q);
        detail::sub_row(U, i, p, q);
      }
    }
    ++p;
  }
  return out;
}

/// Smith normal form `S = U * m * V` with the divisibility chain on the
/// diagonal.
template <typename Derived>
SmithForm<typename Derived::Scalar> smith_normal_form(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  SmithForm<Scalar> out{m.eval(), Matrix<Scalar>::Identity(m.rows(), m.rows()),
                        Matrix<Scalar>::Identity(m.cols(), m.cols()),
                        Matrix<Scalar>::Identity(m.cols(), m.cols())};
  auto& S = out.S;
  auto& U = out.U;
  auto& V = out.V;
  auto& Vi = out.V_inverse;
  const Eigen::Index rows = S.rows();
  const Eigen::Index cols = S.cols();

  // Column ops on V are mirrored as inverse row ops on Vi.
  auto col_swap = [&](Eigen::Index i, Eigen::Index j) {
    detail::swap_cols(S, i, j);
    detail::swap_cols(V, i, j);
    detail::swap_rows(Vi, i, j);
  };
  auto col_sub = [&](Eigen::Index i, Eigen::Index j, const Scalar& q) {
    // col_i -= q col_j  <=>  V := V * E, Vi := E^{-1} * Vi with row_j += q row_i
    detail::sub_col(S, i, j, q);
    detail::sub_col(V, i, j, q);
    detail::sub_row(Vi, j, i, Scalar(-q));
  };
  auto row_swap = [&](Eigen::Index i, Eigen::Index j) {
    detail::swap_rows(S, i, j);
    detail::swap_rows(U, i, j);
  };
  auto row_sub = [&](Eigen::Index i, Eigen::Index j, const Scalar& q) {
    detail::sub_row(S, i, j, q);
    detail::sub_row(U, i, j, q);
  };

  const Eigen::Index diag = std::min(rows, cols);
  for (Eigen::Index t = 0; t < diag; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index i = t; i < rows; ++i)
      for (Eigen::Index j = t; j < cols; ++j)
        if (S(i, j) != 0 && (bi < 0 || abs(S(i, j)) < abs(S(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    row_swap(t, bi);
    col_swap(t, bj);

    while (true) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        row_sub(i, t, Scalar(S(i, t) / S(t, t)));
        if (S(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        col_sub(j, t, Scalar(S(t, j) / S(t, t)));
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder survived: move the smallest one onto the pivot.
        Eigen::Index bi2 = t, bj2 = t;
        for (Eigen::Index i = t + 1; i < rows; ++i)
          if (S(i, t) != 0 && abs(S(i, t)) < abs(S(bi2, bj2))) {
            bi2 = i;
            bj2 = t;
          }
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (S(t, j) != 0 && abs(S(t, j)) < abs(S(bi2, bj2))) {
            bi2 = t;
            bj2 = j;
          }
        row_swap(t, bi2);
        col_swap(t, bj2);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_sub(t, bad, Scalar(-1));  // row_t += row_bad
    }
    if (S(t, t) < 0) {
      S.row(t) *= Scalar(-1);
      U.row(t) *= Scalar(-1);
    }
  }
  return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
template <typename Derived>
typename Derived::Scalar integer_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = m.eval();
  const Eigen::Index n = a.rows();
  if (n == 0) return Scalar(1);
  Scalar sign = 1;
  Scalar prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return Scalar(0);
      detail::swap_rows(a, k, swap);
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Sublattices of Z^r and their quotients.

/// Sublattice of Z^r given by (possibly dependent) generators.
struct Lattice {
  std::size_t ambient_rank = 1;
  std::vector<IntVector> generators;

  /// Generators stacked as rows (k x r).
  IntMatrix generator_matrix() const;
};

/// Canonical representative of a coset of a sublattice.
struct CosetRep {
  IntVector value;

  friend bool operator==(const CosetRep& a, const CosetRep& b) {
    return a.value == b.value;
  }
  friend bool operator<(const CosetRep& a, const CosetRep& b);
};

/// Z^r / L in Smith coordinates: y = gamma * V splits as finite cyclic
/// factors (diagonal entry d >= 1) and free coordinates (d = 0).
struct QuotientStructure {
  std::size_t ambient_rank = 1;
  std::vector<BigInt> invariant_factors;  ///< entries >= 2, d_i | d_{i+1}
  std::size_t free_rank = 0;
  std::optional<BigInt> order;            ///< nullopt when infinite
  std::vector<BigInt> diagonal;           ///< length r, Smith diagonal padded with 0
  IntMatrix transform;                    ///< V
  IntMatrix inverse_transform;            ///< V^{-1}

  bool is_finite() const noexcept { return order.has_value(); }
};

QuotientStructure quotient_structure(const Lattice& lattice);

/// Mixed-radix reduction in Smith coordinates, mapped back to Z^r.
CosetRep coset_canonical(const QuotientStructure& q, const IntVector& gamma);

inline constexpr std::size_t kDefaultMaxCosets = 1000000;

/// Every coset once, in a deterministic order. Throws PreconditionError for
/// an infinite quotient and ResourceLimitError past `max_cosets`.
std::vector<CosetRep> enumerate_cosets(const QuotientStructure& q,
                                       std::size_t max_cosets = kDefaultMaxCosets);

/// Lattice membership through the coset representative of 0.
bool lattice_contains(const QuotientStructure& q, const IntVector& gamma);

/// Lattice membership solved directly against the Hermite basis.
bool lattice_contains_hermite(const Lattice& lattice, const IntVector& gamma);

IntVector int_vector(std::initializer_list<long> entries);

}  // namespace lpagrade
