#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>

namespace lpagrade {

/// Exact integer scalar. Expression templates are off so the type behaves as
/// a plain value inside Eigen kernels.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = Matrix<BigInt>;
using IntVector = RowVector<BigInt>;

inline std::string to_string(const BigInt& x) { return x.str(); }

/// Narrowing that reports failure instead of wrapping.
inline std::optional<std::int64_t> to_int64(const BigInt& x) {
  if (x > BigInt(INT64_MAX) || x < BigInt(INT64_MIN)) return std::nullopt;
  return x.convert_to<std::int64_t>();
}

/// Floor-style remainder in [0, |m|).
inline BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + (m < 0 ? -m : m) : r;
}

}  // namespace lpagrade
