#include "lpagrade/error.hpp"
#include "lpagrade/lattice.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace lpagrade;

namespace {

IntMatrix matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntMatrix random_matrix(std::mt19937_64& rng, int lo, int hi, int max_dim) {
  std::uniform_int_distribution<int> dim(1, max_dim), entry(lo, hi);
  IntMatrix m(dim(rng), dim(rng));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
  return m;
}

bool is_unimodular(const IntMatrix& u) {
  const BigInt d = integer_determinant(u);
  return d == 1 || d == -1;
}

// Row echelon, positive pivots, entries above a pivot reduced into [0, pivot).
bool is_hermite(const IntMatrix& h) {
  Eigen::Index last_pivot = -1;
  bool zero_rows = false;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    Eigen::Index p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) {
      zero_rows = true;
      continue;
    }
    if (zero_rows || p <= last_pivot || h(i, p) <= 0) return false;
    for (Eigen::Index k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    last_pivot = p;
  }
  return true;
}

bool is_smith(const IntMatrix& s) {
  const Eigen::Index n = std::min(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < n) {
      if (s(i, i) == 0 && s(i + 1, i + 1) != 0) return false;
      if (s(i, i) != 0 && s(i + 1, i + 1) % s(i, i) != 0) return false;
    }
  }
  return true;
}

QuotientStructure quotient(std::size_t r, std::vector<IntVector> gens) {
  return quotient_structure(Lattice{r, std::move(gens)});
}

}  // namespace

TEST_CASE("hermite_normal_form examples") {
  const IntMatrix id = IntMatrix::Identity(3, 3);
  const auto h = hermite_normal_form(id);
  CHECK(h.H == id);
  CHECK(h.U == id);

  CHECK(hermite_normal_form(matrix({{2, 0}, {0, 3}})).H == matrix({{2, 0}, {0, 3}}));

  // Generators 4 and 6 of a rank-1 lattice, one per row.
  const auto g = hermite_normal_form(matrix({{4}, {6}}));
  CHECK(g.H == matrix({{2}, {0}}));
  CHECK(g.U * matrix({{4}, {6}}) == g.H);
}

TEST_CASE("smith_normal_form examples") {
  const auto z = smith_normal_form(IntMatrix::Zero(2, 3).eval());
  CHECK(z.S == IntMatrix::Zero(2, 3));

  const IntMatrix d23 = matrix({{2, 0}, {0, 3}});
  const auto s = smith_normal_form(d23);
  CHECK(s.S == matrix({{1, 0}, {0, 6}}));
  CHECK(s.U * d23 * s.V == s.S);

  CHECK(smith_normal_form(matrix({{2, 0}, {0, 2}})).S == matrix({{2, 0}, {0, 2}}));
}

TEST_CASE("normal form identities on random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const IntMatrix m = random_matrix(rng, -9, 9, 4);
    const auto h = hermite_normal_form(m);
    CHECK(h.U * m == h.H);
    CHECK(is_unimodular(h.U));
    CHECK(is_hermite(h.H));

    const auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.S);
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    CHECK(s.V * s.V_inverse == IntMatrix::Identity(m.cols(), m.cols()));
    CHECK(is_smith(s.S));
  }
}

TEST_CASE("normal forms stay exact past 64 bits") {
  IntMatrix m(2, 2);
  m << BigInt("123456789012345678901234567890"), BigInt(7), BigInt(11), BigInt("98765432109876543210");
  const auto s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.S);
  CHECK(s.S(0, 0) * s.S(1, 1) == abs(integer_determinant(m)));
}

TEST_CASE("integer_determinant") {
  CHECK(integer_determinant(matrix({{2, 0}, {0, 3}})) == 6);
  CHECK(integer_determinant(matrix({{0, 1}, {1, 0}})) == -1);
  CHECK(integer_determinant(matrix({{1, 2}, {2, 4}})) == 0);
  CHECK(integer_determinant(matrix({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})) == 4);
}

TEST_CASE("quotient_structure examples") {
  auto q = quotient(1, {int_vector({2})});
  CHECK(q.invariant_factors == std::vector<BigInt>{2});
  CHECK(q.free_rank == 0);
  CHECK(q.order == BigInt(2));

  q = quotient(1, {int_vector({0})});
  CHECK(q.invariant_factors.empty());
  CHECK(q.free_rank == 1);
  CHECK_FALSE(q.is_finite());

  q = quotient(1, {});
  CHECK(q.free_rank == 1);

  q = quotient(2, {int_vector({2, 0}), int_vector({0, 3})});
  CHECK(q.invariant_factors == std::vector<BigInt>{6});
  CHECK(q.free_rank == 0);
  CHECK(q.order == BigInt(6));

  q = quotient(2, {int_vector({1, 0}), int_vector({0, 1})});
  CHECK(q.invariant_factors.empty());
  CHECK(q.order == BigInt(1));

  q = quotient(2, {int_vector({2, 4})});
  CHECK(q.invariant_factors == std::vector<BigInt>{2});
  CHECK(q.free_rank == 1);
  CHECK_FALSE(q.is_finite());
}

TEST_CASE("coset_canonical examples") {
  const auto z2 = quotient(1, {int_vector({2})});
  CHECK(coset_canonical(z2, int_vector({5})).value == int_vector({1}));
  CHECK(coset_canonical(z2, int_vector({-4})).value == int_vector({0}));

  const auto q6 = quotient(2, {int_vector({2, 0}), int_vector({0, 3})});
  CHECK(coset_canonical(q6, int_vector({3, 4})) == coset_canonical(q6, int_vector({1, 1})));
  CHECK_FALSE(coset_canonical(q6, int_vector({1, 0})) == coset_canonical(q6, int_vector({0, 0})));

  CHECK_THROWS_AS(coset_canonical(z2, int_vector({1, 2})), PreconditionError);
}

TEST_CASE("enumerate_cosets examples") {
  const auto z2 = enumerate_cosets(quotient(1, {int_vector({2})}));
  REQUIRE(z2.size() == 2);
  CHECK(z2[0].value == int_vector({0}));
  CHECK(z2[1].value == int_vector({1}));
  CHECK(enumerate_cosets(quotient(1, {int_vector({1})})).size() == 1);
  CHECK(enumerate_cosets(quotient(2, {int_vector({2, 0}), int_vector({0, 3})})).size() == 6);
  CHECK_THROWS_AS(enumerate_cosets(quotient(1, {})), PreconditionError);
  CHECK_THROWS_AS(enumerate_cosets(quotient(1, {int_vector({1000})}), 10), ResourceLimitError);
}

TEST_CASE("coset properties on random lattices") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> rank(1, 3), count(0, 3), entry(-4, 4), probe(-12, 12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = static_cast<std::size_t>(rank(rng));
    std::vector<IntVector> gens;
    for (int k = count(rng); k > 0; --k) {
      IntVector v(static_cast<Eigen::Index>(r));
      for (auto& x : v) x = entry(rng);
      gens.push_back(v);
    }
    const auto q = quotient(r, gens);
    IntVector gamma(static_cast<Eigen::Index>(r));
    for (auto& x : gamma) x = probe(rng);

    const CosetRep rep = coset_canonical(q, gamma);
    CHECK(coset_canonical(q, rep.value) == rep);  // idempotent
    for (const auto& g : gens) CHECK(coset_canonical(q, gamma + g) == rep);
    CHECK(lattice_contains(q, gamma - rep.value));

    if (q.is_finite() && *q.order <= 10000) {
      const auto cosets = enumerate_cosets(q);
      CHECK(BigInt(static_cast<unsigned long>(cosets.size())) == *q.order);
      const std::set<CosetRep> distinct(cosets.begin(), cosets.end());
      CHECK(distinct.size() == cosets.size());
      for (const auto& c : cosets) CHECK(coset_canonical(q, c.value) == c);
    }
    BigInt product = 1;
    for (const auto& d : q.invariant_factors) product *= d;
    if (q.free_rank == 0) CHECK(q.order == product);
    for (std::size_t i = 1; i < q.invariant_factors.size(); ++i)
      CHECK(q.invariant_factors[i] % q.invariant_factors[i - 1] == 0);
  }
}

TEST_CASE("membership agrees with the Hermite solve and bounded search") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> rank(1, 2), count(1, 3), entry(-3, 3), coef(-6, 6), noise(-2, 2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = static_cast<std::size_t>(rank(rng));
    std::vector<IntVector> gens;
    for (int k = count(rng); k > 0; --k) {
      IntVector v(static_cast<Eigen::Index>(r));
      for (auto& x : v) x = entry(rng);
      gens.push_back(v);
    }
    IntVector gamma = IntVector::Zero(static_cast<Eigen::Index>(r));
    for (const auto& g : gens) gamma += g * BigInt(coef(rng));
    for (auto& x : gamma) x += noise(rng);

    const bool by_coset = lattice_contains(quotient(r, gens), gamma);
    CHECK(by_coset == lattice_contains_hermite(Lattice{r, gens}, gamma));
    CHECK(by_coset == lpatest::brute_lattice_contains(gens, gamma, 20));
  }
}
