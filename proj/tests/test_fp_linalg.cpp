#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "rlie/fp_linalg.hpp"

using namespace rlie;

namespace {

FpMatrix random_matrix(PrimeField field, std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                       std::size_t rank_cap = 0) {
  FpMatrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.set(r, c, static_cast<std::int64_t>(rng() % field.modulus()));
    }
  }
  if (rank_cap == 0) {
    return m;
  }
  // Low-rank product so that free columns appear.
  FpMatrix left(field, rows, rank_cap);
  FpMatrix right(field, rank_cap, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < rank_cap; ++k) {
      left.set(r, k, static_cast<std::int64_t>(rng() % field.modulus()));
    }
  }
  for (std::size_t k = 0; k < rank_cap; ++k) {
    for (std::size_t c = 0; c < cols; ++c) {
      right.set(k, c, static_cast<std::int64_t>(rng() % field.modulus()));
    }
  }
  return left * right;
}

}  // namespace

TEST_CASE("prime field validation") {
  CHECK(is_prime(2));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK_FALSE(is_prime(561));
  CHECK_THROWS_AS(PrimeField(4), InvalidModulus);
  CHECK_THROWS_AS(PrimeField(1), InvalidModulus);
  CHECK_THROWS_AS(PrimeField(std::uint64_t{1} << 31), InvalidModulus);
}

TEST_CASE("inverses from the documented examples") {
  CHECK(fp_inverse(FpScalar(PrimeField(5), 2)).value() == 3);
  CHECK(fp_inverse(FpScalar(PrimeField(7), 4)).value() == 2);
  CHECK_THROWS_AS((void)fp_inverse(FpScalar(PrimeField(7), 0)), ZeroInverse);
  CHECK_THROWS_AS((void)PrimeField(7).inv(0), ZeroInverse);
}

TEST_CASE("inverses agree with exhaustive search for every p <= 101") {
  for (std::uint64_t p = 2; p <= 101; ++p) {
    if (!is_prime(p)) {
      continue;
    }
    const PrimeField field(p);
    for (Residue a = 1; a < p; ++a) {
      Residue brute = 0;
      for (Residue b = 1; b < p; ++b) {
        if (static_cast<std::uint64_t>(a) * b % p == 1) {
          brute = b;
          break;
        }
      }
      REQUIRE(field.inv(a) == brute);
    }
  }
}

TEST_CASE("scalar arithmetic reduces negatives") {
  const PrimeField f(7);
  const FpScalar a(f, -1);
  CHECK(a.value() == 6);
  CHECK((a + FpScalar(f, 3)).value() == 2);
  CHECK((a * a).value() == 1);
  CHECK((-a).value() == 1);
  CHECK(f.pow(3, 6) == 1);
  CHECK(f.pow(0, 0) == 1);
}

TEST_CASE("rref of the all-ones 2x2 over F2") {
  const PrimeField f(2);
  const auto m = FpMatrix::from_rows(f, {{1, 1}, {1, 1}});
  const auto r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.reduced == FpMatrix::from_rows(f, {{1, 1}, {0, 0}}));
  CHECK(r.pivot_cols == std::vector<std::size_t>{0});
}

TEST_CASE("kernel examples") {
  const PrimeField f(2);
  const auto k = kernel_basis(FpMatrix::from_rows(f, {{1, 1}, {0, 0}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == FpVector(f, {1, 1}));

  const PrimeField g(5);
  const auto z = kernel_basis(FpMatrix(g, 3, 3));
  REQUIRE(z.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(z[i] == FpVector::unit(g, 3, i));
  }
}

TEST_CASE("ragged input is rejected") {
  CHECK_THROWS_AS((void)FpMatrix::from_rows(PrimeField(3), {{1, 2}, {1}}), DimensionMismatch);
}

TEST_CASE("rref is idempotent and row-equivalent") {
  std::mt19937_64 rng(11);
  for (const std::uint64_t p : {2U, 3U, 5U, 101U}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = random_matrix(f, 1 + rng() % 9, 1 + rng() % 9, rng, trial % 2 == 0 ? 0 : 1 + rng() % 3);
      const auto once = rref(m);
      const auto twice = rref(once.reduced);
      CHECK(twice.reduced == once.reduced);
      CHECK(twice.rank == once.rank);
      CHECK(rank(m.transpose()) == once.rank);
    }
  }
}

TEST_CASE("parallel rref matches the serial reference on large matrices") {
  std::mt19937_64 rng(3);
  for (const std::uint64_t p : {2U, 7U, 65521U}) {
    const PrimeField f(p);
    const auto full = random_matrix(f, 200, 150, rng);
    const auto low = random_matrix(f, 180, 220, rng, 60);
    for (const auto* m : {&full, &low}) {
      const auto par = rref(*m);
      const auto ser = reference::rref_serial(*m);
      CHECK(par.rank == ser.rank);
      CHECK(par.pivot_cols == ser.pivot_cols);
      CHECK(par.reduced == ser.reduced);
    }
    CHECK(rref(low).rank == 60);
  }
}

TEST_CASE("kernel size matches a brute-force count over F2 and F3") {
  std::mt19937_64 rng(5);
  for (const std::uint64_t p : {2U, 3U}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t rows = 1 + rng() % 4;
      const std::size_t cols = 1 + rng() % 6;
      const auto m = random_matrix(f, rows, cols, rng, trial % 3 == 0 ? 1 : 0);
      std::size_t total = 1;
      for (std::size_t c = 0; c < cols; ++c) {
        total *= p;
      }
      std::size_t zeros = 0;
      for (std::size_t code = 0; code < total; ++code) {
        FpVector v(f, cols);
        std::size_t rest = code;
        for (std::size_t c = 0; c < cols; ++c, rest /= p) {
          v.set(c, static_cast<std::int64_t>(rest % p));
        }
        zeros += (m * v).is_zero() ? 1 : 0;
      }
      const auto k = kernel_basis(m);
      std::size_t expected = 1;
      for (std::size_t i = 0; i < k.size(); ++i) {
        expected *= p;
      }
      CHECK(zeros == expected);
      for (const auto& v : k) {
        CHECK((m * v).is_zero());
      }
    }
  }
}

TEST_CASE("solve and span solver") {
  const PrimeField f(5);
  const auto m = FpMatrix::from_rows(f, {{1, 2}, {2, 4}});
  const auto x = solve(m, FpVector(f, {3, 1}));
  REQUIRE(x.has_value());
  CHECK(m * *x == FpVector(f, {3, 1}));
  CHECK_FALSE(solve(m, FpVector(f, {1, 0})).has_value());

  const std::vector<FpVector> family{FpVector(f, {1, 0, 1}), FpVector(f, {2, 0, 2}), FpVector(f, {0, 1, 0})};
  const SpanSolver solver(f, 3, family);
  CHECK(solver.rank() == 2);
  const FpVector target(f, {3, 4, 3});
  const auto c = solver.coordinates(target);
  REQUIRE(c.has_value());
  FpVector back(f, 3);
  for (std::size_t j = 0; j < family.size(); ++j) {
    back.axpy((*c)[j], family[j]);
  }
  CHECK(back == target);
  CHECK_FALSE(solver.contains(FpVector(f, {1, 0, 0})));
}

TEST_CASE("matrix power and identity") {
  const PrimeField f(3);
  const auto m = FpMatrix::from_rows(f, {{1, 1}, {0, 1}});
  CHECK(m.power(3) == FpMatrix::identity(f, 2));
  CHECK(m.power(0) == FpMatrix::identity(f, 2));
  CHECK((m - m).is_zero());
}
