#pragma once

// Exact arithmetic in F_p and dense row reduction over it.
//
// Matrices and vectors store raw residues (std::uint32_t in [0, p)) next to a
// validated PrimeField; every kernel works on those raw buffers. The public
// rref() runs its elimination sweep with OpenMP; reference::rref_serial() is
// the single-threaded version kept for tests and benchmarks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "rlie/errors.hpp"

namespace rlie {

using Residue = std::uint32_t;

/// A prime modulus, validated once by trial division.
class PrimeField {
 public:
  /// Throws InvalidModulus unless p is a prime below 2^31.
  explicit PrimeField(std::uint64_t p);

  [[nodiscard]] Residue modulus() const noexcept { return p_; }

  [[nodiscard]] Residue reduce(std::int64_t x) const noexcept {
    const auto m = static_cast<std::int64_t>(p_);
    auto r = x % m;
    return static_cast<Residue>(r < 0 ? r + m : r);
  }
  [[nodiscard]] Residue add(Residue a, Residue b) const noexcept {
    const Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  [[nodiscard]] Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + (p_ - b);
  }
  [[nodiscard]] Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  [[nodiscard]] Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// Extended Euclid. Throws ZeroInverse for a == 0.
  [[nodiscard]] Residue inv(Residue a) const;
  [[nodiscard]] Residue pow(Residue a, std::uint64_t e) const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  Residue p_;
};

/// Trial-division primality test.
[[nodiscard]] bool is_prime(std::uint64_t n) noexcept;

/// A fully reduced residue tagged with its field.
class FpScalar {
 public:
  FpScalar(PrimeField field, std::int64_t value) : field_(field), value_(field.reduce(value)) {}

  [[nodiscard]] Residue value() const noexcept { return value_; }
  [[nodiscard]] const PrimeField& field() const noexcept { return field_; }

  friend FpScalar operator+(FpScalar a, FpScalar b);
  friend FpScalar operator-(FpScalar a, FpScalar b);
  friend FpScalar operator*(FpScalar a, FpScalar b);
  friend FpScalar operator-(FpScalar a) { return {a.field_, -static_cast<std::int64_t>(a.value_)}; }
  friend bool operator==(const FpScalar&, const FpScalar&) = default;

 private:
  PrimeField field_;
  Residue value_;
};

/// b with a*b == 1. Throws ZeroInverse for a == 0.
[[nodiscard]] FpScalar fp_inverse(FpScalar a);

class FpVector {
 public:
  FpVector(PrimeField field, std::size_t length) : field_(field), entries_(length, 0) {}
  FpVector(PrimeField field, std::vector<Residue> entries);
  /// Reduces arbitrary integers mod p.
  static FpVector from_integers(PrimeField field, std::span<const std::int64_t> values);
  static FpVector unit(PrimeField field, std::size_t length, std::size_t index);

  [[nodiscard]] const PrimeField& field() const noexcept { return field_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] Residue operator[](std::size_t i) const { return entries_[i]; }
  /// Stores value reduced mod p.
  void set(std::size_t i, std::int64_t value) { entries_[i] = field_.reduce(value); }
  [[nodiscard]] std::span<const Residue> entries() const noexcept { return entries_; }
  [[nodiscard]] bool is_zero() const noexcept;

  /// this += factor * other
  void axpy(Residue factor, const FpVector& other);
  FpVector& operator+=(const FpVector& other);
  FpVector& operator-=(const FpVector& other);
  [[nodiscard]] FpVector scaled(Residue factor) const;

  friend FpVector operator+(FpVector a, const FpVector& b) { return a += b; }
  friend FpVector operator-(FpVector a, const FpVector& b) { return a -= b; }
  friend bool operator==(const FpVector&, const FpVector&) = default;
  friend std::ostream& operator<<(std::ostream& os, const FpVector& v);

 private:
  PrimeField field_;
  std::vector<Residue> entries_;
};

class FpMatrix {
 public:
  FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  /// Row-major integers, reduced mod p. Throws DimensionMismatch on ragged input.
  static FpMatrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);
  static FpMatrix identity(PrimeField field, std::size_t n);
  /// Matrix whose columns are the given vectors (all of equal length).
  static FpMatrix from_columns(PrimeField field, std::size_t rows, std::span<const FpVector> columns);

  [[nodiscard]] const PrimeField& field() const noexcept { return field_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value) { data_[r * cols_ + c] = field_.reduce(value); }
  void set_residue(std::size_t r, std::size_t c, Residue value) { data_[r * cols_ + c] = value; }
  [[nodiscard]] std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] FpVector column(std::size_t c) const;
  [[nodiscard]] bool is_zero() const noexcept;

  [[nodiscard]] FpMatrix transpose() const;
  [[nodiscard]] FpVector operator*(const FpVector& v) const;
  [[nodiscard]] FpMatrix operator*(const FpMatrix& other) const;
  [[nodiscard]] FpMatrix operator-(const FpMatrix& other) const;
  [[nodiscard]] FpMatrix power(std::uint64_t e) const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
  friend std::ostream& operator<<(std::ostream& os, const FpMatrix& m);

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

struct RrefResult {
  FpMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form; the per-pivot elimination sweep over rows is
/// OpenMP-parallel above a size threshold.
[[nodiscard]] RrefResult rref(const FpMatrix& m);
[[nodiscard]] std::size_t rank(const FpMatrix& m);
/// Basis of {v : m v = 0}; one vector per free column, with a 1 in that column.
[[nodiscard]] std::vector<FpVector> kernel_basis(const FpMatrix& m);
/// Some x with m x = b, or nullopt when b is outside the column space.
[[nodiscard]] std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b);

/// Expresses vectors as combinations of a fixed generating family.
/// The family may be linearly dependent; coordinates are then one solution.
class SpanSolver {
 public:
  SpanSolver(PrimeField field, std::size_t ambient_dim, std::span<const FpVector> family);

  [[nodiscard]] std::size_t family_size() const noexcept { return family_size_; }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_; }
  [[nodiscard]] std::size_t rank() const noexcept { return pivots_.size(); }
  [[nodiscard]] bool contains(const FpVector& v) const { return coordinates(v).has_value(); }
  /// c with sum_j c[j] family[j] == v, or nullopt.
  [[nodiscard]] std::optional<FpVector> coordinates(const FpVector& v) const;

 private:
  PrimeField field_;
  std::size_t ambient_;
  std::size_t family_size_;
  FpMatrix echelon_;                // rows: [reduced vector | combination]
  std::vector<std::size_t> pivots_;  // pivot column of each leading row
};

namespace reference {
/// Independent single-threaded Gauss-Jordan; same output as rref().
[[nodiscard]] RrefResult rref_serial(const FpMatrix& m);
}  // namespace reference

}  // namespace rlie
