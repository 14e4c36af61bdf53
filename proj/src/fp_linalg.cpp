#include "rlie/fp_linalg.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

namespace rlie {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) {
    return false;
  }
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

namespace {

Residue checked_modulus(std::uint64_t p) {
  if (p > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
    throw InvalidModulus("modulus " + std::to_string(p) + " is too large (limit 2^31 - 1)");
  }
  if (!is_prime(p)) {
    throw InvalidModulus("modulus " + std::to_string(p) + " is not prime");
  }
  return static_cast<Residue>(p);
}

}  // namespace

PrimeField::PrimeField(std::uint64_t p) : p_(checked_modulus(p)) {}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) {
    throw ZeroInverse("zero has no inverse mod " + std::to_string(p_));
  }
  std::int64_t old_r = a % p_;
  std::int64_t r = p_;
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  return reduce(old_s);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % p_;
  Residue base = a % p_;
  while (e != 0) {
    if (e & 1U) {
      result = mul(result, base);
    }
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

namespace {

void require_same(const PrimeField& a, const PrimeField& b) {
  if (!(a == b)) {
    throw MixedContext("operands live over F_" + std::to_string(a.modulus()) + " and F_" +
                       std::to_string(b.modulus()));
  }
}

}  // namespace

FpScalar operator+(FpScalar a, FpScalar b) {
  require_same(a.field_, b.field_);
  return {a.field_, a.field_.add(a.value_, b.value_)};
}

FpScalar operator-(FpScalar a, FpScalar b) {
  require_same(a.field_, b.field_);
  return {a.field_, a.field_.sub(a.value_, b.value_)};
}

FpScalar operator*(FpScalar a, FpScalar b) {
  require_same(a.field_, b.field_);
  return {a.field_, a.field_.mul(a.value_, b.value_)};
}

FpScalar fp_inverse(FpScalar a) { return {a.field(), a.field().inv(a.value())}; }

// ---------------------------------------------------------------------------
// FpVector

FpVector::FpVector(PrimeField field, std::vector<Residue> entries) : field_(field), entries_(std::move(entries)) {
  for (auto& e : entries_) {
    e %= field_.modulus();
  }
}

FpVector FpVector::from_integers(PrimeField field, std::span<const std::int64_t> values) {
  FpVector v(field, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    v.set(i, values[i]);
  }
  return v;
}

FpVector FpVector::unit(PrimeField field, std::size_t length, std::size_t index) {
  FpVector v(field, length);
  v.entries_.at(index) = 1 % field.modulus();
  return v;
}

bool FpVector::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Residue e) { return e == 0; });
}

void FpVector::axpy(Residue factor, const FpVector& other) {
  require_same(field_, other.field_);
  if (other.size() != size()) {
    throw DimensionMismatch("vector lengths " + std::to_string(size()) + " and " + std::to_string(other.size()));
  }
  if (factor == 0) {
    return;
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = field_.add(entries_[i], field_.mul(factor, other.entries_[i]));
  }
}

FpVector& FpVector::operator+=(const FpVector& other) {
  axpy(1, other);
  return *this;
}

FpVector& FpVector::operator-=(const FpVector& other) {
  axpy(field_.neg(1), other);
  return *this;
}

FpVector FpVector::scaled(Residue factor) const {
  FpVector out(field_, size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.entries_[i] = field_.mul(factor, entries_[i]);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const FpVector& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i ? ", " : "") << v[i];
  }
  return os << "] mod " << v.field().modulus();
}

// ---------------------------------------------------------------------------
// FpMatrix

FpMatrix FpMatrix::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionMismatch("ragged row " + std::to_string(r));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m.set(r, c, rows[r][c]);
    }
  }
  return m;
}

FpMatrix FpMatrix::identity(PrimeField field, std::size_t n) {
  FpMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set_residue(i, i, 1);
  }
  return m;
}

FpMatrix FpMatrix::from_columns(PrimeField field, std::size_t rows, std::span<const FpVector> columns) {
  FpMatrix m(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require_same(field, columns[c].field());
    if (columns[c].size() != rows) {
      throw DimensionMismatch("column " + std::to_string(c) + " has length " + std::to_string(columns[c].size()));
    }
    for (std::size_t r = 0; r < rows; ++r) {
      m.set_residue(r, c, columns[c][r]);
    }
  }
  return m;
}

FpVector FpMatrix::column(std::size_t c) const {
  FpVector v(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    v.set(r, at(r, c));
  }
  return v;
}

bool FpMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Residue e) { return e == 0; });
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      t.set_residue(c, r, at(r, c));
    }
  }
  return t;
}

FpVector FpMatrix::operator*(const FpVector& v) const {
  require_same(field_, v.field());
  if (v.size() != cols_) {
    throw DimensionMismatch("matrix has " + std::to_string(cols_) + " columns, vector has length " +
                            std::to_string(v.size()));
  }
  FpVector out(field_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + static_cast<std::uint64_t>(at(r, c)) * v[c]) % field_.modulus();
    }
    out.set(r, static_cast<std::int64_t>(acc));
  }
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& other) const {
  require_same(field_, other.field_);
  if (cols_ != other.rows_) {
    throw DimensionMismatch("cannot multiply " + std::to_string(rows_) + "x" + std::to_string(cols_) + " by " +
                            std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
  }
  FpMatrix out(field_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Residue a = at(r, k);
      if (a == 0) {
        continue;
      }
      for (std::size_t c = 0; c < other.cols_; ++c) {
        out.data_[r * out.cols_ + c] = field_.add(out.data_[r * out.cols_ + c], field_.mul(a, other.at(k, c)));
      }
    }
  }
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& other) const {
  require_same(field_, other.field_);
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionMismatch("matrix shapes differ");
  }
  FpMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = field_.sub(data_[i], other.data_[i]);
  }
  return out;
}

FpMatrix FpMatrix::power(std::uint64_t e) const {
  if (rows_ != cols_) {
    throw DimensionMismatch("power of a non-square matrix");
  }
  FpMatrix result = identity(field_, rows_);
  FpMatrix base = *this;
  while (e != 0) {
    if (e & 1U) {
      result = result * base;
    }
    e >>= 1U;
    if (e != 0) {
      base = base * base;
    }
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? "\n" : "") << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      os << (c ? " " : "") << m.at(r, c);
    }
    os << ']';
  }
  return os;
}

// ---------------------------------------------------------------------------
// Row reduction

namespace {

constexpr std::size_t kParallelThreshold = 1U << 14U;

// row_target -= factor * row_pivot on columns [from, cols)
inline void eliminate_row(Residue* target, const Residue* pivot, Residue factor, std::size_t from, std::size_t cols,
                          Residue p) {
  const std::uint64_t f = p - factor;
  for (std::size_t c = from; c < cols; ++c) {
    if (pivot[c] != 0) {
      target[c] = static_cast<Residue>((target[c] + f * pivot[c]) % p);
    }
  }
}

RrefResult gauss_jordan(const FpMatrix& input) {
  RrefResult out{input, 0, {}};
  FpMatrix& m = out.reduced;
  const PrimeField field = m.field();
  const Residue p = field.modulus();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const bool parallel = rows * cols >= kParallelThreshold;

  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t pivot = lead;
    while (pivot < rows && m.at(pivot, c) == 0) {
      ++pivot;
    }
    if (pivot == rows) {
      continue;
    }
    if (pivot != lead) {
      std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(lead).begin());
    }
    const Residue scale = field.inv(m.at(lead, c));
    for (auto& e : m.row(lead).subspan(c)) {
      e = field.mul(e, scale);
    }
    const Residue* pivot_row = m.row(lead).data();
    const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(i);
      if (r == lead) {
        continue;
      }
      Residue* target = m.row(r).data();
      const Residue factor = target[c];
      if (factor != 0) {
        eliminate_row(target, pivot_row, factor, c, cols, p);
      }
    }
    out.pivot_cols.push_back(c);
    ++lead;
  }
  out.rank = lead;
  return out;
}

}  // namespace

RrefResult rref(const FpMatrix& m) { return gauss_jordan(m); }

namespace reference {
// Textbook Gauss-Jordan on 64-bit integers with Fermat inverses; shares no
// code with the production kernel so that the two can be compared.
RrefResult rref_serial(const FpMatrix& m) {
  const std::uint64_t p = m.field().modulus();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      a[r][c] = m.at(r, c);
    }
  }
  auto power = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t out = 1;
    for (; e != 0; e >>= 1U, b = b * b % p) {
      if (e & 1U) {
        out = out * b % p;
      }
    }
    return out;
  };
  RrefResult out{FpMatrix(m.field(), rows, cols), 0, {}};
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t pivot = lead;
    while (pivot < rows && a[pivot][c] == 0) {
      ++pivot;
    }
    if (pivot == rows) {
      continue;
    }
    std::swap(a[pivot], a[lead]);
    const std::uint64_t inv = power(a[lead][c], p - 2);
    for (auto& e : a[lead]) {
      e = e * inv % p;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      const std::uint64_t factor = a[r][c];
      if (r == lead || factor == 0) {
        continue;
      }
      for (std::size_t k = 0; k < cols; ++k) {
        a[r][k] = (a[r][k] + (p - factor) * a[lead][k]) % p;
      }
    }
    out.pivot_cols.push_back(c);
    ++lead;
  }
  out.rank = lead;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out.reduced.set_residue(r, c, static_cast<Residue>(a[r][c]));
    }
  }
  return out;
}
}  // namespace reference

std::size_t rank(const FpMatrix& m) { return rref(m).rank; }

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
  const RrefResult r = rref(m);
  const PrimeField field = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) {
    is_pivot[c] = true;
  }
  std::vector<FpVector> basis;
  basis.reserve(m.cols() - r.rank);
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) {
      continue;
    }
    FpVector v(field, m.cols());
    v.set(free, 1);
    for (std::size_t i = 0; i < r.rank; ++i) {
      v.set(r.pivot_cols[i], field.neg(r.reduced.at(i, free)));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FpVector> solve(const FpMatrix& m, const FpVector& b) {
  std::vector<FpVector> columns;
  columns.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    columns.push_back(m.column(c));
  }
  return SpanSolver(m.field(), m.rows(), columns).coordinates(b);
}

// ---------------------------------------------------------------------------
// SpanSolver

SpanSolver::SpanSolver(PrimeField field, std::size_t ambient_dim, std::span<const FpVector> family)
    : field_(field), ambient_(ambient_dim), family_size_(family.size()), echelon_(field, 0, 0) {
  // [family^T | I]; pivots that land in the identity block mark dependencies.
  FpMatrix augmented(field, family.size(), ambient_dim + family.size());
  for (std::size_t j = 0; j < family.size(); ++j) {
    require_same(field, family[j].field());
    if (family[j].size() != ambient_dim) {
      throw DimensionMismatch("span family vector " + std::to_string(j) + " has length " +
                              std::to_string(family[j].size()) + ", expected " + std::to_string(ambient_dim));
    }
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      augmented.set_residue(j, i, family[j][i]);
    }
    augmented.set_residue(j, ambient_dim + j, 1);
  }
  RrefResult r = rref(augmented);
  for (std::size_t i = 0; i < r.rank && r.pivot_cols[i] < ambient_dim; ++i) {
    pivots_.push_back(r.pivot_cols[i]);
  }
  echelon_ = std::move(r.reduced);
}

std::optional<FpVector> SpanSolver::coordinates(const FpVector& v) const {
  require_same(field_, v.field());
  if (v.size() != ambient_) {
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in a span of ambient dimension " +
                            std::to_string(ambient_));
  }
  std::vector<Residue> rest(v.entries().begin(), v.entries().end());
  FpVector coords(field_, family_size_);
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Residue f = rest[pivots_[i]];
    if (f == 0) {
      continue;
    }
    const auto row = echelon_.row(i);
    const Residue minus_f = field_.neg(f);
    for (std::size_t c = pivots_[i]; c < ambient_; ++c) {
      rest[c] = field_.add(rest[c], field_.mul(minus_f, row[c]));
    }
    for (std::size_t j = 0; j < family_size_; ++j) {
      coords.set(j, field_.add(coords[j], field_.mul(f, row[ambient_ + j])));
    }
  }
  if (std::any_of(rest.begin(), rest.end(), [](Residue e) { return e != 0; })) {
    return std::nullopt;
  }
  return coords;
}

}  // namespace rlie
