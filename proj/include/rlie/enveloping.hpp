#pragma once

// The restricted enveloping algebra u(L) in restricted PBW normal form
// e_1^{a_1} ... e_n^{a_n}, 0 <= a_i < p, with multiplication by
// straightening, the coproduct making each e_i primitive, and the
// restricted-primitive functor.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rlie/fp_linalg.hpp"
#include "rlie/restricted_lie.hpp"
#include "rlie/tensor_bialgebra.hpp"

namespace rlie {

/// Exponent vector of a restricted PBW monomial, in basis order.
struct PbwMonomial {
  std::vector<std::uint32_t> exponents;

  [[nodiscard]] std::size_t degree() const noexcept;
  friend bool operator==(const PbwMonomial&, const PbwMonomial&) = default;
};

/// Element of u(L): coefficients over the p^n PBW monomials, indexed by
/// EnvelopingAlgebra::index_of.
class EnvElement {
 public:
  EnvElement(PrimeField field, std::size_t dim) : coords_(field, dim) {}
  explicit EnvElement(FpVector coords) : coords_(std::move(coords)) {}

  [[nodiscard]] const PrimeField& field() const noexcept { return coords_.field(); }
  [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
  [[nodiscard]] Residue operator[](std::size_t monomial) const { return coords_[monomial]; }
  [[nodiscard]] const FpVector& coords() const noexcept { return coords_; }
  [[nodiscard]] bool is_zero() const noexcept { return coords_.is_zero(); }
  /// Nonzero (monomial index, coefficient) pairs in index order.
  [[nodiscard]] std::vector<std::pair<std::size_t, Residue>> terms() const;

  void axpy(Residue factor, const EnvElement& other) { coords_.axpy(factor, other.coords_); }
  EnvElement& operator+=(const EnvElement& other);
  EnvElement& operator-=(const EnvElement& other);
  [[nodiscard]] EnvElement scaled(Residue factor) const { return EnvElement(coords_.scaled(factor)); }
  friend EnvElement operator+(EnvElement a, const EnvElement& b) { return a += b; }
  friend EnvElement operator-(EnvElement a, const EnvElement& b) { return a -= b; }
  friend bool operator==(const EnvElement&, const EnvElement&) = default;

 private:
  FpVector coords_;
};

/// Element of u(L) (x) u(L), keyed by pairs of monomial indices.
class EnvTensorElement {
 public:
  using Terms = std::map<std::pair<std::size_t, std::size_t>, Residue>;

  EnvTensorElement(PrimeField field, std::size_t dim) : field_(field), dim_(dim) {}

  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] Residue coefficient(std::size_t left, std::size_t right) const;
  void add_term(std::size_t left, std::size_t right, Residue coeff);
  EnvTensorElement& operator+=(const EnvTensorElement& other);
  EnvTensorElement& operator-=(const EnvTensorElement& other);
  friend EnvTensorElement operator-(EnvTensorElement a, const EnvTensorElement& b) { return a -= b; }
  friend bool operator==(const EnvTensorElement&, const EnvTensorElement&) = default;

  /// a (x) 1 and 1 (x) a.
  static EnvTensorElement left(const EnvElement& a);
  static EnvTensorElement right(const EnvElement& a);

 private:
  PrimeField field_;
  std::size_t dim_;
  Terms terms_;
};

class EnvelopingAlgebra {
 public:
  static constexpr std::size_t kDefaultSizeLimit = 3125;

  /// Builds the left-multiplication table e_i * m for every generator and
  /// monomial. Throws SizeBound when p^n exceeds size_limit.
  explicit EnvelopingAlgebra(RestrictedLieAlgebra lie, std::size_t size_limit = kDefaultSizeLimit);

  [[nodiscard]] const RestrictedLieAlgebra& lie() const noexcept { return lie_; }
  [[nodiscard]] const PrimeField& field() const noexcept { return lie_.field(); }
  /// p^n.
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  [[nodiscard]] PbwMonomial monomial(std::size_t index) const;
  [[nodiscard]] std::size_t index_of(const PbwMonomial& m) const;
  [[nodiscard]] std::string monomial_name(std::size_t index) const;
  [[nodiscard]] std::string to_string(const EnvElement& u) const;

  [[nodiscard]] EnvElement zero() const { return EnvElement(field(), dim_); }
  [[nodiscard]] EnvElement one() const { return basis_monomial(0); }
  [[nodiscard]] EnvElement basis_monomial(std::size_t index) const;
  [[nodiscard]] EnvElement generator(std::size_t i) const;
  /// Image of x under L -> u(L), e_i -> e_i.
  [[nodiscard]] EnvElement embed(const LieElement& x) const;

  /// PBW normal form of a word in the basis letters, using
  /// e_j e_i -> e_i e_j + [e_j, e_i] for j > i and e_i^p -> e_i^[p].
  [[nodiscard]] EnvElement straighten(const Word& word) const;
  [[nodiscard]] EnvElement left_mul_generator(std::size_t i, const EnvElement& u) const;
  [[nodiscard]] EnvElement multiply(const EnvElement& u, const EnvElement& v) const;
  [[nodiscard]] EnvElement power(const EnvElement& u, std::uint64_t k) const;
  [[nodiscard]] EnvElement commutator(const EnvElement& u, const EnvElement& v) const;

  /// Delta(e_i) = e_i (x) 1 + 1 (x) e_i, extended multiplicatively.
  [[nodiscard]] EnvTensorElement coproduct(const EnvElement& u) const;
  /// Componentwise product in u(L) (x) u(L).
  [[nodiscard]] EnvTensorElement tensor_multiply(const EnvTensorElement& a, const EnvTensorElement& b) const;
  /// Delta(u) - u (x) 1 - 1 (x) u.
  [[nodiscard]] EnvTensorElement primitivity_defect(const EnvElement& u) const;

 private:
  using Sparse = std::vector<std::pair<std::uint32_t, Residue>>;

  void require(const EnvElement& u) const;
  [[nodiscard]] const Sparse& table_entry(std::size_t i, std::size_t m) const { return table_[i * dim_ + m]; }
  void build_table();

  RestrictedLieAlgebra lie_;
  std::size_t dim_;
  std::vector<std::size_t> place_;  // p^(n-1-i): weight of exponent i in the index
  std::vector<Sparse> table_;       // e_i * monomial(m), row-major in (i, m)
};

/// Exponent-sum filtration count: monomials with degree <= d.
[[nodiscard]] std::size_t pbw_filtration_count(const EnvelopingAlgebra& env, std::size_t d);

struct AssociativityReport {
  bool exhaustive = false;
  std::size_t triples_checked = 0;
  bool unit_ok = true;
  std::vector<std::array<std::size_t, 3>> failing_monomials;  // exhaustive mode
  std::vector<std::size_t> failing_samples;                   // sampled mode

  [[nodiscard]] bool passed() const noexcept {
    return unit_ok && failing_monomials.empty() && failing_samples.empty();
  }
};

/// (ab)c == a(bc) on every monomial triple when p^n <= exhaustive_limit,
/// otherwise on `samples` seeded random element triples; plus 1*u == u*1 == u.
[[nodiscard]] AssociativityReport check_associativity(const EnvelopingAlgebra& env, std::size_t samples,
                                                      std::uint64_t seed, std::size_t exhaustive_limit = 27);

/// embed(x^[p]) - embed(x)^p; zero when the p-map agrees with the associative p-th power.
[[nodiscard]] EnvElement frobenius_residual(const EnvelopingAlgebra& env, const LieElement& x);

/// P(u(L)) with the commutator bracket and the p-th power map.
class RestrictedPrimitiveSpace {
 public:
  RestrictedPrimitiveSpace(const EnvelopingAlgebra& env, std::vector<EnvElement> basis);

  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] const std::vector<EnvElement>& basis() const noexcept { return basis_; }
  /// bracket_table()[a][b]: coordinates of b_a b_b - b_b b_a.
  [[nodiscard]] const std::vector<std::vector<FpVector>>& bracket_table() const noexcept { return brackets_; }
  /// pmap_table()[a]: coordinates of b_a^p.
  [[nodiscard]] const std::vector<FpVector>& pmap_table() const noexcept { return pmaps_; }
  /// False if some commutator or p-th power left the primitive span.
  [[nodiscard]] bool closed() const noexcept { return closed_; }
  [[nodiscard]] std::optional<FpVector> coordinates(const EnvElement& u) const;
  /// The space as a RestrictedLieAlgebra in its own basis (names P0, P1, ...).
  [[nodiscard]] RestrictedLieAlgebra as_lie_algebra() const;

 private:
  PrimeField field_;
  std::vector<EnvElement> basis_;
  SpanSolver solver_;
  std::vector<std::vector<FpVector>> brackets_;
  std::vector<FpVector> pmaps_;
  bool closed_ = true;
};

/// Kernel of u -> Delta(u) - u (x) 1 - 1 (x) u over all p^n monomials.
/// Column assembly is OpenMP-parallel.
[[nodiscard]] RestrictedPrimitiveSpace restricted_primitives(const EnvelopingAlgebra& env);

struct EtaReport {
  std::size_t lie_dim = 0;
  std::size_t primitive_dim = 0;
  std::size_t image_rank = 0;
  bool images_primitive = true;
  std::vector<std::pair<std::size_t, std::size_t>> bracket_mismatches;
  std::vector<std::size_t> pmap_mismatches;

  [[nodiscard]] bool injective() const noexcept { return image_rank == lie_dim; }
  [[nodiscard]] bool dimension_match() const noexcept { return primitive_dim == lie_dim; }
  [[nodiscard]] bool brackets_match() const noexcept { return bracket_mismatches.empty(); }
  [[nodiscard]] bool pmaps_match() const noexcept { return pmap_mismatches.empty(); }
  [[nodiscard]] bool passed() const noexcept {
    return images_primitive && injective() && dimension_match() && brackets_match() && pmaps_match();
  }
};

/// Checks that e_i -> e_i is an isomorphism of restricted Lie algebras L -> P(u(L)).
[[nodiscard]] EtaReport unit_eta_check(const EnvelopingAlgebra& env, const RestrictedPrimitiveSpace& primitives);
[[nodiscard]] EtaReport unit_eta_check(const RestrictedLieAlgebra& lie,
                                       std::size_t size_limit = EnvelopingAlgebra::kDefaultSizeLimit);

}  // namespace rlie
