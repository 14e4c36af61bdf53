#pragma once

// Restricted Lie algebras over F_p given by structure constants and a p-map
// table on a basis, with Jacobson's correction term s(x, y) and an axiom
// checker.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rlie/fp_linalg.hpp"

namespace rlie {

using LieElement = FpVector;

/// Polynomial in a formal parameter beta with coefficients in L.
/// Index k holds the coefficient of beta^k; trailing zeros are trimmed.
class LieBetaPoly {
 public:
  LieBetaPoly() = default;
  explicit LieBetaPoly(LieElement constant);

  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
  [[nodiscard]] const LieElement& coefficient(std::size_t beta_degree) const { return coeffs_.at(beta_degree); }
  [[nodiscard]] const std::vector<LieElement>& coefficients() const noexcept { return coeffs_; }
  void set(std::size_t beta_degree, LieElement value);
  void trim();

 private:
  std::vector<LieElement> coeffs_;
};

class RestrictedLieAlgebra {
 public:
  /// Key (i, j) with i < j holds [e_i, e_j]; missing keys are zero.
  using BracketTable = std::map<std::pair<std::size_t, std::size_t>, LieElement>;

  /// pmap_rows[i] holds e_i^[p]; an empty vector means all zero. Throws
  /// DimensionMismatch on malformed tables. Axioms are not checked here.
  RestrictedLieAlgebra(PrimeField field, std::vector<std::string> names, const BracketTable& brackets,
                       std::vector<LieElement> pmap_rows);

  [[nodiscard]] const PrimeField& field() const noexcept { return field_; }
  [[nodiscard]] std::size_t dim() const noexcept { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] Residue characteristic() const noexcept { return field_.modulus(); }

  [[nodiscard]] LieElement zero() const { return LieElement(field_, dim()); }
  [[nodiscard]] LieElement basis(std::size_t i) const { return LieElement::unit(field_, dim(), i); }
  /// [e_i, e_j] for any i, j; the lower triangle and diagonal are derived.
  [[nodiscard]] LieElement structure(std::size_t i, std::size_t j) const;
  /// e_i^[p] as given by the table.
  [[nodiscard]] const LieElement& pmap_row(std::size_t i) const { return pmap_rows_.at(i); }

  [[nodiscard]] LieElement bracket(const LieElement& x, const LieElement& y) const;
  /// Matrix of y -> [x, y].
  [[nodiscard]] FpMatrix ad_matrix(const LieElement& x) const;
  /// Coefficients of (ad(beta x + y))^(p-1)(x) in beta.
  [[nodiscard]] LieBetaPoly ad_expansion(const LieElement& x, const LieElement& y) const;
  /// s(x, y) = sum_{i=1}^{p-1} s_i(x, y) / i, s_i the beta^(i-1) coefficient.
  [[nodiscard]] LieElement s_term(const LieElement& x, const LieElement& y) const;
  /// p-map by a left fold over x = a_1 e_1 + ... + a_n e_n using the sum rule.
  [[nodiscard]] LieElement pmap(const LieElement& x) const;
  /// Same fold with summands visited in the given order (a permutation of 0..n-1).
  [[nodiscard]] LieElement pmap_in_order(const LieElement& x, const std::vector<std::size_t>& order) const;

  /// Upper-triangle constants as stored; for serialization and comparison.
  [[nodiscard]] const std::vector<LieElement>& upper_constants() const noexcept { return upper_; }
  friend bool operator==(const RestrictedLieAlgebra&, const RestrictedLieAlgebra&) = default;

 private:
  [[nodiscard]] std::size_t upper_index(std::size_t i, std::size_t j) const;
  void require_element(const LieElement& x) const;

  PrimeField field_;
  std::vector<std::string> names_;
  std::vector<LieElement> upper_;  // (i, j), i < j, row-major over the strict upper triangle
  std::vector<LieElement> pmap_rows_;
};

/// Uniform element with coefficients rng() mod p.
[[nodiscard]] LieElement random_element(const RestrictedLieAlgebra& lie, std::mt19937_64& rng);

struct JacobiFailure {
  std::size_t i, j, k;
  LieElement residual;
};

struct RestrictednessFailure {
  std::size_t index;
  FpMatrix residual;  // ad(e_i^[p]) - ad(e_i)^p
};

struct SampleFailure {
  std::size_t sample;
  LieElement x;
  LieElement y;       // second summand; additivity only
  Residue alpha = 0;  // scalar; semilinearity only
  LieElement residual;
};

struct AxiomReport {
  std::size_t jacobi_triples_checked = 0;
  std::vector<JacobiFailure> jacobi;
  std::vector<RestrictednessFailure> restrictedness;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<SampleFailure> additivity;     // pmap(x+y) - pmap(x) - pmap(y) - s(x,y)
  std::vector<SampleFailure> semilinearity;  // pmap(a x) - a^p pmap(x)

  [[nodiscard]] bool jacobi_ok() const noexcept { return jacobi.empty(); }
  [[nodiscard]] bool restrictedness_ok() const noexcept { return restrictedness.empty(); }
  [[nodiscard]] bool additivity_ok() const noexcept { return additivity.empty(); }
  [[nodiscard]] bool semilinearity_ok() const noexcept { return semilinearity.empty(); }
  [[nodiscard]] bool passed() const noexcept {
    return jacobi_ok() && restrictedness_ok() && additivity_ok() && semilinearity_ok();
  }
};

/// Jacobi on every basis triple i < j < k (the others follow from
/// alternation), restrictedness on every basis vector, and
/// the sum and scaling rules of the p-map on `samples` seeded random inputs.
[[nodiscard]] AxiomReport check_axioms(const RestrictedLieAlgebra& lie, std::size_t samples, std::uint64_t seed);

}  // namespace rlie
