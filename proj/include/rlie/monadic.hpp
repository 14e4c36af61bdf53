#pragma once

// Eilenberg-Moore algebras of the primitives-of-tensor-algebra monad at a
// fixed truncation degree, the functor Lambda back to restricted Lie
// algebras, and the checks tying them to u(L):
//   * em_laws_check: unit and associativity laws on generated nested inputs;
//   * roundtrip_check: Lambda(mu0 of L) == L on the nose;
//   * sandwich_certificate: rank of T(V0) -> u(L) against the quotient by
//     the spanned relations z - mu0(z) and the PBW filtration count.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rlie/enveloping.hpp"
#include "rlie/fp_linalg.hpp"
#include "rlie/free_restricted.hpp"
#include "rlie/restricted_lie.hpp"
#include "rlie/tensor_bialgebra.hpp"

namespace rlie {

using FreeLayers = std::vector<FreeRestrictedLayer>;

/// Free restricted layers 1..N on n generators, shared between EM objects.
[[nodiscard]] std::shared_ptr<const FreeLayers> shared_free_layers(std::uint64_t p, std::size_t rank,
                                                                   std::size_t max_degree);

/// (V0, mu0): a named basis of V0 and, per degree d in [1, N], the matrix of
/// mu0 from free-layer coordinates to V0.
class EMObject {
 public:
  /// mu0[d-1] must be dim x layers[d-1].dim(). Throws DimensionMismatch.
  EMObject(std::vector<std::string> names, std::shared_ptr<const FreeLayers> layers, std::vector<FpMatrix> mu0);

  [[nodiscard]] const PrimeField& field() const noexcept { return ctx().field; }
  [[nodiscard]] Residue characteristic() const noexcept { return field().modulus(); }
  [[nodiscard]] std::size_t dim() const noexcept { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] std::size_t max_degree() const noexcept { return mu0_.size(); }
  [[nodiscard]] const TensorContext& ctx() const noexcept { return layers_->front().context(); }
  [[nodiscard]] const FreeLayers& layers() const noexcept { return *layers_; }
  [[nodiscard]] const std::shared_ptr<const FreeLayers>& shared_layers() const noexcept { return layers_; }
  [[nodiscard]] const FreeRestrictedLayer& layer(std::size_t degree) const;
  [[nodiscard]] const FpMatrix& mu0(std::size_t degree) const;

  /// mu0 of a primitive of T(V0) of degree in [1, N]; nullopt when some
  /// homogeneous part leaves the free layer or z has a constant term.
  [[nodiscard]] std::optional<LieElement> try_apply(const TensorElement& z) const;
  /// As try_apply, throwing DimensionMismatch instead of returning nullopt.
  [[nodiscard]] LieElement apply(const TensorElement& z) const;

  friend bool operator==(const EMObject& a, const EMObject& b);

 private:
  std::vector<std::string> names_;
  std::shared_ptr<const FreeLayers> layers_;
  std::vector<FpMatrix> mu0_;
};

/// An EM object together with the flag that it passed em_laws_check at its
/// own truncation. The second structure map is forced and is not stored.
struct M2Object {
  EMObject underlying;
  bool idempotency_witness = false;
};

/// Images phi(w) in u(L) of every word of length <= N; entry d lists
/// words_of_degree(n, d) in order. phi(a w) = a * phi(w).
[[nodiscard]] std::vector<std::vector<EnvElement>> word_images(const EnvelopingAlgebra& env, std::size_t max_degree);

/// mu0 on the free layers over V0 = L: multiply out each layer basis element
/// in u(L) and read it back through e_i -> e_i. Throws EtaFailure when that
/// identification fails for L or an image leaves it.
[[nodiscard]] EMObject mu0_from_restricted(const EnvelopingAlgebra& env, std::shared_ptr<const FreeLayers> layers);
[[nodiscard]] EMObject mu0_from_restricted(const RestrictedLieAlgebra& lie, std::size_t max_degree,
                                           std::size_t size_limit = EnvelopingAlgebra::kDefaultSizeLimit);

/// [x, y] := mu0(xy - yx), x^[p] := mu0(x^p) on the basis of V0. Throws
/// TruncationTooSmall when N < p.
[[nodiscard]] RestrictedLieAlgebra lambda(const EMObject& a);
/// Same, rejecting objects without the EM witness (EmLawFailure).
[[nodiscard]] RestrictedLieAlgebra lambda(const M2Object& v2);

struct EmPatternRecord {
  std::string pattern;      // e.g. "[L2,P(L1)]"
  std::size_t degree = 0;   // total V0-degree
  std::size_t combinations = 0;  // leaf choices available (saturating)
  std::size_t instances = 0;     // leaf choices evaluated
  bool exhaustive = false;
  std::size_t failures = 0;
};

struct EmMismatch {
  std::string pattern;
  std::string leaves;  // chosen basis elements, "d.k" per leaf
  std::optional<LieElement> via_inner;    // mu0 after mu0 on the leaves
  std::optional<LieElement> via_flatten;  // mu0 after flattening
};

struct EmLawsReport {
  std::size_t max_degree = 0;
  std::uint64_t seed = 0;
  std::size_t instances_per_pattern = 0;
  bool unit_ok = true;
  std::vector<std::size_t> unit_failures;  // basis indices with mu0(e_i) != e_i
  std::vector<EmPatternRecord> patterns;
  std::vector<EmMismatch> mismatches;

  [[nodiscard]] std::size_t instances_checked() const;
  [[nodiscard]] bool passed() const { return unit_ok && mismatches.empty(); }
};

/// Unit law on degree 1 and the associativity law on nested inputs built from
/// every pattern of brackets and p-th powers of free-layer leaves with total
/// V0-degree <= N. Each pattern gets all leaf choices when there are at most
/// `instances_per_pattern`, otherwise that many seeded random choices.
[[nodiscard]] EmLawsReport em_laws_check(const EMObject& a, std::size_t max_degree, std::uint64_t seed = 0,
                                         std::size_t instances_per_pattern = 8);

/// Runs em_laws_check at the object's own truncation and records the result.
[[nodiscard]] M2Object certify_m2(EMObject a, std::uint64_t seed = 0);

struct RoundtripReport {
  std::size_t max_degree = 0;
  bool em_witness = false;
  std::vector<std::pair<std::size_t, std::size_t>> bracket_mismatches;
  std::vector<std::size_t> pmap_mismatches;
  bool axioms_ok = false;  // check_axioms on Lambda's output

  [[nodiscard]] bool passed() const noexcept {
    return em_witness && bracket_mismatches.empty() && pmap_mismatches.empty() && axioms_ok;
  }
};

/// Lambda(certify_m2(mu0_from_restricted(L, N))) compared with L.
[[nodiscard]] RoundtripReport roundtrip_check(const RestrictedLieAlgebra& lie, std::size_t max_degree,
                                              std::size_t size_limit = EnvelopingAlgebra::kDefaultSizeLimit,
                                              std::uint64_t seed = 0);

struct PrimitiveComparisonReport {
  std::vector<std::pair<std::size_t, std::size_t>> bracket_mismatches;
  std::vector<std::size_t> pmap_mismatches;

  [[nodiscard]] bool passed() const noexcept { return bracket_mismatches.empty() && pmap_mismatches.empty(); }
};

/// Compares Lambda's tables with the commutator bracket and p-th power of
/// P(u(L)), both written in the primitive basis found by restricted_primitives.
[[nodiscard]] PrimitiveComparisonReport compare_with_primitives(const EnvelopingAlgebra& env,
                                                                const RestrictedPrimitiveSpace& primitives,
                                                                const RestrictedLieAlgebra& from_lambda);

struct SandwichRow {
  std::size_t degree = 0;
  std::size_t tensor_dim = 0;  // dim T^{<=d}
  std::size_t rank_phi = 0;
  std::size_t span_quotient_dim = 0;
  std::size_t pbw_filtration_dim = 0;
  std::size_t relations_considered = 0;

  [[nodiscard]] bool agree() const noexcept {
    return rank_phi == span_quotient_dim && span_quotient_dim == pbw_filtration_dim;
  }
};

struct SandwichReport {
  std::size_t max_degree = 0;
  std::size_t full_dim = 0;  // p^n
  std::vector<SandwichRow> rows;
  std::size_t certified_up_to = 0;
  std::size_t soundness_checked = 0;  // layer elements z with phi(z) == phi(mu0 z) tested
  std::vector<std::string> soundness_failures;
  std::optional<std::size_t> reaches_full_dim_at;

  [[nodiscard]] bool sound() const noexcept { return soundness_failures.empty(); }
  [[nodiscard]] bool bounds_hold() const noexcept;
  [[nodiscard]] bool passed() const noexcept {
    return sound() && bounds_hold() && certified_up_to == max_degree;
  }
};

/// Per filtration degree d <= N: rank of phi: T^{<=d} -> u(Lambda V2), the
/// dimension of T^{<=d} modulo the span of a (z - mu0 z) b with |a| + |z| + |b| <= d,
/// and the count of PBW monomials of exponent sum <= d. Throws
/// TruncationTooSmall when N < p and DegreeOutOfRange when N exceeds V2's truncation.
[[nodiscard]] SandwichReport sandwich_certificate(const M2Object& v2, std::size_t max_degree,
                                                  std::size_t size_limit = EnvelopingAlgebra::kDefaultSizeLimit);

struct EmMorphismReport {
  std::size_t elements_checked = 0;
  std::vector<std::size_t> failing_degrees;  // degrees where f mu0 != mu0 T(f)
  std::vector<std::pair<std::size_t, std::size_t>> bracket_mismatches;
  std::vector<std::size_t> pmap_mismatches;  // basis indices, then samples offset by dim

  [[nodiscard]] bool is_morphism() const noexcept { return failing_degrees.empty(); }
  [[nodiscard]] bool preserves_structure() const noexcept {
    return bracket_mismatches.empty() && pmap_mismatches.empty();
  }
};

/// T(f) applied letterwise: a word v_1...v_k maps to f(v_1)...f(v_k).
[[nodiscard]] TensorElement map_tensor(const TensorElement& z, const FpMatrix& f, const TensorContext& target);

/// Checks that f: V0 -> W0 (target.dim() x source.dim()) commutes with mu0 on
/// every free-layer basis element, and that it maps Lambda(source) brackets
/// and p-maps to those of Lambda(target), the p-map also on `samples` seeded
/// random elements.
[[nodiscard]] EmMorphismReport em_morphism_check(const EMObject& source, const EMObject& target, const FpMatrix& f,
                                                 std::size_t samples = 20, std::uint64_t seed = 0);

struct StationarityReport {
  std::size_t max_degree = 0;
  std::vector<std::size_t> mismatched_degrees;

  [[nodiscard]] bool passed() const noexcept { return mismatched_degrees.empty(); }
};

/// mu0_from_restricted(Lambda(V2)) reproduces V2's matrices at its truncation.
[[nodiscard]] StationarityReport stationarity_check(const M2Object& v2,
                                                    std::size_t size_limit = EnvelopingAlgebra::kDefaultSizeLimit);

}  // namespace rlie
