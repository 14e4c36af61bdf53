#pragma once

// The free restricted Lie algebra on r generators, realized layer by layer as
// the primitive elements of T(V) with bracket xy - yx and p-map x^p, and the
// Witt-sum dimension count used to cross-check it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlie/fp_linalg.hpp"
#include "rlie/tensor_bialgebra.hpp"

namespace rlie {

/// Primitive elements of T(V) of pure degree n, with a membership solver.
class FreeRestrictedLayer {
 public:
  FreeRestrictedLayer(TensorContext ctx, std::size_t degree, std::vector<TensorElement> basis);

  [[nodiscard]] const TensorContext& context() const noexcept { return ctx_; }
  [[nodiscard]] std::size_t degree() const noexcept { return degree_; }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] const std::vector<TensorElement>& basis() const noexcept { return basis_; }
  /// Coordinates of a degree-n element over the basis; nullopt if it is not
  /// homogeneous of this degree or lies outside the span.
  [[nodiscard]] std::optional<FpVector> coordinates(const TensorElement& z) const;
  /// sum_k c[k] basis[k].
  [[nodiscard]] TensorElement element(const FpVector& c) const;

 private:
  TensorContext ctx_;
  std::size_t degree_;
  std::vector<TensorElement> basis_;
  SpanSolver solver_;
};

/// Layers 1..N over context (p, r, N); entry n-1 holds degree n. Throws
/// DegreeOutOfRange for N == 0.
[[nodiscard]] std::vector<FreeRestrictedLayer> free_restricted_basis(std::uint64_t p, std::size_t rank,
                                                                     std::size_t max_degree);
[[nodiscard]] std::vector<FreeRestrictedLayer> free_restricted_basis(const TensorContext& ctx);

/// Witt's count W(d, r) = (1/d) sum_{e | d} mu(e) r^(d/e) of the degree-d part
/// of the free Lie algebra on r generators.
[[nodiscard]] std::uint64_t witt_number(std::uint64_t degree, std::uint64_t rank);
/// Independent oracle: sum of W(d, r) over n = d p^k. Never used to build layers.
[[nodiscard]] std::uint64_t witt_oracle_dimension(std::uint64_t p, std::uint64_t rank, std::uint64_t degree);

struct ClosureRecord {
  enum class Kind { Bracket, Power };
  Kind kind;
  std::size_t left_degree;
  std::size_t left_index;
  std::size_t right_degree;  // Bracket only
  std::size_t right_index;   // Bracket only
  std::size_t result_degree;
  std::optional<FpVector> coordinates;  // nullopt when the result left the layer

  [[nodiscard]] std::string describe() const;
};

struct ClosureReport {
  std::size_t max_degree = 0;
  std::size_t brackets_checked = 0;
  std::size_t powers_checked = 0;
  std::vector<ClosureRecord> records;

  [[nodiscard]] std::size_t failures() const;
  [[nodiscard]] bool passed() const { return failures() == 0; }
};

/// Brackets of basis elements of layers n, m with n + m <= N and p-th powers
/// of layer-n basis elements with n p <= N, each solved in the target layer.
[[nodiscard]] ClosureReport closure_check(const std::vector<FreeRestrictedLayer>& layers, std::size_t max_degree);

}  // namespace rlie
