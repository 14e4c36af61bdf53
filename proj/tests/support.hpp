#pragma once

// Corpus algebras built directly in code, independent of the JSON files, and
// faithful matrix representations used as p-map oracles.

#include <string>
#include <vector>

#include "rlie/algebra_io.hpp"
#include "rlie/restricted_lie.hpp"

namespace rlie::testing {

inline std::string algebra_path(const std::string& name) { return std::string(RLIE_ALGEBRA_DIR) + "/" + name + ".json"; }

inline RestrictedLieAlgebra load(const std::string& name) { return parse_algebra_file(algebra_path(name)); }

/// One generator x with x^[p] = self_coeff * x.
inline RestrictedLieAlgebra abelian_line(std::uint64_t p, std::int64_t self_coeff = 0) {
  const PrimeField f(p);
  std::vector<LieElement> pmap{LieElement(f, 1)};
  pmap[0].set(0, self_coeff);
  return RestrictedLieAlgebra(f, {"x"}, {}, pmap);
}

/// [x, y] = z, zero p-map on the basis.
inline RestrictedLieAlgebra heisenberg(std::uint64_t p) {
  const PrimeField f(p);
  RestrictedLieAlgebra::BracketTable b;
  b.emplace(std::pair<std::size_t, std::size_t>{0, 1}, LieElement::unit(f, 3, 2));
  return RestrictedLieAlgebra(f, {"x", "y", "z"}, b, {});
}

/// sl2 on (e, h, f) with e^[p] = f^[p] = 0 and h^[p] = h.
inline RestrictedLieAlgebra sl2(std::uint64_t p) {
  const PrimeField f(p);
  RestrictedLieAlgebra::BracketTable b;
  b.emplace(std::pair<std::size_t, std::size_t>{0, 1}, LieElement::unit(f, 3, 0).scaled(f.reduce(-2)));
  b.emplace(std::pair<std::size_t, std::size_t>{0, 2}, LieElement::unit(f, 3, 1));
  b.emplace(std::pair<std::size_t, std::size_t>{1, 2}, LieElement::unit(f, 3, 2).scaled(f.reduce(-2)));
  std::vector<LieElement> pmap(3, LieElement(f, 3));
  pmap[1] = LieElement::unit(f, 3, 1);
  return RestrictedLieAlgebra(f, {"e", "h", "f"}, b, pmap);
}

struct Representation {
  std::vector<FpMatrix> images;  // matrix of each basis vector

  [[nodiscard]] FpMatrix of(const LieElement& x) const {
    FpMatrix out(x.field(), images[0].rows(), images[0].cols());
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
          const auto& f = x.field();
          out.set_residue(r, c, f.add(out.at(r, c), f.mul(x[k], images[k].at(r, c))));
        }
      }
    }
    return out;
  }
};

/// 2x2 matrices e = E12, h = E11 - E22, f = E21.
inline Representation sl2_matrices(std::uint64_t p) {
  const PrimeField f(p);
  return {{FpMatrix::from_rows(f, {{0, 1}, {0, 0}}), FpMatrix::from_rows(f, {{1, 0}, {0, -1}}),
           FpMatrix::from_rows(f, {{0, 0}, {1, 0}})}};
}

/// Strictly upper triangular 3x3: x = E12, y = E23, z = E13.
inline Representation heisenberg_matrices(std::uint64_t p) {
  const PrimeField f(p);
  return {{FpMatrix::from_rows(f, {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}),
           FpMatrix::from_rows(f, {{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}),
           FpMatrix::from_rows(f, {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}})}};
}

/// The full corpus with p-values, keyed by file name.
inline std::vector<std::pair<std::string, RestrictedLieAlgebra>> corpus() {
  return {{"abelian_p2", abelian_line(2)},       {"abelian_p3", abelian_line(3)},
          {"abelian_p5", abelian_line(5)},       {"abelian_p2_xx_eq_x", abelian_line(2, 1)},
          {"heisenberg_p2", heisenberg(2)},      {"heisenberg_p3", heisenberg(3)},
          {"sl2_p5", sl2(5)}};
}

}  // namespace rlie::testing
