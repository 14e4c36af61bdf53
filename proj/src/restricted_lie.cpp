#include "rlie/restricted_lie.hpp"

#include <numeric>
#include <string>

namespace rlie {

LieBetaPoly::LieBetaPoly(LieElement constant) {
  coeffs_.push_back(std::move(constant));
  trim();
}

void LieBetaPoly::set(std::size_t beta_degree, LieElement value) {
  if (beta_degree >= coeffs_.size()) {
    coeffs_.resize(beta_degree + 1, LieElement(value.field(), value.size()));
  }
  coeffs_[beta_degree] = std::move(value);
  trim();
}

void LieBetaPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) {
    coeffs_.pop_back();
  }
}

RestrictedLieAlgebra::RestrictedLieAlgebra(PrimeField field, std::vector<std::string> names,
                                           const BracketTable& brackets, std::vector<LieElement> pmap_rows)
    : field_(field), names_(std::move(names)), pmap_rows_(std::move(pmap_rows)) {
  const std::size_t n = names_.size();
  upper_.assign(n * (n > 0 ? n - 1 : 0) / 2, LieElement(field_, n));
  for (const auto& [key, value] : brackets) {
    const auto [i, j] = key;
    if (i >= j || j >= n) {
      throw DimensionMismatch("bracket key (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") is not a strict upper-triangle index for dimension " + std::to_string(n));
    }
    require_element(value);
    upper_[upper_index(i, j)] = value;
  }
  if (pmap_rows_.empty()) {
    pmap_rows_.assign(n, LieElement(field_, n));
  }
  if (pmap_rows_.size() != n) {
    throw DimensionMismatch("p-map table has " + std::to_string(pmap_rows_.size()) + " rows for dimension " +
                            std::to_string(n));
  }
  for (const auto& row : pmap_rows_) {
    require_element(row);
  }
}

std::size_t RestrictedLieAlgebra::upper_index(std::size_t i, std::size_t j) const {
  // rows 0..i-1 contribute (n-1) + (n-2) + ... entries
  const std::size_t n = dim();
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

void RestrictedLieAlgebra::require_element(const LieElement& x) const {
  if (x.size() != dim() || !(x.field() == field_)) {
    throw DimensionMismatch("element of length " + std::to_string(x.size()) + " over F_" +
                            std::to_string(x.field().modulus()) + " in an algebra of dimension " +
                            std::to_string(dim()) + " over F_" + std::to_string(field_.modulus()));
  }
}

LieElement RestrictedLieAlgebra::structure(std::size_t i, std::size_t j) const {
  if (i >= dim() || j >= dim()) {
    throw DimensionMismatch("basis index out of range");
  }
  if (i == j) {
    return zero();
  }
  if (i < j) {
    return upper_[upper_index(i, j)];
  }
  return zero() - upper_[upper_index(j, i)];
}

LieElement RestrictedLieAlgebra::bracket(const LieElement& x, const LieElement& y) const {
  require_element(x);
  require_element(y);
  LieElement out = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) {
      continue;
    }
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j] == 0 || i == j) {
        continue;
      }
      out.axpy(field_.mul(x[i], y[j]), structure(i, j));
    }
  }
  return out;
}

FpMatrix RestrictedLieAlgebra::ad_matrix(const LieElement& x) const {
  FpMatrix m(field_, dim(), dim());
  for (std::size_t col = 0; col < dim(); ++col) {
    const LieElement image = bracket(x, basis(col));
    for (std::size_t row = 0; row < dim(); ++row) {
      m.set_residue(row, col, image[row]);
    }
  }
  return m;
}

LieBetaPoly RestrictedLieAlgebra::ad_expansion(const LieElement& x, const LieElement& y) const {
  require_element(x);
  require_element(y);
  // z -> [beta x + y, z] raises the beta-degree by at most one.
  std::vector<LieElement> current{x};
  for (Residue step = 1; step < characteristic(); ++step) {
    std::vector<LieElement> next(current.size() + 1, zero());
    for (std::size_t k = 0; k < current.size(); ++k) {
      next[k] += bracket(y, current[k]);
      next[k + 1] += bracket(x, current[k]);
    }
    current = std::move(next);
  }
  LieBetaPoly poly;
  for (std::size_t k = 0; k < current.size(); ++k) {
    if (!current[k].is_zero()) {
      poly.set(k, current[k]);
    }
  }
  return poly;
}

LieElement RestrictedLieAlgebra::s_term(const LieElement& x, const LieElement& y) const {
  const LieBetaPoly poly = ad_expansion(x, y);
  LieElement s = zero();
  for (Residue i = 1; i < characteristic(); ++i) {
    const std::size_t beta_degree = i - 1;
    if (beta_degree < poly.size()) {
      s.axpy(field_.inv(i), poly.coefficient(beta_degree));
    }
  }
  return s;
}

LieElement RestrictedLieAlgebra::pmap(const LieElement& x) const {
  std::vector<std::size_t> order(dim());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return pmap_in_order(x, order);
}

LieElement RestrictedLieAlgebra::pmap_in_order(const LieElement& x, const std::vector<std::size_t>& order) const {
  require_element(x);
  if (order.size() != dim()) {
    throw DimensionMismatch("summation order must list every basis index");
  }
  LieElement partial = zero();
  LieElement result = zero();
  for (const std::size_t k : order) {
    const Residue alpha = x[k];
    if (alpha == 0) {
      continue;
    }
    const LieElement term = basis(k).scaled(alpha);
    // (partial + term)^[p] = partial^[p] + term^[p] + s(partial, term)
    result.axpy(field_.pow(alpha, characteristic()), pmap_rows_[k]);
    result += s_term(partial, term);
    partial += term;
  }
  return result;
}

LieElement random_element(const RestrictedLieAlgebra& lie, std::mt19937_64& rng) {
  LieElement x = lie.zero();
  for (std::size_t i = 0; i < lie.dim(); ++i) {
    x.set(i, static_cast<std::int64_t>(rng() % lie.characteristic()));
  }
  return x;
}

AxiomReport check_axioms(const RestrictedLieAlgebra& lie, std::size_t samples, std::uint64_t seed) {
  AxiomReport report;
  report.samples = samples;
  report.seed = seed;
  const std::size_t n = lie.dim();
  const PrimeField& field = lie.field();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto ei = lie.basis(i);
        const auto ej = lie.basis(j);
        const auto ek = lie.basis(k);
        LieElement r = lie.bracket(ei, lie.bracket(ej, ek));
        r += lie.bracket(ej, lie.bracket(ek, ei));
        r += lie.bracket(ek, lie.bracket(ei, ej));
        ++report.jacobi_triples_checked;
        if (!r.is_zero()) {
          report.jacobi.push_back({i, j, k, std::move(r)});
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    FpMatrix residual = lie.ad_matrix(lie.pmap_row(i)) - lie.ad_matrix(lie.basis(i)).power(lie.characteristic());
    if (!residual.is_zero()) {
      report.restrictedness.push_back({i, std::move(residual)});
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const LieElement x = random_element(lie, rng);
    const LieElement y = random_element(lie, rng);
    LieElement r = lie.pmap(x + y);
    r -= lie.pmap(x);
    r -= lie.pmap(y);
    r -= lie.s_term(x, y);
    if (!r.is_zero()) {
      report.additivity.push_back({s, x, y, 0, std::move(r)});
    }
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const auto alpha = static_cast<Residue>(rng() % lie.characteristic());
    const LieElement x = random_element(lie, rng);
    LieElement r = lie.pmap(x.scaled(alpha));
    r.axpy(field.neg(field.pow(alpha, lie.characteristic())), lie.pmap(x));
    if (!r.is_zero()) {
      report.semilinearity.push_back({s, x, lie.zero(), alpha, std::move(r)});
    }
  }
  return report;
}

}  // namespace rlie
