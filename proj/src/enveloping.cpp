#include "rlie/enveloping.hpp"

#include <numeric>
#include <random>
#include <string>

namespace rlie {

std::size_t PbwMonomial::degree() const noexcept {
  return std::accumulate(exponents.begin(), exponents.end(), std::size_t{0});
}

// ---------------------------------------------------------------------------
// EnvElement / EnvTensorElement

std::vector<std::pair<std::size_t, Residue>> EnvElement::terms() const {
  std::vector<std::pair<std::size_t, Residue>> out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != 0) {
      out.emplace_back(i, coords_[i]);
    }
  }
  return out;
}

EnvElement& EnvElement::operator+=(const EnvElement& other) {
  coords_ += other.coords_;
  return *this;
}

EnvElement& EnvElement::operator-=(const EnvElement& other) {
  coords_ -= other.coords_;
  return *this;
}

Residue EnvTensorElement::coefficient(std::size_t left, std::size_t right) const {
  const auto it = terms_.find({left, right});
  return it == terms_.end() ? 0 : it->second;
}

void EnvTensorElement::add_term(std::size_t left, std::size_t right, Residue coeff) {
  if (left >= dim_ || right >= dim_) {
    throw DimensionMismatch("tensor index outside u(L)");
  }
  coeff %= field_.modulus();
  if (coeff == 0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace({left, right}, coeff);
  if (!inserted) {
    it->second = field_.add(it->second, coeff);
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

EnvTensorElement& EnvTensorElement::operator+=(const EnvTensorElement& other) {
  if (!(field_ == other.field_) || dim_ != other.dim_) {
    throw DimensionMismatch("tensor operands over different enveloping algebras");
  }
  for (const auto& [key, c] : other.terms_) {
    add_term(key.first, key.second, c);
  }
  return *this;
}

EnvTensorElement& EnvTensorElement::operator-=(const EnvTensorElement& other) {
  if (!(field_ == other.field_) || dim_ != other.dim_) {
    throw DimensionMismatch("tensor operands over different enveloping algebras");
  }
  for (const auto& [key, c] : other.terms_) {
    add_term(key.first, key.second, field_.neg(c));
  }
  return *this;
}

EnvTensorElement EnvTensorElement::left(const EnvElement& a) {
  EnvTensorElement out(a.field(), a.size());
  for (const auto& [m, c] : a.terms()) {
    out.add_term(m, 0, c);
  }
  return out;
}

EnvTensorElement EnvTensorElement::right(const EnvElement& a) {
  EnvTensorElement out(a.field(), a.size());
  for (const auto& [m, c] : a.terms()) {
    out.add_term(0, m, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// EnvelopingAlgebra

namespace {

std::size_t checked_dimension(const RestrictedLieAlgebra& lie, std::size_t size_limit) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < lie.dim(); ++i) {
    if (dim > size_limit / lie.characteristic()) {
      throw SizeBound("u(L) has dimension " + std::to_string(lie.characteristic()) + "^" +
                      std::to_string(lie.dim()) + ", above the size limit " + std::to_string(size_limit));
    }
    dim *= lie.characteristic();
  }
  if (dim > size_limit) {
    throw SizeBound("u(L) dimension " + std::to_string(dim) + " exceeds the size limit " + std::to_string(size_limit));
  }
  return dim;
}

}  // namespace

EnvelopingAlgebra::EnvelopingAlgebra(RestrictedLieAlgebra lie, std::size_t size_limit)
    : lie_(std::move(lie)), dim_(checked_dimension(lie_, size_limit)) {
  const std::size_t n = lie_.dim();
  place_.assign(n, 1);
  for (std::size_t i = n; i-- > 1;) {
    place_[i - 1] = place_[i] * lie_.characteristic();
  }
  build_table();
}

PbwMonomial EnvelopingAlgebra::monomial(std::size_t index) const {
  if (index >= dim_) {
    throw DimensionMismatch("monomial index " + std::to_string(index) + " outside u(L)");
  }
  PbwMonomial m;
  m.exponents.resize(lie_.dim());
  for (std::size_t i = 0; i < lie_.dim(); ++i) {
    m.exponents[i] = static_cast<std::uint32_t>(index / place_[i] % lie_.characteristic());
  }
  return m;
}

std::size_t EnvelopingAlgebra::index_of(const PbwMonomial& m) const {
  if (m.exponents.size() != lie_.dim()) {
    throw DimensionMismatch("PBW monomial with " + std::to_string(m.exponents.size()) + " exponents");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < lie_.dim(); ++i) {
    if (m.exponents[i] >= lie_.characteristic()) {
      throw DimensionMismatch("PBW exponent " + std::to_string(m.exponents[i]) + " is not below p");
    }
    index += m.exponents[i] * place_[i];
  }
  return index;
}

std::string EnvelopingAlgebra::monomial_name(std::size_t index) const {
  const PbwMonomial m = monomial(index);
  std::string out;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] == 0) {
      continue;
    }
    out += (out.empty() ? "" : "*") + lie_.names()[i];
    if (m.exponents[i] > 1) {
      out += "^" + std::to_string(m.exponents[i]);
    }
  }
  return out.empty() ? "1" : out;
}

std::string EnvelopingAlgebra::to_string(const EnvElement& u) const {
  std::string out;
  for (const auto& [m, c] : u.terms()) {
    out += out.empty() ? "" : " + ";
    if (c != 1) {
      out += std::to_string(c);
      if (m == 0) {
        continue;
      }
      out += "*";
    }
    out += monomial_name(m);
  }
  return out.empty() ? "0" : out;
}

EnvElement EnvelopingAlgebra::basis_monomial(std::size_t index) const {
  return EnvElement(FpVector::unit(field(), dim_, index));
}

EnvElement EnvelopingAlgebra::generator(std::size_t i) const {
  if (i >= lie_.dim()) {
    throw DimensionMismatch("generator index " + std::to_string(i) + " outside the Lie algebra");
  }
  return basis_monomial(place_[i]);
}

EnvElement EnvelopingAlgebra::embed(const LieElement& x) const {
  if (x.size() != lie_.dim()) {
    throw DimensionMismatch("Lie element of length " + std::to_string(x.size()));
  }
  EnvElement u = zero();
  for (std::size_t i = 0; i < lie_.dim(); ++i) {
    u.axpy(x[i], generator(i));
  }
  return u;
}

void EnvelopingAlgebra::require(const EnvElement& u) const {
  if (u.size() != dim_ || !(u.field() == field())) {
    throw DimensionMismatch("element of dimension " + std::to_string(u.size()) + " in u(L) of dimension " +
                            std::to_string(dim_));
  }
}

namespace {

// Memoised e_i * monomial(m). Every recursive call is either at a lower
// total degree or a direct sorted insertion, so the recursion is finite.
class TableBuilder {
 public:
  using Sparse = std::vector<std::pair<std::uint32_t, Residue>>;

  TableBuilder(const RestrictedLieAlgebra& lie, std::size_t dim, const std::vector<std::size_t>& place)
      : lie_(lie), dim_(dim), place_(place), memo_(lie.dim() * dim) {}

  const Sparse& get(std::size_t i, std::size_t m) {
    auto& slot = memo_[i * dim_ + m];
    if (!slot) {
      slot = compute(i, m);
    }
    return *slot;
  }

 private:
  [[nodiscard]] std::uint32_t exponent(std::size_t m, std::size_t k) const {
    return static_cast<std::uint32_t>(m / place_[k] % lie_.characteristic());
  }

  void add_scaled(std::vector<Residue>& acc, const Sparse& terms, Residue factor) const {
    const PrimeField& f = lie_.field();
    for (const auto& [idx, c] : terms) {
      acc[idx] = f.add(acc[idx], f.mul(factor, c));
    }
  }

  [[nodiscard]] Sparse to_sparse(const std::vector<Residue>& acc) const {
    Sparse out;
    for (std::size_t idx = 0; idx < acc.size(); ++idx) {
      if (acc[idx] != 0) {
        out.emplace_back(static_cast<std::uint32_t>(idx), acc[idx]);
      }
    }
    return out;
  }

  Sparse compute(std::size_t i, std::size_t m) {
    const std::size_t n = lie_.dim();
    const Residue p = lie_.characteristic();
    std::size_t first = 0;
    while (first < n && exponent(m, first) == 0) {
      ++first;
    }
    if (first == n || i < first) {
      return {{static_cast<std::uint32_t>(m + place_[i]), 1}};
    }
    if (i == first && exponent(m, i) + 1 < p) {
      return {{static_cast<std::uint32_t>(m + place_[i]), 1}};
    }
    std::vector<Residue> acc(dim_, 0);
    if (i == first) {
      // e_i^p * rest = e_i^[p] * rest
      const std::size_t rest = m - (p - 1) * place_[i];
      const LieElement& t = lie_.pmap_row(i);
      for (std::size_t k = 0; k < n; ++k) {
        if (t[k] != 0) {
          const Sparse term = get(k, rest);
          add_scaled(acc, term, t[k]);
        }
      }
      return to_sparse(acc);
    }
    // i > first: e_i e_f^a rest = e_f (e_i e_f^(a-1) rest) + [e_i, e_f] e_f^(a-1) rest
    const std::size_t lowered = m - place_[first];
    const Sparse moved = get(i, lowered);
    for (const auto& [mono, c] : moved) {
      const Sparse term = get(first, mono);
      add_scaled(acc, term, c);
    }
    const LieElement swap = lie_.structure(i, first);
    for (std::size_t k = 0; k < n; ++k) {
      if (swap[k] != 0) {
        const Sparse term = get(k, lowered);
        add_scaled(acc, term, swap[k]);
      }
    }
    return to_sparse(acc);
  }

  const RestrictedLieAlgebra& lie_;
  std::size_t dim_;
  const std::vector<std::size_t>& place_;
  std::vector<std::optional<Sparse>> memo_;
};

}  // namespace

void EnvelopingAlgebra::build_table() {
  TableBuilder builder(lie_, dim_, place_);
  table_.resize(lie_.dim() * dim_);
  for (std::size_t i = 0; i < lie_.dim(); ++i) {
    for (std::size_t m = 0; m < dim_; ++m) {
      table_[i * dim_ + m] = builder.get(i, m);
    }
  }
}

EnvElement EnvelopingAlgebra::straighten(const Word& word) const {
  EnvElement u = one();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    u = left_mul_generator(*it, u);
  }
  return u;
}

EnvElement EnvelopingAlgebra::left_mul_generator(std::size_t i, const EnvElement& u) const {
  require(u);
  if (i >= lie_.dim()) {
    throw DimensionMismatch("generator index " + std::to_string(i) + " outside the Lie algebra");
  }
  const PrimeField& f = field();
  std::vector<Residue> acc(dim_, 0);
  for (std::size_t m = 0; m < dim_; ++m) {
    const Residue c = u[m];
    if (c == 0) {
      continue;
    }
    for (const auto& [idx, t] : table_entry(i, m)) {
      acc[idx] = f.add(acc[idx], f.mul(c, t));
    }
  }
  return EnvElement(FpVector(f, std::move(acc)));
}

EnvElement EnvelopingAlgebra::multiply(const EnvElement& u, const EnvElement& v) const {
  require(u);
  require(v);
  EnvElement result = zero();
  for (const auto& [m, c] : u.terms()) {
    const PbwMonomial mono = monomial(m);
    EnvElement w = v;
    for (std::size_t k = lie_.dim(); k-- > 0;) {
      for (std::uint32_t r = 0; r < mono.exponents[k]; ++r) {
        w = left_mul_generator(k, w);
      }
    }
    result.axpy(c, w);
  }
  return result;
}

EnvElement EnvelopingAlgebra::power(const EnvElement& u, std::uint64_t k) const {
  EnvElement result = one();
  EnvElement base = u;
  while (k != 0) {
    if (k & 1U) {
      result = multiply(result, base);
    }
    k >>= 1U;
    if (k != 0) {
      base = multiply(base, base);
    }
  }
  return result;
}

EnvElement EnvelopingAlgebra::commutator(const EnvElement& u, const EnvElement& v) const {
  return multiply(u, v) - multiply(v, u);
}

EnvTensorElement EnvelopingAlgebra::tensor_multiply(const EnvTensorElement& a, const EnvTensorElement& b) const {
  const PrimeField& f = field();
  std::map<std::pair<std::size_t, std::size_t>, EnvElement> products;
  auto product = [&](std::size_t x, std::size_t y) -> const EnvElement& {
    auto it = products.find({x, y});
    if (it == products.end()) {
      it = products.emplace(std::pair{x, y}, multiply(basis_monomial(x), basis_monomial(y))).first;
    }
    return it->second;
  };
  EnvTensorElement out(f, dim_);
  for (const auto& [k1, c1] : a.terms()) {
    for (const auto& [k2, c2] : b.terms()) {
      const Residue c = f.mul(c1, c2);
      const auto left = product(k1.first, k2.first).terms();
      const auto right = product(k1.second, k2.second).terms();
      for (const auto& [x, cx] : left) {
        for (const auto& [y, cy] : right) {
          out.add_term(x, y, f.mul(c, f.mul(cx, cy)));
        }
      }
    }
  }
  return out;
}

EnvTensorElement EnvelopingAlgebra::coproduct(const EnvElement& u) const {
  require(u);
  const PrimeField& f = field();
  EnvTensorElement out(f, dim_);
  for (const auto& [m, c] : u.terms()) {
    const PbwMonomial mono = monomial(m);
    EnvTensorElement delta(f, dim_);
    delta.add_term(0, 0, 1);
    for (std::size_t k = 0; k < lie_.dim(); ++k) {
      if (mono.exponents[k] == 0) {
        continue;
      }
      EnvTensorElement primitive(f, dim_);
      primitive.add_term(place_[k], 0, 1);
      primitive.add_term(0, place_[k], 1);
      for (std::uint32_t r = 0; r < mono.exponents[k]; ++r) {
        delta = tensor_multiply(delta, primitive);
      }
    }
    for (const auto& [key, d] : delta.terms()) {
      out.add_term(key.first, key.second, f.mul(c, d));
    }
  }
  return out;
}

EnvTensorElement EnvelopingAlgebra::primitivity_defect(const EnvElement& u) const {
  EnvTensorElement d = coproduct(u);
  d -= EnvTensorElement::left(u);
  d -= EnvTensorElement::right(u);
  return d;
}

std::size_t pbw_filtration_count(const EnvelopingAlgebra& env, std::size_t d) {
  std::size_t count = 0;
  for (std::size_t m = 0; m < env.dim(); ++m) {
    count += env.monomial(m).degree() <= d ? 1 : 0;
  }
  return count;
}

namespace {

EnvElement random_env_element(const EnvelopingAlgebra& env, std::mt19937_64& rng) {
  EnvElement u = env.zero();
  FpVector coords(env.field(), env.dim());
  for (std::size_t i = 0; i < env.dim(); ++i) {
    coords.set(i, static_cast<std::int64_t>(rng() % env.field().modulus()));
  }
  return EnvElement(std::move(coords));
}

}  // namespace

AssociativityReport check_associativity(const EnvelopingAlgebra& env, std::size_t samples, std::uint64_t seed,
                                        std::size_t exhaustive_limit) {
  AssociativityReport report;
  for (std::size_t m = 0; m < env.dim(); ++m) {
    const EnvElement u = env.basis_monomial(m);
    if (!(env.multiply(env.one(), u) == u) || !(env.multiply(u, env.one()) == u)) {
      report.unit_ok = false;
    }
  }
  if (env.dim() <= exhaustive_limit) {
    report.exhaustive = true;
    for (std::size_t a = 0; a < env.dim(); ++a) {
      for (std::size_t b = 0; b < env.dim(); ++b) {
        const EnvElement ab = env.multiply(env.basis_monomial(a), env.basis_monomial(b));
        for (std::size_t c = 0; c < env.dim(); ++c) {
          const EnvElement bc = env.multiply(env.basis_monomial(b), env.basis_monomial(c));
          ++report.triples_checked;
          if (!(env.multiply(ab, env.basis_monomial(c)) == env.multiply(env.basis_monomial(a), bc))) {
            report.failing_monomials.push_back({a, b, c});
          }
        }
      }
    }
    return report;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const EnvElement a = random_env_element(env, rng);
    const EnvElement b = random_env_element(env, rng);
    const EnvElement c = random_env_element(env, rng);
    ++report.triples_checked;
    if (!(env.multiply(env.multiply(a, b), c) == env.multiply(a, env.multiply(b, c)))) {
      report.failing_samples.push_back(s);
    }
  }
  return report;
}

EnvElement frobenius_residual(const EnvelopingAlgebra& env, const LieElement& x) {
  return env.embed(env.lie().pmap(x)) - env.power(env.embed(x), env.lie().characteristic());
}

// ---------------------------------------------------------------------------
// Restricted primitives

namespace {

std::vector<FpVector> coordinate_family(const std::vector<EnvElement>& elements) {
  std::vector<FpVector> out;
  out.reserve(elements.size());
  for (const auto& e : elements) {
    out.push_back(e.coords());
  }
  return out;
}

}  // namespace

RestrictedPrimitiveSpace::RestrictedPrimitiveSpace(const EnvelopingAlgebra& env, std::vector<EnvElement> basis)
    : field_(env.field()), basis_(std::move(basis)), solver_(env.field(), env.dim(), coordinate_family(basis_)) {
  const std::size_t k = basis_.size();
  brackets_.assign(k, std::vector<FpVector>(k, FpVector(field_, k)));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) {
        continue;
      }
      if (auto c = solver_.coordinates(env.commutator(basis_[a], basis_[b]).coords())) {
        brackets_[a][b] = std::move(*c);
      } else {
        closed_ = false;
      }
    }
  }
  pmaps_.assign(k, FpVector(field_, k));
  for (std::size_t a = 0; a < k; ++a) {
    if (auto c = solver_.coordinates(env.power(basis_[a], env.lie().characteristic()).coords())) {
      pmaps_[a] = std::move(*c);
    } else {
      closed_ = false;
    }
  }
}

std::optional<FpVector> RestrictedPrimitiveSpace::coordinates(const EnvElement& u) const {
  return solver_.coordinates(u.coords());
}

RestrictedLieAlgebra RestrictedPrimitiveSpace::as_lie_algebra() const {
  std::vector<std::string> names;
  for (std::size_t a = 0; a < dim(); ++a) {
    names.push_back("P" + std::to_string(a));
  }
  RestrictedLieAlgebra::BracketTable table;
  for (std::size_t a = 0; a < dim(); ++a) {
    for (std::size_t b = a + 1; b < dim(); ++b) {
      table.emplace(std::pair{a, b}, brackets_[a][b]);
    }
  }
  return RestrictedLieAlgebra(field_, std::move(names), table, pmaps_);
}

RestrictedPrimitiveSpace restricted_primitives(const EnvelopingAlgebra& env) {
  const std::size_t dim = env.dim();
  std::vector<EnvTensorElement::Terms> columns(dim);
  const auto count = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t m = 0; m < count; ++m) {
    const auto idx = static_cast<std::size_t>(m);
    columns[idx] = env.primitivity_defect(env.basis_monomial(idx)).terms();
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> row_of;
  for (const auto& column : columns) {
    for (const auto& [key, c] : column) {
      row_of.try_emplace(key, row_of.size());
    }
  }
  FpMatrix system(env.field(), row_of.size(), dim);
  for (std::size_t m = 0; m < dim; ++m) {
    for (const auto& [key, c] : columns[m]) {
      system.set_residue(row_of.at(key), m, c);
    }
  }
  std::vector<EnvElement> basis;
  for (auto& v : kernel_basis(system)) {
    basis.emplace_back(std::move(v));
  }
  return RestrictedPrimitiveSpace(env, std::move(basis));
}

EtaReport unit_eta_check(const EnvelopingAlgebra& env, const RestrictedPrimitiveSpace& primitives) {
  const RestrictedLieAlgebra& lie = env.lie();
  EtaReport report;
  report.lie_dim = lie.dim();
  report.primitive_dim = primitives.dim();
  std::vector<EnvElement> images;
  for (std::size_t i = 0; i < lie.dim(); ++i) {
    images.push_back(env.generator(i));
    if (!env.primitivity_defect(images.back()).is_zero() || !primitives.coordinates(images.back())) {
      report.images_primitive = false;
    }
  }
  report.image_rank = SpanSolver(env.field(), env.dim(), coordinate_family(images)).rank();
  for (std::size_t i = 0; i < lie.dim(); ++i) {
    for (std::size_t j = i + 1; j < lie.dim(); ++j) {
      if (!(env.embed(lie.structure(i, j)) == env.commutator(images[i], images[j]))) {
        report.bracket_mismatches.emplace_back(i, j);
      }
    }
    if (!(env.embed(lie.pmap_row(i)) == env.power(images[i], lie.characteristic()))) {
      report.pmap_mismatches.push_back(i);
    }
  }
  return report;
}

EtaReport unit_eta_check(const RestrictedLieAlgebra& lie, std::size_t size_limit) {
  const EnvelopingAlgebra env(lie, size_limit);
  return unit_eta_check(env, restricted_primitives(env));
}

}  // namespace rlie
