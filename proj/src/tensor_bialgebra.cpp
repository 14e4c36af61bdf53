#include "rlie/tensor_bialgebra.hpp"

#include <functional>
#include <sstream>

namespace rlie {

namespace {

void require_same(const TensorContext& a, const TensorContext& b) {
  if (!(a == b)) {
    std::ostringstream os;
    os << "tensor operands disagree: (p=" << a.field.modulus() << ", r=" << a.rank << ", N=" << a.max_degree
       << ") vs (p=" << b.field.modulus() << ", r=" << b.rank << ", N=" << b.max_degree << ")";
    throw MixedContext(os.str());
  }
}

template <typename Map, typename Key>
void accumulate(Map& terms, const Key& key, Residue coeff, const PrimeField& field) {
  if (coeff == 0) {
    return;
  }
  auto [it, inserted] = terms.try_emplace(key, coeff);
  if (!inserted) {
    it->second = field.add(it->second, coeff);
    if (it->second == 0) {
      terms.erase(it);
    }
  }
}

}  // namespace

std::size_t word_count(std::size_t rank, std::size_t degree) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < degree; ++i) {
    n *= rank;
  }
  return n;
}

std::vector<Word> words_of_degree(std::size_t rank, std::size_t degree) {
  const std::size_t count = word_count(rank, degree);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Word w(degree);
    std::size_t rest = idx;
    for (std::size_t pos = degree; pos-- > 0;) {
      w[pos] = static_cast<Letter>(rest % rank);
      rest /= rank;
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::size_t word_index(const Word& w, std::size_t rank) {
  std::size_t idx = 0;
  for (auto letter : w) {
    idx = idx * rank + letter;
  }
  return idx;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!names.empty()) {
      out += (i ? "*" : "") + names.at(w[i]);
    } else {
      out += (i ? "*x" : "x") + std::to_string(w[i]);
    }
  }
  return out;
}

std::vector<std::size_t> word_content(const Word& w, std::size_t rank) {
  std::vector<std::size_t> content(rank, 0);
  for (auto letter : w) {
    ++content.at(letter);
  }
  return content;
}

// ---------------------------------------------------------------------------
// TensorElement

TensorElement TensorElement::unit(const TensorContext& ctx) { return monomial(ctx, {}, 1); }

TensorElement TensorElement::generator(const TensorContext& ctx, std::size_t index) {
  if (index >= ctx.rank) {
    throw DimensionMismatch("generator " + std::to_string(index) + " of a rank-" + std::to_string(ctx.rank) +
                            " tensor algebra");
  }
  return monomial(ctx, Word{static_cast<Letter>(index)}, 1);
}

TensorElement TensorElement::monomial(const TensorContext& ctx, Word w, std::int64_t coeff) {
  TensorElement e(ctx);
  e.add_term(w, ctx.field.reduce(coeff));
  return e;
}

TensorElement TensorElement::from_dense(const TensorContext& ctx, std::size_t degree, const FpVector& coords) {
  if (coords.size() != word_count(ctx.rank, degree)) {
    throw DimensionMismatch("dense tensor coordinates of length " + std::to_string(coords.size()));
  }
  TensorElement e(ctx);
  const auto words = words_of_degree(ctx.rank, degree);
  for (std::size_t i = 0; i < words.size(); ++i) {
    e.add_term(words[i], coords[i]);
  }
  return e;
}

Residue TensorElement::coefficient(const Word& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

bool TensorElement::is_homogeneous(std::size_t degree) const {
  for (const auto& [w, c] : terms_) {
    if (w.size() != degree) {
      return false;
    }
  }
  return true;
}

std::size_t TensorElement::top_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

FpVector TensorElement::dense(std::size_t degree) const {
  FpVector v(ctx_.field, word_count(ctx_.rank, degree));
  for (const auto& [w, c] : terms_) {
    if (w.size() == degree) {
      v.set(word_index(w, ctx_.rank), c);
    }
  }
  return v;
}

void TensorElement::add_term(const Word& w, Residue coeff) {
  if (w.size() > ctx_.max_degree) {
    return;
  }
  for (auto letter : w) {
    if (letter >= ctx_.rank) {
      throw DimensionMismatch("letter " + std::to_string(letter) + " outside a rank-" + std::to_string(ctx_.rank) +
                              " tensor algebra");
    }
  }
  accumulate(terms_, w, coeff % ctx_.field.modulus(), ctx_.field);
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  require_same(ctx_, other.ctx_);
  for (const auto& [w, c] : other.terms_) {
    accumulate(terms_, w, c, ctx_.field);
  }
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  require_same(ctx_, other.ctx_);
  for (const auto& [w, c] : other.terms_) {
    accumulate(terms_, w, ctx_.field.neg(c), ctx_.field);
  }
  return *this;
}

TensorElement TensorElement::scaled(Residue factor) const {
  TensorElement out(ctx_);
  for (const auto& [w, c] : terms_) {
    out.add_term(w, ctx_.field.mul(factor, c));
  }
  return out;
}

std::string TensorElement::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) {
    return "0";
  }
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    out += first ? "" : " + ";
    first = false;
    if (c != 1) {
      out += std::to_string(c) + (w.empty() ? "" : "*");
    }
    if (c != 1 && w.empty()) {
      continue;
    }
    out += word_to_string(w, names);
  }
  return out;
}

// ---------------------------------------------------------------------------
// TensorSquareElement

Residue TensorSquareElement::coefficient(const Word& left, const Word& right) const {
  const auto it = terms_.find({left, right});
  return it == terms_.end() ? 0 : it->second;
}

void TensorSquareElement::add_term(const Word& left, const Word& right, Residue coeff) {
  if (left.size() + right.size() > ctx_.max_degree) {
    return;
  }
  accumulate(terms_, std::pair{left, right}, coeff % ctx_.field.modulus(), ctx_.field);
}

TensorSquareElement& TensorSquareElement::operator+=(const TensorSquareElement& other) {
  require_same(ctx_, other.ctx_);
  for (const auto& [key, c] : other.terms_) {
    accumulate(terms_, key, c, ctx_.field);
  }
  return *this;
}

TensorSquareElement& TensorSquareElement::operator-=(const TensorSquareElement& other) {
  require_same(ctx_, other.ctx_);
  for (const auto& [key, c] : other.terms_) {
    accumulate(terms_, key, ctx_.field.neg(c), ctx_.field);
  }
  return *this;
}

TensorSquareElement TensorSquareElement::operator*(const TensorSquareElement& other) const {
  require_same(ctx_, other.ctx_);
  TensorSquareElement out(ctx_);
  for (const auto& [k1, c1] : terms_) {
    for (const auto& [k2, c2] : other.terms_) {
      Word left = k1.first;
      left.insert(left.end(), k2.first.begin(), k2.first.end());
      Word right = k1.second;
      right.insert(right.end(), k2.second.begin(), k2.second.end());
      out.add_term(left, right, ctx_.field.mul(c1, c2));
    }
  }
  return out;
}

TensorSquareElement TensorSquareElement::left(const TensorElement& a) {
  TensorSquareElement out(a.context());
  for (const auto& [w, c] : a.terms()) {
    out.add_term(w, {}, c);
  }
  return out;
}

TensorSquareElement TensorSquareElement::right(const TensorElement& a) {
  TensorSquareElement out(a.context());
  for (const auto& [w, c] : a.terms()) {
    out.add_term({}, w, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra and coalgebra maps

TensorElement concat_mul(const TensorElement& a, const TensorElement& b) {
  require_same(a.context(), b.context());
  const auto& field = a.field();
  const std::size_t max_degree = a.context().max_degree;
  TensorElement out(a.context());
  for (const auto& [u, cu] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      if (u.size() + v.size() > max_degree) {
        continue;
      }
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.add_term(w, field.mul(cu, cv));
    }
  }
  return out;
}

TensorElement commutator(const TensorElement& a, const TensorElement& b) {
  return concat_mul(a, b) - concat_mul(b, a);
}

TensorElement tensor_power(const TensorElement& a, std::size_t k) {
  TensorElement out = TensorElement::unit(a.context());
  for (std::size_t i = 0; i < k; ++i) {
    out = concat_mul(out, a);
  }
  return out;
}

namespace {

template <typename Sink>
void split_word(const Word& w, Sink&& sink) {
  const std::size_t k = w.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Word left;
    Word right;
    for (std::size_t pos = 0; pos < k; ++pos) {
      ((mask >> pos) & 1U ? left : right).push_back(w[pos]);
    }
    sink(std::move(left), std::move(right));
  }
}

}  // namespace

TensorSquareElement coproduct(const TensorElement& a) {
  TensorSquareElement out(a.context());
  for (const auto& [w, c] : a.terms()) {
    split_word(w, [&](Word left, Word right) { out.add_term(left, right, c); });
  }
  return out;
}

FpScalar counit(const TensorElement& a) { return {a.field(), a.coefficient({})}; }

TensorSquareElement primitivity_defect(const TensorElement& a) {
  TensorSquareElement d = coproduct(a);
  d -= TensorSquareElement::left(a);
  d -= TensorSquareElement::right(a);
  return d;
}

bool is_primitive(const TensorElement& a) { return primitivity_defect(a).is_zero(); }

// ---------------------------------------------------------------------------
// Primitive solver

namespace {

void check_degree(const TensorContext& ctx, std::size_t degree) {
  if (degree == 0 || degree > ctx.max_degree) {
    throw DegreeOutOfRange("primitive degree " + std::to_string(degree) + " outside [1, " +
                           std::to_string(ctx.max_degree) + "]");
  }
}

// Kernel of Delta - (- (x) 1) - (1 (x) -) on span(words), read on mixed
// bidegrees (i, n-i) with 0 < i < n.
std::vector<TensorElement> solve_primitive_block(const TensorContext& ctx, const std::vector<Word>& words) {
  const auto& field = ctx.field;
  std::map<std::pair<Word, Word>, std::size_t, WordPairOrder> row_of;
  std::vector<std::vector<std::pair<std::size_t, Residue>>> column_entries(words.size());
  for (std::size_t col = 0; col < words.size(); ++col) {
    const std::size_t n = words[col].size();
    std::map<std::size_t, Residue> entries;
    split_word(words[col], [&](Word left, Word right) {
      if (left.empty() || left.size() == n) {
        return;
      }
      auto [it, inserted] = row_of.try_emplace({std::move(left), std::move(right)}, row_of.size());
      auto& slot = entries[it->second];
      slot = field.add(slot, 1);
    });
    for (auto [row, c] : entries) {
      column_entries[col].emplace_back(row, c);
    }
  }
  FpMatrix system(field, row_of.size(), words.size());
  for (std::size_t col = 0; col < words.size(); ++col) {
    for (auto [row, c] : column_entries[col]) {
      system.set_residue(row, col, c);
    }
  }
  std::vector<TensorElement> basis;
  for (const auto& v : kernel_basis(system)) {
    TensorElement z(ctx);
    for (std::size_t col = 0; col < words.size(); ++col) {
      z.add_term(words[col], v[col]);
    }
    basis.push_back(std::move(z));
  }
  return basis;
}

}  // namespace

std::vector<TensorElement> primitive_basis(const TensorContext& ctx, std::size_t degree) {
  check_degree(ctx, degree);
  // Heavier letter-0 content first, so x*x precedes x*y+y*x precedes y*y.
  std::map<std::vector<std::size_t>, std::vector<Word>, std::greater<>> blocks;
  for (auto& w : words_of_degree(ctx.rank, degree)) {
    blocks[word_content(w, ctx.rank)].push_back(std::move(w));
  }
  std::vector<const std::vector<Word>*> block_words;
  block_words.reserve(blocks.size());
  for (const auto& [content, words] : blocks) {
    block_words.push_back(&words);
  }
  std::vector<std::vector<TensorElement>> solved(block_words.size());
  const auto count = static_cast<std::ptrdiff_t>(block_words.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < count; ++b) {
    solved[static_cast<std::size_t>(b)] = solve_primitive_block(ctx, *block_words[static_cast<std::size_t>(b)]);
  }
  std::vector<TensorElement> basis;
  for (auto& block : solved) {
    for (auto& z : block) {
      basis.push_back(std::move(z));
    }
  }
  return basis;
}

std::vector<TensorElement> primitive_basis(std::uint64_t p, std::size_t rank, std::size_t degree) {
  return primitive_basis(TensorContext{PrimeField(p), rank, degree}, degree);
}

namespace reference {
std::vector<TensorElement> primitive_basis_unblocked(const TensorContext& ctx, std::size_t degree) {
  check_degree(ctx, degree);
  return solve_primitive_block(ctx, words_of_degree(ctx.rank, degree));
}
}  // namespace reference

}  // namespace rlie
