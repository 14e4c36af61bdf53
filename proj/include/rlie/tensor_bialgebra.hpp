#pragma once

// Degree-truncated tensor algebra T(V) on r generators with the bialgebra
// structure in which every generator is primitive.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rlie/fp_linalg.hpp"

namespace rlie {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

/// Canonical term order: shorter words first, then lexicographic.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const noexcept {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a < b;
  }
};

struct WordPairOrder {
  bool operator()(const std::pair<Word, Word>& a, const std::pair<Word, Word>& b) const noexcept {
    const WordOrder less;
    if (less(a.first, b.first)) {
      return true;
    }
    if (less(b.first, a.first)) {
      return false;
    }
    return less(a.second, b.second);
  }
};

/// Modulus, generator count and truncation degree shared by operands.
struct TensorContext {
  PrimeField field;
  std::size_t rank;
  std::size_t max_degree;

  friend bool operator==(const TensorContext&, const TensorContext&) = default;
};

/// Number of words of length n over r letters.
[[nodiscard]] std::size_t word_count(std::size_t rank, std::size_t degree);
/// All words of the given length, in canonical order.
[[nodiscard]] std::vector<Word> words_of_degree(std::size_t rank, std::size_t degree);
/// Position of w among words_of_degree(rank, w.size()) (base-r value).
[[nodiscard]] std::size_t word_index(const Word& w, std::size_t rank);
/// Human-readable word; letters named by `names` or x0, x1, ... when empty.
[[nodiscard]] std::string word_to_string(const Word& w, const std::vector<std::string>& names = {});

class TensorElement {
 public:
  using Terms = std::map<Word, Residue, WordOrder>;

  explicit TensorElement(TensorContext ctx) : ctx_(ctx) {}

  static TensorElement unit(const TensorContext& ctx);
  static TensorElement generator(const TensorContext& ctx, std::size_t index);
  /// coeff * w; empty if |w| exceeds the truncation degree.
  static TensorElement monomial(const TensorContext& ctx, Word w, std::int64_t coeff = 1);
  /// Element of pure degree `degree` from dense coordinates over words_of_degree.
  static TensorElement from_dense(const TensorContext& ctx, std::size_t degree, const FpVector& coords);

  [[nodiscard]] const TensorContext& context() const noexcept { return ctx_; }
  [[nodiscard]] const PrimeField& field() const noexcept { return ctx_.field; }
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] Residue coefficient(const Word& w) const;
  /// True when every stored word has exactly this length (zero counts).
  [[nodiscard]] bool is_homogeneous(std::size_t degree) const;
  /// Length of the longest stored word; 0 for the zero element.
  [[nodiscard]] std::size_t top_degree() const;
  /// Coordinates of the degree-n part over words_of_degree(rank, n).
  [[nodiscard]] FpVector dense(std::size_t degree) const;

  /// Adds coeff * w, dropping words above the truncation degree.
  void add_term(const Word& w, Residue coeff);
  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  [[nodiscard]] TensorElement scaled(Residue factor) const;

  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend bool operator==(const TensorElement&, const TensorElement&) = default;

  [[nodiscard]] std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  TensorContext ctx_;
  Terms terms_;
};

/// Element of T(V) (x) T(V).
class TensorSquareElement {
 public:
  using Terms = std::map<std::pair<Word, Word>, Residue, WordPairOrder>;

  explicit TensorSquareElement(TensorContext ctx) : ctx_(ctx) {}

  [[nodiscard]] const TensorContext& context() const noexcept { return ctx_; }
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] Residue coefficient(const Word& left, const Word& right) const;

  void add_term(const Word& left, const Word& right, Residue coeff);
  TensorSquareElement& operator+=(const TensorSquareElement& other);
  TensorSquareElement& operator-=(const TensorSquareElement& other);
  friend TensorSquareElement operator-(TensorSquareElement a, const TensorSquareElement& b) { return a -= b; }
  friend bool operator==(const TensorSquareElement&, const TensorSquareElement&) = default;

  /// Componentwise product, truncated at total degree N.
  [[nodiscard]] TensorSquareElement operator*(const TensorSquareElement& other) const;
  /// a (x) 1 and 1 (x) a.
  static TensorSquareElement left(const TensorElement& a);
  static TensorSquareElement right(const TensorElement& a);

 private:
  TensorContext ctx_;
  Terms terms_;
};

/// Bilinear extension of word concatenation, truncated at N. Throws MixedContext.
[[nodiscard]] TensorElement concat_mul(const TensorElement& a, const TensorElement& b);
/// ab - ba.
[[nodiscard]] TensorElement commutator(const TensorElement& a, const TensorElement& b);
/// a^k under concat_mul.
[[nodiscard]] TensorElement tensor_power(const TensorElement& a, std::size_t k);

/// Subset-split coproduct: each word w maps to the sum over position subsets S
/// of w|S (x) w|complement(S).
[[nodiscard]] TensorSquareElement coproduct(const TensorElement& a);
/// Coefficient of the empty word.
[[nodiscard]] FpScalar counit(const TensorElement& a);
/// Delta(a) - a (x) 1 - 1 (x) a.
[[nodiscard]] TensorSquareElement primitivity_defect(const TensorElement& a);
[[nodiscard]] bool is_primitive(const TensorElement& a);

/// Letter-content vector of a word: entry i counts occurrences of letter i.
[[nodiscard]] std::vector<std::size_t> word_content(const Word& w, std::size_t rank);

/// Basis of the primitive elements of pure degree n in T(V) for V of dimension r.
/// The primitivity system is block diagonal in letter content; blocks are
/// solved independently (OpenMP-parallel) and concatenated in canonical order.
/// Throws DegreeOutOfRange for n == 0 or n > ctx.max_degree.
[[nodiscard]] std::vector<TensorElement> primitive_basis(const TensorContext& ctx, std::size_t degree);
/// Convenience form with truncation degree N = n.
[[nodiscard]] std::vector<TensorElement> primitive_basis(std::uint64_t p, std::size_t rank, std::size_t degree);

namespace reference {
/// One kernel solve over all degree-n words, no content blocking, no threads.
[[nodiscard]] std::vector<TensorElement> primitive_basis_unblocked(const TensorContext& ctx, std::size_t degree);
}  // namespace reference

}  // namespace rlie
