#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "rlie/enveloping.hpp"
#include "support.hpp"

using namespace rlie;
using namespace rlie::testing;

namespace {

// Plain word rewriting: fix the first adjacent descent or the first run of p
// equal letters until every word is a restricted PBW word.
EnvElement rewrite_oracle(const EnvelopingAlgebra& env, const Word& start) {
  const auto& lie = env.lie();
  const auto& f = lie.field();
  const std::size_t p = f.modulus();
  std::map<Word, Residue> todo{{start, 1}};
  EnvElement out = env.zero();
  auto push = [&](const Word& w, Residue c) {
    auto& slot = todo[w];
    slot = f.add(slot, c);
  };
  while (!todo.empty()) {
    const auto node = todo.extract(todo.begin());
    const Word& w = node.key();
    const Residue c = node.mapped();
    if (c == 0) {
      continue;
    }
    bool rewritten = false;
    for (std::size_t k = 0; k + 1 < w.size() && !rewritten; ++k) {
      if (w[k] > w[k + 1]) {
        Word swapped = w;
        std::swap(swapped[k], swapped[k + 1]);
        push(swapped, c);
        const auto br = lie.structure(w[k], w[k + 1]);
        for (std::size_t t = 0; t < br.size(); ++t) {
          if (br[t] != 0) {
            Word shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
            shorter.push_back(static_cast<Letter>(t));
            shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 2, w.end());
            push(shorter, f.mul(c, br[t]));
          }
        }
        rewritten = true;
      }
    }
    for (std::size_t k = 0; k + p <= w.size() && !rewritten; ++k) {
      bool run = true;
      for (std::size_t t = 1; t < p; ++t) {
        run = run && w[k + t] == w[k];
      }
      if (run) {
        const auto& row = lie.pmap_row(w[k]);
        for (std::size_t t = 0; t < row.size(); ++t) {
          if (row[t] != 0) {
            Word shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
            shorter.push_back(static_cast<Letter>(t));
            shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(k + p), w.end());
            push(shorter, f.mul(c, row[t]));
          }
        }
        rewritten = true;
      }
    }
    if (!rewritten) {
      PbwMonomial m{std::vector<std::uint32_t>(lie.dim(), 0)};
      for (const Letter l : w) {
        ++m.exponents[l];
      }
      out.axpy(c, env.basis_monomial(env.index_of(m)));
    }
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

RestrictedLieAlgebra abelian_plane(std::uint64_t p) {
  return RestrictedLieAlgebra(PrimeField(p), {"x", "y"}, {}, {});
}

// About `terms` random monomials with random coefficients.
EnvElement random_env(const EnvelopingAlgebra& env, std::mt19937_64& rng, std::size_t terms) {
  EnvElement u = env.zero();
  for (std::size_t k = 0; k < terms; ++k) {
    u.axpy(static_cast<Residue>(rng() % env.field().modulus()), env.basis_monomial(rng() % env.dim()));
  }
  return u;
}

}  // namespace

TEST_CASE("monomial indexing") {
  const EnvelopingAlgebra env(heisenberg(3));
  CHECK(env.dim() == 27);
  for (std::size_t m = 0; m < env.dim(); ++m) {
    CHECK(env.index_of(env.monomial(m)) == m);
  }
  CHECK(env.monomial(0).degree() == 0);
  CHECK(pbw_filtration_count(env, 0) == 1);
  CHECK(pbw_filtration_count(env, 1) == 4);
  CHECK(pbw_filtration_count(env, 6) == 27);
  CHECK_THROWS_AS(EnvelopingAlgebra(sl2(5), 100), SizeBound);
}

TEST_CASE("documented straightening examples") {
  const EnvelopingAlgebra heis(heisenberg(3));
  const auto xy = heis.straighten({0, 1});
  const auto z = heis.generator(2);
  CHECK(heis.straighten({1, 0}) == xy - z);

  for (const std::uint64_t p : {2U, 3U, 5U}) {
    const EnvelopingAlgebra line(abelian_line(p));
    Word w(p - 1, 0);
    CHECK(line.multiply(line.straighten(w), line.generator(0)).is_zero());
  }

  const EnvelopingAlgebra idem(abelian_line(2, 1));
  CHECK(idem.multiply(idem.generator(0), idem.generator(0)) == idem.generator(0));
}

TEST_CASE("straightening agrees with the rewriting oracle") {
  std::mt19937_64 rng(43);
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const EnvelopingAlgebra env(lie);
    for (int trial = 0; trial < 40; ++trial) {
      Word w(rng() % 7);
      for (auto& l : w) {
        l = static_cast<Letter>(rng() % lie.dim());
      }
      CHECK(env.straighten(w) == rewrite_oracle(env, w));
    }
  }
}

TEST_CASE("u(L) is associative with unit on the corpus") {
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const EnvelopingAlgebra env(lie);
    const auto report = check_associativity(env, 30, 7);
    CHECK(report.passed());
    CHECK(report.exhaustive == (env.dim() <= 27));
  }
}

TEST_CASE("a p-map that breaks restrictedness breaks associativity") {
  const EnvelopingAlgebra env(load("heisenberg_p2_bad_pmap"));
  const auto x = env.generator(0);
  CHECK(env.multiply(env.multiply(x, x), x) != env.multiply(x, env.multiply(x, x)));
  CHECK_FALSE(check_associativity(env, 10, 0).passed());
}

TEST_CASE("Frobenius: embedded p-map equals the associative p-th power") {
  std::mt19937_64 rng(47);
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const EnvelopingAlgebra env(lie);
    for (int trial = 0; trial < 25; ++trial) {
      const auto x = random_element(lie, rng);
      CHECK(frobenius_residual(env, x).is_zero());
      CHECK(env.power(env.embed(x), lie.characteristic()) == env.embed(lie.pmap(x)));
    }
  }
}

TEST_CASE("coproduct of x^2 for abelian p=3") {
  const EnvelopingAlgebra env(abelian_line(3));
  const auto d = env.coproduct(env.basis_monomial(2));
  CHECK(d.terms().size() == 3);
  CHECK(d.coefficient(2, 0) == 1);
  CHECK(d.coefficient(1, 1) == 2);
  CHECK(d.coefficient(0, 2) == 1);
}

TEST_CASE("abelian coproducts follow the binomial formula") {
  for (const std::uint64_t p : {2U, 3U, 5U}) {
    const EnvelopingAlgebra env(abelian_plane(p));
    const auto& f = env.field();
    for (std::size_t m = 0; m < env.dim(); ++m) {
      const auto a = env.monomial(m).exponents;
      EnvTensorElement expected(f, env.dim());
      for (std::uint32_t b0 = 0; b0 <= a[0]; ++b0) {
        for (std::uint32_t b1 = 0; b1 <= a[1]; ++b1) {
          const auto c = f.reduce(static_cast<std::int64_t>(binomial(a[0], b0) * binomial(a[1], b1) % p));
          expected.add_term(env.index_of({{b0, b1}}), env.index_of({{a[0] - b0, a[1] - b1}}), c);
        }
      }
      CHECK(env.coproduct(env.basis_monomial(m)) == expected);
    }
  }
}

TEST_CASE("coproduct is multiplicative and counital") {
  std::mt19937_64 rng(53);
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const EnvelopingAlgebra env(lie);
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = random_env(env, rng, 6);
      const auto v = random_env(env, rng, 6);
      CHECK(env.coproduct(env.multiply(u, v)) == env.tensor_multiply(env.coproduct(u), env.coproduct(v)));
      // (eps x id) Delta(u) = u
      EnvElement back = env.zero();
      const auto delta = env.coproduct(u);
      for (const auto& [pair, c] : delta.terms()) {
        if (pair.first == 0) {
          back.axpy(c, env.basis_monomial(pair.second));
        }
      }
      CHECK(back == u);
    }
  }
}

TEST_CASE("restricted primitives recover L") {
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const EnvelopingAlgebra env(lie);
    const auto prim = restricted_primitives(env);
    CHECK(prim.dim() == lie.dim());
    CHECK(prim.closed());
    for (const auto& b : prim.basis()) {
      CHECK(env.primitivity_defect(b).is_zero());
    }
    for (std::size_t i = 0; i < lie.dim(); ++i) {
      CHECK(prim.coordinates(env.generator(i)).has_value());
    }
    CHECK_FALSE(prim.coordinates(env.one()).has_value());
    const auto report = unit_eta_check(env, prim);
    CHECK(report.passed());
    CHECK(check_axioms(prim.as_lie_algebra(), 20, 0).passed());
  }
}

TEST_CASE("eta check from the algebra alone and size limits") {
  CHECK(unit_eta_check(sl2(5)).passed());
  CHECK_THROWS_AS((void)unit_eta_check(sl2(5), 10), SizeBound);
}
