#include <algorithm>
#include <vector>

#include "doctest.h"
#include "rlie/monadic.hpp"
#include "support.hpp"

using namespace rlie;
using namespace rlie::testing;

namespace {

std::size_t roundtrip_degree(const RestrictedLieAlgebra& lie) {
  return std::max<std::size_t>(4, lie.characteristic() + 1);
}

EMObject with_mu0(const EMObject& a, std::size_t degree, const FpMatrix& replacement) {
  std::vector<FpMatrix> mats;
  for (std::size_t d = 1; d <= a.max_degree(); ++d) {
    mats.push_back(d == degree ? replacement : a.mu0(d));
  }
  return EMObject(a.names(), a.shared_layers(), mats);
}

}  // namespace

TEST_CASE("mu0 on Heisenberg p=2") {
  const auto a = mu0_from_restricted(heisenberg(2), 4);
  const auto& ctx = a.ctx();
  const auto xy = TensorElement::monomial(ctx, {0, 1}) + TensorElement::monomial(ctx, {1, 0});
  CHECK(a.apply(xy) == heisenberg(2).basis(2));
  CHECK(a.apply(TensorElement::monomial(ctx, {0, 0})).is_zero());
  CHECK_FALSE(a.try_apply(TensorElement::monomial(ctx, {0, 1})).has_value());
  CHECK_FALSE(a.try_apply(TensorElement::unit(ctx)).has_value());
  CHECK_THROWS_AS((void)a.apply(TensorElement::monomial(ctx, {0, 1})), DimensionMismatch);
}

TEST_CASE("mu0 sends x^p to zero on the abelian line") {
  for (const std::uint64_t p : {2U, 3U, 5U}) {
    const auto a = mu0_from_restricted(abelian_line(p), p);
    CHECK(a.apply(TensorElement::monomial(a.ctx(), Word(p, 0))).is_zero());
  }
}

TEST_CASE("nested (x x)^2 evaluates to x both ways when x^[2] = x") {
  const auto a = mu0_from_restricted(abelian_line(2, 1), 4);
  const auto& ctx = a.ctx();
  const auto xx = TensorElement::monomial(ctx, {0, 0});
  const auto inner = a.apply(xx);
  CHECK(inner == abelian_line(2, 1).basis(0));
  const auto via_inner = a.apply(tensor_power(TensorElement::generator(ctx, 0).scaled(inner[0]), 2));
  const auto via_flatten = a.apply(tensor_power(xx, 2));
  CHECK(via_inner == inner);
  CHECK(via_flatten == inner);
}

TEST_CASE("word images agree with straightening") {
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const EnvelopingAlgebra env(lie);
    const auto images = word_images(env, 4);
    REQUIRE(images.size() == 5);
    for (std::size_t d = 0; d <= 4; ++d) {
      const auto words = words_of_degree(lie.dim(), d);
      REQUIRE(images[d].size() == words.size());
      for (std::size_t k = 0; k < words.size(); ++k) {
        CHECK(images[d][k] == env.straighten(words[k]));
      }
    }
  }
}

TEST_CASE("EM laws hold for every corpus algebra") {
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const std::size_t top = std::min<std::size_t>(2 * lie.characteristic(), 6);
    const auto a = mu0_from_restricted(lie, top);
    const auto report = em_laws_check(a, top, 0);
    CHECK(report.passed());
    CHECK(report.unit_ok);
    CHECK(report.instances_checked() > 0);
    // every degree 1..N carries at least its leaf pattern
    for (std::size_t d = 1; d <= top; ++d) {
      CHECK(std::any_of(report.patterns.begin(), report.patterns.end(),
                        [d](const EmPatternRecord& r) { return r.degree == d; }));
    }
  }
}

TEST_CASE("EM pattern enumeration covers brackets and powers") {
  const auto a = mu0_from_restricted(heisenberg(2), 4);
  const auto report = em_laws_check(a, 4, 0);
  std::vector<std::string> names;
  for (const auto& r : report.patterns) {
    names.push_back(r.pattern);
  }
  for (const char* expected : {"L1", "L2", "P(L1)", "[L1,L2]", "P(P(L1))", "[L2,P(L1)]", "[L1,[L1,L2]]"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
  CHECK(std::find(names.begin(), names.end(), "[L1,L1]") == names.end());
  CHECK(std::find(names.begin(), names.end(), "[L2,L1]") == names.end());
}

TEST_CASE("a broken structure map fails the EM laws and is refused by Lambda") {
  const auto good = mu0_from_restricted(sl2(5), 5);
  const auto& m2 = good.mu0(2);
  const auto broken = with_mu0(good, 2, FpMatrix(m2.field(), m2.rows(), m2.cols()));
  const auto report = em_laws_check(broken, 5, 0);
  CHECK_FALSE(report.passed());
  CHECK(report.unit_ok);
  REQUIRE_FALSE(report.mismatches.empty());
  const auto v2 = certify_m2(broken);
  CHECK_FALSE(v2.idempotency_witness);
  CHECK_THROWS_AS((void)lambda(v2), EmLawFailure);

  const auto doubled = with_mu0(good, 1, FpMatrix::from_rows(m2.field(), {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
  const auto unit_report = em_laws_check(doubled, 5, 0);
  CHECK_FALSE(unit_report.unit_ok);
  CHECK(unit_report.unit_failures.size() == 3);
}

TEST_CASE("EMObject shape is validated") {
  const auto layers = shared_free_layers(2, 1, 2);
  const PrimeField f(2);
  CHECK_THROWS_AS(EMObject({"x"}, layers, {FpMatrix::identity(f, 1)}), DimensionMismatch);
  CHECK_THROWS_AS(EMObject({"x", "y"}, layers, {FpMatrix::identity(f, 1), FpMatrix(f, 1, 1)}), DimensionMismatch);
  CHECK_NOTHROW(EMObject({"x"}, layers, {FpMatrix::identity(f, 1), FpMatrix(f, 1, 1)}));
}

TEST_CASE("Lambda recovers every corpus algebra") {
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const auto report = roundtrip_check(lie, roundtrip_degree(lie));
    CHECK(report.passed());
    const auto v2 = certify_m2(mu0_from_restricted(lie, roundtrip_degree(lie)));
    CHECK(lambda(v2) == lie);
  }
}

TEST_CASE("Lambda needs N >= p") {
  const auto a = mu0_from_restricted(sl2(5), 4);
  CHECK_THROWS_AS((void)lambda(a), TruncationTooSmall);
}

TEST_CASE("Lambda of a non-restricted input is flagged by the axiom check") {
  const auto bad = load("heisenberg_p2_bad_pmap");
  const auto report = roundtrip_check(bad, 4);
  CHECK_FALSE(report.axioms_ok);
  CHECK_FALSE(report.passed());
}

TEST_CASE("Lambda tables match the primitives of u(L)") {
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const EnvelopingAlgebra env(lie);
    const auto prim = restricted_primitives(env);
    const auto back = lambda(mu0_from_restricted(lie, roundtrip_degree(lie)));
    CHECK(compare_with_primitives(env, prim, back).passed());
  }
}

TEST_CASE("sandwich on the abelian line at p=2") {
  for (const std::int64_t self : {0, 1}) {
    const auto v2 = certify_m2(mu0_from_restricted(abelian_line(2, self), 4));
    const auto report = sandwich_certificate(v2, 4);
    CHECK(report.passed());
    REQUIRE(report.rows.size() == 4);
    for (const auto& row : report.rows) {
      CHECK(row.rank_phi == 2);
      CHECK(row.span_quotient_dim == 2);
      CHECK(row.pbw_filtration_dim == 2);
    }
    REQUIRE(report.reaches_full_dim_at.has_value());
    CHECK(*report.reaches_full_dim_at == 1);
  }
}

TEST_CASE("sandwich rows for Heisenberg at p=2 and sl2 at p=5") {
  const auto heis = sandwich_certificate(certify_m2(mu0_from_restricted(heisenberg(2), 4)), 4);
  CHECK(heis.passed());
  const std::vector<std::size_t> expected{4, 7, 8, 8};
  for (std::size_t d = 1; d <= 4; ++d) {
    std::size_t words = 0;
    for (std::size_t k = 0, power = 1; k <= d; ++k, power *= 3) {
      words += power;
    }
    CHECK(heis.rows[d - 1].tensor_dim == words);
    CHECK(heis.rows[d - 1].rank_phi == expected[d - 1]);
    CHECK(heis.rows[d - 1].agree());
  }
  CHECK(heis.full_dim == 8);

  const auto sl = sandwich_certificate(certify_m2(mu0_from_restricted(sl2(5), 6)), 6);
  CHECK(sl.passed());
  for (const auto& row : sl.rows) {
    CHECK(row.agree());
  }
}

TEST_CASE("sandwich argument checks") {
  const auto v2 = certify_m2(mu0_from_restricted(abelian_line(5), 4));
  CHECK_THROWS_AS((void)sandwich_certificate(v2, 4), TruncationTooSmall);
  const auto ok = certify_m2(mu0_from_restricted(abelian_line(2), 4));
  CHECK_THROWS_AS((void)sandwich_certificate(ok, 5), DegreeOutOfRange);
}

TEST_CASE("EM morphisms between Heisenberg and abelian algebras") {
  const PrimeField f(2);
  const auto heis = mu0_from_restricted(heisenberg(2), 4);
  const auto plane = mu0_from_restricted(RestrictedLieAlgebra(f, {"x", "y"}, {}, {}), 4);
  const auto line = mu0_from_restricted(abelian_line(2), 4);

  const auto quotient = FpMatrix::from_rows(f, {{1, 0, 0}, {0, 1, 0}});
  const auto q = em_morphism_check(heis, plane, quotient);
  CHECK(q.is_morphism());
  CHECK(q.preserves_structure());
  CHECK(q.elements_checked > 0);

  const auto inclusion = FpMatrix::from_rows(f, {{0}, {0}, {1}});
  const auto i = em_morphism_check(line, heis, inclusion);
  CHECK(i.is_morphism());
  CHECK(i.preserves_structure());

  // z -> x does not respect [x, y] = z.
  const auto bad = FpMatrix::from_rows(f, {{1, 0, 1}, {0, 1, 0}});
  const auto b = em_morphism_check(heis, plane, bad);
  CHECK_FALSE(b.is_morphism());
  CHECK_FALSE(b.preserves_structure());
}

TEST_CASE("map_tensor applies f letterwise") {
  const PrimeField f(3);
  const TensorContext src{f, 2, 3};
  const TensorContext dst{f, 1, 3};
  const auto m = FpMatrix::from_rows(f, {{1, 2}});
  const auto image = map_tensor(TensorElement::monomial(src, {0, 1}), m, dst);
  CHECK(image == TensorElement::monomial(dst, {0, 0}, 2));
}

TEST_CASE("structure maps are stationary under Lambda") {
  for (const auto& [name, lie] : corpus()) {
    CAPTURE(name);
    const auto v2 = certify_m2(mu0_from_restricted(lie, roundtrip_degree(lie)));
    CHECK(stationarity_check(v2).passed());
  }
}
