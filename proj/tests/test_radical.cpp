#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgrefl/catalogue.hpp"
#include "dgrefl/radical.hpp"
#include "support.hpp"

using namespace dgrefl;

namespace {

// Oracle: an element x lies in the radical of a split basic algebra iff
// x*y is nilpotent for every basis y. Checked by repeated multiplication,
// independent of the trace form.
bool left_nilpotent_against_basis(const DGAlgebra& a, const SparseVec& x) {
  for (int j = 0; j < a.dim(); ++j) {
    SparseVec p = a.multiply(x, SparseVec::unit(j));
    SparseVec pw = p;
    for (int k = 0; k <= a.dim() && !pw.empty(); ++k) pw = a.multiply(pw, p);
    if (!pw.empty()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("radical of the basic examples") {
  auto dual = load_catalogue("dual_numbers_deg1");
  auto j = radical(dual);
  REQUIRE(j.dim() == 1);
  CHECK(j.span[0] == SparseVec::unit(1));
  auto a2 = load_catalogue("a2_path_algebra");
  auto ja2 = radical(a2);
  REQUIRE(ja2.dim() == 1);
  CHECK(ja2.span[0] == SparseVec::unit(2));
  CHECK(radical(load_catalogue("k_times_k")).dim() == 0);
  CHECK(radical(load_catalogue("m2_k")).dim() == 0);
}

TEST_CASE("radical rejects small characteristic") {
  DGAlgebra a(Field::prime(2), {{"1", 0}, {"x", 0}}, 0);
  CHECK_THROWS_WITH(radical(a), Catch::Matchers::ContainsSubstring("radical unsupported in this characteristic"));
  DGAlgebra b(Field::prime(3), {{"1", 0}, {"x", 0}}, 0);
  CHECK(radical(b).dim() == 1);
}

TEST_CASE("j_plus and semisimple quotient") {
  CHECK(j_plus(load_catalogue("dual_numbers_deg1")).dim() == 1);
  auto c = load_catalogue("contractible");
  CHECK(j_plus(c).dim() == 2);
  CHECK(j_plus(c).is_dg_ideal);
  CHECK(semisimple_quotient(c).is_zero());
  auto q = semisimple_quotient(load_catalogue("dual_numbers_deg1"));
  CHECK(q.dim() == 1);
  CHECK(q.degree(0) == 0);
  auto qa2 = semisimple_quotient(load_catalogue("a2_path_algebra"));
  CHECK(qa2.dim() == 2);
  CHECK(validate_dga(qa2).empty());
  CHECK(qa2.has_zero_differential());
  CHECK(radical(qa2).dim() == 0);
  // k x k: the non-unit basis element is an idempotent
  CHECK(qa2.multiply(SparseVec::unit(1), SparseVec::unit(1)) == SparseVec::unit(1));
}

TEST_CASE("separability verdicts") {
  CHECK(separability_check(load_catalogue("ground_field")) == Separability::Separable);
  CHECK(separability_check(load_catalogue("k_times_k")) == Separability::Separable);
  CHECK(separability_check(load_catalogue("m2_k")) == Separability::Separable);
  CHECK(separability_check(load_catalogue("gaussian_rationals")) == Separability::Unknown);
  CHECK(separability_check(DGAlgebra::zero(Field::rationals())) == Separability::Separable);
  CHECK_THROWS_AS(separability_check(load_catalogue("dual_numbers_deg0")), PreconditionError);
  // over F_5, x^2 = -1 splits (2^2 = -1) but over F_7 it does not
  DGAlgebra f5(Field::prime(5), {{"1", 0}, {"x", 0}}, 0);
  f5.set_product(1, 1, SparseVec::unit(0, Scalar(4)));
  CHECK(separability_check(f5) == Separability::Separable);
  DGAlgebra f7(Field::prime(7), {{"1", 0}, {"x", 0}}, 0);
  f7.set_product(1, 1, SparseVec::unit(0, Scalar(6)));
  CHECK(separability_check(f7) == Separability::Unknown);
}

TEST_CASE("catalogue summaries match the frozen expectations") {
  for (const auto& e : catalogue()) {
    INFO(e.name);
    CHECK(summary(parse_algebra(e.text)) == e.expected);
  }
}

TEST_CASE("radical of incidence algebras matches the nilpotency oracle", "[property]") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 25; ++t) {
    auto [a, strict] = testsupport::random_incidence_algebra(Field::rationals(), 1 + t % 4, rng);
    auto j = radical(a);
    CHECK(j.dim() == strict);
    for (const auto& v : j.span) CHECK(left_nilpotent_against_basis(a, v));
    auto q = semisimple_quotient(a);
    CHECK(radical(q).dim() == 0);
    CHECK(separability_check(q) == Separability::Separable);
  }
}

TEST_CASE("radical is additive on products", "[property]") {
  std::mt19937_64 rng(9);
  std::vector<DGAlgebra> pool;
  for (const auto& e : catalogue()) pool.push_back(parse_algebra(e.text));
  for (int t = 0; t < 6; ++t) pool.push_back(testsupport::random_incidence_algebra(Field::rationals(), 3, rng).first);
  for (int t = 0; t < 30; ++t) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    auto p = direct_product(a, b);
    INFO(serialize_algebra(a) << serialize_algebra(b));
    CHECK(radical(p).dim() == radical(a).dim() + radical(b).dim());
    CHECK(radical(semisimple_quotient(p)).dim() == 0);
  }
}

TEST_CASE("radical idempotence and nilpotency", "[property]") {
  for (const auto& e : catalogue()) {
    auto a = parse_algebra(e.text);
    auto j = radical(a);
    auto idx = detail::nilpotency_index(a, j.span);
    REQUIRE(idx.has_value());
    CHECK(*idx <= a.dim() + 1);
  }
}
