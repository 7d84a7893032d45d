#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgrefl/catalogue.hpp"
#include "dgrefl/dga.hpp"
#include "dgrefl/io.hpp"
#include "support.hpp"

using namespace dgrefl;

namespace {

bool has_violation(const ValidationReport& r, const std::string& kind) {
  for (const auto& v : r)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("validate_dga on the basic examples") {
  CHECK(validate_dga(load_catalogue("dual_numbers_deg1")).empty());
  CHECK(validate_dga(load_catalogue("contractible")).empty());
  DGAlgebra bad(Field::rationals(), {{"1", 0}, {"x", 1}}, 0);
  bad.set_d(1, SparseVec::unit(1));
  CHECK(has_violation(validate_dga(bad), "differential not degree +1"));
}

TEST_CASE("every catalogue algebra satisfies d^2 = 0, Leibniz and associativity") {
  for (const auto& e : catalogue()) {
    INFO(e.name);
    CHECK(validate_dga(parse_algebra(e.text)).empty());
  }
}

TEST_CASE("validator catches broken Leibniz and associativity") {
  // d(x) = y with x*x = y: d(x x) = d(y) = 0 but d(x) x + x d(x) = 2 y x
  DGAlgebra a(Field::rationals(), {{"1", 0}, {"x", 0}, {"y", 1}}, 0);
  a.set_d(1, SparseVec::unit(2));
  a.set_product(2, 1, SparseVec::unit(2));
  a.set_product(1, 2, SparseVec::unit(2));
  CHECK(has_violation(validate_dga(a), "Leibniz"));
  DGAlgebra b(Field::rationals(), {{"1", 0}, {"x", 0}, {"y", 0}}, 0);
  b.set_product(1, 1, SparseVec::unit(2));  // x x = y, but x y = 0 and y x = y
  b.set_product(2, 1, SparseVec::unit(2));
  CHECK(has_violation(validate_dga(b), "associativity"));
}

TEST_CASE("cohomology_dims") {
  CHECK(cohomology_dims(load_catalogue("dual_numbers_deg1")) == std::map<int, int>{{0, 1}, {1, 1}});
  CHECK(cohomology_dims(load_catalogue("contractible")).empty());
  CHECK(cohomology_dims(load_catalogue("k_times_k")) == std::map<int, int>{{0, 2}});
}

TEST_CASE("validation agrees with the opposite algebra", "[property]") {
  std::mt19937_64 rng(11);
  std::vector<DGAlgebra> inputs;
  for (const auto& e : catalogue()) inputs.push_back(parse_algebra(e.text));
  for (int t = 0; t < 20; ++t) inputs.push_back(testsupport::random_incidence_algebra(Field::rationals(), 2 + t % 3, rng).first);
  const std::size_t clean = inputs.size();
  // corrupted copies: perturb one structure constant
  for (std::size_t k = 0; k < clean; ++k) {
    DGAlgebra a = inputs[k];
    if (a.dim() < 2) continue;
    const int i = 1 + static_cast<int>(rng() % (a.dim() - 1));
    const int j = 1 + static_cast<int>(rng() % (a.dim() - 1));
    SparseVec v = a.product(i, j);
    v.axpy(a.field(), Scalar(1), SparseVec::unit(static_cast<int>(rng() % a.dim())));
    a.set_product(i, j, v);
    inputs.push_back(a);
  }
  int corrupted_rejected = 0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const bool ok = validate_dga(inputs[k]).empty();
    CHECK(ok == validate_dga(opposite(inputs[k])).empty());
    if (k < clean) CHECK(ok);
    else if (!ok) ++corrupted_rejected;
  }
  CHECK(corrupted_rejected > 0);
}

TEST_CASE("cone of the identity is acyclic", "[property]") {
  for (const auto& e : catalogue()) {
    auto a = std::make_shared<const DGAlgebra>(parse_algebra(e.text));
    DGModule m = free_module(a);
    DGModule c = cone(m, m, SparseMatrix::identity(m.dim()));
    INFO(e.name);
    CHECK(validate_module(c).empty());
    CHECK(cohomology_dims(c).empty());
    DGModule s = shift_module(m, 3);
    CHECK(validate_module(s).empty());
    DGModule cs = cone(s, s, SparseMatrix::identity(s.dim()));
    CHECK(cohomology_dims(cs).empty());
  }
}

TEST_CASE("direct products and matrix inflations are valid DGAs") {
  auto a = load_catalogue("dual_numbers_deg1");
  auto b = load_catalogue("contractible");
  auto p = direct_product(a, b);
  CHECK(p.dim() == 4);
  CHECK(validate_dga(p).empty());
  CHECK(cohomology_dims(p) == cohomology_dims(a));
  auto m = matrix_algebra_inflation(a, 2);
  CHECK(m.dim() == 8);
  CHECK(validate_dga(m).empty());
  CHECK(matrix_algebra_inflation(a, 1) == a);
  CHECK(validate_dga(matrix_algebra_inflation(b, 3)).empty());
  CHECK(cohomology_dims(matrix_algebra_inflation(b, 3)).empty());
}
