#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgrefl/monoidal.hpp"

using namespace dgrefl;
using namespace dgrefl::monoidal;

namespace {

const std::shared_ptr<const DGAlgebra> K = ground_ring();
const std::shared_ptr<const DGAlgebra> R = dual_numbers_ring();

std::vector<Object> probes_with_random(std::shared_ptr<const DGAlgebra> ring, std::mt19937_64& rng) {
  auto p = probe_set(ring);
  if (ring->dim() == 1)
    p.push_back(random_graded(ring, rng, 3));
  else
    p.push_back(random_module(ring, rng, nullptr, nullptr, 3));
  return p;
}

bool all_equal(const EquivalenceCheck& e, bool v) {
  for (bool c : e.conditions)
    if (c != v) return false;
  return true;
}

}  // namespace

TEST_CASE("dual objects", "[monoidal]") {
  HomObject d = dual(graded(K, {3}));
  REQUIRE(d.obj.degrees == std::vector<int>{-3});
  HomObject dr = dual(unit_object(R));
  REQUIRE(dr.obj.dim() == 2);
  REQUIRE(is_iso(R->field(), dr.obj.action[1], 2, 2) == false);  // x acts nilpotently, as on R
  HomObject dk = dual(simple_module(R));
  REQUIRE(dk.obj.dim() == 1);
  // the single map k -> R lands in the socle: 1 |-> x
  REQUIRE(dk.maps[0][0][0] == 0);
  REQUIRE(dk.maps[0][1][0] != 0);
}

TEST_CASE("reflexive and dualizable examples", "[monoidal]") {
  Mat w;
  REQUIRE(is_reflexive(graded(K, {0, 1, -2, 1}), &w));
  REQUIRE(w.size() == 4);
  REQUIRE(is_reflexive(simple_module(R), &w));
  REQUIRE(w.size() == 1);
  REQUIRE(w[0][0] != 0);
  REQUIRE(is_reflexive(zero_object(R)));
  REQUIRE(is_dualizable(graded(K, {2, -1})));
  REQUIRE(is_dualizable(unit_object(R)));
  REQUIRE_FALSE(is_dualizable(simple_module(R)));
  REQUIRE(coevaluation(unit_object(R)).has_value());
  REQUIRE_FALSE(coevaluation(simple_module(R)).has_value());
}

TEST_CASE("six conditions on named objects", "[monoidal]") {
  std::mt19937_64 rng(11);
  auto e = prop_equivalences_check(simple_module(R), probes_with_random(R, rng));
  REQUIRE(e.agree);
  REQUIRE(all_equal(e, false));
  REQUIRE(e.reflexive);
  e = prop_equivalences_check(direct_sum(unit_object(R), simple_module(R)), probes_with_random(R, rng));
  REQUIRE(e.agree);
  REQUIRE(all_equal(e, false));
  e = prop_equivalences_check(direct_sum(unit_object(R), shift(unit_object(R), 1)), probe_set(R));
  REQUIRE(all_equal(e, true));
  e = prop_equivalences_check(graded(K, {0, 0, 1, -2}), probe_set(K));
  REQUIRE(all_equal(e, true));
  e = prop_equivalences_check(zero_object(K), probe_set(K));
  REQUIRE(all_equal(e, true));
}

TEST_CASE("retract closure", "[monoidal]") {
  Object x = graded(K, {0, 1});
  REQUIRE(retract_closure_check(x, x, identity(2), identity(2)));
  // k inside k^2 with the projection
  Object k2 = graded(K, {0, 0});
  REQUIRE(retract_closure_check(graded(K, {0}), k2, Mat{{Scalar(1)}, {Scalar(0)}}, Mat{{Scalar(1), Scalar(0)}}));
  // R as a retract of R^2
  Object r2 = direct_sum(unit_object(R), unit_object(R));
  Mat f = zeros(4, 2), g = zeros(2, 4);
  f[0][0] = f[1][1] = g[0][0] = g[1][1] = 1;
  REQUIRE(retract_closure_check(unit_object(R), r2, f, g));
  REQUIRE(is_dualizable(r2));
  // not a retract
  REQUIRE_THROWS_AS(retract_closure_check(graded(K, {0}), k2, Mat{{Scalar(1)}, {Scalar(0)}},
                                          Mat{{Scalar(0), Scalar(1)}}),
                    PreconditionError);
  // not a module map
  Mat bad = zeros(2, 2);
  bad[1][0] = 1;
  REQUIRE_THROWS_AS(retract_closure_check(unit_object(R), unit_object(R), bad, bad), PreconditionError);
}

TEST_CASE("dual on hom spaces", "[monoidal]") {
  auto r = dual_hom_iso_check(unit_object(R), simple_module(R));
  REQUIRE(r.iso);
  REQUIRE(r.hom_dim == 1);
  REQUIRE(r.dual_hom_dim == 1);
  REQUIRE(dual_hom_iso_check(zero_object(R), unit_object(R)).iso);
  REQUIRE(dual_hom_iso_check(graded(K, {0, 1}), graded(K, {1, 2, 2})).iso);
}

TEST_CASE("naturality, triangle and lax associativity", "[monoidal]") {
  std::mt19937_64 rng(20261016);
  for (int t = 0; t < 15; ++t) {
    Object x = random_graded(K, rng, 4), y = random_graded(K, rng, 4);
    REQUIRE(naturality_check(x, y, random_map(x, y, rng)));
    REQUIRE(triangle_check(x));
    Object z = random_graded(K, rng, 2);
    REQUIRE(lax_associativity_check(x, y, z));
    HomObject dx = dual(x);
    REQUIRE(dual(dx.obj).obj.dim() == x.dim());
  }
  for (int t = 0; t < 10; ++t) {
    Object x = random_module(R, rng, nullptr, nullptr, 4), y = random_module(R, rng, nullptr, nullptr, 4);
    REQUIRE(naturality_check(x, y, random_map(x, y, rng)));
    REQUIRE(triangle_check(x));
    REQUIRE(lax_associativity_check(x, y, random_module(R, rng, nullptr, nullptr, 2)));
  }
}

TEST_CASE("random objects: six conditions agree, pass iff projective", "[monoidal][property]") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Object x = random_graded(K, rng);
    auto e = prop_equivalences_check(x, probes_with_random(K, rng));
    INFO(x.label << " " << describe(e));
    REQUIRE(all_equal(e, true));
  }
  for (int t = 0; t < 50; ++t) {
    int a = 0, b = 0;
    Object x = random_module(R, rng, &a, &b);
    auto e = prop_equivalences_check(x, probes_with_random(R, rng));
    INFO(x.label << " " << describe(e));
    REQUIRE(e.agree);
    REQUIRE(e.reflexive);
    REQUIRE(e.conditions[0] == (b == 0));
    REQUIRE(is_projective_by_count(x) == (b == 0));
    REQUIRE(projectivity_by_splitting(x).split == (b == 0));
  }
  for (int t = 0; t < 50; ++t) {
    Object x = random_module(R, rng, nullptr, nullptr, 3);
    Object z = random_module(R, rng, nullptr, nullptr, 3);
    auto rp = random_retract(x, z, rng);
    REQUIRE(retract_closure_check(rp.x, rp.n, rp.f, rp.g));
  }
}
