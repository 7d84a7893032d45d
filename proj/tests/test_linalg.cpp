#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgrefl/complex.hpp"
#include "dgrefl/sparse.hpp"
#include "support.hpp"

using namespace dgrefl;

namespace {

SparseMatrix dense(const Field& f, const std::vector<std::vector<long>>& rows) {
  std::vector<SparseMatrix::Triplet> ts;
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (rows[i][j] != 0) ts.push_back({i, j, Scalar(rows[i][j])});
  return SparseMatrix::from_triplets(f, r, c, ts);
}

}  // namespace

TEST_CASE("rank on small matrices") {
  const Field q = Field::rationals();
  CHECK(rank(q, SparseMatrix(0, 0)) == 0);
  CHECK(rank(q, SparseMatrix::identity(3)) == 3);
  CHECK(rank(q, dense(q, {{1, 2}, {2, 4}})) == 1);
  const Field f2 = Field::prime(2);
  CHECK(rank(f2, dense(f2, {{1, 2}, {2, 4}})) == 1);
  CHECK(rank(f2, dense(f2, {{1, 1}, {1, 3}})) == 1);
  CHECK(rank(q, dense(q, {{1, 1}, {1, 3}})) == 2);
}

TEST_CASE("matrix construction rejects bad triplets") {
  const Field q = Field::rationals();
  CHECK_THROWS_AS(SparseMatrix::from_triplets(q, 2, 2, {{0, 0, Scalar(1)}, {0, 0, Scalar(2)}}),
                  PreconditionError);
  CHECK_THROWS_AS(SparseMatrix::from_triplets(q, 2, 2, {{2, 0, Scalar(1)}}), PreconditionError);
  CHECK(SparseMatrix::from_triplets(q, 2, 2, {{1, 1, Scalar(0)}}).is_zero());
}

TEST_CASE("field arithmetic and parsing") {
  const Field f7 = Field::prime(7);
  CHECK(f7.inv(Scalar(3)) == Scalar(5));
  CHECK(parse_scalar(f7, "1/2") == Scalar(4));
  CHECK(parse_scalar(f7, "-1") == Scalar(6));
  CHECK_THROWS_AS(parse_scalar(Field::prime(2), "1/2"), ArithmeticError);
  CHECK_THROWS_AS(parse_scalar(f7, "1/x"), ParseError);
  CHECK_THROWS_AS(Field::prime(9), ArithmeticError);
  CHECK(parse_scalar(Field::rationals(), "-6/4") == Scalar(-3, 2));
}

TEST_CASE("kernel bases") {
  const Field q = Field::rationals();
  CHECK(kernel_basis(q, SparseMatrix::identity(2)).empty());
  CHECK(kernel_basis(q, SparseMatrix(2, 3)).size() == 3);
  const Field f2 = Field::prime(2);
  auto m = dense(f2, {{1, 1, 0}});
  auto k = kernel_basis(f2, m);
  REQUIRE(k.size() == 2);
  // oracle: enumerate F_2^3 and count solutions
  int solutions = 0;
  for (int v = 0; v < 8; ++v)
    if (((v & 1) + ((v >> 1) & 1)) % 2 == 0) ++solutions;
  CHECK(solutions == (1 << k.size()));
  for (const auto& v : k) CHECK(m.apply(f2, v).empty());
}

TEST_CASE("homology_at") {
  const Field q = Field::rationals();
  CHECK(homology_at(q, SparseMatrix(2, 0), SparseMatrix(0, 2)) == 2);
  CHECK(homology_at(q, SparseMatrix::identity(1), SparseMatrix(0, 1)) == 0);
  CHECK(homology_at(q, SparseMatrix(1, 0), SparseMatrix::identity(1)) == 0);
  CHECK_THROWS_AS(homology_at(q, SparseMatrix::identity(1), SparseMatrix::identity(1)),
                  NotAComplexError);
}

TEST_CASE("rank equals rank of transpose; rank-nullity", "[property]") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 40; ++trial) {
    const Field f = trial % 2 ? Field::prime(101) : Field::rationals();
    const int r = 1 + static_cast<int>(rng() % (trial < 35 ? 30 : 200));
    const int c = 1 + static_cast<int>(rng() % (trial < 35 ? 30 : 200));
    auto m = testsupport::random_matrix(f, r, c, 0.1, rng);
    const auto rk = rank(f, m);
    CHECK(rk == rank(f, m.transpose()));
    auto k = kernel_basis(f, m);
    CHECK(static_cast<std::size_t>(c) == rk + k.size());
    for (const auto& v : k) CHECK(m.apply(f, v).empty());
  }
}

TEST_CASE("homology is invariant under change of basis", "[property]") {
  std::mt19937_64 rng(77);
  const Field f = Field::rationals();
  for (int trial = 0; trial < 20; ++trial) {
    const int n0 = 1 + rng() % 5, n1 = 2 + rng() % 6, n2 = 1 + rng() % 5;
    auto d0 = testsupport::random_matrix(f, n1, n0, 0.5, rng);
    // rows of d1 are random combinations of functionals vanishing on im d0
    auto coker = kernel_basis(f, d0.transpose());
    std::vector<SparseMatrix::Triplet> ts;
    for (int r = 0; r < n2; ++r) {
      SparseVec row;
      for (const auto& c : coker) row.axpy(f, Scalar(static_cast<long>(rng() % 5) - 2), c);
      for (const auto& [j, v] : row) ts.push_back({r, j, v});
    }
    auto d1 = SparseMatrix::from_triplets(f, n2, n1, ts);
    const auto h = homology_at(f, d0, d1);
    auto g = testsupport::random_invertible(f, n1, rng);
    auto ginv = testsupport::inverse(f, g);
    const auto h2 = homology_at(f, g.multiply(f, d0), d1.multiply(f, ginv));
    CHECK(h == h2);
  }
}
