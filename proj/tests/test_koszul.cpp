#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgrefl/koszul.hpp"
#include "support.hpp"

using namespace dgrefl;

namespace {

// Ext^n_A(S, S) of an ungraded algebra from the classical unnormalized bar
// complex Hom_k(A^{(x) n} (x) S, S), with dense matrices. `act[i][s]` is the
// vector a_i . s_s in the basis of S.
std::vector<int> oracle_ext(const DGAlgebra& a, const std::vector<std::vector<std::vector<Scalar>>>& act,
                            int top) {
  const Field& f = a.field();
  const int d = a.dim(), sd = static_cast<int>(act[0].size());
  auto pw = [](int b, int e) {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  auto digits = [&](int idx, int len) {
    std::vector<int> w(len);
    for (int k = len - 1; k >= 0; --k) {
      w[k] = idx % d;
      idx /= d;
    }
    return w;
  };
  auto encode = [&](const std::vector<int>& w) {
    int idx = 0;
    for (int x : w) idx = idx * d + x;
    return idx;
  };
  // cochain coordinates: ((word, s_in), s_out)
  auto delta = [&](int n) {
    const int cols = pw(d, n) * sd * sd, rows = pw(d, n + 1) * sd * sd;
    std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(cols, Scalar(0)));
    auto col = [&](int word, int sin, int sout) { return (word * sd + sin) * sd + sout; };
    for (int wi = 0; wi < pw(d, n + 1); ++wi) {
      auto x = digits(wi, n + 1);
      for (int sin = 0; sin < sd; ++sin) {
        auto row = [&](int sout) { return (wi * sd + sin) * sd + sout; };
        // a_1 . f(a_2.., s)
        std::vector<int> tail(x.begin() + 1, x.end());
        for (int fo = 0; fo < sd; ++fo)
          for (int so = 0; so < sd; ++so)
            if (act[x[0]][fo][so] != 0)
              m[row(so)][col(encode(tail), sin, fo)] =
                  f.add(m[row(so)][col(encode(tail), sin, fo)], act[x[0]][fo][so]);
        for (int i = 0; i < n; ++i)
          for (const auto& [k, c] : a.product(x[i], x[i + 1])) {
            std::vector<int> y(x.begin(), x.begin() + i);
            y.push_back(k);
            y.insert(y.end(), x.begin() + i + 2, x.end());
            for (int so = 0; so < sd; ++so)
              m[row(so)][col(encode(y), sin, so)] =
                  f.add(m[row(so)][col(encode(y), sin, so)], f.mul(f.sign(i + 1), c));
          }
        std::vector<int> head(x.begin(), x.end() - 1);
        for (int s2 = 0; s2 < sd; ++s2)
          if (act[x[n]][sin][s2] != 0)
            for (int so = 0; so < sd; ++so)
              m[row(so)][col(encode(head), s2, so)] =
                  f.add(m[row(so)][col(encode(head), s2, so)], f.mul(f.sign(n + 1), act[x[n]][sin][s2]));
      }
    }
    return m;
  };
  std::vector<int> ranks;
  for (int n = 0; n <= top; ++n) ranks.push_back(testsupport::dense_rank(f, delta(n)));
  std::vector<int> ext;
  for (int n = 0; n <= top; ++n) ext.push_back(pw(d, n) * sd * sd - ranks[n] - (n ? ranks[n - 1] : 0));
  ext.pop_back();  // the top entry needs rank of delta_{top}, which is included; drop for symmetry
  return ext;
}

std::vector<std::vector<std::vector<Scalar>>> action_table(const DGModule& s) {
  const DGAlgebra& a = s.algebra();
  std::vector<std::vector<std::vector<Scalar>>> act(
      a.dim(), std::vector<std::vector<Scalar>>(s.dim(), std::vector<Scalar>(s.dim(), Scalar(0))));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      for (const auto& [k, c] : s.action(i, j)) act[i][j][k] = c;
  return act;
}

int ext_dim(const ExtAlgebra& e, int n) { return e.table.dim(n, n); }

}  // namespace

TEST_CASE("Koszul dual of the ground field is k in degree 0") {
  auto e = koszul_dual(load_catalogue("ground_field"), TruncationPolicy(4, -4, 4));
  CHECK_FALSE(e.zero);
  for (const auto& [k, v] : e.table.entries) {
    CHECK(v.exact);
    CHECK(v.dim == (k == std::pair{0, 0} ? 1 : 0));
  }
  REQUIRE(e.products);
  CHECK(e.products->unital);
}

TEST_CASE("Koszul dual of the A2 path algebra against the classical Ext oracle") {
  auto a = load_catalogue("a2_path_algebra");
  auto e = koszul_dual(a, TruncationPolicy(3, -1, 4));
  std::map<int, int> totals;
  for (const auto& [k, v] : e.table.entries) {
    CHECK(v.exact);
    if (v.dim) totals[k.first] += v.dim;
  }
  CHECK(totals == std::map<int, int>{{0, 2}, {1, 1}});
  // S = A/(a) by hand: s1 = [e], s2 = [1 - e]; a acts by zero
  const int one = *a.index_of("1"), ee = *a.index_of("e"), aa = *a.index_of("a");
  std::vector<std::vector<std::vector<Scalar>>> act(3, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2, Scalar(0))));
  act[one][0][0] = act[one][1][1] = 1;
  act[ee][0][0] = 1;
  (void)aa;
  auto oracle = oracle_ext(a, act, 3);
  REQUIRE(oracle.size() == 3);
  CHECK(oracle == std::vector<int>{2, 1, 0});
  for (int n = 0; n < 3; ++n) CHECK(ext_dim(e, n) == oracle[n]);
}

TEST_CASE("Koszul dual of the graded dual numbers truncates k[[t]]") {
  auto a = load_catalogue("dual_numbers_deg1");
  TruncationPolicy p(8, -3, 3);
  auto bar = koszul_dual(a, p);
  auto tot = koszul_dual(a, p, "totalization");
  for (int n = 0; n <= 8; ++n)
    for (int m = -3; m <= 3; ++m) {
      INFO(m << "," << n);
      REQUIRE(bar.table.exact(m, n));
      CHECK(bar.table.dim(m, n) == (m == 0 ? 1 : 0));
      CHECK(tot.table.dim(m, n) == bar.table.dim(m, n));
    }
  for (const auto* e : {&bar, &tot}) {
    REQUIRE(e->products);
    CHECK(e->products->unital);
    CHECK(e->products->associative);
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; i + j <= 8; ++j) {
        auto ti = e->products->find(0, i), tj = e->products->find(0, j), tij = e->products->find(0, i + j);
        auto it = e->products->products.find({ti.at(0), tj.at(0)});
        REQUIRE(it != e->products->products.end());
        REQUIRE(it->second.size() == 1);
        CHECK(it->second[0].first == tij.at(0));
      }
  }
  CHECK(bar.note.find("completion") != std::string::npos);
}

TEST_CASE("contractible algebra has zero Koszul dual") {
  auto e = koszul_dual(load_catalogue("contractible"), TruncationPolicy(3, -3, 3));
  CHECK(e.zero);
  CHECK(e.note == "Koszul dual of contractible algebra is zero");
}

TEST_CASE("Ext of random incidence algebras matches the classical oracle", "[property]") {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 6; ++trial) {
    auto [a, rels] = testsupport::random_incidence_algebra(Field{}, 2 + trial % 2, rng);
    INFO("trial " << trial << " dim " << a.dim());
    auto ap = std::make_shared<const DGAlgebra>(a);
    auto oracle = oracle_ext(a, action_table(quotient_module(ap)), 2);
    auto e = koszul_dual(a, TruncationPolicy(2, -1, 3));
    for (int n = 0; n < 2; ++n) CHECK(ext_dim(e, n) == oracle[n]);
    CHECK(ext_dim(e, 0) == a.dim() - rels);  // one simple per point
  }
}

TEST_CASE("derived tensor k (x)^L k over the graded dual numbers") {
  auto a = load_catalogue("dual_numbers_deg1");
  auto t = derived_tensor_k_k(a, TruncationPolicy(10, -10, 2));
  CHECK(t.resolution == "totalization");
  CHECK(t.cross_checked);
  for (int n = 0; n <= 10; ++n)
    for (int m = -10; m <= 2; ++m) {
      INFO(m << "," << n);
      CHECK(t.table.exact(m, n));
      CHECK(t.table.dim(m, n) == (m == 0 ? 1 : 0));
    }
  CHECK(t.t_chain_map);
  CHECK(t.t_nonzero_class);
  CHECK(t.t_isomorphisms);
  CHECK(t.t_action.size() == 10);
  auto k = derived_tensor_k_k(load_catalogue("ground_field"), TruncationPolicy(3, -3, 3));
  CHECK(k.resolution == "bar");
  for (const auto& [key, v] : k.table.entries) CHECK(v.dim == (key == std::pair{0, 0} ? 1 : 0));
  CHECK_THROWS_AS(derived_tensor_k_k(load_catalogue("k_times_k"), TruncationPolicy(2, 0, 2)), PreconditionError);
}

TEST_CASE("perfectness probe") {
  auto ap = std::make_shared<const DGAlgebra>(load_catalogue("dual_numbers_deg1"));
  auto k = perfectness_probe(quotient_module(ap), TruncationPolicy(6, -4, 4));
  CHECK(k.verdict == Perfectness::NotPerfectWithinCutoff);
  for (int n = 0; n <= 6; ++n) {
    CHECK(k.totals[n] == n + 1);
    CHECK(k.stages[n] == std::map<int, int>{{0, n + 1}});
  }
  // cone of x : Sigma^{-1} A -> A
  auto A = free_module(ap);
  const int x = *ap->index_of("x");
  std::vector<SparseVec> cols;
  for (int j = 0; j < 2; ++j) cols.push_back(ap->product(x, j));
  auto c = cone(shift_module(A, -1), A, SparseMatrix(2, cols));
  REQUIRE(validate_module(c).empty());
  auto pc = perfectness_probe(c, TruncationPolicy(6, -4, 4));
  CHECK(pc.verdict == Perfectness::PerfectWithinCutoff);
  CHECK(pc.totals.back() == 2);
}

TEST_CASE("free modules are perfect for every catalogue algebra", "[property]") {
  for (const auto& e : catalogue()) {
    INFO(e.name);
    auto ap = std::make_shared<const DGAlgebra>(parse_algebra(e.text));
    const int n = ap->dim() > 4 ? 2 : 4;
    auto r = perfectness_probe(free_module(ap), TruncationPolicy(n, -4, 4));
    CHECK(r.verdict == Perfectness::PerfectWithinCutoff);
  }
}

TEST_CASE("HH of the graded dual numbers matches HH of k[t] via the small complex") {
  auto c = koszul_hh_comparison(load_catalogue("dual_numbers_deg1"), TruncationPolicy(8, -2, 3));
  CHECK(c.agree);
  CHECK(c.rows.size() == 9 * 6);
  for (const auto& [m, n, x, y] : c.rows) CHECK(y == ((m == 0 || m == 1) ? 1 : 0));
  CHECK(c.caveat.find("completion") != std::string::npos);
}

TEST_CASE("reflexivity reports") {
  TruncationPolicy p(4, -4, 4);
  auto k = reflexivity_report(load_catalogue("ground_field"), p);
  CHECK(k.verdict == Verdict::Reflexive);
  auto d = reflexivity_report(load_catalogue("dual_numbers_deg1"), p);
  CHECK(d.verdict == Verdict::Reflexive);
  REQUIRE(d.evidence.size() == 3);
  for (const auto& ev : d.evidence) CHECK(ev.status == "positive");
  CHECK(d.evidence[2].reason.find("k[[t]]") != std::string::npos);
  auto z = reflexivity_report(load_catalogue("contractible"), p);
  CHECK(z.verdict == Verdict::Reflexive);
  CHECK(z.evidence[0].reason.find("zero category") != std::string::npos);
  auto t = reflexivity_report(load_catalogue("poly_t_deg1_truncated"), TruncationPolicy(2, -2, 2));
  CHECK(t.verdict == Verdict::Inconclusive);
  auto g = reflexivity_report(load_catalogue("gaussian_rationals"), p);
  CHECK(g.verdict == Verdict::Inconclusive);
  CHECK(g.evidence[0].status == "inconclusive");
}
