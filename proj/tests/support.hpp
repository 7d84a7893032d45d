#pragma once
// Shared helpers for the test suites: seeded random generators and small
// brute-force oracles that do not reuse the library's elimination code.

#include <random>
#include <vector>

#include "dgrefl/sparse.hpp"

namespace testsupport {

using dgrefl::Field;
using dgrefl::Scalar;
using dgrefl::SparseMatrix;
using dgrefl::SparseVec;

inline Scalar small_scalar(const Field& f, std::mt19937_64& rng) {
  long v = static_cast<long>(rng() % 7) - 3;
  if (v == 0) v = 1;
  return f.from_int(v);
}

inline SparseMatrix random_matrix(const Field& f, int rows, int cols, double density,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SparseMatrix::Triplet> ts;
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      if (u(rng) < density) ts.push_back({i, j, small_scalar(f, rng)});
  return SparseMatrix::from_triplets(f, rows, cols, ts);
}

/// Dense Gauss-Jordan on a row-major copy; independent of Echelon.
inline std::vector<std::vector<Scalar>> to_dense(const SparseMatrix& m) {
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols(), Scalar(0)));
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.col(j)) a[i][j] = v;
  return a;
}

inline int dense_rank(const Field& f, std::vector<std::vector<Scalar>> a) {
  int r = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Scalar inv = f.inv(a[r][c]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Scalar m = f.mul(a[i][c], inv);
      for (int k = c; k < cols; ++k) a[i][k] = f.sub(a[i][k], f.mul(m, a[r][k]));
    }
    ++r;
  }
  return r;
}

inline int dense_rank(const Field& f, const SparseMatrix& m) { return dense_rank(f, to_dense(m)); }

/// Dense inverse by Gauss-Jordan; the matrix must be invertible.
inline SparseMatrix inverse(const Field& f, const SparseMatrix& m) {
  const int n = m.rows();
  auto a = to_dense(m);
  std::vector<std::vector<Scalar>> b(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i) b[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const Scalar inv = f.inv(a[c][c]);
    for (int k = 0; k < n; ++k) {
      a[c][k] = f.mul(a[c][k], inv);
      b[c][k] = f.mul(b[c][k], inv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Scalar x = a[i][c];
      for (int k = 0; k < n; ++k) {
        a[i][k] = f.sub(a[i][k], f.mul(x, a[c][k]));
        b[i][k] = f.sub(b[i][k], f.mul(x, b[c][k]));
      }
    }
  }
  std::vector<SparseMatrix::Triplet> ts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (b[i][j] != 0) ts.push_back({i, j, b[i][j]});
  return SparseMatrix::from_triplets(f, n, n, ts);
}

inline SparseMatrix random_invertible(const Field& f, int n, std::mt19937_64& rng) {
  for (;;) {
    auto m = random_matrix(f, n, n, 0.6, rng);
    if (dense_rank(f, m) == n) return m;
  }
}

}  // namespace testsupport

#include "dgrefl/dga.hpp"

namespace testsupport {

/// Incidence algebra of a random partial order on {0..n-1} (a random DAG's
/// transitive closure): basis e_ij for i <= j related, e_ij e_jk = e_ik.
/// The last idempotent is replaced by the unit. Returns the algebra and the
/// number of strict relations (= dimension of the radical).
inline std::pair<dgrefl::DGAlgebra, int> random_incidence_algebra(const Field& f, int n,
                                                                  std::mt19937_64& rng) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) rel[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 2) rel[i][j] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  std::vector<std::pair<int, int>> amb;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j]) amb.emplace_back(i, j);
  auto amb_index = [&](int i, int j) {
    for (std::size_t k = 0; k < amb.size(); ++k)
      if (amb[k] == std::pair{i, j}) return static_cast<int>(k);
    return -1;
  };
  // basis: 1, then every ambient element except e_{n-1,n-1}
  std::vector<dgrefl::BasisElement> basis{{"1", 0}};
  std::vector<int> pos(amb.size(), -1);
  for (std::size_t k = 0; k < amb.size(); ++k) {
    if (amb[k] == std::pair{n - 1, n - 1}) continue;
    pos[k] = static_cast<int>(basis.size());
    basis.push_back({"e" + std::to_string(amb[k].first) + std::to_string(amb[k].second), 0});
  }
  dgrefl::DGAlgebra a(f, basis, 0);
  auto from_amb = [&](int k) {
    std::vector<SparseVec::Entry> e;
    if (pos[k] >= 0) {
      e.emplace_back(pos[k], Scalar(1));
    } else {
      e.emplace_back(0, Scalar(1));
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(pos[amb_index(i, i)], f.from_int(-1));
    }
    return SparseVec::from_pairs(f, e);
  };
  for (std::size_t x = 0; x < amb.size(); ++x)
    for (std::size_t y = 0; y < amb.size(); ++y) {
      if (pos[x] < 0 || pos[y] < 0) continue;
      if (amb[x].second != amb[y].first) continue;
      a.set_product(pos[x], pos[y], from_amb(amb_index(amb[x].first, amb[y].second)));
    }
  int strict = 0;
  for (const auto& [i, j] : amb)
    if (i != j) ++strict;
  return {a, strict};
}

// Classical unnormalized Hochschild cochains of an ungraded algebra,
// (df)(a_1..a_{n+1}) = a_1 f(a_2..) + sum (-1)^i f(..a_i a_{i+1}..) + (-1)^{n+1} f(..a_n) a_{n+1},
// assembled as dense matrices. Shares no code with the library's complexes.
inline std::vector<int> oracle_hh(const dgrefl::DGAlgebra& a, int top) {
  const Field& f = a.field();
  const int d = a.dim();
  auto pw = [](int b, int e) {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  // coordinates: cochain f in C^n indexed by (input word index, output index)
  auto delta = [&](int n) {
    const int rows = pw(d, n + 1) * d, cols = pw(d, n) * d;
    std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(cols, Scalar(0)));
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
    for (int in = 0; in < pw(d, n + 1); ++in) {
      auto x = digits(in, n + 1);
      for (int col = 0; col < cols; ++col) {
        const int fin = col / d, fout = col % d;
        // value of (delta e_{fin,fout}) on x, as a vector in A
        std::vector<Scalar> val(d, Scalar(0));
        auto add = [&](const SparseVec& v, const Scalar& s) {
          for (const auto& [k, c] : v) val[k] = f.add(val[k], f.mul(s, c));
        };
        std::vector<int> tail(x.begin() + 1, x.end());
        if (encode(tail) == fin) add(a.product(x[0], fout), Scalar(1));
        for (int i = 0; i < n; ++i) {
          dgrefl::SparseVec prod = a.product(x[i], x[i + 1]);
          for (const auto& [k, c] : prod) {
            std::vector<int> y(x.begin(), x.begin() + i);
            y.push_back(k);
            y.insert(y.end(), x.begin() + i + 2, x.end());
            if (encode(y) == fin) val[fout] = f.add(val[fout], f.mul(f.sign(i + 1), c));
          }
        }
        std::vector<int> head(x.begin(), x.end() - 1);
        if (encode(head) == fin) add(a.product(fout, x[n]), f.sign(n + 1));
        for (int k = 0; k < d; ++k) m[in * d + k][col] = val[k];
      }
    }
    return m;
  };
  std::vector<int> ranks;
  for (int n = 0; n <= top; ++n) ranks.push_back(dense_rank(f, delta(n)));
  std::vector<int> hh;
  for (int n = 0; n < top; ++n) {
    const int cn = pw(d, n) * d;
    hh.push_back(cn - ranks[n] - (n > 0 ? ranks[n - 1] : 0));
  }
  return hh;
}

}  // namespace testsupport
