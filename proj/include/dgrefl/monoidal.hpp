#pragma once

// Closed symmetric monoidal categories small enough to compute in: graded
// vector spaces (R = k) and finite-dimensional modules over a commutative
// algebra R concentrated in degree 0. Internal hom is hom_R, the tensor is
// the quotient of the k-tensor by balancing relations, and D = hom(-, R).
// Maps out of a tensor are evaluated on basis representatives e_i (x) e_j and
// are well defined because every map used here is balanced.

#include <array>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dgrefl/dga.hpp"
#include "dgrefl/radical.hpp"

namespace dgrefl::monoidal {

using Mat = std::vector<std::vector<Scalar>>;  // rows x cols

inline Mat zeros(int r, int c) { return Mat(r, std::vector<Scalar>(c, Scalar(0))); }

inline Mat identity(int n) {
  Mat m = zeros(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline int cols(const Mat& m, int fallback = 0) { return m.empty() ? fallback : static_cast<int>(m[0].size()); }

inline Mat mul(const Field& f, const Mat& a, const Mat& b, int inner, int bcols) {
  Mat out = zeros(static_cast<int>(a.size()), bcols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < bcols; ++j)
        if (b[k][j] != 0) out[i][j] = f.add(out[i][j], f.mul(a[i][k], b[k][j]));
    }
  return out;
}

inline SparseMatrix to_sparse(const Field& f, const Mat& m, int ncols) {
  std::vector<SparseVec> cs(ncols);
  for (int j = 0; j < ncols; ++j) {
    std::vector<SparseVec::Entry> e;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i][j] != 0) e.emplace_back(static_cast<int>(i), m[i][j]);
    cs[j] = SparseVec::from_pairs(f, e);
  }
  return SparseMatrix(static_cast<int>(m.size()), cs);
}

inline int mat_rank(const Field& f, const Mat& m, int ncols) {
  return static_cast<int>(rank(f, to_sparse(f, m, ncols)));
}

/// A map between objects of dimensions (rows, cols) is an isomorphism.
inline bool is_iso(const Field& f, const Mat& m, int rows, int ncols) {
  return rows == ncols && mat_rank(f, m, ncols) == rows;
}

enum class Ambient { GradedVect, Modules };

inline std::string to_string(Ambient a) { return a == Ambient::GradedVect ? "GradedVect" : "Modules"; }

/// Finite-dimensional graded R-module: basis with degrees and one action
/// matrix per basis element of R.
struct Object {
  Ambient ambient = Ambient::GradedVect;
  std::shared_ptr<const DGAlgebra> ring;
  std::vector<int> degrees;
  std::vector<Mat> action;
  std::string label;

  int dim() const { return static_cast<int>(degrees.size()); }
  const Field& field() const { return ring->field(); }
};

inline std::shared_ptr<const DGAlgebra> ground_ring(const Field& f = Field{}) {
  DGAlgebra k(f, {{"1", 0}}, 0);
  return std::make_shared<const DGAlgebra>(k);
}

/// R = k[x]/x^2 in degree 0, the designated commutative Frobenius algebra.
inline std::shared_ptr<const DGAlgebra> dual_numbers_ring(const Field& f = Field{}) {
  DGAlgebra r(f, {{"1", 0}, {"x", 0}}, 0);
  return std::make_shared<const DGAlgebra>(r);
}

inline void check_ring(const DGAlgebra& r) {
  if (!validate_dga(r).empty()) throw PreconditionError("ring is not a valid algebra");
  for (int i = 0; i < r.dim(); ++i) {
    if (r.degree(i) != 0) throw PreconditionError("ring must be concentrated in degree 0");
    for (int j = 0; j < r.dim(); ++j)
      if (!(r.product(i, j) == r.product(j, i))) throw PreconditionError("ring must be commutative");
  }
  if (!r.has_zero_differential()) throw PreconditionError("ring must have zero differential");
}

/// Checks the module axioms; throws PreconditionError on failure.
inline void validate_object(const Object& x) {
  const DGAlgebra& r = *x.ring;
  const Field& f = x.field();
  const int n = x.dim();
  if (static_cast<int>(x.action.size()) != r.dim()) throw PreconditionError("one action matrix per ring basis element");
  auto act = [&](const SparseVec& v) {
    Mat m = zeros(n, n);
    for (const auto& [k, c] : v)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = f.add(m[i][j], f.mul(c, x.action[k][i][j]));
    return m;
  };
  if (act(SparseVec::unit(r.unit())) != identity(n)) throw PreconditionError("unit must act as the identity");
  for (int a = 0; a < r.dim(); ++a) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (x.action[a][i][j] != 0 && x.degrees[i] != x.degrees[j])
          throw PreconditionError("action must preserve degrees");
    for (int b = 0; b < r.dim(); ++b)
      if (mul(f, x.action[a], x.action[b], n, n) != act(r.product(a, b)))
        throw PreconditionError("action is not associative");
  }
}

inline Object make_object(std::shared_ptr<const DGAlgebra> ring, std::vector<int> degrees,
                          std::vector<Mat> action, std::string label) {
  Object x;
  x.ambient = ring->dim() == 1 ? Ambient::GradedVect : Ambient::Modules;
  x.ring = std::move(ring);
  x.degrees = std::move(degrees);
  x.action = std::move(action);
  x.label = std::move(label);
  validate_object(x);
  return x;
}

/// Graded vector space with the given basis degrees.
inline Object graded(std::shared_ptr<const DGAlgebra> k, std::vector<int> degrees) {
  std::string label = "k<";
  for (std::size_t i = 0; i < degrees.size(); ++i) label += (i ? "," : "") + std::to_string(degrees[i]);
  const int n = static_cast<int>(degrees.size());
  return make_object(std::move(k), std::move(degrees), {identity(n)}, label + ">");
}

/// The unit object: R acting on itself.
inline Object unit_object(std::shared_ptr<const DGAlgebra> r) {
  const int n = r->dim();
  std::vector<Mat> act;
  for (int a = 0; a < n; ++a) {
    Mat m = zeros(n, n);
    for (int j = 0; j < n; ++j)
      for (const auto& [i, c] : r->product(a, j)) m[i][j] = c;
    act.push_back(m);
  }
  return make_object(r, std::vector<int>(n, 0), act, "R");
}

/// R/J, the simple module of a local R (every non-unit basis element acts by
/// zero, which requires a basis adapted to the augmentation).
inline Object simple_module(std::shared_ptr<const DGAlgebra> r) {
  std::vector<Mat> act;
  for (int a = 0; a < r->dim(); ++a) act.push_back(Mat{{Scalar(a == r->unit() ? 1 : 0)}});
  return make_object(r, {0}, act, "k");
}

inline Object zero_object(std::shared_ptr<const DGAlgebra> r) {
  const int n = r->dim();
  return make_object(std::move(r), {}, std::vector<Mat>(n, Mat{}), "0");
}

inline Object direct_sum(const Object& x, const Object& y) {
  const int n = x.dim() + y.dim();
  std::vector<int> deg = x.degrees;
  deg.insert(deg.end(), y.degrees.begin(), y.degrees.end());
  std::vector<Mat> act;
  for (std::size_t a = 0; a < x.action.size(); ++a) {
    Mat m = zeros(n, n);
    for (int i = 0; i < x.dim(); ++i)
      for (int j = 0; j < x.dim(); ++j) m[i][j] = x.action[a][i][j];
    for (int i = 0; i < y.dim(); ++i)
      for (int j = 0; j < y.dim(); ++j) m[x.dim() + i][x.dim() + j] = y.action[a][i][j];
    act.push_back(m);
  }
  return make_object(x.ring, deg, act, x.label + "+" + y.label);
}

/// Transports the structure along an invertible degree-preserving matrix p:
/// the action becomes p a p^{-1}.
inline Object conjugate(const Object& x, const Mat& p, const Mat& pinv) {
  const Field& f = x.field();
  const int n = x.dim();
  std::vector<Mat> act;
  for (const auto& a : x.action) act.push_back(mul(f, mul(f, p, a, n, n), pinv, n, n));
  return make_object(x.ring, x.degrees, act, x.label + "'");
}

/// Internal hom: a basis of R-linear maps, each homogeneous of some degree.
struct HomObject {
  Object obj;
  std::vector<Mat> maps;  // each target.dim() x source.dim()
  int src_dim = 0, dst_dim = 0;

  /// Coordinates of an R-linear map in the basis `maps`.
  std::vector<Scalar> coords(const Field& f, const Mat& m) const {
    std::vector<SparseVec> cs;
    for (const auto& b : maps) cs.push_back(flatten(f, b));
    auto sol = solve(f, SparseMatrix(src_dim * dst_dim, cs), flatten(f, m));
    if (!sol) throw InvariantViolation("map is not in the internal hom");
    std::vector<Scalar> out(maps.size(), Scalar(0));
    for (const auto& [i, c] : *sol) out[i] = c;
    return out;
  }

  SparseVec flatten(const Field& f, const Mat& m) const {
    std::vector<SparseVec::Entry> e;
    for (int i = 0; i < dst_dim; ++i)
      for (int j = 0; j < src_dim; ++j)
        if (m[i][j] != 0) e.emplace_back(i * src_dim + j, m[i][j]);
    return SparseVec::from_pairs(f, e);
  }
};

inline HomObject hom(const Object& x, const Object& y) {
  const Field& f = x.field();
  const DGAlgebra& r = *x.ring;
  const int dx = x.dim(), dy = y.dim();
  HomObject h;
  h.src_dim = dx;
  h.dst_dim = dy;
  std::set<int> shifts;
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < dy; ++j) shifts.insert(y.degrees[j] - x.degrees[i]);
  std::vector<int> degs;
  for (int p : shifts) {
    // unknowns: entries (j, i) with |y_j| - |x_i| = p
    std::vector<std::pair<int, int>> vars;
    for (int j = 0; j < dy; ++j)
      for (int i = 0; i < dx; ++i)
        if (y.degrees[j] - x.degrees[i] == p) vars.emplace_back(j, i);
    // constraint (rho_Y(a) F - F rho_X(a))_{j,i} = 0
    std::vector<SparseVec> cs;
    for (const auto& [j, i] : vars) {
      std::vector<SparseVec::Entry> e;
      for (int a = 0; a < r.dim(); ++a) {
        if (a == r.unit()) continue;
        for (int j2 = 0; j2 < dy; ++j2)
          if (y.action[a][j2][j] != 0) e.emplace_back((a * dy + j2) * dx + i, y.action[a][j2][j]);
        for (int i2 = 0; i2 < dx; ++i2)
          if (x.action[a][i][i2] != 0) e.emplace_back((a * dy + j) * dx + i2, f.neg(x.action[a][i][i2]));
      }
      cs.push_back(SparseVec::from_pairs(f, e));
    }
    for (const auto& v : kernel_basis(f, SparseMatrix(r.dim() * dy * dx, cs))) {
      Mat m = zeros(dy, dx);
      for (const auto& [k, c] : v) m[vars[k].first][vars[k].second] = c;
      h.maps.push_back(m);
      degs.push_back(p);
    }
  }
  h.obj.ambient = x.ambient;
  h.obj.ring = x.ring;
  h.obj.degrees = degs;
  h.obj.label = "hom(" + x.label + "," + y.label + ")";
  const int n = static_cast<int>(h.maps.size());
  for (int a = 0; a < r.dim(); ++a) {
    Mat act = zeros(n, n);
    for (int k = 0; k < n; ++k) {
      auto c = h.coords(f, mul(f, y.action[a], h.maps[k], dy, dx));
      for (int l = 0; l < n; ++l) act[l][k] = c[l];
    }
    h.obj.action.push_back(act);
  }
  validate_object(h.obj);
  return h;
}

/// X (x)_R Y on the representatives e_i (x) e_j that are not pivots of the
/// relation span.
struct TensorObject {
  Object obj;
  std::vector<std::pair<int, int>> reps;
  std::vector<SparseVec> proj;  // index i * dy + j -> quotient coordinates
  int dx = 0, dy = 0;

  const SparseVec& project(int i, int j) const { return proj[i * dy + j]; }
};

inline TensorObject tensor(const Object& x, const Object& y) {
  const Field& f = x.field();
  const DGAlgebra& r = *x.ring;
  TensorObject t;
  t.dx = x.dim();
  t.dy = y.dim();
  Echelon rel(f);
  for (int a = 0; a < r.dim(); ++a) {
    if (a == r.unit()) continue;
    for (int i = 0; i < t.dx; ++i)
      for (int j = 0; j < t.dy; ++j) {
        std::vector<SparseVec::Entry> e;
        for (int i2 = 0; i2 < t.dx; ++i2)
          if (x.action[a][i2][i] != 0) e.emplace_back(i2 * t.dy + j, x.action[a][i2][i]);
        for (int j2 = 0; j2 < t.dy; ++j2)
          if (y.action[a][j2][j] != 0) e.emplace_back(i * t.dy + j2, f.neg(y.action[a][j2][j]));
        rel.insert(SparseVec::from_pairs(f, e));
      }
  }
  std::vector<int> qpos(t.dx * t.dy, -1);
  for (int i = 0; i < t.dx; ++i)
    for (int j = 0; j < t.dy; ++j)
      if (!rel.is_pivot(i * t.dy + j)) {
        qpos[i * t.dy + j] = static_cast<int>(t.reps.size());
        t.reps.emplace_back(i, j);
        t.obj.degrees.push_back(x.degrees[i] + y.degrees[j]);
      }
  for (int idx = 0; idx < t.dx * t.dy; ++idx) {
    SparseVec v;
    for (const auto& [k, c] : rel.reduce_full(SparseVec::unit(idx))) v.push_back(qpos[k], c);
    t.proj.push_back(std::move(v));
  }
  t.obj.ambient = x.ambient;
  t.obj.ring = x.ring;
  t.obj.label = x.label + "(x)" + y.label;
  const int n = static_cast<int>(t.reps.size());
  for (int a = 0; a < r.dim(); ++a) {
    Mat act = zeros(n, n);
    for (int q = 0; q < n; ++q) {
      const auto [i, j] = t.reps[q];
      for (int i2 = 0; i2 < t.dx; ++i2)
        if (x.action[a][i2][i] != 0)
          for (const auto& [k, c] : t.project(i2, j)) act[k][q] = f.add(act[k][q], f.mul(c, x.action[a][i2][i]));
    }
    t.obj.action.push_back(act);
  }
  validate_object(t.obj);
  return t;
}


inline HomObject dual(const Object& x) { return hom(x, unit_object(x.ring)); }

namespace detail {

inline std::vector<Scalar> column(const Mat& m, int i) {
  std::vector<Scalar> c;
  for (const auto& row : m) c.push_back(row[i]);
  return c;
}

/// r . e_j in Y for a ring element r given by coordinates.
inline std::vector<Scalar> act_on(const Object& y, const std::vector<Scalar>& r, int j) {
  const Field& f = y.field();
  std::vector<Scalar> out(y.dim(), Scalar(0));
  for (std::size_t a = 0; a < r.size(); ++a) {
    if (r[a] == 0) continue;
    for (int i = 0; i < y.dim(); ++i) out[i] = f.add(out[i], f.mul(r[a], y.action[a][i][j]));
  }
  return out;
}

inline std::vector<Scalar> ring_mul(const DGAlgebra& r, const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
  const Field& f = r.field();
  std::vector<Scalar> out(r.dim(), Scalar(0));
  for (int a = 0; a < r.dim(); ++a)
    for (int b = 0; b < r.dim(); ++b) {
      if (u[a] == 0 || v[b] == 0) continue;
      for (const auto& [c, x] : r.product(a, b)) out[c] = f.add(out[c], f.mul(x, f.mul(u[a], v[b])));
    }
  return out;
}

inline void set_column(Mat& m, int j, const std::vector<Scalar>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) m[i][j] = v[i];
}

}  // namespace detail

/// epsilon_X: DX (x) X -> 1, f (x) x |-> f(x).
inline Mat epsilon(const Object& x, const HomObject& dx, const TensorObject& t) {
  Mat m = zeros(x.ring->dim(), t.obj.dim());
  for (int q = 0; q < t.obj.dim(); ++q) {
    const auto [a, i] = t.reps[q];
    detail::set_column(m, q, detail::column(dx.maps[a], i));
  }
  return m;
}

/// eval_X: X -> DDX, x |-> (f |-> (-1)^{|f||x|} f(x)).
inline Mat eval_map(const Object& x, const HomObject& dx, const HomObject& ddx) {
  const Field& f = x.field();
  Mat m = zeros(ddx.obj.dim(), x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    Mat functional = zeros(x.ring->dim(), dx.obj.dim());
    for (int a = 0; a < dx.obj.dim(); ++a) {
      auto v = detail::column(dx.maps[a], i);
      const Scalar s = f.sign(dx.obj.degrees[a] * x.degrees[i]);
      for (auto& c : v) c = f.mul(s, c);
      detail::set_column(functional, a, v);
    }
    detail::set_column(m, i, ddx.coords(f, functional));
  }
  return m;
}

/// D(phi): DY -> DX for phi: X -> Y of degree p, g |-> (-1)^{p|g|} g o phi.
inline Mat dual_map(const Object& x, const Object& y, const Mat& phi, int p, const HomObject& dx,
                    const HomObject& dy) {
  const Field& f = x.field();
  Mat m = zeros(dx.obj.dim(), dy.obj.dim());
  for (int b = 0; b < dy.obj.dim(); ++b) {
    Mat g = mul(f, dy.maps[b], phi, y.dim(), x.dim());
    const Scalar s = f.sign(p * dy.obj.degrees[b]);
    for (auto& row : g)
      for (auto& c : row) c = f.mul(s, c);
    detail::set_column(m, b, dx.coords(f, g));
  }
  return m;
}

/// mu_{X,Y}: DX (x) DY -> D(X (x) Y), f (x) g |-> (x (x) y |-> (-1)^{|g||x|} f(x) g(y)).
inline Mat mu_map(const Object& x, const Object& y, const HomObject& dx, const HomObject& dy,
                  const TensorObject& dxdy, const TensorObject& xy, const HomObject& dxy) {
  if (dx.src_dim != x.dim() || dy.src_dim != y.dim()) throw InvariantViolation("mu: dual does not match object");
  const Field& f = x.field();
  Mat m = zeros(dxy.obj.dim(), dxdy.obj.dim());
  for (int q = 0; q < dxdy.obj.dim(); ++q) {
    const auto [a, b] = dxdy.reps[q];
    Mat functional = zeros(x.ring->dim(), xy.obj.dim());
    for (int u = 0; u < xy.obj.dim(); ++u) {
      const auto [i, j] = xy.reps[u];
      auto v = detail::ring_mul(*x.ring, detail::column(dx.maps[a], i), detail::column(dy.maps[b], j));
      const Scalar s = f.sign(dy.obj.degrees[b] * x.degrees[i]);
      for (auto& c : v) c = f.mul(s, c);
      detail::set_column(functional, u, v);
    }
    detail::set_column(m, q, dxy.coords(f, functional));
  }
  return m;
}

/// nu_{X,Y}: DX (x) Y -> hom(X, Y), f (x) y |-> (x |-> (-1)^{|y||x|} f(x) . y).
inline Mat nu_map(const Object& x, const Object& y, const HomObject& dx, const TensorObject& dxy,
                  const HomObject& hxy) {
  const Field& f = x.field();
  Mat m = zeros(hxy.obj.dim(), dxy.obj.dim());
  for (int q = 0; q < dxy.obj.dim(); ++q) {
    const auto [a, j] = dxy.reps[q];
    Mat phi = zeros(y.dim(), x.dim());
    for (int i = 0; i < x.dim(); ++i) {
      auto v = detail::act_on(y, detail::column(dx.maps[a], i), j);
      const Scalar s = f.sign(y.degrees[j] * x.degrees[i]);
      for (auto& c : v) c = f.mul(s, c);
      detail::set_column(phi, i, v);
    }
    detail::set_column(m, q, hxy.coords(f, phi));
  }
  return m;
}

inline bool is_reflexive(const Object& x, Mat* witness = nullptr) {
  HomObject dx = dual(x);
  HomObject ddx = dual(dx.obj);
  Mat e = eval_map(x, dx, ddx);
  if (witness) *witness = e;
  return is_iso(x.field(), e, ddx.obj.dim(), x.dim());
}

inline bool nu_iso(const Object& x, const Object& y) {
  HomObject dx = dual(x);
  TensorObject t = tensor(dx.obj, y);
  HomObject h = hom(x, y);
  return is_iso(x.field(), nu_map(x, y, dx, t, h), h.obj.dim(), t.obj.dim());
}

inline bool mu_iso(const Object& x, const Object& y) {
  HomObject dx = dual(x), dy = dual(y);
  TensorObject dxdy = tensor(dx.obj, dy.obj);
  TensorObject xy = tensor(x, y);
  HomObject dxy = dual(xy.obj);
  return is_iso(x.field(), mu_map(x, y, dx, dy, dxdy, xy, dxy), dxy.obj.dim(), dxdy.obj.dim());
}

inline bool is_dualizable(const Object& x) { return nu_iso(x, x); }

/// A coevaluation 1 -> X (x) DX satisfying both snake identities, found by
/// solving for c(1) in degree 0 of X (x) DX.
inline std::optional<std::vector<Scalar>> coevaluation(const Object& x) {
  const Field& f = x.field();
  HomObject dx = dual(x);
  TensorObject t = tensor(x, dx.obj);
  const int n = x.dim(), m = dx.obj.dim();
  std::vector<int> unknowns;
  for (int q = 0; q < t.obj.dim(); ++q)
    if (t.obj.degrees[q] == 0) unknowns.push_back(q);
  // equations: snake 1 (n*n entries) then snake 2 (m*m entries)
  const int rows = n * n + m * m;
  std::vector<SparseVec> cs;
  for (int q : unknowns) {
    const auto [i, a] = t.reps[q];
    std::vector<SparseVec::Entry> e;
    // x_j |-> f_a(x_j) . x_i
    for (int j = 0; j < n; ++j) {
      auto v = detail::act_on(x, detail::column(dx.maps[a], j), i);
      for (int r = 0; r < n; ++r)
        if (v[r] != 0) e.emplace_back(r * n + j, v[r]);
    }
    // f_b |-> f_b(x_i) . f_a
    for (int b = 0; b < m; ++b) {
      auto v = detail::act_on(dx.obj, detail::column(dx.maps[b], i), a);
      for (int r = 0; r < m; ++r)
        if (v[r] != 0) e.emplace_back(n * n + r * m + b, v[r]);
    }
    cs.push_back(SparseVec::from_pairs(f, e));
  }
  std::vector<SparseVec::Entry> target;
  for (int j = 0; j < n; ++j) target.emplace_back(j * n + j, Scalar(1));
  for (int b = 0; b < m; ++b) target.emplace_back(n * n + b * m + b, Scalar(1));
  auto sol = solve(f, SparseMatrix(rows, cs), SparseVec::from_pairs(f, target));
  if (!sol) return std::nullopt;
  std::vector<Scalar> z(t.obj.dim(), Scalar(0));
  for (const auto& [k, c] : *sol) z[unknowns[k]] = c;
  return z;
}

/// The generating probe set used for the "for all y" conditions.
inline std::vector<Object> probe_set(std::shared_ptr<const DGAlgebra> ring) {
  if (ring->dim() == 1) return {graded(ring, {0}), graded(ring, {1}), graded(ring, {-1})};
  return {unit_object(ring), simple_module(ring)};
}

struct EquivalenceCheck {
  std::array<bool, 6> conditions{};
  bool reflexive = false;
  bool agree = false;
  std::string counterexample;
};

/// Evaluates the six equivalent characterizations of dualizability.
inline EquivalenceCheck prop_equivalences_check(const Object& x, const std::vector<Object>& probes) {
  EquivalenceCheck r;
  r.reflexive = is_reflexive(x);
  HomObject dx = dual(x);
  r.conditions[0] = nu_iso(x, x);
  r.conditions[1] = coevaluation(x).has_value();
  bool all_nu = true, all_mu = true;
  for (const auto& y : probes) {
    all_nu = all_nu && nu_iso(x, y);
    all_mu = all_mu && mu_iso(x, y);
  }
  r.conditions[2] = all_nu;
  r.conditions[3] = r.reflexive && all_mu;
  r.conditions[4] = r.reflexive && mu_iso(x, dx.obj);
  r.conditions[5] = r.reflexive && is_dualizable(dx.obj);
  r.agree = true;
  for (bool c : r.conditions) r.agree = r.agree && c == r.conditions[0];
  if (!r.agree) {
    r.counterexample = x.label + ": conditions";
    for (bool c : r.conditions) r.counterexample += c ? " 1" : " 0";
  }
  return r;
}

inline std::string describe(const EquivalenceCheck& e) {
  std::string s;
  for (bool c : e.conditions) s += c ? '1' : '0';
  return s;
}

/// Checks that f: X -> N is R-linear of degree 0.
inline bool is_module_map(const Object& x, const Object& n, const Mat& f) {
  const Field& fl = x.field();
  for (int i = 0; i < n.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j)
      if (f[i][j] != 0 && n.degrees[i] != x.degrees[j]) return false;
  for (std::size_t a = 0; a < x.action.size(); ++a)
    if (mul(fl, n.action[a], f, n.dim(), x.dim()) != mul(fl, f, x.action[a], x.dim(), x.dim())) return false;
  return true;
}

/// With g o f = id_X: N reflexive => X reflexive and N dualizable => X dualizable.
inline bool retract_closure_check(const Object& x, const Object& n, const Mat& f, const Mat& g) {
  if (!is_module_map(x, n, f) || !is_module_map(n, x, g))
    throw PreconditionError("retract maps must be degree-0 module maps");
  if (mul(x.field(), g, f, n.dim(), x.dim()) != identity(x.dim()))
    throw PreconditionError("not a retract: g o f != id");
  const bool ok_refl = !is_reflexive(n) || is_reflexive(x);
  const bool ok_dual = !is_dualizable(n) || is_dualizable(x);
  return ok_refl && ok_dual;
}

struct DualHomCheck {
  bool iso = false;
  int hom_dim = 0, dual_hom_dim = 0;
};

/// D: hom(X, Y) -> hom(DY, DX) is an isomorphism when Y is reflexive.
inline DualHomCheck dual_hom_iso_check(const Object& x, const Object& y) {
  if (!is_reflexive(y)) throw PreconditionError("dual_hom_iso_check: y is not reflexive");
  const Field& f = x.field();
  HomObject hxy = hom(x, y);
  HomObject dx = dual(x), dy = dual(y);
  HomObject target = hom(dy.obj, dx.obj);
  Mat m = zeros(target.obj.dim(), hxy.obj.dim());
  for (int k = 0; k < hxy.obj.dim(); ++k) {
    Mat dphi = dual_map(x, y, hxy.maps[k], hxy.obj.degrees[k], dx, dy);
    detail::set_column(m, k, target.coords(f, dphi));
  }
  DualHomCheck r;
  r.hom_dim = hxy.obj.dim();
  r.dual_hom_dim = target.obj.dim();
  r.iso = is_iso(f, m, target.obj.dim(), hxy.obj.dim());
  return r;
}

/// DDf o eval_X = eval_Y o f for a degree-0 module map f: X -> Y.
inline bool naturality_check(const Object& x, const Object& y, const Mat& phi) {
  const Field& f = x.field();
  HomObject dx = dual(x), dy = dual(y);
  HomObject ddx = dual(dx.obj), ddy = dual(dy.obj);
  Mat df = dual_map(x, y, phi, 0, dx, dy);                   // DY -> DX
  Mat ddf = dual_map(dy.obj, dx.obj, df, 0, ddy, ddx);       // DDX -> DDY
  Mat lhs = mul(f, ddf, eval_map(x, dx, ddx), ddx.obj.dim(), x.dim());
  Mat rhs = mul(f, eval_map(y, dy, ddy), phi, y.dim(), x.dim());
  return lhs == rhs;
}

/// D(eval_X) o eval_{DX} = id_{DX}.
inline bool triangle_check(const Object& x) {
  const Field& f = x.field();
  HomObject dx = dual(x);
  HomObject ddx = dual(dx.obj);
  HomObject dddx = dual(ddx.obj);
  Mat ev = eval_map(x, dx, ddx);
  Mat d_ev = dual_map(x, ddx.obj, ev, 0, dx, dddx);  // DDDX -> DX
  Mat ev_d = eval_map(dx.obj, ddx, dddx);            // DX -> DDDX
  return mul(f, d_ev, ev_d, dddx.obj.dim(), dx.obj.dim()) == identity(dx.obj.dim());
}

/// f (x) g between tensor objects, for degree-0 maps.
inline Mat tensor_maps(const TensorObject& src, const TensorObject& dst, const Mat& f, const Mat& g) {
  const Field& fl = src.obj.field();
  Mat m = zeros(dst.obj.dim(), src.obj.dim());
  for (int q = 0; q < src.obj.dim(); ++q) {
    const auto [i, j] = src.reps[q];
    for (int i2 = 0; i2 < dst.dx; ++i2) {
      if (f[i2][i] == 0) continue;
      for (int j2 = 0; j2 < dst.dy; ++j2) {
        if (g[j2][j] == 0) continue;
        for (const auto& [k, c] : dst.project(i2, j2)) m[k][q] = fl.add(m[k][q], fl.mul(c, fl.mul(f[i2][i], g[j2][j])));
      }
    }
  }
  return m;
}

/// (X (x) Y) (x) Z -> X (x) (Y (x) Z).
inline Mat associator(const TensorObject& xy_z, const TensorObject& xy, const TensorObject& x_yz,
                      const TensorObject& yz) {
  const Field& f = xy_z.obj.field();
  Mat m = zeros(x_yz.obj.dim(), xy_z.obj.dim());
  for (int q = 0; q < xy_z.obj.dim(); ++q) {
    const auto [u, k] = xy_z.reps[q];
    const auto [i, j] = xy.reps[u];
    for (const auto& [v, c] : yz.project(j, k))
      for (const auto& [w, c2] : x_yz.project(i, v)) m[w][q] = f.add(m[w][q], f.mul(c, c2));
  }
  return m;
}

/// The two composites (DX (x) DY) (x) DZ -> D((X (x) Y) (x) Z) built from mu agree.
inline bool lax_associativity_check(const Object& x, const Object& y, const Object& z) {
  const Field& f = x.field();
  HomObject dx = dual(x), dy = dual(y), dz = dual(z);
  TensorObject xy = tensor(x, y), yz = tensor(y, z);
  TensorObject xy_z = tensor(xy.obj, z), x_yz = tensor(x, yz.obj);
  HomObject dxy = dual(xy.obj), dyz = dual(yz.obj), dxy_z = dual(xy_z.obj), dx_yz = dual(x_yz.obj);
  TensorObject dxdy = tensor(dx.obj, dy.obj), dydz = tensor(dy.obj, dz.obj);
  TensorObject dxdy_dz = tensor(dxdy.obj, dz.obj), dx_dydz = tensor(dx.obj, dydz.obj);
  TensorObject dxy_dz = tensor(dxy.obj, dz.obj), dx_dyz = tensor(dx.obj, dyz.obj);
  // left: mu_{XY,Z} o (mu_{X,Y} (x) id)
  Mat m1 = tensor_maps(dxdy_dz, dxy_dz, mu_map(x, y, dx, dy, dxdy, xy, dxy), identity(dz.obj.dim()));
  Mat left = mul(f, mu_map(xy.obj, z, dxy, dz, dxy_dz, xy_z, dxy_z), m1, dxy_dz.obj.dim(), dxdy_dz.obj.dim());
  // right: D(alpha) o mu_{X,YZ} o (id (x) mu_{Y,Z}) o alpha
  Mat alpha_d = associator(dxdy_dz, dxdy, dx_dydz, dydz);
  Mat m2 = tensor_maps(dx_dydz, dx_dyz, identity(dx.obj.dim()), mu_map(y, z, dy, dz, dydz, yz, dyz));
  Mat m3 = mu_map(x, yz.obj, dx, dyz, dx_dyz, x_yz, dx_yz);
  Mat alpha = associator(xy_z, xy, x_yz, yz);
  Mat d_alpha = dual_map(xy_z.obj, x_yz.obj, alpha, 0, dxy_z, dx_yz);
  Mat right = mul(f, m2, alpha_d, dx_dyz.obj.dim(), dxdy_dz.obj.dim());
  right = mul(f, m3, right, dx_dyz.obj.dim(), dxdy_dz.obj.dim());
  right = mul(f, d_alpha, right, dx_yz.obj.dim(), dxdy_dz.obj.dim());
  return left == right;
}


// ---- projectivity -------------------------------------------------------

/// X[n]: degrees shifted by n.
inline Object shift(const Object& x, int n) {
  Object y = x;
  for (auto& d : y.degrees) d += n;
  y.label = x.label + "[" + std::to_string(n) + "]";
  return y;
}

/// Indices e_i whose classes form a basis of X/JX, J spanned by the non-unit
/// basis of R (R local with an adapted basis).
inline std::vector<int> generators(const Object& x) {
  const Field& f = x.field();
  Echelon e(f);
  for (std::size_t a = 0; a < x.action.size(); ++a) {
    if (static_cast<int>(a) == x.ring->unit()) continue;
    for (int j = 0; j < x.dim(); ++j) {
      std::vector<SparseVec::Entry> v;
      for (int i = 0; i < x.dim(); ++i)
        if (x.action[a][i][j] != 0) v.emplace_back(i, x.action[a][i][j]);
      e.insert(SparseVec::from_pairs(f, v));
    }
  }
  std::vector<int> gens;
  for (int i = 0; i < x.dim(); ++i)
    if (!e.insert(SparseVec::unit(i))) gens.push_back(i);
  return gens;
}

/// Counting test: X is free on X/JX iff dim X = dim R * dim X/JX.
inline bool is_projective_by_count(const Object& x) {
  return x.dim() == x.ring->dim() * static_cast<int>(generators(x).size());
}

struct SplittingWitness {
  bool split = false;
  Mat section;    // X -> F
  Mat idempotent; // e = s o pi on F
};

/// Splitting test: the cover pi: F = (+) R[|g|] -> X has an R-linear section,
/// equivalently e = s pi is an idempotent on F with image isomorphic to X.
inline SplittingWitness projectivity_by_splitting(const Object& x) {
  const Field& f = x.field();
  const auto gens = generators(x);
  const Object r = unit_object(x.ring);
  const int rd = r.dim();
  Object free = zero_object(x.ring);
  for (int g : gens) free = free.dim() == 0 ? shift(r, x.degrees[g]) : direct_sum(free, shift(r, x.degrees[g]));
  const int n = free.dim();
  // pi(b (x) g) = b . e_g
  Mat pi = zeros(x.dim(), n);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (int b = 0; b < rd; ++b)
      for (int i = 0; i < x.dim(); ++i) pi[i][k * rd + b] = x.action[b][i][gens[k]];
  SplittingWitness w;
  if (n == 0) {
    w.split = x.dim() == 0;
    w.section = zeros(0, x.dim());
    w.idempotent = zeros(0, 0);
    return w;
  }
  HomObject h = hom(x, free);
  std::vector<int> deg0;
  for (int k = 0; k < h.obj.dim(); ++k)
    if (h.obj.degrees[k] == 0) deg0.push_back(k);
  std::vector<SparseVec> cs;
  for (int k : deg0) {
    Mat c = mul(f, pi, h.maps[k], n, x.dim());
    std::vector<SparseVec::Entry> e;
    for (int i = 0; i < x.dim(); ++i)
      for (int j = 0; j < x.dim(); ++j)
        if (c[i][j] != 0) e.emplace_back(i * x.dim() + j, c[i][j]);
    cs.push_back(SparseVec::from_pairs(f, e));
  }
  std::vector<SparseVec::Entry> id;
  for (int i = 0; i < x.dim(); ++i) id.emplace_back(i * x.dim() + i, Scalar(1));
  auto sol = solve(f, SparseMatrix(x.dim() * x.dim(), cs), SparseVec::from_pairs(f, id));
  if (!sol) return w;
  w.section = zeros(n, x.dim());
  for (const auto& [k, c] : *sol)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < x.dim(); ++j)
        w.section[i][j] = f.add(w.section[i][j], f.mul(c, h.maps[deg0[k]][i][j]));
  w.idempotent = mul(f, w.section, pi, x.dim(), n);
  w.split = mul(f, w.idempotent, w.idempotent, n, n) == w.idempotent &&
            mat_rank(f, w.idempotent, n) == x.dim();
  return w;
}

// ---- random objects -----------------------------------------------------

inline Scalar small(std::mt19937_64& rng, int lo = -2, int hi = 2) {
  return Scalar(std::uniform_int_distribution<int>(lo, hi)(rng));
}

/// Inverse of a square matrix, or nullopt if singular.
inline std::optional<Mat> invert(const Field& f, const Mat& m) {
  const int n = static_cast<int>(m.size());
  SparseMatrix sm = to_sparse(f, m, n);
  Mat inv = zeros(n, n);
  for (int j = 0; j < n; ++j) {
    auto c = solve(f, sm, SparseVec::unit(j));
    if (!c) return std::nullopt;
    for (const auto& [i, v] : *c) inv[i][j] = v;
  }
  return inv;
}

/// Random invertible matrix that preserves the given degrees.
inline std::pair<Mat, Mat> random_automorphism(const Field& f, const std::vector<int>& degrees,
                                               std::mt19937_64& rng) {
  const int n = static_cast<int>(degrees.size());
  for (;;) {
    Mat p = zeros(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (degrees[i] == degrees[j]) p[i][j] = f.normalize(small(rng));
    if (auto q = invert(f, p)) return {p, *q};
  }
}

inline Object random_graded(std::shared_ptr<const DGAlgebra> k, std::mt19937_64& rng, int max_dim = 6) {
  const int n = std::uniform_int_distribution<int>(0, max_dim)(rng);
  std::vector<int> d(n);
  for (auto& x : d) x = std::uniform_int_distribution<int>(-2, 2)(rng);
  return graded(std::move(k), d);
}

/// a copies of R and b copies of k (shifts in {0, 1}), 2a + b <= max_dim, in a
/// random basis. Projective iff b = 0.
inline Object random_module(std::shared_ptr<const DGAlgebra> r, std::mt19937_64& rng, int* free_part = nullptr,
                            int* simple_part = nullptr, int max_dim = 6) {
  const int a = std::uniform_int_distribution<int>(0, max_dim / 2)(rng);
  const int b = std::uniform_int_distribution<int>(0, max_dim - 2 * a)(rng);
  if (free_part) *free_part = a;
  if (simple_part) *simple_part = b;
  std::vector<Object> parts;
  for (int i = 0; i < a; ++i) parts.push_back(shift(unit_object(r), std::uniform_int_distribution<int>(0, 1)(rng)));
  for (int i = 0; i < b; ++i) parts.push_back(shift(simple_module(r), std::uniform_int_distribution<int>(0, 1)(rng)));
  if (parts.empty()) return zero_object(r);
  Object x = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) x = direct_sum(x, parts[i]);
  auto [p, pinv] = random_automorphism(x.field(), x.degrees, rng);
  Object y = conjugate(x, p, pinv);
  y.label = std::to_string(a) + "R+" + std::to_string(b) + "k";
  return y;
}

/// A random degree-0 module map X -> Y.
inline Mat random_map(const Object& x, const Object& y, std::mt19937_64& rng) {
  const Field& f = x.field();
  HomObject h = hom(x, y);
  Mat m = zeros(y.dim(), x.dim());
  for (int k = 0; k < h.obj.dim(); ++k) {
    if (h.obj.degrees[k] != 0) continue;
    const Scalar c = f.normalize(small(rng));
    for (int i = 0; i < y.dim(); ++i)
      for (int j = 0; j < x.dim(); ++j) m[i][j] = f.add(m[i][j], f.mul(c, h.maps[k][i][j]));
  }
  return m;
}

struct RetractPair {
  Object x, n;
  Mat f, g;  // g o f = id_X
};

/// N = X (+) Z in a random basis, f the inclusion and g the projection.
inline RetractPair random_retract(const Object& x, const Object& z, std::mt19937_64& rng) {
  const Field& fl = x.field();
  Object s = direct_sum(x, z);
  auto [p, pinv] = random_automorphism(fl, s.degrees, rng);
  RetractPair r{x, conjugate(s, p, pinv), zeros(s.dim(), x.dim()), zeros(x.dim(), s.dim())};
  Mat inc = zeros(s.dim(), x.dim()), prj = zeros(x.dim(), s.dim());
  for (int i = 0; i < x.dim(); ++i) inc[i][i] = prj[i][i] = 1;
  r.f = mul(fl, p, inc, s.dim(), x.dim());
  r.g = mul(fl, prj, pinv, s.dim(), s.dim());
  return r;
}

}  // namespace dgrefl::monoidal
