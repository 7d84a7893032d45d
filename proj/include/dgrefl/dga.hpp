#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dgrefl/complex.hpp"
#include "dgrefl/sparse.hpp"

namespace dgrefl {

struct BasisElement {
  std::string name;
  int degree = 0;
  bool operator==(const BasisElement&) const = default;
};

inline int parity(int d) { return ((d % 2) + 2) % 2; }

/// One violated identity found by a validator.
struct Violation {
  std::string kind;
  std::string witness;
};

using ValidationReport = std::vector<Violation>;

/// Finite-dimensional DGA given by structure constants in a homogeneous basis
/// containing the unit. Cohomological grading: d raises degree by one.
class DGAlgebra {
 public:
  DGAlgebra() = default;
  DGAlgebra(Field f, std::vector<BasisElement> basis, int unit)
      : field_(std::move(f)), basis_(std::move(basis)), unit_(unit) {
    const int n = dim();
    mult_.assign(static_cast<std::size_t>(n) * n, SparseVec{});
    diff_.assign(n, SparseVec{});
    for (int i = 0; i < n; ++i) {
      if (!index_.emplace(basis_[i].name, i).second)
        throw PreconditionError("duplicate basis name '" + basis_[i].name + "'");
    }
    if (n > 0 && (unit < 0 || unit >= n)) throw PreconditionError("unit undefined");
    if (n > 0) {
      for (int i = 0; i < n; ++i) {
        set_product(unit, i, SparseVec::unit(i));
        set_product(i, unit, SparseVec::unit(i));
      }
    }
  }

  /// The zero algebra (no basis, no unit).
  static DGAlgebra zero(Field f) {
    DGAlgebra a;
    a.field_ = std::move(f);
    a.unit_ = -1;
    return a;
  }

  const Field& field() const noexcept { return field_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  bool is_zero() const noexcept { return basis_.empty(); }
  int unit() const noexcept { return unit_; }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  int degree(int i) const { return basis_[i].degree; }
  const std::string& name(int i) const { return basis_[i].name; }

  std::optional<int> index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const SparseVec& product(int i, int j) const { return mult_[static_cast<std::size_t>(i) * dim() + j]; }
  const SparseVec& d(int i) const { return diff_[i]; }

  void set_product(int i, int j, SparseVec v) {
    mult_[static_cast<std::size_t>(i) * dim() + j] = std::move(v);
  }
  void set_d(int i, SparseVec v) { diff_[i] = std::move(v); }

  SparseVec multiply(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) out.axpy(field_, field_.mul(a, b), product(i, j));
    return out;
  }

  SparseVec apply_d(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [i, a] : x) out.axpy(field_, a, diff_[i]);
    return out;
  }

  std::pair<int, int> degree_range() const {
    if (basis_.empty()) return {0, 0};
    int lo = basis_[0].degree, hi = lo;
    for (const auto& b : basis_) {
      lo = std::min(lo, b.degree);
      hi = std::max(hi, b.degree);
    }
    return {lo, hi};
  }

  /// Indices of the basis of A/k.1 (all basis elements except the unit).
  std::vector<int> reduced_basis() const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
      if (i != unit_) out.push_back(i);
    return out;
  }

  bool has_zero_differential() const {
    for (const auto& v : diff_)
      if (!v.empty()) return false;
    return true;
  }

  /// Truncated presentation metadata: structure above this degree was discarded.
  std::optional<int> declared_top_degree;
  bool infinite_type = false;

  bool operator==(const DGAlgebra& o) const {
    return field_ == o.field_ && basis_ == o.basis_ && unit_ == o.unit_ && mult_ == o.mult_ &&
           diff_ == o.diff_ && declared_top_degree == o.declared_top_degree &&
           infinite_type == o.infinite_type;
  }

 private:
  Field field_;
  std::vector<BasisElement> basis_;
  int unit_ = -1;
  std::vector<SparseVec> mult_;
  std::vector<SparseVec> diff_;
  std::unordered_map<std::string, int> index_;
};

namespace detail {

inline std::string render(const DGAlgebra& a, const SparseVec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    if (!s.empty()) s += " + ";
    s += c.get_str() + "*" + a.name(i);
  }
  return s;
}

}  // namespace detail

/// Checks every DGA axiom on all basis pairs and triples.
inline ValidationReport validate_dga(const DGAlgebra& a) {
  ValidationReport out;
  const Field& f = a.field();
  const int n = a.dim();
  if (n == 0) return out;
  auto nm = [&](int i) { return a.name(i); };
  if (a.degree(a.unit()) != 0) out.push_back({"unit degree", nm(a.unit()) + " has nonzero degree"});
  for (int i = 0; i < n; ++i) {
    for (const auto& [k, c] : a.d(i))
      if (a.degree(k) != a.degree(i) + 1)
        out.push_back({"differential not degree +1", "d(" + nm(i) + ") contains " + nm(k)});
    SparseVec dd = a.apply_d(a.d(i));
    if (!dd.empty()) out.push_back({"d^2 != 0", "d(d(" + nm(i) + ")) = " + detail::render(a, dd)});
    for (int j = 0; j < n; ++j) {
      for (const auto& [k, c] : a.product(i, j))
        if (a.degree(k) != a.degree(i) + a.degree(j))
          out.push_back({"product not degree-additive", nm(i) + "*" + nm(j) + " contains " + nm(k)});
      if (a.product(a.unit(), j) != SparseVec::unit(j) || a.product(j, a.unit()) != SparseVec::unit(j)) {
        if (i == 0) out.push_back({"unit law", "unit does not act as identity on " + nm(j)});
      }
      // Leibniz: d(ab) = d(a)b + (-1)^{|a|} a d(b)
      SparseVec lhs = a.apply_d(a.product(i, j));
      SparseVec rhs = a.multiply(a.d(i), SparseVec::unit(j));
      rhs.axpy(f, f.sign(a.degree(i)), a.multiply(SparseVec::unit(i), a.d(j)));
      if (!(lhs == rhs))
        out.push_back({"Leibniz", "d(" + nm(i) + "*" + nm(j) + ") = " + detail::render(a, lhs) +
                                      " but rule gives " + detail::render(a, rhs)});
      for (int k = 0; k < n; ++k) {
        SparseVec l = a.multiply(a.product(i, j), SparseVec::unit(k));
        SparseVec r = a.multiply(SparseVec::unit(i), a.product(j, k));
        if (!(l == r))
          out.push_back({"associativity", "(" + nm(i) + nm(j) + ")" + nm(k) + " != " + nm(i) + "(" +
                                              nm(j) + nm(k) + ")"});
      }
    }
  }
  return out;
}

/// The opposite DGA: a .op b = (-1)^{|a||b|} b a, same differential.
inline DGAlgebra opposite(const DGAlgebra& a) {
  DGAlgebra op(a.field(), a.basis(), a.unit());
  const Field& f = a.field();
  for (int i = 0; i < a.dim(); ++i) {
    op.set_d(i, a.d(i));
    for (int j = 0; j < a.dim(); ++j) {
      SparseVec v = a.product(j, i);
      v.scale(f, f.sign(a.degree(i) * a.degree(j)));
      op.set_product(i, j, v);
    }
  }
  op.declared_top_degree = a.declared_top_degree;
  op.infinite_type = a.infinite_type;
  return op;
}

/// The underlying cochain complex of an algebra (or module) basis.
inline GradedComplex underlying_complex(const Field& f, const std::vector<BasisElement>& basis,
                                        const std::vector<SparseVec>& diff) {
  GradedComplex cx(f);
  for (const auto& b : basis) cx.add_cell(b.degree, 0, b.name);
  for (std::size_t i = 0; i < basis.size(); ++i) cx.set_d(static_cast<int>(i), diff[i]);
  return cx;
}

inline GradedComplex underlying_complex(const DGAlgebra& a) {
  std::vector<SparseVec> diff;
  for (int i = 0; i < a.dim(); ++i) diff.push_back(a.d(i));
  return underlying_complex(a.field(), a.basis(), diff);
}

/// Exact dims of H^*(A, d); degrees with zero cohomology are omitted.
inline std::map<int, int> cohomology_dims(const DGAlgebra& a) {
  std::map<int, int> out;
  for (const auto& [m, h] : underlying_complex(a).homology_dims())
    if (h != 0) out[m] = h;
  return out;
}

/// The product algebra A x B in the basis {1, 1_A, (A-bar, 0), (0, B-bar)}.
inline DGAlgebra direct_product(const DGAlgebra& a, const DGAlgebra& b) {
  if (!(a.field() == b.field())) throw PreconditionError("direct_product: field mismatch");
  const Field& f = a.field();
  std::vector<BasisElement> basis{{"1", 0}, {"e_A", 0}};
  std::vector<int> a_new(a.dim(), -1), b_new(b.dim(), -1);
  for (int i : a.reduced_basis()) {
    a_new[i] = static_cast<int>(basis.size());
    basis.push_back({"A." + a.name(i), a.degree(i)});
  }
  for (int i : b.reduced_basis()) {
    b_new[i] = static_cast<int>(basis.size());
    basis.push_back({"B." + b.name(i), b.degree(i)});
  }
  DGAlgebra p(f, basis, 0);
  const int n = p.dim();
  // ambient coordinates: [A coords | B coords]
  auto to_ambient = [&](int k) {
    SparseVec v;
    std::vector<SparseVec::Entry> e;
    if (k == 0) {
      e.emplace_back(a.unit(), f.one());
      e.emplace_back(a.dim() + b.unit(), f.one());
    } else if (k == 1) {
      e.emplace_back(a.unit(), f.one());
    } else {
      for (int i = 0; i < a.dim(); ++i)
        if (a_new[i] == k) e.emplace_back(i, f.one());
      for (int i = 0; i < b.dim(); ++i)
        if (b_new[i] == k) e.emplace_back(a.dim() + i, f.one());
    }
    return SparseVec::from_pairs(f, e);
  };
  auto from_ambient = [&](const SparseVec& v) {
    std::vector<SparseVec::Entry> e;
    const Scalar ua = v.at(a.unit());
    const Scalar ub = v.at(a.dim() + b.unit());
    e.emplace_back(0, ub);
    e.emplace_back(1, f.sub(ua, ub));
    for (const auto& [i, c] : v) {
      if (i < a.dim()) {
        if (i != a.unit()) e.emplace_back(a_new[i], c);
      } else if (i - a.dim() != b.unit()) {
        e.emplace_back(b_new[i - a.dim()], c);
      }
    }
    return SparseVec::from_pairs(f, e);
  };
  auto split = [&](const SparseVec& v) {
    SparseVec va, vb;
    for (const auto& [i, c] : v) {
      if (i < a.dim()) va.push_back(i, c);
      else vb.push_back(i - a.dim(), c);
    }
    return std::pair{va, vb};
  };
  auto join = [&](const SparseVec& va, const SparseVec& vb) {
    SparseVec v = va;
    for (const auto& [i, c] : vb) v.push_back(a.dim() + i, c);
    return v;
  };
  for (int i = 0; i < n; ++i) {
    auto [xa, xb] = split(to_ambient(i));
    p.set_d(i, from_ambient(join(a.apply_d(xa), b.apply_d(xb))));
    for (int j = 0; j < n; ++j) {
      auto [ya, yb] = split(to_ambient(j));
      p.set_product(i, j, from_ambient(join(a.multiply(xa, ya), b.multiply(xb, yb))));
    }
  }
  return p;
}

/// Left DG-module over a DGA by structure constants.
class DGModule {
 public:
  DGModule() = default;
  DGModule(std::shared_ptr<const DGAlgebra> alg, std::vector<BasisElement> basis)
      : alg_(std::move(alg)), basis_(std::move(basis)) {
    action_.assign(static_cast<std::size_t>(alg_->dim()) * dim(), SparseVec{});
    diff_.assign(dim(), SparseVec{});
    if (!alg_->is_zero())
      for (int m = 0; m < dim(); ++m) set_action(alg_->unit(), m, SparseVec::unit(m));
  }

  const DGAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const DGAlgebra> algebra_ptr() const { return alg_; }
  const Field& field() const { return alg_->field(); }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  int degree(int m) const { return basis_[m].degree; }
  const std::string& name(int m) const { return basis_[m].name; }

  const SparseVec& action(int a, int m) const {
    return action_[static_cast<std::size_t>(a) * dim() + m];
  }
  void set_action(int a, int m, SparseVec v) {
    action_[static_cast<std::size_t>(a) * dim() + m] = std::move(v);
  }
  const SparseVec& d(int m) const { return diff_[m]; }
  void set_d(int m, SparseVec v) { diff_[m] = std::move(v); }

  SparseVec act(const SparseVec& a, const SparseVec& m) const {
    SparseVec out;
    for (const auto& [i, x] : a)
      for (const auto& [j, y] : m) out.axpy(field(), field().mul(x, y), action(i, j));
    return out;
  }
  SparseVec apply_d(const SparseVec& m) const {
    SparseVec out;
    for (const auto& [j, y] : m) out.axpy(field(), y, diff_[j]);
    return out;
  }

  std::vector<SparseVec> differential() const { return diff_; }

  std::pair<int, int> degree_range() const {
    if (basis_.empty()) return {0, 0};
    int lo = basis_[0].degree, hi = lo;
    for (const auto& b : basis_) {
      lo = std::min(lo, b.degree);
      hi = std::max(hi, b.degree);
    }
    return {lo, hi};
  }

 private:
  std::shared_ptr<const DGAlgebra> alg_;
  std::vector<BasisElement> basis_;
  std::vector<SparseVec> action_;
  std::vector<SparseVec> diff_;
};

inline ValidationReport validate_module(const DGModule& m) {
  ValidationReport out;
  const DGAlgebra& a = m.algebra();
  const Field& f = m.field();
  auto w = [&](int ai, int mi) { return a.name(ai) + "." + m.name(mi); };
  for (int j = 0; j < m.dim(); ++j) {
    for (const auto& [k, c] : m.d(j))
      if (m.degree(k) != m.degree(j) + 1)
        out.push_back({"differential not degree +1", "d(" + m.name(j) + ") contains " + m.name(k)});
    if (!m.apply_d(m.d(j)).empty()) out.push_back({"d^2 != 0", m.name(j)});
    for (int i = 0; i < a.dim(); ++i) {
      for (const auto& [k, c] : m.action(i, j))
        if (m.degree(k) != a.degree(i) + m.degree(j))
          out.push_back({"action not degree-additive", w(i, j)});
      SparseVec lhs = m.apply_d(m.action(i, j));
      SparseVec rhs = m.act(a.d(i), SparseVec::unit(j));
      rhs.axpy(f, f.sign(a.degree(i)), m.act(SparseVec::unit(i), m.d(j)));
      if (!(lhs == rhs)) out.push_back({"Leibniz", w(i, j)});
      for (int k = 0; k < a.dim(); ++k) {
        SparseVec l = m.act(a.product(k, i), SparseVec::unit(j));
        SparseVec r = m.act(SparseVec::unit(k), m.action(i, j));
        if (!(l == r)) out.push_back({"action associativity", a.name(k) + "." + w(i, j)});
      }
    }
    if (!a.is_zero() && !(m.action(a.unit(), j) == SparseVec::unit(j)))
      out.push_back({"unit law", m.name(j)});
  }
  return out;
}

/// A as a left module over itself.
inline DGModule free_module(std::shared_ptr<const DGAlgebra> a) {
  DGModule m(a, a->basis());
  for (int i = 0; i < a->dim(); ++i) {
    m.set_d(i, a->d(i));
    for (int j = 0; j < a->dim(); ++j) m.set_action(i, j, a->product(i, j));
  }
  return m;
}

/// Sigma^k M with (Sigma^k M)^n = M^{n+k}; a . s^k m = (-1)^{k|a|} s^k (a m),
/// d(s^k m) = (-1)^k s^k dm.
inline DGModule shift_module(const DGModule& m, int k) {
  std::vector<BasisElement> basis;
  for (const auto& b : m.basis()) basis.push_back({"s" + std::to_string(k) + "." + b.name, b.degree - k});
  DGModule out(m.algebra_ptr(), basis);
  const Field& f = m.field();
  for (int j = 0; j < m.dim(); ++j) {
    SparseVec dj = m.d(j);
    dj.scale(f, f.sign(k));
    out.set_d(j, dj);
    for (int i = 0; i < m.algebra().dim(); ++i) {
      SparseVec v = m.action(i, j);
      v.scale(f, f.sign(k * m.algebra().degree(i)));
      out.set_action(i, j, v);
    }
  }
  return out;
}

/// Mapping cone of a degree-0 module map f: X -> Y (matrix dimY x dimX):
/// basis Y then Sigma X, d(sx) = f(x) - s(dx), a . sx = (-1)^{|a|} s(a x).
inline DGModule cone(const DGModule& x, const DGModule& y, const SparseMatrix& fmap) {
  const Field& f = x.field();
  std::vector<BasisElement> basis = y.basis();
  const int off = y.dim();
  for (const auto& b : x.basis()) basis.push_back({"c." + b.name, b.degree - 1});
  DGModule out(y.algebra_ptr(), basis);
  const DGAlgebra& a = y.algebra();
  auto shift_x = [&](const SparseVec& v) {
    SparseVec s;
    for (const auto& [i, c] : v) s.push_back(off + i, c);
    return s;
  };
  for (int j = 0; j < y.dim(); ++j) {
    out.set_d(j, y.d(j));
    for (int i = 0; i < a.dim(); ++i) out.set_action(i, j, y.action(i, j));
  }
  for (int j = 0; j < x.dim(); ++j) {
    SparseVec dv = fmap.col(j);
    dv.axpy(f, f.neg(f.one()), shift_x(x.d(j)));
    out.set_d(off + j, dv);
    for (int i = 0; i < a.dim(); ++i) {
      SparseVec v = shift_x(x.action(i, j));
      v.scale(f, f.sign(a.degree(i)));
      out.set_action(i, off + j, v);
    }
  }
  return out;
}

inline GradedComplex underlying_complex(const DGModule& m) {
  return underlying_complex(m.field(), m.basis(), m.differential());
}

inline std::map<int, int> cohomology_dims(const DGModule& m) {
  std::map<int, int> out;
  for (const auto& [deg, h] : underlying_complex(m).homology_dims())
    if (h != 0) out[deg] = h;
  return out;
}

/// M_n(A): basis {1} plus E_ij (x) b for every (i, j, b) except E_nn (x) 1_A,
/// with (E_ij a)(E_kl b) = delta_jk E_il (ab) and d(E_ij a) = E_ij da.
inline DGAlgebra matrix_algebra_inflation(const DGAlgebra& a, int n) {
  if (n < 1) throw PreconditionError("matrix size must be positive");
  if (n == 1) return a;
  if (a.is_zero()) return a;
  const Field& f = a.field();
  const int m = a.dim();
  auto amb = [&](int i, int j, int b) { return (i * n + j) * m + b; };
  std::vector<BasisElement> basis{{"1", 0}};
  std::vector<int> pos(static_cast<std::size_t>(n) * n * m, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < m; ++b) {
        if (i == n - 1 && j == n - 1 && b == a.unit()) continue;
        pos[amb(i, j, b)] = static_cast<int>(basis.size());
        basis.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1) + "." + a.name(b), a.degree(b)});
      }
  DGAlgebra out(f, basis, 0);
  // ambient -> basis: E_nn 1 = 1 - sum_{i<n} E_ii 1
  auto from_ambient = [&](const SparseVec& v) {
    std::vector<SparseVec::Entry> e;
    for (const auto& [k, c] : v) {
      if (pos[k] >= 0) {
        e.emplace_back(pos[k], c);
      } else {
        e.emplace_back(0, c);
        for (int i = 0; i + 1 < n; ++i) e.emplace_back(pos[amb(i, i, a.unit())], f.neg(c));
      }
    }
    return SparseVec::from_pairs(f, e);
  };
  std::vector<std::array<int, 3>> coords(basis.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < m; ++b)
        if (pos[amb(i, j, b)] >= 0) coords[pos[amb(i, j, b)]] = {i, j, b};
  for (int x = 1; x < out.dim(); ++x) {
    const auto [i, j, b] = coords[x];
    SparseVec dv;
    for (const auto& [c, v] : a.d(b)) dv.push_back(amb(i, j, c), v);
    out.set_d(x, from_ambient(dv));
    for (int y = 1; y < out.dim(); ++y) {
      const auto [k, l, c] = coords[y];
      if (j != k) continue;
      SparseVec pv;
      for (const auto& [e, v] : a.product(b, c)) pv.push_back(amb(i, l, e), v);
      out.set_product(x, y, from_ambient(pv));
    }
  }
  return out;
}

}  // namespace dgrefl
