#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgrefl/dga.hpp"

namespace dgrefl {

/// A subspace of an algebra, kept as a reduced echelon basis whose pivots
/// never include the unit coordinate unless the unit lies in the span.
struct IdealDescription {
  std::vector<SparseVec> span;
  bool is_dg_ideal = false;

  int dim() const noexcept { return static_cast<int>(span.size()); }
};

namespace detail {

/// Coordinate order used for quotients: the unit is ranked last so that a
/// complement chosen from non-pivot coordinates always contains it.
struct UnitLastOrder {
  std::vector<int> key, inv;
  explicit UnitLastOrder(const DGAlgebra& a) : key(a.dim()), inv(a.dim()) {
    int next = 0;
    for (int i = a.dim() - 1; i >= 0; --i)
      if (i != a.unit()) key[i] = next++;
    if (a.dim() > 0) key[a.unit()] = next;
    for (int i = 0; i < a.dim(); ++i) inv[key[i]] = i;
  }
  SparseVec to_key(const SparseVec& v) const { return v.remapped(key); }
  SparseVec from_key(const SparseVec& v) const { return v.remapped(inv); }
};

/// Reduced echelon form (in unit-last order) of the span of `vs`.
inline Echelon span_echelon(const DGAlgebra& a, const std::vector<SparseVec>& vs) {
  UnitLastOrder ord(a);
  Echelon e(a.field());
  for (const auto& v : vs) e.insert(ord.to_key(v));
  return e;
}

inline std::vector<SparseVec> reduced_basis_of(const DGAlgebra& a, const std::vector<SparseVec>& vs) {
  UnitLastOrder ord(a);
  Echelon e = span_echelon(a, vs);
  std::vector<SparseVec> out;
  // back-substitute so every vector avoids the other pivots
  for (const auto& b : e.basis()) {
    SparseVec tail;
    bool first = true;
    for (const auto& [i, c] : b) {
      if (first) {
        first = false;
        continue;
      }
      tail.push_back(i, c);
    }
    SparseVec red = e.reduce_full(tail);
    SparseVec full = SparseVec::unit(b.lead());
    full.axpy(a.field(), a.field().one(), red);
    out.push_back(ord.from_key(full));
  }
  std::sort(out.begin(), out.end(), [&](const SparseVec& x, const SparseVec& y) {
    return ord.to_key(x).lead() < ord.to_key(y).lead();
  });
  return out;
}

/// Left multiplication matrix of x acting on the algebra (all coordinates).
inline SparseMatrix left_mult(const DGAlgebra& a, const SparseVec& x) {
  SparseMatrix m(a.dim(), a.dim());
  for (int j = 0; j < a.dim(); ++j) m.col(j) = a.multiply(x, SparseVec::unit(j));
  return m;
}

inline Scalar trace(const Field& f, const SparseMatrix& m) {
  Scalar t(0);
  for (int j = 0; j < m.cols(); ++j) t = f.add(t, m.col(j).at(j));
  return t;
}

/// Kernel of the trace form (x, y) -> tr(L_{xy}) on the ungraded algebra.
inline std::vector<SparseVec> trace_form_kernel(const DGAlgebra& a) {
  const Field& f = a.field();
  const int n = a.dim();
  std::vector<Scalar> tr(n);
  for (int k = 0; k < n; ++k) tr[k] = trace(f, left_mult(a, SparseVec::unit(k)));
  // column i of M holds (t_{i,j})_j
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<SparseVec::Entry> col;
    for (int j = 0; j < n; ++j) {
      Scalar t(0);
      for (const auto& [k, c] : a.product(i, j)) t = f.add(t, f.mul(c, tr[k]));
      if (t != 0) col.emplace_back(j, t);
    }
    m.col(i) = SparseVec::from_pairs(f, col);
  }
  return kernel_basis(f, m);
}

inline bool is_ideal(const DGAlgebra& a, const std::vector<SparseVec>& span) {
  Echelon e = span_echelon(a, span);
  UnitLastOrder ord(a);
  for (const auto& v : span)
    for (int i = 0; i < a.dim(); ++i) {
      if (!e.contains(ord.to_key(a.multiply(SparseVec::unit(i), v)))) return false;
      if (!e.contains(ord.to_key(a.multiply(v, SparseVec::unit(i))))) return false;
    }
  return true;
}

/// Smallest k with I^k = 0, or nullopt if none up to dim A + 1.
inline std::optional<int> nilpotency_index(const DGAlgebra& a, const std::vector<SparseVec>& ideal) {
  if (ideal.empty()) return 1;
  std::vector<SparseVec> power = ideal;
  for (int k = 1; k <= a.dim() + 1; ++k) {
    if (power.empty()) return k;
    std::vector<SparseVec> next;
    for (const auto& p : power)
      for (const auto& q : ideal) {
        SparseVec r = a.multiply(p, q);
        if (!r.empty()) next.push_back(std::move(r));
      }
    power = next.empty() ? next : reduced_basis_of(a, next);
  }
  return std::nullopt;
}

}  // namespace detail

/// Quotient of A by a two-sided (DG-)ideal on the complement of the echelon
/// pivots; the unit is always among the retained basis elements.
struct QuotientResult {
  DGAlgebra algebra;
  std::vector<int> kept;      // retained basis indices of A, in order
  std::vector<SparseVec> projection;  // image of each basis element of A
  bool differential_vanishes = true;
};

inline QuotientResult quotient_algebra(const DGAlgebra& a, const IdealDescription& ideal) {
  detail::UnitLastOrder ord(a);
  Echelon e = detail::span_echelon(a, ideal.span);
  QuotientResult out;
  if (e.is_pivot(ord.key[a.unit()])) {
    out.algebra = DGAlgebra::zero(a.field());
    out.projection.assign(a.dim(), SparseVec{});
    return out;
  }
  std::vector<int> pos(a.dim(), -1);
  std::vector<BasisElement> basis;
  for (int i = 0; i < a.dim(); ++i) {
    if (!e.is_pivot(ord.key[i])) {
      pos[i] = static_cast<int>(out.kept.size());
      out.kept.push_back(i);
      basis.push_back(a.basis()[i]);
    }
  }
  auto reduce = [&](const SparseVec& v) {
    SparseVec r = ord.from_key(e.reduce_full(ord.to_key(v)));
    for (const auto& [i, c] : r)
      if (pos[i] < 0) throw InvariantViolation("quotient reduction left a pivot coordinate");
    return r.remapped(pos);
  };
  DGAlgebra q(a.field(), basis, pos[a.unit()]);
  for (int i = 0; i < a.dim(); ++i) out.projection.push_back(reduce(SparseVec::unit(i)));
  for (std::size_t x = 0; x < out.kept.size(); ++x) {
    SparseVec dv = reduce(a.d(out.kept[x]));
    if (!dv.empty()) out.differential_vanishes = false;
    q.set_d(static_cast<int>(x), dv);
    for (std::size_t y = 0; y < out.kept.size(); ++y)
      q.set_product(static_cast<int>(x), static_cast<int>(y),
                    reduce(a.product(out.kept[x], out.kept[y])));
  }
  // homogeneity of the reduction: every product must stay in its degree
  for (int i = 0; i < q.dim(); ++i)
    for (int j = 0; j < q.dim(); ++j)
      for (const auto& [k, c] : q.product(i, j))
        if (q.degree(k) != q.degree(i) + q.degree(j))
          throw InvariantViolation("ideal is not graded: quotient product leaves its degree");
  out.algebra = std::move(q);
  return out;
}

/// Jacobson radical of the underlying ungraded algebra via the trace form.
/// Requires characteristic 0 or p > dim A.
inline IdealDescription radical(const DGAlgebra& a) {
  const auto p = a.field().characteristic();
  if (p != 0 && p <= static_cast<std::uint64_t>(a.dim()))
    throw PreconditionError("radical unsupported in this characteristic (p = " + std::to_string(p) +
                            " <= dim A = " + std::to_string(a.dim()) + ")");
  IdealDescription out;
  if (a.is_zero()) return out;
  auto ker = detail::trace_form_kernel(a);
  out.span = detail::reduced_basis_of(a, ker);
  if (!detail::is_ideal(a, out.span)) throw InvariantViolation("trace-form kernel is not an ideal");
  if (!detail::nilpotency_index(a, out.span))
    throw InvariantViolation("trace-form kernel is not nilpotent");
  if (!out.span.empty()) {
    auto q = quotient_algebra(a, out);
    if (!q.algebra.is_zero() && !detail::trace_form_kernel(q.algebra).empty())
      throw InvariantViolation("quotient by the radical still has a radical");
  }
  bool closed = true;
  {
    Echelon e = detail::span_echelon(a, out.span);
    detail::UnitLastOrder ord(a);
    for (const auto& v : out.span)
      if (!e.contains(ord.to_key(a.apply_d(v)))) closed = false;
  }
  out.is_dg_ideal = closed;
  return out;
}

/// J + d(J): the smallest DG-ideal containing the radical.
inline IdealDescription j_plus(const DGAlgebra& a) {
  IdealDescription j = radical(a);
  std::vector<SparseVec> gens = j.span;
  for (const auto& v : j.span) {
    SparseVec dv = a.apply_d(v);
    if (!dv.empty()) gens.push_back(dv);
  }
  IdealDescription out;
  out.span = detail::reduced_basis_of(a, gens);
  Echelon e = detail::span_echelon(a, out.span);
  detail::UnitLastOrder ord(a);
  for (const auto& v : out.span)
    if (!e.contains(ord.to_key(a.apply_d(v)))) throw InvariantViolation("J + d(J) not closed under d");
  if (!detail::is_ideal(a, out.span)) throw InvariantViolation("J + d(J) is not an ideal");
  out.is_dg_ideal = true;
  return out;
}

/// A / J_+ on a deterministic complement basis. May be the zero algebra.
inline DGAlgebra semisimple_quotient(const DGAlgebra& a) {
  return quotient_algebra(a, j_plus(a)).algebra;
}

/// A / J_+ as a left DG-module over A (action through the quotient map).
inline DGModule quotient_module(std::shared_ptr<const DGAlgebra> a) {
  QuotientResult q = quotient_algebra(*a, j_plus(*a));
  DGModule m(a, q.algebra.basis());
  for (int j = 0; j < q.algebra.dim(); ++j) {
    m.set_d(j, q.algebra.d(j));
    for (int i = 0; i < a->dim(); ++i)
      m.set_action(i, j, q.algebra.multiply(q.projection[i], SparseVec::unit(j)));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Polynomials over the field (coefficients low -> high), used to split
// commuting semisimple operators into eigenspaces.

namespace poly {

using Poly = std::vector<Scalar>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mod(const Field& f, Poly a, const Poly& b) {
  trim(a);
  const Scalar lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const Scalar c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  return mod(f, r, m);
}

inline Poly gcd(const Field& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Scalar inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, inv);
  }
  return a;
}

inline Scalar eval(const Field& f, const Poly& p, const Scalar& x) {
  Scalar r(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = f.add(f.mul(r, x), *it);
  return r;
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

/// Distinct roots in the field, or nullopt if the search is not supported
/// (very large coefficients over Q).
inline std::optional<std::vector<Scalar>> roots(const Field& f, Poly p) {
  trim(p);
  std::vector<Scalar> out;
  if (p.size() <= 1) return out;
  if (!f.is_rational()) {
    const std::uint64_t q = f.characteristic();
    if (q <= 200000) {
      for (std::uint64_t x = 0; x < q; ++x) {
        Scalar s(static_cast<unsigned long>(x));
        if (eval(f, p, s) == 0) out.push_back(s);
      }
      return out;
    }
    // roots of p are the roots of gcd(p, x^q - x); only count them here
    Poly xpow{Scalar(1)}, base{Scalar(0), Scalar(1)};
    mpz_class e(std::to_string(q));
    base = mod(f, base, p);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) xpow = mulmod(f, xpow, base, p);
      base = mulmod(f, base, base, p);
      e >>= 1;
    }
    xpow.resize(std::max<std::size_t>(xpow.size(), 2), Scalar(0));
    xpow[1] = f.sub(xpow[1], f.one());
    Poly g = gcd(f, p, xpow);
    if (g.size() == 2) out.push_back(f.neg(g[0]));
    else if (g.size() > 2) return std::nullopt;
    return out;
  }
  // Q: rational root theorem on the integer-scaled polynomial
  mpz_class lcm = 1;
  for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : p) z.push_back(mpz_class(c * lcm));
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) out.push_back(Scalar(0));
  const mpz_class limit("1000000000000");
  if (abs(z[low]) > limit || abs(z.back()) > limit) return std::nullopt;
  for (const auto& a : divisors(z[low]))
    for (const auto& b : divisors(z.back()))
      for (int s : {1, -1}) {
        Scalar r(s * a, b);
        r.canonicalize();
        if (r != 0 && eval(f, p, r) == 0 &&
            std::find(out.begin(), out.end(), r) == out.end())
          out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace poly

namespace detail {

/// Minimal polynomial of the left-multiplication operator of x on A.
inline poly::Poly minimal_polynomial(const DGAlgebra& a, const SparseVec& x) {
  const Field& f = a.field();
  // powers of x in A; minimal polynomial of L_x equals that of x (A is unital)
  std::vector<SparseVec> powers{SparseVec::unit(a.unit())};
  Echelon e(f, true);
  e.insert(powers[0], 0);
  for (int k = 1; k <= a.dim() + 1; ++k) {
    powers.push_back(a.multiply(powers.back(), x));
    if (auto rel = e.insert(powers.back(), k)) {
      poly::Poly p(k + 1, Scalar(0));
      for (const auto& [t, c] : *rel) p[t] = c;
      const Scalar inv = f.inv(p[k]);
      for (auto& c : p) c = f.mul(c, inv);
      return p;
    }
  }
  throw InvariantViolation("minimal polynomial search did not terminate");
}

}  // namespace detail

/// Primitive idempotents of a commutative split semisimple algebra (as
/// vectors in its basis), or nullopt if some element has an eigenvalue
/// outside the field or a repeated root.
inline std::optional<std::vector<SparseVec>> split_idempotents(const DGAlgebra& z,
                                                               const std::vector<SparseVec>& span) {
  const Field& f = z.field();
  std::vector<SparseVec> idem{SparseVec::unit(z.unit())};
  for (const auto& x : span) {
    poly::Poly mp = detail::minimal_polynomial(z, x);
    auto rs = poly::roots(f, mp);
    if (!rs || rs->size() + 1 != mp.size()) return std::nullopt;
    std::vector<SparseVec> proj;
    for (std::size_t i = 0; i < rs->size(); ++i) {
      SparseVec p = SparseVec::unit(z.unit());
      for (std::size_t j = 0; j < rs->size(); ++j) {
        if (i == j) continue;
        SparseVec factor = x;
        factor.axpy(f, f.neg((*rs)[j]), SparseVec::unit(z.unit()));
        factor.scale(f, f.inv(f.sub((*rs)[i], (*rs)[j])));
        p = z.multiply(p, factor);
      }
      proj.push_back(p);
    }
    std::vector<SparseVec> next;
    for (const auto& e : idem)
      for (const auto& p : proj) {
        SparseVec q = z.multiply(e, p);
        if (!q.empty()) next.push_back(q);
      }
    idem = std::move(next);
  }
  return idem;
}

/// Center of the ungraded algebra as a spanning set.
inline std::vector<SparseVec> center(const DGAlgebra& a) {
  const Field& f = a.field();
  const int n = a.dim();
  // x in center iff x e_j - e_j x = 0 for all j; stack the conditions.
  SparseMatrix m(n * n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<SparseVec::Entry> col;
    for (int j = 0; j < n; ++j) {
      SparseVec c = a.product(i, j);
      c.axpy(f, f.neg(f.one()), a.product(j, i));
      for (const auto& [k, v] : c) col.emplace_back(j * n + k, v);
    }
    m.col(i) = SparseVec::from_pairs(f, col);
  }
  return kernel_basis(f, m);
}

enum class Separability { Separable, Inseparable, Unknown };

inline std::string to_string(Separability s) {
  switch (s) {
    case Separability::Separable: return "separable";
    case Separability::Inseparable: return "inseparable";
    default: return "unknown";
  }
}

/// Restricts an algebra to the subalgebra spanned by `span` (closed under
/// products and containing the unit) in a fresh basis.
inline DGAlgebra subalgebra(const DGAlgebra& a, const std::vector<SparseVec>& span_in) {
  const Field& f = a.field();
  std::vector<SparseVec> span{SparseVec::unit(a.unit())};
  for (const auto& v : span_in) span.push_back(v);
  Echelon e(f, true);
  std::vector<SparseVec> basis;
  for (std::size_t k = 0; k < span.size(); ++k)
    if (!e.insert(span[k], static_cast<int>(basis.size()))) basis.push_back(span[k]);
  std::vector<BasisElement> names;
  for (std::size_t k = 0; k < basis.size(); ++k) names.push_back({"z" + std::to_string(k), 0});
  DGAlgebra s(f, names, 0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto sol = e.solve(a.multiply(basis[i], basis[j]));
      if (!sol) throw InvariantViolation("span is not a subalgebra");
      s.set_product(static_cast<int>(i), static_cast<int>(j), *sol);
    }
  return s;
}

/// Split-semisimplicity test for an algebra with zero radical and zero
/// differential: separable when it is visibly a product of matrix algebras
/// over k, unknown otherwise.
inline Separability separability_check(const DGAlgebra& s) {
  if (!s.has_zero_differential())
    throw PreconditionError("separability_check: algebra has nonzero differential");
  if (s.is_zero()) return Separability::Separable;
  if (!radical(s).span.empty()) throw PreconditionError("separability_check: nonzero radical");
  const Field& f = s.field();
  auto zspan = center(s);
  DGAlgebra z = subalgebra(s, zspan);
  std::vector<SparseVec> zb;
  for (int i = 0; i < z.dim(); ++i) zb.push_back(SparseVec::unit(i));
  auto idem = split_idempotents(z, zb);
  if (!idem || static_cast<int>(idem->size()) != z.dim()) return Separability::Unknown;
  // map central idempotents back into s
  Echelon back(f, true);
  std::vector<SparseVec> zbasis{SparseVec::unit(s.unit())};
  for (const auto& v : zspan) zbasis.push_back(v);
  std::vector<SparseVec> zin;
  for (const auto& v : zbasis)
    if (!back.insert(v, static_cast<int>(zin.size()))) zin.push_back(v);
  for (const auto& e : *idem) {
    SparseVec es;
    for (const auto& [k, c] : e) es.axpy(f, c, zin[k]);
    // block e.s
    std::vector<SparseVec> blk;
    for (int i = 0; i < s.dim(); ++i) blk.push_back(s.multiply(es, SparseVec::unit(i)));
    Echelon be(f);
    for (const auto& v : blk) be.insert(v);
    const auto d = static_cast<long>(be.rank());
    long n = 0;
    while ((n + 1) * (n + 1) <= d) ++n;
    if (n * n != d) return Separability::Unknown;
    if (n == 1 || !f.is_rational()) continue;
    if (n != 2) return Separability::Unknown;
    // a 4-dimensional central simple algebra over Q splits iff it has a
    // nonzero nilpotent element
    bool found = false;
    for (std::size_t i = 0; i < blk.size() && !found; ++i)
      for (std::size_t j = 0; j < blk.size() && !found; ++j) {
        for (int c : {0, 1, -1}) {
          SparseVec x = blk[i];
          if (i != j) x.axpy(f, Scalar(c), blk[j]);
          if (x.empty()) continue;
          if (s.multiply(x, x).empty()) {
            found = true;
            break;
          }
        }
      }
    if (!found) return Separability::Unknown;
  }
  return Separability::Separable;
}

}  // namespace dgrefl
