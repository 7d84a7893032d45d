#pragma once

// Weight-truncated bar constructions.
//
// Conventions: s has degree -1, so |sa| = |a| - 1. A word
// (s l | s w_1 | ... | s w_n | m) has degree |sl| + sum |s w_i| + |m| and
// weight n. Its differential is the sum of
//   b1(s a)       = -s(da)                 on each shifted factor,
//   b2(s a, s b)  = (-1)^{|sa|} s(ab)      on adjacent shifted factors,
//   (-1)^{|sa|} a.m and -dm                at the module end,
// each with the Koszul sign (-1)^{sum of shifted degrees to its left}. The
// module factor behaves like a shifted letter whose degree is not lowered.
// The word (s l | m) maps to the one-letter word (l.m); these letters form
// the target module, so the whole thing is the cone of the augmentation
// B(A, M) -> M. Signs are not trusted: every constructor checks d^2 = 0.

#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dgrefl/complex.hpp"
#include "dgrefl/dga.hpp"

namespace dgrefl {

/// Guard against accidental combinatorial explosions.
inline constexpr long kMaxCells = 400000;

/// One entry of a (degree, weight) dimension table.
struct TableEntry {
  int dim = 0;
  bool exact = false;
};

/// Dimensions indexed by (degree, weight) with per-entry exactness flags.
struct DimTable {
  std::map<std::pair<int, int>, TableEntry> entries;
  SafeWindow window;
  TruncationPolicy policy;
  int built_weight = 0;

  int dim(int degree, int weight) const {
    auto it = entries.find({degree, weight});
    return it == entries.end() ? 0 : it->second.dim;
  }
  bool exact(int degree, int weight) const {
    auto it = entries.find({degree, weight});
    if (it != entries.end()) return it->second.exact;
    return window.is_exact(degree, weight);
  }
  /// Sum over reported weights; exact only where the degree is fully exact.
  std::map<int, TableEntry> degree_totals() const {
    std::map<int, TableEntry> out;
    for (const auto& [k, e] : entries) {
      auto& t = out[k.first];
      t.dim += e.dim;
    }
    for (auto& [m, t] : out) t.exact = window.exact_degrees.count(m) != 0;
    return out;
  }
};

namespace detail {

/// Largest internal degree among the cells that enter the homology of block
/// (m, w): the block itself and its neighbours along the differential.
inline int neighbourhood_internal(const GradedComplex& cx, int dir, int m, int w) {
  int best = INT_MIN;
  for (int i = 0; i < cx.size(); ++i) {
    const int dm = cx.degree(i) - m, dw = cx.weight(i) - w;
    bool in = false;
    if (dir == 1 || dir == -1) in = (dm == 0 && dw == 0) || (dm == 1 && dw == dir) || (dm == -1 && dw == -dir);
    else if (dir == 2) in = dm == 0 && dw == 0;
    else in = std::abs(dm) <= 1;
    if (in) best = std::max(best, cx.internal(i));
  }
  return best;
}

}  // namespace detail

/// Per-(degree, weight) homology of `cx` for degrees in the policy window and
/// weights <= policy.max_weight, flagged against `window`.
inline DimTable weight_table(const GradedComplex& cx, const SafeWindow& window,
                             const TruncationPolicy& policy, int built_weight,
                             bool track_internal = false) {
  DimTable t;
  t.window = window;
  t.policy = policy;
  t.built_weight = built_weight;
  const int dir = track_internal ? cx.weight_direction() : 0;
  for (int m = policy.lo; m <= policy.hi; ++m) {
    for (const auto& [w, h] : cx.homology_by_weight(m)) {
      if (w > policy.max_weight) continue;
      TableEntry e;
      e.dim = h;
      std::optional<int> internal;
      if (track_internal) internal = detail::neighbourhood_internal(cx, dir, m, w);
      e.exact = window.is_exact(m, w, internal);
      t.entries[{m, w}] = e;
    }
  }
  return t;
}

inline void require_nonempty(const SafeWindow& w, const TruncationPolicy& p) {
  bool any = w.exact_max_weight >= 0;
  for (int m : w.exact_degrees)
    if (m >= p.lo && m <= p.hi) any = true;
  if (!any)
    throw PreconditionError("safe window is empty for max_weight " + std::to_string(p.max_weight) +
                            " and degrees " + std::to_string(p.lo) + ".." + std::to_string(p.hi) +
                            "; increase --max-weight or move the degree window");
}

/// Safe window of a complex whose weight-n cells have degrees in
/// [base_lo + n*step_lo, base_hi + n*step_hi] and which was built up to
/// weight `built`. Weight-graded complexes are exact per weight up to built-1.
inline SafeWindow tail_window(const GradedComplex& cx, const TruncationPolicy& p, int built,
                              long base_lo, long base_hi, long step_lo, long step_hi,
                              bool tail_nonempty) {
  SafeWindow w;
  if (!tail_nonempty) {
    for (int m = p.lo; m <= p.hi; ++m) w.exact_degrees.insert(m);
  } else {
    w.exact_degrees =
        degrees_outside(p.lo, p.hi, weight_tail_hull(base_lo, base_hi, step_lo, step_hi, built + 1));
  }
  if (cx.is_weight_graded()) w.exact_max_weight = std::min(p.max_weight, built - 1);
  return w;
}

/// Letters allowed between the ends: the reduced basis (normalized) or all.
inline std::vector<int> middle_alphabet(const DGAlgebra& a, bool normalized) {
  if (!normalized) {
    std::vector<int> all(a.dim());
    for (int i = 0; i < a.dim(); ++i) all[i] = i;
    return all;
  }
  return a.reduced_basis();
}

/// All words of length n over an alphabet of size r, lexicographic.
inline std::vector<std::vector<int>> all_words(int r, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(n, 0);
  if (n > 0 && r == 0) return out;
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= r;
    if (total > kMaxCells) throw PreconditionError("word complex too large; lower --max-weight");
  }
  for (;;) {
    out.push_back(w);
    int k = n - 1;
    while (k >= 0 && ++w[k] == r) w[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

/// Projection of an algebra element onto the span of `alphabet` (dropping
/// any other coordinate), re-indexed by alphabet position.
inline SparseVec project(const SparseVec& v, const std::vector<int>& pos_in_alphabet) {
  SparseVec out;
  for (const auto& [i, c] : v)
    if (pos_in_alphabet[i] >= 0) out.push_back(pos_in_alphabet[i], c);
  return out;
}

/// The augmented bar construction of a left module: cone of B(A, M) -> M.
struct BarComplex {
  GradedComplex cx{Field{}};
  SafeWindow window;
  TruncationPolicy policy;
  int built_weight = 0;
  bool normalized = true;
  std::vector<int> target_cells;  // cells of M (weight -1)

  struct Cell {
    int left = -1;  // algebra basis index, -1 for target cells
    std::vector<int> mid;
    int right = -1;  // module basis index
  };
  std::vector<Cell> cells;

  /// The resolution B(A, M) alone, in its own grading (cone degree + 1).
  GradedComplex resolution_part() const {
    GradedComplex r(cx.field());
    std::vector<int> map(cx.size(), -1);
    for (int i = 0; i < cx.size(); ++i)
      if (cells[i].left >= 0) map[i] = r.add_cell(cx.degree(i) + 1, cx.weight(i), cx.label(i), cx.internal(i));
    for (int i = 0; i < cx.size(); ++i)
      if (map[i] >= 0) r.set_d(map[i], cx.d(i).remapped(map));
    return r;
  }

  /// Number of resolution cells of weight n.
  int term_dim(int n) const {
    int c = 0;
    for (int i = 0; i < cx.size(); ++i)
      if (cells[i].left >= 0 && cx.weight(i) == n) ++c;
    return c;
  }
};

/// Builds the (normalized by default) bar construction of `m`, including the
/// augmentation cone, up to weight policy.max_weight + 1, and verifies
/// d^2 = 0 and acyclicity of the cone inside the safe window.
inline BarComplex bar_resolution(const DGModule& m, const TruncationPolicy& policy,
                                 bool normalized = true) {
  const DGAlgebra& a = m.algebra();
  if (a.is_zero()) throw PreconditionError("bar_resolution: zero algebra");
  const Field& f = a.field();
  BarComplex bc;
  bc.cx = GradedComplex(f);
  bc.policy = policy;
  bc.normalized = normalized;
  const int built = policy.max_weight + 1;
  bc.built_weight = built;
  const std::vector<int> alpha = middle_alphabet(a, normalized);
  std::vector<int> pos(a.dim(), -1);
  for (std::size_t k = 0; k < alpha.size(); ++k) pos[alpha[k]] = static_cast<int>(k);

  std::map<std::vector<int>, int> index;  // {left, right, mid...}
  auto key = [](int l, const std::vector<int>& mid, int r) {
    std::vector<int> k{l, r};
    k.insert(k.end(), mid.begin(), mid.end());
    return k;
  };
  auto label = [&](int l, const std::vector<int>& mid, int r) {
    std::string s = "[";
    if (l >= 0) s += "s" + a.name(l);
    for (int x : mid) s += "|s" + a.name(alpha[x]);
    s += (l >= 0 ? "|" : "") + m.name(r) + "]";
    return s;
  };
  for (int r = 0; r < m.dim(); ++r) {
    int id = bc.cx.add_cell(m.degree(r), -1, label(-1, {}, r), 0);
    index[key(-1, {}, r)] = id;
    bc.cells.push_back({-1, {}, r});
    bc.target_cells.push_back(id);
  }
  long count = m.dim();
  for (int n = 0; n <= built; ++n) {
    auto words = all_words(static_cast<int>(alpha.size()), n);
    count += static_cast<long>(words.size()) * a.dim() * m.dim();
    if (count > kMaxCells) throw PreconditionError("bar complex too large; lower --max-weight");
    for (int l = 0; l < a.dim(); ++l)
      for (const auto& w : words)
        for (int r = 0; r < m.dim(); ++r) {
          int deg = a.degree(l) - 1 + m.degree(r);
          int internal = a.degree(l);
          for (int x : w) {
            deg += a.degree(alpha[x]) - 1;
            internal += a.degree(alpha[x]);
          }
          int id = bc.cx.add_cell(deg, n, label(l, w, r), internal);
          index[key(l, w, r)] = id;
          bc.cells.push_back({l, w, r});
        }
  }
  auto lookup = [&](int l, const std::vector<int>& mid, int r) {
    auto it = index.find(key(l, mid, r));
    if (it == index.end()) throw InvariantViolation("bar differential left the built range");
    return it->second;
  };
  for (int id = 0; id < bc.cx.size(); ++id) {
    const auto& c = bc.cells[id];
    std::vector<SparseVec::Entry> out;
    if (c.left < 0) {
      for (const auto& [r2, v] : m.d(c.right)) out.emplace_back(lookup(-1, {}, r2), f.neg(v));
      bc.cx.set_d(id, SparseVec::from_pairs(f, out));
      continue;
    }
    const int n = static_cast<int>(c.mid.size());
    std::vector<int> e(n + 1);
    e[0] = a.degree(c.left) - 1;
    for (int i = 0; i < n; ++i) e[i + 1] = a.degree(alpha[c.mid[i]]) - 1;
    int prefix = 0;  // sum of shifted degrees to the left of the current factor
    // left end
    for (const auto& [l2, v] : a.d(c.left))
      out.emplace_back(lookup(l2, c.mid, c.right), f.mul(f.sign(prefix + 1), v));
    if (n == 0) {
      for (const auto& [r2, v] : m.action(c.left, c.right))
        out.emplace_back(lookup(-1, {}, r2), f.mul(f.sign(prefix + e[0]), v));
    } else {
      std::vector<int> rest(c.mid.begin() + 1, c.mid.end());
      for (const auto& [l2, v] : a.product(c.left, alpha[c.mid[0]]))
        out.emplace_back(lookup(l2, rest, c.right), f.mul(f.sign(prefix + e[0]), v));
    }
    prefix += e[0];
    for (int i = 0; i < n; ++i) {
      const int letter = alpha[c.mid[i]];
      for (const auto& [x, v] : project(a.d(letter), pos)) {
        auto mid = c.mid;
        mid[i] = x;
        out.emplace_back(lookup(c.left, mid, c.right), f.mul(f.sign(prefix + 1), v));
      }
      if (i + 1 < n) {
        for (const auto& [x, v] : project(a.product(letter, alpha[c.mid[i + 1]]), pos)) {
          std::vector<int> mid(c.mid.begin(), c.mid.begin() + i);
          mid.push_back(x);
          mid.insert(mid.end(), c.mid.begin() + i + 2, c.mid.end());
          out.emplace_back(lookup(c.left, mid, c.right), f.mul(f.sign(prefix + e[i + 1]), v));
        }
      } else {
        std::vector<int> mid(c.mid.begin(), c.mid.end() - 1);
        for (const auto& [r2, v] : m.action(letter, c.right))
          out.emplace_back(lookup(c.left, mid, r2), f.mul(f.sign(prefix + e[i + 1]), v));
      }
      prefix += e[i + 1];
    }
    for (const auto& [r2, v] : m.d(c.right))
      out.emplace_back(lookup(c.left, c.mid, r2), f.mul(f.sign(prefix + 1), v));
    bc.cx.set_d(id, SparseVec::from_pairs(f, out));
  }
  bc.cx.verify_square_zero();

  auto [a0, a1] = a.degree_range();
  auto [m0, m1] = m.degree_range();
  int b0 = INT_MAX, b1 = INT_MIN;
  for (int x : alpha) {
    b0 = std::min(b0, a.degree(x));
    b1 = std::max(b1, a.degree(x));
  }
  bc.window = tail_window(bc.cx, policy, built, a0 - 1 + m0, a1 - 1 + m1, alpha.empty() ? 0 : b0 - 1,
                          alpha.empty() ? 0 : b1 - 1, !alpha.empty());
  // The built range is a subcomplex; in its safe window the cone must be acyclic.
  auto table = weight_table(bc.cx, bc.window, policy, built);
  for (const auto& [k, entry] : table.entries)
    if (entry.exact && entry.dim != 0)
      throw InvariantViolation("augmentation cone not acyclic at degree " + std::to_string(k.first) +
                               ", weight " + std::to_string(k.second));
  for (int deg : bc.window.exact_degrees)
    if (bc.cx.homology_dim(deg) != 0)
      throw InvariantViolation("augmentation cone not acyclic in degree " + std::to_string(deg));
  return bc;
}

/// Bar resolution of the diagonal bimodule: B(A, A, A) with augmentation to A.
/// As a complex it is the bar construction of A as a left module over itself.
inline BarComplex bimodule_bar_resolution(std::shared_ptr<const DGAlgebra> a,
                                          const TruncationPolicy& policy, bool normalized = true) {
  return bar_resolution(free_module(std::move(a)), policy, normalized);
}

/// The totalization of ... -> Sigma^{-i} A -x-> Sigma^{-i+1} A -> ... -> A for
/// A = k[x]/x^2 with |x| = 1, columns 0..N+1. Column c contributes 1_c in
/// degree 0 and x_c in degree 1 (weight c); d(1_c) = x_{c-1}.
struct TotalizationResolution {
  GradedComplex cx{Field{}};
  SafeWindow window;
  int columns = 0;        // reported columns 0..N
  int built_columns = 0;  // one extra column keeps column N exact
  std::vector<int> one, ex;  // cell ids of 1_c and x_c
};

inline void require_dual_numbers_deg1(const DGAlgebra& a) {
  if (a.dim() != 2 || a.degree(a.unit()) != 0)
    throw PreconditionError("totalization resolution needs basis {1, x} with x^2 = 0, |x| = 1");
  const int x = 1 - a.unit();
  if (a.degree(x) != 1 || !a.product(x, x).empty() || !a.has_zero_differential())
    throw PreconditionError("totalization resolution needs basis {1, x} with x^2 = 0, |x| = 1, d = 0");
}

inline TotalizationResolution shift_totalization_resolution(const DGAlgebra& a,
                                                            const TruncationPolicy& policy) {
  require_dual_numbers_deg1(a);
  TotalizationResolution p;
  p.cx = GradedComplex(a.field());
  p.columns = policy.max_weight + 1;
  p.built_columns = policy.max_weight + 2;
  for (int c = 0; c < p.built_columns; ++c) {
    p.one.push_back(p.cx.add_cell(0, c, "1_" + std::to_string(c)));
    p.ex.push_back(p.cx.add_cell(1, c, "x_" + std::to_string(c)));
  }
  for (int c = 1; c < p.built_columns; ++c) p.cx.set_d(p.one[c], SparseVec::unit(p.ex[c - 1]));
  p.cx.verify_square_zero();
  p.window.exact_max_weight = policy.max_weight;
  return p;
}

}  // namespace dgrefl
