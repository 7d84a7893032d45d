#pragma once

// Hochschild cochains C^n = Hom((s A-bar)^{(x) n}, A) and cyclic chains
// A (x) (s A-bar)^{(x) n}, normalized, truncated by weight n.
//
// A basis cochain (w_1..w_n; b) sends s w_1 | ... | s w_n to b and has
// degree |b| - sum |s w_i|. Its coboundary is the bracket with the bar
// differential m = b1 + b2: delta(phi) = m o phi-hat - (-1)^{|phi|} phi o m-hat,
// where |phi| = |sb| - sum |s w_i| is the degree as a map into sA.
// (f u g)(x) = (-1)^{deg(g) sum_{j<=p} |s x_j|} f(x_1..x_p) g(x_{p+1}..).

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgrefl/resolutions.hpp"

namespace dgrefl {

/// A truncated Hochschild (co)chain computation with its cell descriptions.
struct HHResult {
  GradedComplex cx{Field{}};
  DimTable table;
  std::map<int, bool> stabilized;  // per degree: totals unchanged from N-1 to N
  long euler_defect = 0;
  bool truncated_presentation = false;

  struct Cell {
    std::vector<int> word;  // letters as algebra basis indices
    int out = -1;           // cochains: output basis index; chains: a_0
  };
  std::vector<Cell> cells;
  std::map<std::vector<int>, int> index;  // {out, word...} -> cell id

  int find(int out, const std::vector<int>& word) const {
    std::vector<int> k{out};
    k.insert(k.end(), word.begin(), word.end());
    auto it = index.find(k);
    return it == index.end() ? -1 : it->second;
  }
};

namespace detail {

inline int shifted(const DGAlgebra& a, int i) { return a.degree(i) - 1; }

inline int add_hh_cell(HHResult& r, int degree, int weight, int internal, int out,
                       const std::vector<int>& word, const std::string& label) {
  int id = r.cx.add_cell(degree, weight, label, internal);
  std::vector<int> k{out};
  k.insert(k.end(), word.begin(), word.end());
  r.index[k] = id;
  r.cells.push_back({word, out});
  return id;
}

inline std::string word_label(const DGAlgebra& a, const std::vector<int>& w) {
  std::string s;
  for (int x : w) s += (s.empty() ? "" : "|") + ("s" + a.name(x));
  return s;
}

/// Builds the normalized cochain complex up to weight `built`.
inline HHResult hh_cochain_complex(const DGAlgebra& a, int built) {
  const Field& f = a.field();
  HHResult r;
  r.cx = GradedComplex(f);
  const std::vector<int> bar = a.reduced_basis();
  std::vector<int> in_bar(a.dim(), -1);
  for (std::size_t k = 0; k < bar.size(); ++k) in_bar[bar[k]] = static_cast<int>(k);
  long count = 0;
  for (int n = 0; n <= built; ++n) {
    auto words = all_words(static_cast<int>(bar.size()), n);
    count += static_cast<long>(words.size()) * a.dim();
    if (count > kMaxCells) throw PreconditionError("Hochschild complex too large; lower --max-weight");
    for (auto w : words) {
      for (auto& x : w) x = bar[x];
      int sw = 0, iw = 0;
      for (int x : w) {
        sw += shifted(a, x);
        iw += a.degree(x);
      }
      for (int b = 0; b < a.dim(); ++b)
        add_hh_cell(r, a.degree(b) - sw, n, a.degree(b) + iw, b, w,
                    "(" + word_label(a, w) + " -> " + a.name(b) + ")");
    }
  }
  for (int id = 0; id < r.cx.size(); ++id) {
    const auto& cell = r.cells[id];
    const auto& w = cell.word;
    const int b = cell.out;
    const int n = static_cast<int>(w.size());
    int sw = 0;
    for (int x : w) sw += shifted(a, x);
    const int phi = shifted(a, b) - sw;  // degree as a map into sA
    std::vector<SparseVec::Entry> out;
    auto emit = [&](int c, const std::vector<int>& word, const Scalar& v) {
      int t = r.find(c, word);
      if (t >= 0) out.emplace_back(t, v);  // targets beyond the built weight are dropped
    };
    for (const auto& [c, v] : a.d(b)) emit(c, w, f.neg(v));
    for (int p : bar) {
      const int sp = shifted(a, p);
      std::vector<int> pw{p};
      pw.insert(pw.end(), w.begin(), w.end());
      for (const auto& [c, v] : a.product(p, b)) emit(c, pw, f.mul(f.sign(phi * sp + sp), v));
      std::vector<int> wp = w;
      wp.push_back(p);
      for (const auto& [c, v] : a.product(b, p)) emit(c, wp, f.mul(f.sign(shifted(a, b)), v));
    }
    int prefix = 0;
    for (int i = 0; i < n; ++i) {
      const Scalar base = f.sign(phi + prefix);
      for (int p : bar) {
        const Scalar dp = a.d(p).at(w[i]);
        if (dp != 0) {
          auto t = w;
          t[i] = p;
          emit(b, t, f.mul(base, dp));
        }
        for (int q : bar) {
          const Scalar pq = a.product(p, q).at(w[i]);
          if (pq == 0) continue;
          std::vector<int> t(w.begin(), w.begin() + i);
          t.push_back(p);
          t.push_back(q);
          t.insert(t.end(), w.begin() + i + 1, w.end());
          emit(b, t, f.mul(f.neg(base), f.mul(f.sign(shifted(a, p)), pq)));
        }
      }
      prefix += shifted(a, w[i]);
    }
    r.cx.set_d(id, SparseVec::from_pairs(f, out));
  }
  r.cx.verify_square_zero();
  return r;
}

/// Builds the normalized cyclic chain complex (a_0 | s w_1 | ... | s w_n),
/// cohomological degree |a_0| + sum |s w_i|, up to weight `built`.
inline HHResult hh_chain_complex(const DGAlgebra& a, int built) {
  const Field& f = a.field();
  HHResult r;
  r.cx = GradedComplex(f);
  const std::vector<int> bar = a.reduced_basis();
  std::vector<int> pos(a.dim(), -1);
  for (std::size_t k = 0; k < bar.size(); ++k) pos[bar[k]] = static_cast<int>(k);
  long count = 0;
  for (int n = 0; n <= built; ++n) {
    auto words = all_words(static_cast<int>(bar.size()), n);
    count += static_cast<long>(words.size()) * a.dim();
    if (count > kMaxCells) throw PreconditionError("Hochschild complex too large; lower --max-weight");
    for (auto w : words) {
      for (auto& x : w) x = bar[x];
      int sw = 0, iw = 0;
      for (int x : w) {
        sw += shifted(a, x);
        iw += a.degree(x);
      }
      for (int a0 = 0; a0 < a.dim(); ++a0)
        add_hh_cell(r, a.degree(a0) + sw, n, a.degree(a0) + iw, a0, w,
                    "(" + a.name(a0) + (w.empty() ? "" : "|") + word_label(a, w) + ")");
    }
  }
  auto in_bar = [&](const SparseVec& v) {
    SparseVec out;
    for (const auto& [i, c] : v)
      if (pos[i] >= 0) out.push_back(i, c);
    return out;
  };
  for (int id = 0; id < r.cx.size(); ++id) {
    const auto& cell = r.cells[id];
    const auto& w = cell.word;
    const int a0 = cell.out;
    const int n = static_cast<int>(w.size());
    std::vector<SparseVec::Entry> out;
    auto emit = [&](int c, const std::vector<int>& word, const Scalar& v) {
      int t = r.find(c, word);
      if (t < 0) throw InvariantViolation("Hochschild chain differential left the built range");
      out.emplace_back(t, v);
    };
    // the word (s a_0 | s w_1 | ...) under the bar differential, plus the wrap
    const int e0 = shifted(a, a0);
    int total = e0;
    for (int x : w) total += shifted(a, x);
    for (const auto& [c, v] : a.d(a0)) emit(c, w, f.neg(v));
    if (n > 0) {
      std::vector<int> rest(w.begin() + 1, w.end());
      for (const auto& [c, v] : a.product(a0, w[0])) emit(c, rest, f.mul(f.sign(e0), v));
      // wrap: move s w_n to the front, then multiply w_n a_0
      const int en = shifted(a, w[n - 1]);
      std::vector<int> init(w.begin(), w.end() - 1);
      for (const auto& [c, v] : a.product(w[n - 1], a0))
        emit(c, init, f.mul(f.sign(en * (total - en) + en), v));
    }
    int prefix = e0;
    for (int i = 0; i < n; ++i) {
      const int ei = shifted(a, w[i]);
      for (const auto& [x, v] : in_bar(a.d(w[i]))) {
        auto t = w;
        t[i] = x;
        emit(a0, t, f.mul(f.sign(prefix + 1), v));
      }
      if (i + 1 < n) {
        for (const auto& [x, v] : in_bar(a.product(w[i], w[i + 1]))) {
          std::vector<int> t(w.begin(), w.begin() + i);
          t.push_back(x);
          t.insert(t.end(), w.begin() + i + 2, w.end());
          emit(a0, t, f.mul(f.sign(prefix + ei), v));
        }
      }
      prefix += ei;
    }
    r.cx.set_d(id, SparseVec::from_pairs(f, out));
  }
  r.cx.verify_square_zero();
  return r;
}

inline std::pair<int, int> bar_letter_range(const DGAlgebra& a) {
  int b0 = INT_MAX, b1 = INT_MIN;
  for (int x : a.reduced_basis()) {
    b0 = std::min(b0, a.degree(x));
    b1 = std::max(b1, a.degree(x));
  }
  return {b0, b1};
}

/// Safe window for cochains (chains if `chains`) built to weight `built`.
inline SafeWindow hh_window(const DGAlgebra& a, const GradedComplex& cx, const TruncationPolicy& p,
                            int built, bool chains) {
  auto [a0, a1] = a.degree_range();
  auto [b0, b1] = bar_letter_range(a);
  const bool tail = !a.reduced_basis().empty();
  SafeWindow w = chains ? tail_window(cx, p, built, a0, a1, b0 - 1, b1 - 1, tail)
                        : tail_window(cx, p, built, a0, a1, 1 - b1, 1 - b0, tail);
  if (a.declared_top_degree) {
    if (chains) {
      // every factor degree is bounded by the internal degree when degrees are >= 0
      if (a0 < 0) w = SafeWindow{};
      w.max_internal_degree = *a.declared_top_degree;
    } else {
      // cochain blocks of a truncated presentation always miss some cells
      w = SafeWindow{};
    }
  }
  return w;
}

template <class Build>
HHResult hh_run(const DGAlgebra& a, const TruncationPolicy& p, bool chains, Build build) {
  if (a.is_zero()) {
    HHResult r;
    r.cx = GradedComplex(a.field());
    r.table.policy = p;
    r.table.window.exact_max_weight = p.max_weight;
    for (int m = p.lo; m <= p.hi; ++m) r.table.window.exact_degrees.insert(m);
    return r;
  }
  const int built = p.max_weight + 1;
  HHResult r = build(a, built);
  SafeWindow w = hh_window(a, r.cx, p, built, chains);
  r.truncated_presentation = a.declared_top_degree.has_value();
  if (!r.truncated_presentation) require_nonempty(w, p);
  r.table = weight_table(r.cx, w, p, built, r.truncated_presentation);
  r.euler_defect = r.cx.euler_defect();
  if (r.euler_defect != 0) throw InvariantViolation("Euler characteristic mismatch in Hochschild complex");
  // stabilization: compare degree totals with the run one weight lower
  if (p.max_weight > 0) {
    TruncationPolicy q(p.max_weight - 1, p.lo, p.hi);
    HHResult lower = build(a, built - 1);
    auto lt = weight_table(lower.cx, hh_window(a, lower.cx, q, built - 1, chains), q, built - 1);
    auto now = r.table.degree_totals();
    auto before = lt.degree_totals();
    for (int m = p.lo; m <= p.hi; ++m) r.stabilized[m] = now[m].dim == before[m].dim;
  }
  return r;
}

}  // namespace detail

/// Hochschild cohomology per (degree, weight), weights 0..N.
inline HHResult hh_cohomology(const DGAlgebra& a, const TruncationPolicy& p) {
  return detail::hh_run(a, p, false, detail::hh_cochain_complex);
}

/// Hochschild homology per (cohomological degree, weight); homological
/// degree is the negative of the reported degree.
inline HHResult hh_homology(const DGAlgebra& a, const TruncationPolicy& p) {
  return detail::hh_run(a, p, true, detail::hh_chain_complex);
}

/// Cup product of two cochains (vectors over the cells of `r`).
inline SparseVec cup(const DGAlgebra& a, const HHResult& r, const SparseVec& f, const SparseVec& g) {
  const Field& fld = a.field();
  std::vector<SparseVec::Entry> out;
  for (const auto& [i, x] : f) {
    const auto& ci = r.cells[i];
    int su = 0;
    for (int u : ci.word) su += a.degree(u) - 1;
    for (const auto& [j, y] : g) {
      const auto& cj = r.cells[j];
      const int deg_g = r.cx.degree(j);
      std::vector<int> word = ci.word;
      word.insert(word.end(), cj.word.begin(), cj.word.end());
      const Scalar s = fld.mul(fld.sign(deg_g * su), fld.mul(x, y));
      for (const auto& [c, v] : a.product(ci.out, cj.out)) {
        int t = r.find(c, word);
        if (t < 0) throw PreconditionError("cup product beyond the built weight");
        out.emplace_back(t, fld.mul(s, v));
      }
    }
  }
  return SparseVec::from_pairs(fld, out);
}

/// Classes of HH with chosen representatives and pairwise products.
struct CupTable {
  struct Class {
    int degree, weight, index;
    SparseVec rep;
  };
  std::vector<Class> classes;
  int unit_class = -1;
  // products[(i, j)] = coordinates over the classes of the target block
  std::map<std::pair<int, int>, std::vector<std::pair<int, Scalar>>> products;
  bool associative = true;
  bool unital = true;
  bool graded_commutative = true;

  std::vector<int> find(int degree, int weight) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (classes[k].degree == degree && classes[k].weight == weight) out.push_back(static_cast<int>(k));
    return out;
  }
};

namespace detail {

/// Classes of every exact nonzero block of `cx` and their pairwise products
/// under `mul` (a cochain-level product), with unit/associativity/commutativity
/// checks. `one` is the cell of the unit cocycle.
template <class Mul>
CupTable product_table(const GradedComplex& cx, const DimTable& table, Mul mul, int one) {
  const Field& f = cx.field();
  const int N = table.policy.max_weight;
  CupTable t;
  std::map<std::pair<int, int>, ClassBasis> blocks;
  auto block_cells = [&](int m, int w) {
    std::vector<int> c, prev, next;
    for (int i = 0; i < cx.size(); ++i) {
      if (cx.degree(i) == m && cx.weight(i) == w) c.push_back(i);
      if (cx.degree(i) == m - 1 && cx.weight(i) == w - 1) prev.push_back(i);
      if (cx.degree(i) == m + 1 && cx.weight(i) == w + 1) next.push_back(i);
    }
    return std::tuple{c, prev, next};
  };
  for (const auto& [key, e] : table.entries) {
    if (!e.exact || e.dim == 0) continue;
    auto [c, prev, next] = block_cells(key.first, key.second);
    ClassBasis cb(cx, c, prev, next);
    if (static_cast<int>(cb.size()) != e.dim) throw InvariantViolation("class basis size mismatch");
    for (std::size_t k = 0; k < cb.size(); ++k)
      t.classes.push_back({key.first, key.second, static_cast<int>(k), cb.representatives()[k]});
    blocks.emplace(key, std::move(cb));
  }
  auto coords = [&](const SparseVec& v, int m, int w) -> std::optional<std::vector<std::pair<int, Scalar>>> {
    if (v.empty()) return std::vector<std::pair<int, Scalar>>{};
    SparseVec dv;
    for (const auto& [k, x] : v) dv.axpy(f, x, cx.d(k));
    if (!dv.empty()) throw InvariantViolation("cup product of cocycles is not a cocycle");
    auto it = blocks.find({m, w});
    if (it == blocks.end()) {
      if (table.exact(m, w) && table.dim(m, w) == 0) return std::vector<std::pair<int, Scalar>>{};
      return std::nullopt;
    }
    auto c = it->second.coordinates(v);
    if (!c) throw InvariantViolation("cocycle not expressible in the class basis");
    std::vector<std::pair<int, Scalar>> out;
    auto ids = t.find(m, w);
    for (std::size_t k = 0; k < c->size(); ++k)
      if ((*c)[k] != 0) out.emplace_back(ids[k], (*c)[k]);
    return out;
  };
  for (std::size_t i = 0; i < t.classes.size(); ++i)
    if (t.classes[i].degree == 0 && t.classes[i].weight == 0) {
      auto c = blocks.at({0, 0}).coordinates(SparseVec::unit(one));
      if (c && (*c)[t.classes[i].index] != 0) {
        bool pure = true;
        for (std::size_t k = 0; k < c->size(); ++k)
          if (static_cast<int>(k) != t.classes[i].index && (*c)[k] != 0) pure = false;
        if (pure && (*c)[t.classes[i].index] == 1) t.unit_class = static_cast<int>(i);
      }
    }
  const SparseVec unit_rep = SparseVec::unit(one);
  for (std::size_t i = 0; i < t.classes.size(); ++i)
    for (std::size_t j = 0; j < t.classes.size(); ++j) {
      const auto& ci = t.classes[i];
      const auto& cj = t.classes[j];
      if (ci.weight + cj.weight > N) continue;
      SparseVec p = mul(ci.rep, cj.rep);
      auto c = coords(p, ci.degree + cj.degree, ci.weight + cj.weight);
      if (c) t.products[{static_cast<int>(i), static_cast<int>(j)}] = *c;
    }
  // unit law: 1 u f = f u 1 = f at the cochain level (up to coboundary)
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    const auto& ci = t.classes[i];
    auto l = coords(mul(unit_rep, ci.rep), ci.degree, ci.weight);
    auto rr = coords(mul(ci.rep, unit_rep), ci.degree, ci.weight);
    std::vector<std::pair<int, Scalar>> self{{static_cast<int>(i), Scalar(1)}};
    if (!l || !rr || *l != self || *rr != self) t.unital = false;
  }
  // associativity and graded commutativity on classes
  auto times = [&](const std::vector<std::pair<int, Scalar>>& x, int k) -> std::optional<std::map<int, Scalar>> {
    std::map<int, Scalar> acc;
    for (const auto& [l, c] : x) {
      auto it = t.products.find({l, k});
      if (it == t.products.end()) return std::nullopt;
      for (const auto& [m, v] : it->second) acc[m] = f.add(acc[m], f.mul(c, v));
    }
    for (auto it = acc.begin(); it != acc.end();) it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc;
  };
  auto times_left = [&](int k, const std::vector<std::pair<int, Scalar>>& x) -> std::optional<std::map<int, Scalar>> {
    std::map<int, Scalar> acc;
    for (const auto& [l, c] : x) {
      auto it = t.products.find({k, l});
      if (it == t.products.end()) return std::nullopt;
      for (const auto& [m, v] : it->second) acc[m] = f.add(acc[m], f.mul(c, v));
    }
    for (auto it = acc.begin(); it != acc.end();) it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc;
  };
  const int nc = static_cast<int>(t.classes.size());
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) {
      auto ij = t.products.find({i, j});
      if (ij == t.products.end()) continue;
      auto ji = t.products.find({j, i});
      if (ji != t.products.end()) {
        const Scalar s = f.sign(t.classes[i].degree * t.classes[j].degree);
        std::map<int, Scalar> l, rr;
        for (const auto& [m, v] : ij->second) l[m] = v;
        for (const auto& [m, v] : ji->second) rr[m] = f.mul(s, v);
        if (l != rr) t.graded_commutative = false;
      }
      for (int k = 0; k < nc; ++k) {
        auto jk = t.products.find({j, k});
        if (jk == t.products.end()) continue;
        auto left = times(ij->second, k);
        auto right = times_left(i, jk->second);
        if (left && right && *left != *right) t.associative = false;
      }
    }
  return t;
}

}  // namespace detail

/// Cup products among all exact classes with weights <= N whose product stays
/// within weight N. Requires a weight-graded cochain complex (zero differential
/// on A); verifies unitality, associativity and graded commutativity.
inline CupTable cup_product(const DGAlgebra& a, const HHResult& r) {
  if (!r.cx.is_weight_graded() && r.cx.size() > 0)
    throw PreconditionError("cup_product: per-weight classes need a weight-graded complex (d = 0 on A)");
  return detail::product_table(
      r.cx, r.table, [&](const SparseVec& f, const SparseVec& g) { return cup(a, r, f, g); },
      r.find(a.unit(), {}));
}

}  // namespace dgrefl
