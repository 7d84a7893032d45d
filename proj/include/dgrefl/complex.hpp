#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dgrefl/sparse.hpp"

namespace dgrefl {

/// Finite-dimensional graded vector space with a named basis per degree.
struct GradedVectorSpace {
  std::map<int, std::vector<std::string>> basis;

  int dim(int degree) const {
    auto it = basis.find(degree);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
  }
  int total_dim() const {
    int n = 0;
    for (const auto& [d, b] : basis) n += static_cast<int>(b.size());
    return n;
  }
  std::map<int, int> dims() const {
    std::map<int, int> out;
    for (const auto& [d, b] : basis)
      if (!b.empty()) out[d] = static_cast<int>(b.size());
    return out;
  }
};

/// Truncation parameters: weight cutoff and the degree window of interest.
struct TruncationPolicy {
  int max_weight = 6;
  int lo = -4;
  int hi = 4;

  TruncationPolicy() = default;
  TruncationPolicy(int n, int l, int h) : max_weight(n), lo(l), hi(h) {
    if (n < 0) throw PreconditionError("max_weight must be nonnegative");
    if (l > h) throw PreconditionError("degree window must satisfy lo <= hi");
  }
};

/// Where truncated numbers are guaranteed to equal untruncated ones.
///   - `exact_degrees`: degrees in the window that no discarded weight can reach
///     (so sums over all weights are exact there);
///   - `exact_max_weight`: for weight-graded complexes, every per-weight entry of
///     weight <= this value is exact regardless of degree (-1 if none).
struct SafeWindow {
  std::set<int> exact_degrees;
  int exact_max_weight = -1;
  std::optional<int> max_internal_degree;  // truncated presentations only

  bool empty() const { return exact_degrees.empty() && exact_max_weight < 0; }

  bool is_exact(int degree, int weight, std::optional<int> internal = std::nullopt) const {
    if (max_internal_degree && internal && *internal > *max_internal_degree) return false;
    return exact_degrees.count(degree) != 0 || weight <= exact_max_weight;
  }
};

/// Degree interval hull of a family of cells indexed by weight n >= n0 whose
/// degrees lie in [base_lo + n*step_lo, base_hi + n*step_hi]. Infinite ends are
/// reported as INT_MIN / INT_MAX.
inline std::pair<long, long> weight_tail_hull(long base_lo, long base_hi, long step_lo,
                                              long step_hi, long n0) {
  long lo = step_lo < 0 ? LONG_MIN : base_lo + n0 * step_lo;
  long hi = step_hi > 0 ? LONG_MAX : base_hi + n0 * step_hi;
  return {lo, hi};
}

/// Degrees in [lo, hi] whose neighbourhood [m-1, m+1] avoids the hull.
inline std::set<int> degrees_outside(int lo, int hi, std::pair<long, long> hull) {
  std::set<int> out;
  for (int m = lo; m <= hi; ++m) {
    const bool touches = (m + 1L >= hull.first) && (m - 1L <= hull.second);
    if (!touches) out.insert(m);
  }
  return out;
}

/// A finite cochain complex (differential raises degree by one) whose cells
/// also carry a weight. Chain complexes are stored with cohomological degrees.
class GradedComplex {
 public:
  explicit GradedComplex(Field f) : field_(std::move(f)) {}

  const Field& field() const noexcept { return field_; }
  int size() const noexcept { return static_cast<int>(degree_.size()); }
  int degree(int i) const { return degree_[i]; }
  int weight(int i) const { return weight_[i]; }
  int internal(int i) const { return internal_[i]; }
  const SparseVec& d(int i) const { return diff_[i]; }
  const std::string& label(int i) const { return label_[i]; }

  int add_cell(int degree, int weight, std::string label = {}, int internal = 0) {
    degree_.push_back(degree);
    weight_.push_back(weight);
    internal_.push_back(internal);
    label_.push_back(std::move(label));
    diff_.emplace_back();
    return size() - 1;
  }

  void set_d(int i, SparseVec v) { diff_[i] = std::move(v); }

  std::vector<int> cells_in_degree(int m) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (degree_[i] == m) out.push_back(i);
    return out;
  }

  std::set<int> degrees() const { return {degree_.begin(), degree_.end()}; }

  int max_weight() const {
    return weight_.empty() ? -1 : *std::max_element(weight_.begin(), weight_.end());
  }

  /// Every differential entry changes weight by a nonzero amount of one sign.
  /// Returns +1 (weight increases), -1 (decreases), 0 (mixed / preserving),
  /// or 2 when the differential vanishes.
  int weight_direction() const {
    bool up = false, down = false, flat = false;
    for (int j = 0; j < size(); ++j)
      for (const auto& [i, v] : diff_[j]) {
        const int dw = weight_[i] - weight_[j];
        if (dw > 0) up = true;
        else if (dw < 0) down = true;
        else flat = true;
      }
    if (flat || (up && down)) return 0;
    if (up) return 1;
    if (down) return -1;
    return 2;
  }

  /// Weight-graded: the differential moves weight by exactly one step.
  bool is_weight_graded() const { return weight_direction() != 0; }

  /// Checks d(d(e)) = 0 for every cell whose degree lies in [lo, hi]. Images
  /// landing outside the built range are not checked.
  void verify_square_zero(int lo = INT_MIN, int hi = INT_MAX) const {
    for (int j = 0; j < size(); ++j) {
      if (degree_[j] < lo || degree_[j] > hi) continue;
      SparseVec dd;
      for (const auto& [i, v] : diff_[j]) dd.axpy(field_, v, diff_[i]);
      if (!dd.empty()) {
        const auto& [i, v] = dd.entries().front();
        throw NotAComplexError("d^2 != 0: cell " + describe(j) + " hits " + describe(i) +
                               " with coefficient " + v.get_str());
      }
    }
  }

  std::string describe(int i) const {
    return (label_[i].empty() ? "#" + std::to_string(i) : label_[i]) + " (deg " +
           std::to_string(degree_[i]) + ", wt " + std::to_string(weight_[i]) + ")";
  }

  /// Matrix of d restricted to `src` columns and `dst` rows.
  SparseMatrix block(const std::vector<int>& src, const std::vector<int>& dst) const {
    std::vector<int> map(size(), -1);
    for (std::size_t k = 0; k < dst.size(); ++k) map[dst[k]] = static_cast<int>(k);
    std::vector<SparseVec> cols;
    cols.reserve(src.size());
    for (int j : src) cols.push_back(diff_[j].remapped(map));
    return SparseMatrix(static_cast<int>(dst.size()), std::move(cols));
  }

  /// dim H^m of the whole (finite) complex.
  int homology_dim(int m) const {
    auto c = cells_in_degree(m);
    auto prev = cells_in_degree(m - 1);
    auto next = cells_in_degree(m + 1);
    const int r_out = static_cast<int>(rank(field_, block(c, next)));
    const int r_in = static_cast<int>(rank(field_, block(prev, c)));
    return static_cast<int>(c.size()) - r_out - r_in;
  }

  std::map<int, int> homology_dims() const {
    std::map<int, int> out;
    for (int m : degrees()) out[m] = homology_dim(m);
    return out;
  }

  /// Alternating sum of cell counts minus alternating sum of homology dims.
  long euler_defect() const {
    long chi_cells = 0, chi_h = 0;
    for (int m : degrees()) {
      const long s = (m % 2 == 0) ? 1 : -1;
      chi_cells += s * static_cast<long>(cells_in_degree(m).size());
      chi_h += s * homology_dim(m);
    }
    return chi_cells - chi_h;
  }

  /// Per-weight homology in degree m. For weight-graded complexes this is the
  /// homology of the (degree, weight) block; otherwise the associated graded of
  /// the weight filtration preserved by d.
  std::map<int, int> homology_by_weight(int m) const {
    const int dir = weight_direction();
    std::map<int, int> out;
    auto c = cells_in_degree(m);
    if (c.empty()) return out;
    if (dir != 0) {
      std::map<int, std::vector<int>> by_w;
      for (int i : c) by_w[weight_[i]].push_back(i);
      for (const auto& [w, cells] : by_w) {
        std::vector<int> next, prev;
        for (int i : cells_in_degree(m + 1))
          if (dir == 2 || weight_[i] == w + dir) next.push_back(i);
        for (int i : cells_in_degree(m - 1))
          if (dir == 2 || weight_[i] == w - dir) prev.push_back(i);
        const int h = static_cast<int>(cells.size()) -
                      static_cast<int>(rank(field_, block(cells, next))) -
                      static_cast<int>(rank(field_, block(prev, cells)));
        out[w] = h;
      }
      return out;
    }
    // Filtered case: F_up^w = {weight >= w} if d never lowers weight,
    // otherwise F_down^w = {weight <= w}.
    bool lowers = false;
    for (int j = 0; j < size() && !lowers; ++j)
      for (const auto& [i, v] : diff_[j])
        if (weight_[i] < weight_[j]) lowers = true;
    bool raises = false;
    for (int j = 0; j < size() && !raises; ++j)
      for (const auto& [i, v] : diff_[j])
        if (weight_[i] > weight_[j]) raises = true;
    if (lowers && raises) throw InvariantViolation("differential preserves no weight filtration");
    const bool increasing = !lowers;  // subcomplexes are {weight >= w}
    auto next = cells_in_degree(m + 1);
    auto prev = cells_in_degree(m - 1);
    SparseMatrix d_in = block(prev, c);
    Echelon boundaries(field_);
    for (const auto& col : d_in.columns()) boundaries.insert(col);
    const int b = static_cast<int>(boundaries.rank());
    std::set<int> ws;
    for (int i : c) ws.insert(weight_[i]);
    std::map<int, int> image_dim;  // dim of image of H(F^w) in H
    for (int w : ws) {
      std::vector<int> sub;
      std::vector<int> pos;
      for (std::size_t k = 0; k < c.size(); ++k) {
        const int wi = weight_[c[k]];
        if (increasing ? wi >= w : wi <= w) {
          sub.push_back(c[k]);
          pos.push_back(static_cast<int>(k));
        }
      }
      auto z = kernel_basis(field_, block(sub, next));
      Echelon span = boundaries;
      for (const auto& v : z) {
        SparseVec lifted;
        for (const auto& [i, x] : v) lifted.push_back(pos[i], x);
        span.insert(lifted);
      }
      image_dim[w] = static_cast<int>(span.rank()) - b;
    }
    std::vector<int> wl(ws.begin(), ws.end());
    for (std::size_t k = 0; k < wl.size(); ++k) {
      int deeper = 0;
      if (increasing && k + 1 < wl.size()) deeper = image_dim[wl[k + 1]];
      if (!increasing && k > 0) deeper = image_dim[wl[k - 1]];
      out[wl[k]] = image_dim[wl[k]] - deeper;
    }
    return out;
  }

 private:
  Field field_;
  std::vector<int> degree_;
  std::vector<int> weight_;
  std::vector<int> internal_;
  std::vector<std::string> label_;
  std::vector<SparseVec> diff_;
};

/// Cohomology classes of one block of a complex with chosen cocycle
/// representatives (global cell coordinates) and a solver that expresses a
/// cocycle in terms of them modulo coboundaries.
class ClassBasis {
 public:
  ClassBasis(const GradedComplex& cx, const std::vector<int>& cells, const std::vector<int>& prev,
             const std::vector<int>& next)
      : field_(cx.field()), cells_(cells), echelon_(cx.field(), true) {
    std::vector<int> local(cx.size(), -1);
    for (std::size_t k = 0; k < cells.size(); ++k) local[cells[k]] = static_cast<int>(k);
    SparseMatrix d_in = cx.block(prev, cells);
    int tag = 0;
    for (const auto& col : d_in.columns()) echelon_.insert(col, tag++);
    boundary_tags_ = tag;
    auto z = kernel_basis(field_, cx.block(cells, next));
    for (const auto& v : z) {
      if (!echelon_.insert(v, tag)) {
        SparseVec global;
        for (const auto& [i, x] : v) global.push_back(cells[i], x);
        reps_.push_back(std::move(global));
        rep_tags_.push_back(tag);
      }
      ++tag;
    }
    local_ = std::move(local);
  }

  std::size_t size() const noexcept { return reps_.size(); }
  const std::vector<SparseVec>& representatives() const noexcept { return reps_; }

  /// Coordinates of a cocycle (global coordinates) in the class basis.
  std::optional<std::vector<Scalar>> coordinates(const SparseVec& cocycle) const {
    SparseVec loc;
    for (const auto& [i, x] : cocycle) {
      if (local_[i] < 0) return std::nullopt;
      loc.push_back(local_[i], x);
    }
    auto sol = echelon_.solve(loc);
    if (!sol) return std::nullopt;
    std::vector<Scalar> out(reps_.size(), Scalar(0));
    for (const auto& [t, x] : *sol) {
      auto it = std::find(rep_tags_.begin(), rep_tags_.end(), t);
      if (it != rep_tags_.end()) out[it - rep_tags_.begin()] = x;
      else if (t >= boundary_tags_) {
        // a discarded kernel vector: it was dependent at insertion, so
        // solve() never references it.
        return std::nullopt;
      }
    }
    return out;
  }

 private:
  Field field_;
  std::vector<int> cells_;
  std::vector<int> local_;
  Echelon echelon_;
  int boundary_tags_ = 0;
  std::vector<SparseVec> reps_;
  std::vector<int> rep_tags_;
};

}  // namespace dgrefl
