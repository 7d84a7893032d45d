#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dgrefl/errors.hpp"
#include "dgrefl/field.hpp"

namespace dgrefl {

/// Sparse vector: entries sorted by index, all values nonzero.
class SparseVec {
 public:
  using Entry = std::pair<int, Scalar>;

  SparseVec() = default;

  static SparseVec unit(int i, const Scalar& v = Scalar(1)) {
    SparseVec s;
    if (v != 0) s.entries_.emplace_back(i, v);
    return s;
  }

  /// Builds from unsorted (index, value) pairs, summing duplicates in `f`.
  static SparseVec from_pairs(const Field& f, std::vector<Entry> pairs) {
    std::sort(pairs.begin(), pairs.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVec s;
    for (auto& [i, v] : pairs) {
      if (!s.entries_.empty() && s.entries_.back().first == i) {
        s.entries_.back().second = f.add(s.entries_.back().second, v);
      } else {
        s.entries_.emplace_back(i, f.normalize(v));
      }
    }
    s.drop_zeros();
    return s;
  }

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  int lead() const { return entries_.front().first; }
  const Scalar& lead_value() const { return entries_.front().second; }

  Scalar at(int i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, int k) { return e.first < k; });
    return (it != entries_.end() && it->first == i) ? it->second : Scalar(0);
  }

  /// this += c * other
  void axpy(const Field& f, const Scalar& c, const SparseVec& other) {
    if (c == 0 || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == entries_.end() || b->first < a->first) {
        out.emplace_back(b->first, f.mul(c, b->second));
        ++b;
      } else {
        Scalar v = f.add(a->second, f.mul(c, b->second));
        if (v != 0) out.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(out);
  }

  void scale(const Field& f, const Scalar& c) {
    if (c == 0) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.second = f.mul(c, e.second);
  }

  void push_back(int i, Scalar v) { entries_.emplace_back(i, std::move(v)); }

  SparseVec remapped(const std::vector<int>& map) const {
    SparseVec s;
    for (const auto& [i, v] : entries_) {
      if (map[i] >= 0) s.entries_.emplace_back(map[i], v);
    }
    std::sort(s.entries_.begin(), s.entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return s;
  }

  bool operator==(const SparseVec& o) const { return entries_ == o.entries_; }

 private:
  void drop_zeros() {
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [](const Entry& e) { return e.second == 0; }),
                   entries_.end());
  }

  std::vector<Entry> entries_;
};

/// Column-major sparse matrix over a field.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(std::vector<SparseVec>(cols)) {}
  SparseMatrix(int rows, std::vector<SparseVec> cols) : rows_(rows), cols_(std::move(cols)) {
    for (const auto& c : cols_)
      for (const auto& [i, v] : c)
        if (i < 0 || i >= rows_) throw PreconditionError("row index out of range");
  }

  struct Triplet {
    int row, col;
    Scalar value;
  };

  /// Rejects duplicate (row, col) pairs and out-of-range indices; drops zeros.
  static SparseMatrix from_triplets(const Field& f, int rows, int cols, std::vector<Triplet> ts) {
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
      return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    SparseMatrix m(rows, cols);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto& t = ts[k];
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
        throw PreconditionError("matrix entry out of range");
      if (k > 0 && ts[k - 1].row == t.row && ts[k - 1].col == t.col)
        throw PreconditionError("duplicate matrix entry");
      Scalar v = f.normalize(t.value);
      if (v != 0) m.cols_[t.col].push_back(t.row, std::move(v));
    }
    return m;
  }

  static SparseMatrix identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.cols_[i] = SparseVec::unit(i);
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return static_cast<int>(cols_.size()); }
  const SparseVec& col(int j) const { return cols_[j]; }
  SparseVec& col(int j) { return cols_[j]; }
  const std::vector<SparseVec>& columns() const noexcept { return cols_; }

  SparseMatrix transpose() const {
    std::vector<std::vector<SparseVec::Entry>> rows(rows_);
    for (int j = 0; j < cols(); ++j)
      for (const auto& [i, v] : cols_[j]) rows[i].emplace_back(j, v);
    SparseMatrix t(cols(), rows_);
    for (int i = 0; i < rows_; ++i)
      for (auto& [j, v] : rows[i]) t.cols_[i].push_back(j, std::move(v));
    return t;
  }

  SparseVec apply(const Field& f, const SparseVec& x) const {
    SparseVec out;
    for (const auto& [j, v] : x) out.axpy(f, v, cols_[j]);
    return out;
  }

  /// this * other
  SparseMatrix multiply(const Field& f, const SparseMatrix& other) const {
    SparseMatrix out(rows_, other.cols());
    for (int j = 0; j < other.cols(); ++j) out.cols_[j] = apply(f, other.cols_[j]);
    return out;
  }

  bool is_zero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& c) { return c.empty(); });
  }

 private:
  int rows_ = 0;
  std::vector<SparseVec> cols_;
};

/// Incremental echelon basis of a column space. Each stored vector has a
/// distinct leading (smallest) index with coefficient 1. Optionally tracks
/// every stored vector as a combination of the inserted vectors.
class Echelon {
 public:
  explicit Echelon(Field f, bool track = false) : field_(std::move(f)), track_(track) {}

  const Field& field() const noexcept { return field_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<SparseVec>& basis() const noexcept { return basis_; }

  bool is_pivot(int row) const { return pivot_.count(row) != 0; }

  /// Inserts `v` tagged as input number `tag` (used only when tracking).
  /// Returns the combination of earlier inputs equal to `v` when `v` was
  /// already in the span (a kernel relation when tracking), else nullopt.
  std::optional<SparseVec> insert(SparseVec v, int tag = -1) {
    SparseVec combo;
    if (track_) combo = SparseVec::unit(tag);
    reduce_lead(v, combo);
    if (v.empty()) return combo;
    Scalar inv = field_.inv(v.lead_value());
    v.scale(field_, inv);
    if (track_) combo.scale(field_, inv);
    pivot_.emplace(v.lead(), basis_.size());
    basis_.push_back(std::move(v));
    if (track_) combos_.push_back(std::move(combo));
    return std::nullopt;
  }

  bool contains(SparseVec v) const {
    SparseVec dummy;
    reduce_lead_const(v, dummy, false);
    return v.empty();
  }

  /// Expresses `v` as a combination of inserted inputs, if possible.
  std::optional<SparseVec> solve(SparseVec v) const {
    SparseVec combo;
    reduce_lead_const(v, combo, track_);
    if (!v.empty()) return std::nullopt;
    combo.scale(field_, field_.neg(field_.one()));
    return combo;
  }

  /// Fully reduces `v` so that no pivot index appears in it.
  SparseVec reduce_full(SparseVec v) const {
    std::size_t k = 0;
    while (k < v.size()) {
      const int idx = v.entries()[k].first;
      auto it = pivot_.find(idx);
      if (it == pivot_.end()) {
        ++k;
        continue;
      }
      Scalar c = field_.neg(v.entries()[k].second);
      v.axpy(field_, c, basis_[it->second]);
      // entries before k are untouched since the pivot vector starts at idx
    }
    return v;
  }

 private:
  void reduce_lead(SparseVec& v, SparseVec& combo) { reduce_lead_const(v, combo, track_); }

  void reduce_lead_const(SparseVec& v, SparseVec& combo, bool track) const {
    while (!v.empty()) {
      auto it = pivot_.find(v.lead());
      if (it == pivot_.end()) break;
      Scalar c = field_.neg(v.lead_value());
      v.axpy(field_, c, basis_[it->second]);
      if (track) combo.axpy(field_, c, combos_[it->second]);
    }
  }

  Field field_;
  bool track_;
  std::unordered_map<int, std::size_t> pivot_;
  std::vector<SparseVec> basis_;
  std::vector<SparseVec> combos_;
};

inline std::size_t rank(const Field& f, const SparseMatrix& m) {
  Echelon e(f);
  for (const auto& c : m.columns()) e.insert(c);
  return e.rank();
}

/// Basis of the null space, one vector per non-pivot column.
inline std::vector<SparseVec> kernel_basis(const Field& f, const SparseMatrix& m) {
  Echelon e(f, true);
  std::vector<SparseVec> out;
  for (int j = 0; j < m.cols(); ++j) {
    if (auto rel = e.insert(m.col(j), j)) out.push_back(std::move(*rel));
  }
  return out;
}

/// A vector x with m x = b, or nullopt.
inline std::optional<SparseVec> solve(const Field& f, const SparseMatrix& m, const SparseVec& b) {
  Echelon e(f, true);
  for (int j = 0; j < m.cols(); ++j) e.insert(m.col(j), j);
  return e.solve(b);
}

/// dim ker(d_out) - rank(d_in) at the middle term of  . -d_in-> V -d_out-> .
/// An absent map is passed as a matrix with zero columns (d_in) or zero rows (d_out).
inline std::size_t homology_at(const Field& f, const SparseMatrix& d_in, const SparseMatrix& d_out) {
  const int mid = d_out.cols();
  if (d_in.cols() > 0 && d_in.rows() != mid)
    throw PreconditionError("homology_at: incompatible shapes");
  SparseMatrix comp = d_out.multiply(f, d_in);
  for (int j = 0; j < comp.cols(); ++j) {
    if (!comp.col(j).empty()) {
      const auto& [i, v] = comp.col(j).entries().front();
      throw NotAComplexError("not a complex: (d_out * d_in)[" + std::to_string(i) + "," +
                             std::to_string(j) + "] = " + v.get_str());
    }
  }
  return mid - rank(f, d_out) - rank(f, d_in);
}

}  // namespace dgrefl
