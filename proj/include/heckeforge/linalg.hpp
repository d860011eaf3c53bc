#pragma once

#include <omp.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "heckeforge/errors.hpp"

namespace heckeforge::linalg {

// Sparse row: (column, value) pairs sorted by column, values nonzero.
template <class F>
using SparseVec = std::vector<std::pair<int, typename F::Elem>>;

template <class F>
SparseVec<F> sparse_axpy(const F& k, const SparseVec<F>& x, const typename F::Elem& c,
                         const SparseVec<F>& y) {
  // x + c*y
  SparseVec<F> out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i >= x.size() || y[j].first < x[i].first) {
      auto v = k.mul(c, y[j].second);
      if (!k.is_zero(v)) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      auto v = k.add(x[i].second, k.mul(c, y[j].second));
      if (!k.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
const typename F::Elem* sparse_get(const SparseVec<F>& v, int col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const auto& a, int c) { return a.first < c; });
  if (it == v.end() || it->first != col) return nullptr;
  return &it->second;
}

// Sparse matrix as a list of rows.
template <class F>
struct SparseMat {
  int rows = 0, cols = 0;
  std::vector<SparseVec<F>> row;

  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(c), row(r) {}
  void set(const F& k, int r, int c, typename F::Elem v) {
    if (k.is_zero(v)) return;
    auto& rw = row[r];
    auto it = std::lower_bound(rw.begin(), rw.end(), c,
                               [](const auto& a, int cc) { return a.first < cc; });
    if (it != rw.end() && it->first == c)
      it->second = std::move(v);
    else
      rw.insert(it, {c, std::move(v)});
  }
  size_t nnz() const {
    size_t s = 0;
    for (const auto& r : row) s += r.size();
    return s;
  }
  SparseMat transpose(const F& k) const {
    SparseMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (const auto& [c, v] : row[i]) t.row[c].emplace_back(i, v);
    (void)k;
    return t;
  }
};


template <class F>
void sparse_add_to(const F& k, SparseMat<F>& m, int r, int c, const typename F::Elem& v) {
  if (k.is_zero(v)) return;
  auto& row = m.row[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& a, int cc) { return a.first < cc; });
  if (it != row.end() && it->first == c) {
    it->second = k.add(it->second, v);
    if (k.is_zero(it->second)) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

// Row echelon form with unit pivots; optionally fully reduced (entries above
// pivots cleared).  Pivot selection: among the remaining rows pick the one
// with the fewest entries (ties by lowest original index), pivot on its first
// column.  Row updates are data parallel; the pivot sequence is chosen before
// the parallel section, so the result does not depend on the thread count.
template <class F>
struct Echelon {
  const F* field = nullptr;
  int cols = 0;
  std::vector<SparseVec<F>> rows;  // sorted by pivot column
  std::vector<int> pivots;         // pivot column of rows[i]

  int rank() const { return static_cast<int>(rows.size()); }

  SparseVec<F> reduce(SparseVec<F> v) const {
    const F& k = *field;
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto* c = sparse_get<F>(v, pivots[i]);
      if (c) v = sparse_axpy<F>(k, v, k.neg(*c), rows[i]);
    }
    return v;
  }
  bool in_rowspan(const SparseVec<F>& v) const { return reduce(v).empty(); }
};

template <class F>
Echelon<F> echelon(const F& k, std::vector<SparseVec<F>> work, int cols, bool full_reduce,
                   bool parallel = true) {
  std::vector<SparseVec<F>> picked;
  std::vector<int> pivcols;
  std::vector<size_t> alive;
  for (size_t i = 0; i < work.size(); ++i)
    if (!work[i].empty()) alive.push_back(i);
  while (!alive.empty()) {
    // deterministic pivot: fewest entries, lowest index
    size_t best = 0;
    for (size_t a = 1; a < alive.size(); ++a) {
      const auto& r = work[alive[a]];
      const auto& b = work[alive[best]];
      if (r.size() < b.size() || (r.size() == b.size() && alive[a] < alive[best])) best = a;
    }
    size_t prow = alive[best];
    alive.erase(alive.begin() + best);
    SparseVec<F> piv = std::move(work[prow]);
    int pc = piv[0].first;
    // normalize
    auto inv = k.inv(piv[0].second);
    for (auto& [c, v] : piv) v = k.mul(v, inv);
    long n = static_cast<long>(alive.size());
#pragma omp parallel for schedule(static) if (parallel && n > 192)
    for (long a = 0; a < n; ++a) {
      auto& r = work[alive[a]];
      const auto* c = sparse_get<F>(r, pc);
      if (c) r = sparse_axpy<F>(k, r, k.neg(*c), piv);
    }
    for (size_t a = 0; a < alive.size();) {
      if (work[alive[a]].empty())
        alive.erase(alive.begin() + a);
      else
        ++a;
    }
    picked.push_back(std::move(piv));
    pivcols.push_back(pc);
  }
  // order rows by pivot column
  std::vector<size_t> order(picked.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivcols[a] < pivcols[b]; });
  Echelon<F> e;
  e.field = &k;
  e.cols = cols;
  for (size_t i : order) {
    e.rows.push_back(std::move(picked[i]));
    e.pivots.push_back(pivcols[i]);
  }
  if (full_reduce) {
    // back substitution from the last pivot: each row only consumes rows that
    // are already in final form
    long m = static_cast<long>(e.rows.size());
    for (long i = m - 1; i >= 0; --i)
      for (long j = i + 1; j < m; ++j) {
        const auto* c = sparse_get<F>(e.rows[i], e.pivots[j]);
        if (c) e.rows[i] = sparse_axpy<F>(k, e.rows[i], k.neg(*c), e.rows[j]);
      }
  }
  return e;
}

template <class F>
Echelon<F> echelon(const F& k, const SparseMat<F>& m, bool full_reduce, bool parallel = true) {
  return echelon<F>(k, m.row, m.cols, full_reduce, parallel);
}

template <class F>
int rank(const F& k, const SparseMat<F>& m, bool parallel = true) {
  return echelon(k, m, false, parallel).rank();
}

// Basis of the right kernel {x : M x = 0}.
template <class F>
std::vector<SparseVec<F>> kernel_basis(const F& k, const SparseMat<F>& m, bool parallel = true) {
  Echelon<F> e = echelon(k, m, true, parallel);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<SparseVec<F>> out;
  for (int fc = 0; fc < m.cols; ++fc) {
    if (is_pivot[fc]) continue;
    SparseVec<F> x;
    // pivot coordinates: row with pivot p has entry at fc -> x_p = -val
    for (size_t i = 0; i < e.rows.size(); ++i) {
      const auto* c = sparse_get<F>(e.rows[i], fc);
      if (c) x.emplace_back(e.pivots[i], k.neg(*c));
    }
    x.emplace_back(fc, k.one());
    std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(x));
  }
  return out;
}

// Dense exact solve A x = b; returns nullopt if inconsistent.  Small systems.
template <class F>
std::optional<std::vector<typename F::Elem>> dense_solve(const F& k,
                                                         std::vector<std::vector<typename F::Elem>> a,
                                                         std::vector<typename F::Elem> b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_of_col(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && k.is_zero(a[sel][c])) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    std::swap(b[sel], b[r]);
    auto inv = k.inv(a[r][c]);
    for (size_t j = c; j < cols; ++j) a[r][j] = k.mul(a[r][j], inv);
    b[r] = k.mul(b[r], inv);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || k.is_zero(a[i][c])) continue;
      auto f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] = k.sub(a[i][j], k.mul(f, a[r][j]));
      b[i] = k.sub(b[i], k.mul(f, b[r]));
    }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (!k.is_zero(b[i])) return std::nullopt;
  std::vector<typename F::Elem> x(cols, k.zero());
  for (size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] >= 0) x[c] = b[pivot_of_col[c]];
  return x;
}

// Textbook dense elimination kept as the serial reference implementation; the
// sparse OpenMP kernels are checked against it.
template <class F>
int reference_rank_dense(const F& k, const SparseMat<F>& m) {
  std::vector<std::vector<typename F::Elem>> a(m.rows,
                                               std::vector<typename F::Elem>(m.cols, k.zero()));
  for (int i = 0; i < m.rows; ++i)
    for (const auto& [c, v] : m.row[i]) a[i][c] = v;
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int sel = -1;
    for (int i = rank; i < m.rows; ++i)
      if (!k.is_zero(a[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[rank]);
    for (int i = rank + 1; i < m.rows; ++i) {
      if (k.is_zero(a[i][c])) continue;
      auto f = k.div(a[i][c], a[rank][c]);
      for (int j = c; j < m.cols; ++j) a[i][j] = k.sub(a[i][j], k.mul(f, a[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace heckeforge::linalg
