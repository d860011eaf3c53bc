#include "heckeforge/smith.hpp"

#include <algorithm>
#include <cstdlib>

namespace heckeforge {

namespace {

void swap_rows(IntMat& m, size_t i, size_t j) { std::swap(m[i], m[j]); }

void swap_cols(IntMat& m, size_t i, size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

void add_row(IntMat& m, size_t dst, size_t src, long c) {
  for (size_t k = 0; k < m[dst].size(); ++k) m[dst][k] += c * m[src][k];
}

void add_col(IntMat& m, size_t dst, size_t src, long c) {
  for (auto& row : m) row[dst] += c * row[src];
}

}  // namespace

IntVec Smith::invariants() const {
  IntVec out;
  size_t n = std::min(d.size(), d.empty() ? 0 : d[0].size());
  for (size_t i = 0; i < n; ++i)
    if (d[i][i] != 0) out.push_back(std::labs(d[i][i]));
  return out;
}

Smith smith_normal_form(IntMat a) {
  size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  Smith s;
  s.u = mat_identity(rows);
  s.v = mat_identity(cols);
  size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot in the remaining block
    size_t pi = t, pj = t;
    bool found = false;
    long best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!found || std::labs(a[i][j]) < best)) {
          found = true;
          best = std::labs(a[i][j]);
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(a, t, pi);
    swap_rows(s.u, t, pi);
    swap_cols(a, t, pj);
    swap_cols(s.v, t, pj);
    // reduce row/column t until everything below/right of the pivot vanishes
    bool again = true;
    while (again) {
      again = false;
      for (size_t i = t + 1; i < rows; ++i)
        if (a[i][t] != 0) {
          long q = a[i][t] / a[t][t];
          add_row(a, i, t, -q);
          add_row(s.u, i, t, -q);
          if (a[i][t] != 0) {  // remainder: swap to shrink pivot
            swap_rows(a, t, i);
            swap_rows(s.u, t, i);
            again = true;
          }
        }
      for (size_t j = t + 1; j < cols; ++j)
        if (a[t][j] != 0) {
          long q = a[t][j] / a[t][t];
          add_col(a, j, t, -q);
          add_col(s.v, j, t, -q);
          if (a[t][j] != 0) {
            swap_cols(a, t, j);
            swap_cols(s.v, t, j);
            again = true;
          }
        }
    }
    ++t;
  }
  // enforce divisibility d_i | d_{i+1}
  for (size_t i = 0; t > 0 && i + 1 < t; ++i) {
    for (size_t j = i + 1; j < t; ++j) {
      if (a[i][i] != 0 && a[j][j] % a[i][i] == 0) continue;
      // fold a[j][j] into column i, redo the 2x2 corner
      add_col(a, i, j, 1);
      add_col(s.v, i, j, 1);
      // re-eliminate
      bool again = true;
      while (again) {
        again = false;
        if (a[j][i] != 0) {
          long q = a[j][i] / a[i][i];
          add_row(a, j, i, -q);
          add_row(s.u, j, i, -q);
          if (a[j][i] != 0) {
            swap_rows(a, i, j);
            swap_rows(s.u, i, j);
            again = true;
          }
        }
        if (a[i][j] != 0) {
          long q = a[i][j] / a[i][i];
          add_col(a, j, i, -q);
          add_col(s.v, j, i, -q);
          if (a[i][j] != 0) {
            swap_cols(a, i, j);
            swap_cols(s.v, i, j);
            again = true;
          }
        }
      }
    }
  }
  for (size_t i = 0; i < std::min(rows, cols); ++i)
    if (a[i][i] < 0) {
      for (size_t j = 0; j < cols; ++j) a[i][j] = -a[i][j];
      for (size_t j = 0; j < rows; ++j) s.u[i][j] = -s.u[i][j];
    }
  s.d = a;
  return s;
}

IntVec lattice_quotient(const IntMat& columns, size_t ambient_rank) {
  IntMat a(ambient_rank, IntVec(columns.size(), 0));
  for (size_t j = 0; j < columns.size(); ++j)
    for (size_t i = 0; i < ambient_rank; ++i) a[i][j] = columns[j][i];
  Smith s = smith_normal_form(a);
  IntVec out;
  size_t ndiag = std::min(a.size(), columns.size());
  size_t nonzero = 0;
  for (size_t i = 0; i < ndiag; ++i)
    if (s.d[i][i] != 0) {
      ++nonzero;
      if (std::labs(s.d[i][i]) > 1) out.push_back(std::labs(s.d[i][i]));
    }
  for (size_t i = nonzero; i < ambient_rank; ++i) out.push_back(0);
  return out;
}

}  // namespace heckeforge
