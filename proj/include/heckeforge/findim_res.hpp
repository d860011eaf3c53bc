#pragma once

#include "heckeforge/findim.hpp"

namespace heckeforge::findim {

// ---------------------------------------------------------------------------
// quotients, corners, idempotents (prime fields)
// ---------------------------------------------------------------------------

template <class F>
struct Subquotient {
  FinAlgebra<F> alg;
  // rows: basis of the subspace inside the parent, parent coordinates
  std::vector<std::vector<typename F::Elem>> basis;
  DenseMat<typename F::Elem> project;  // parent -> here (for quotients/corners)
  std::vector<int> section_cols;       // parent coordinates realizing the basis
};

namespace detail {

template <class F>
std::vector<std::vector<typename F::Elem>> echelon_rows(
    const F& k, const std::vector<std::vector<typename F::Elem>>& vecs, int dim) {
  std::vector<linalg::SparseVec<F>> rows;
  for (const auto& v : vecs) {
    linalg::SparseVec<F> row;
    for (int c = 0; c < dim; ++c)
      if (!k.is_zero(v[c])) row.emplace_back(c, v[c]);
    if (!row.empty()) rows.push_back(row);
  }
  auto e = linalg::echelon<F>(k, rows, dim, true);
  std::vector<std::vector<typename F::Elem>> out;
  for (const auto& r : e.rows) {
    std::vector<typename F::Elem> v(dim, k.zero());
    for (const auto& [c, val] : r) v[c] = val;
    out.push_back(std::move(v));
  }
  return out;
}

// coordinates of v in the span of echelonized rows; nullopt if outside
template <class F>
std::optional<std::vector<typename F::Elem>> coords_in(
    const F& k, const std::vector<std::vector<typename F::Elem>>& rows,
    const std::vector<typename F::Elem>& v) {
  std::vector<std::vector<typename F::Elem>> cols(v.size(),
                                                  std::vector<typename F::Elem>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < v.size(); ++c) cols[c][r] = rows[r][c];
  return linalg::dense_solve(k, cols, v);
}

}  // namespace detail

// the quotient A / (two-sided ideal), with the projection matrix
template <class F>
Subquotient<F> quotient_algebra(const FinAlgebra<F>& a,
                                const std::vector<std::vector<typename F::Elem>>& ideal) {
  const auto& k = a.field;
  auto ib = detail::echelon_rows(k, ideal, a.dim);
  // complete to a basis of A by standard vectors
  std::vector<std::vector<typename F::Elem>> full = ib;
  std::vector<int> section_cols;
  for (int i = 0; i < a.dim && static_cast<int>(full.size()) < a.dim; ++i) {
    std::vector<typename F::Elem> e(a.dim, k.zero());
    e[i] = k.one();
    auto trial = full;
    trial.push_back(e);
    if (static_cast<int>(detail::echelon_rows(k, trial, a.dim).size()) >
        static_cast<int>(full.size())) {
      full.push_back(e);
      section_cols.push_back(i);
    }
  }
  const int qdim = static_cast<int>(section_cols.size());
  Subquotient<F> out{FinAlgebra<F>{k}};
  out.basis = ib;
  // projection: coordinates of e_i modulo the ideal in the section basis
  out.project.assign(qdim, std::vector<typename F::Elem>(a.dim, k.zero()));
  for (int i = 0; i < a.dim; ++i) {
    std::vector<typename F::Elem> e(a.dim, k.zero());
    e[i] = k.one();
    auto co = detail::coords_in(k, full, e);
    require(co.has_value(), Errc::Internal, "quotient basis");
    for (int j = 0; j < qdim; ++j) out.project[j][i] = (*co)[ib.size() + j];
  }
  auto proj_vec = [&](const std::vector<typename F::Elem>& v) {
    std::vector<typename F::Elem> o(qdim, k.zero());
    for (int j = 0; j < qdim; ++j)
      for (int i = 0; i < a.dim; ++i)
        if (!k.is_zero(out.project[j][i])) o[j] = k.add(o[j], k.mul(out.project[j][i], v[i]));
    return o;
  };
  out.alg.dim = qdim;
  out.alg.table.assign(qdim, std::vector<std::vector<typename F::Elem>>(
                                 qdim, std::vector<typename F::Elem>(qdim, k.zero())));
  for (int i = 0; i < qdim; ++i)
    for (int j = 0; j < qdim; ++j) {
      std::vector<typename F::Elem> ei(a.dim, k.zero()), ej(a.dim, k.zero());
      ei[section_cols[i]] = k.one();
      ej[section_cols[j]] = k.one();
      auto pr = proj_vec(a.mul(ei, ej));
      for (int t = 0; t < qdim; ++t) out.alg.table[i][j][t] = pr[t];
    }
  out.alg.unit = proj_vec(a.unit);
  out.alg.provenance = a.provenance + "/rad";
  // section: store which parent coordinates realize the quotient basis
  out.alg.validate();
  // remember the section in `basis` tail? keep separate:
  out.section_cols = section_cols;
  return out;
}

// ---------------------------------------------------------------------------

template <class F>
struct FinModule {
  int dim = 0;
  std::vector<DenseMat<typename F::Elem>> rho;  // one matrix per algebra basis element

  std::vector<typename F::Elem> apply(const F& k, const std::vector<typename F::Elem>& a,
                                      const std::vector<typename F::Elem>& v) const {
    std::vector<typename F::Elem> out(dim, k.zero());
    for (size_t i = 0; i < rho.size(); ++i) {
      if (k.is_zero(a[i])) continue;
      auto piece = module::dense_apply(k, rho[i], v);
      for (int t = 0; t < dim; ++t) out[t] = k.add(out[t], k.mul(a[i], piece[t]));
    }
    return out;
  }
};

template <class F>
FinModule<F> regular_module(const FinAlgebra<F>& a) {
  FinModule<F> m;
  m.dim = a.dim;
  for (int i = 0; i < a.dim; ++i) {
    std::vector<typename F::Elem> e(a.dim, a.field.zero());
    e[i] = a.field.one();
    m.rho.push_back(a.left_mult(e));
  }
  return m;
}

// restrict the module structure to an invariant subspace (rows span it)
template <class F>
std::pair<FinModule<F>, std::vector<std::vector<typename F::Elem>>> submodule(
    const FinAlgebra<F>& a, const FinModule<F>& m,
    const std::vector<std::vector<typename F::Elem>>& span_rows) {
  const auto& k = a.field;
  auto basis = detail::echelon_rows(k, span_rows, m.dim);
  FinModule<F> sub;
  sub.dim = static_cast<int>(basis.size());
  for (int g = 0; g < a.dim; ++g) {
    DenseMat<typename F::Elem> mat(sub.dim, std::vector<typename F::Elem>(sub.dim, k.zero()));
    for (int c = 0; c < sub.dim; ++c) {
      auto img = module::dense_apply(k, m.rho[g], basis[c]);
      auto co = detail::coords_in(k, basis, img);
      require(co.has_value(), Errc::Internal, "subspace is not invariant");
      for (int r = 0; r < sub.dim; ++r) mat[r][c] = (*co)[r];
    }
    sub.rho.push_back(std::move(mat));
  }
  return {sub, basis};
}

template <class F>
std::vector<std::vector<typename F::Elem>> radical_submodule(
    const FinAlgebra<F>& a, const FinModule<F>& m,
    const std::vector<std::vector<typename F::Elem>>& rad) {
  const auto& k = a.field;
  std::vector<std::vector<typename F::Elem>> gens;
  for (const auto& r : rad)
    for (int j = 0; j < m.dim; ++j) {
      std::vector<typename F::Elem> e(m.dim, k.zero());
      e[j] = k.one();
      gens.push_back(m.apply(k, r, e));
    }
  return detail::echelon_rows(k, gens, m.dim);
}

// quotient module by an invariant subspace; returns the projection matrix
template <class F>
std::pair<FinModule<F>, DenseMat<typename F::Elem>> quotient_module(
    const FinAlgebra<F>& a, const FinModule<F>& m,
    const std::vector<std::vector<typename F::Elem>>& sub) {
  const auto& k = a.field;
  auto sb = detail::echelon_rows(k, sub, m.dim);
  std::vector<std::vector<typename F::Elem>> full = sb;
  std::vector<int> section;
  for (int i = 0; i < m.dim && static_cast<int>(full.size()) < m.dim; ++i) {
    std::vector<typename F::Elem> e(m.dim, k.zero());
    e[i] = k.one();
    auto trial = full;
    trial.push_back(e);
    if (detail::echelon_rows(k, trial, m.dim).size() > full.size()) {
      full.push_back(e);
      section.push_back(i);
    }
  }
  const int qdim = static_cast<int>(section.size());
  DenseMat<typename F::Elem> proj(qdim, std::vector<typename F::Elem>(m.dim, k.zero()));
  for (int i = 0; i < m.dim; ++i) {
    std::vector<typename F::Elem> e(m.dim, k.zero());
    e[i] = k.one();
    auto co = detail::coords_in(k, full, e);
    require(co.has_value(), Errc::Internal, "quotient module basis");
    for (int j = 0; j < qdim; ++j) proj[j][i] = (*co)[sb.size() + j];
  }
  FinModule<F> q;
  q.dim = qdim;
  for (int g = 0; g < a.dim; ++g) {
    DenseMat<typename F::Elem> mat(qdim, std::vector<typename F::Elem>(qdim, k.zero()));
    for (int c = 0; c < qdim; ++c) {
      std::vector<typename F::Elem> e(m.dim, k.zero());
      e[section[c]] = k.one();
      auto img = module::dense_apply(k, m.rho[g], e);
      auto pr = module::dense_apply(k, proj, img);
      for (int r = 0; r < qdim; ++r) mat[r][c] = pr[r];
    }
    q.rho.push_back(std::move(mat));
  }
  return {q, proj};
}

template <class F>
bool modules_isomorphic(const FinAlgebra<F>& a, const FinModule<F>& m1, const FinModule<F>& m2,
                        unsigned seed) {
  const auto& k = a.field;
  if (m1.dim != m2.dim) return false;
  if (m1.dim == 0) return true;
  // intertwiner space {X : X rho1(g) = rho2(g) X}
  const int n = m1.dim;
  linalg::SparseMat<F> sys(a.dim * n * n, n * n);
  int row = 0;
  for (int g = 0; g < a.dim; ++g) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // sum_t X[i][t] rho1[t][j] - rho2[i][t] X[t][j] = 0
        for (int t = 0; t < n; ++t) {
          if (!k.is_zero(m1.rho[g][t][j]))
            linalg::sparse_add_to(k, sys, row, i * n + t, m1.rho[g][t][j]);
          if (!k.is_zero(m2.rho[g][i][t]))
            linalg::sparse_add_to(k, sys, row, t * n + j, k.neg(m2.rho[g][i][t]));
        }
        ++row;
      }
  }
  auto ker = linalg::kernel_basis(k, sys);
  if (ker.empty()) return false;
  auto as_matrix = [&](const std::vector<typename F::Elem>& flat) {
    DenseMat<typename F::Elem> x(n, std::vector<typename F::Elem>(n, k.zero()));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x[i][j] = flat[i * n + j];
    return x;
  };
  auto invertible = [&](const DenseMat<typename F::Elem>& x) {
    return module::dense_inverse(k, x).has_value();
  };
  std::vector<std::vector<typename F::Elem>> basis;
  for (const auto& v : ker) {
    std::vector<typename F::Elem> flat(n * n, k.zero());
    for (const auto& [c, val] : v) flat[c] = val;
    basis.push_back(std::move(flat));
    if (invertible(as_matrix(basis.back()))) return true;
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coef(0, 16);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<typename F::Elem> flat(n * n, k.zero());
    for (const auto& b : basis) {
      auto c = k.from_long(coef(rng));
      for (int i = 0; i < n * n; ++i) flat[i] = k.add(flat[i], k.mul(c, b[i]));
    }
    if (invertible(as_matrix(flat))) return true;
  }
  return false;
}

}  // namespace heckeforge::findim
