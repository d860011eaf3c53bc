#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "heckeforge/module.hpp"
#include "heckeforge/parahoric.hpp"

namespace heckeforge::findim {

using module::DenseMat;

// Associative unital algebra of small dimension given by structure constants.
template <class F>
struct FinAlgebra {
  using K = typename F::Elem;

  F field;
  int dim = 0;
  // table[i][j] = coordinates of e_i e_j
  std::vector<std::vector<std::vector<K>>> table;
  std::vector<K> unit;
  std::string provenance;

  std::vector<K> zero_vec() const { return std::vector<K>(dim, field.zero()); }

  std::vector<K> mul(const std::vector<K>& a, const std::vector<K>& b) const {
    std::vector<K> out = zero_vec();
    for (int i = 0; i < dim; ++i) {
      if (field.is_zero(a[i])) continue;
      for (int j = 0; j < dim; ++j) {
        if (field.is_zero(b[j])) continue;
        K c = field.mul(a[i], b[j]);
        for (int t = 0; t < dim; ++t)
          if (!field.is_zero(table[i][j][t]))
            out[t] = field.add(out[t], field.mul(c, table[i][j][t]));
      }
    }
    return out;
  }

  DenseMat<K> left_mult(const std::vector<K>& a) const {
    DenseMat<K> m(dim, std::vector<K>(dim, field.zero()));
    for (int j = 0; j < dim; ++j) {
      std::vector<K> ej = zero_vec();
      ej[j] = field.one();
      auto col = mul(a, ej);
      for (int i = 0; i < dim; ++i) m[i][j] = col[i];
    }
    return m;
  }

  K trace_left(const std::vector<K>& a) const {
    K t = field.zero();
    auto m = left_mult(a);
    for (int i = 0; i < dim; ++i) t = field.add(t, m[i][i]);
    return t;
  }

  void validate() const {
    require(dim <= 64, Errc::DimensionCap, "finite algebra dimension cap exceeded");
    // unit laws and associativity through the regular representation
    for (int i = 0; i < dim; ++i) {
      std::vector<K> ei = zero_vec();
      ei[i] = field.one();
      require(mul(unit, ei) == ei && mul(ei, unit) == ei, Errc::Internal, "unit law fails");
    }
    for (int i = 0; i < dim; ++i) {
      std::vector<K> ei = zero_vec();
      ei[i] = field.one();
      auto li = left_mult(ei);
      for (int j = 0; j < dim; ++j) {
        std::vector<K> ej = zero_vec();
        ej[j] = field.one();
        auto lj = left_mult(ej);
        auto lij = left_mult(mul(ei, ej));
        require(module::dense_eq(field, module::dense_mul(field, li, lj), lij), Errc::Internal,
                "structure constants are not associative");
      }
    }
  }
};

// build the algebra of a materialized parahoric subalgebra
template <class F>
FinAlgebra<F> from_parahoric(const parahoric::Parahoric<F>& p, std::string provenance) {
  const auto& alg = *p.alg;
  FinAlgebra<F> a{alg.field()};
  a.dim = p.dim();
  a.provenance = std::move(provenance);
  a.table.assign(a.dim, std::vector<std::vector<typename F::Elem>>(
                            a.dim, std::vector<typename F::Elem>(a.dim, alg.field().zero())));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      auto prod = alg.mul(alg.basis(p.basis[i]), alg.basis(p.basis[j]));
      for (const auto& [key, c] : prod.terms) {
        auto it = p.index.find(key);
        require(it != p.index.end(), Errc::Internal, "parahoric not closed under products");
        a.table[i][j][it->second] = c;
      }
    }
  a.unit = a.zero_vec();
  a.unit[p.index.at(alg.group().identity())] = alg.field().one();
  a.validate();
  return a;
}

template <class F>
FinAlgebra<F> group_algebra_zmod(const F& k, long n) {
  FinAlgebra<F> a{k};
  a.dim = static_cast<int>(n);
  a.table.assign(a.dim, std::vector<std::vector<typename F::Elem>>(
                            a.dim, std::vector<typename F::Elem>(a.dim, k.zero())));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) a.table[i][j][(i + j) % a.dim] = k.one();
  a.unit = a.zero_vec();
  a.unit[0] = k.one();
  a.provenance = "k[Z/" + std::to_string(n) + "]";
  a.validate();
  return a;
}

// ---------------------------------------------------------------------------
// characteristic polynomials (Hessenberg method, exact over any field)
// ---------------------------------------------------------------------------

// coefficients low-to-high of det(lambda I - M)
template <class F>
std::vector<typename F::Elem> charpoly(const F& k, DenseMat<typename F::Elem> m) {
  using K = typename F::Elem;
  const int n = static_cast<int>(m.size());
  // reduce to upper Hessenberg by similarity
  for (int c = 0; c + 2 < n; ++c) {
    int piv = -1;
    for (int r = c + 1; r < n; ++r)
      if (!k.is_zero(m[r][c])) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != c + 1) {
      std::swap(m[piv], m[c + 1]);
      for (int r = 0; r < n; ++r) std::swap(m[r][piv], m[r][c + 1]);
    }
    for (int r = c + 2; r < n; ++r) {
      if (k.is_zero(m[r][c])) continue;
      K f = k.div(m[r][c], m[c + 1][c]);
      for (int j = 0; j < n; ++j) m[r][j] = k.sub(m[r][j], k.mul(f, m[c + 1][j]));
      for (int j = 0; j < n; ++j) m[j][c + 1] = k.add(m[j][c + 1], k.mul(f, m[j][r]));
    }
  }
  // p_0 = 1, p_k per the Hessenberg recurrence
  std::vector<std::vector<K>> p(n + 1);
  p[0] = {k.one()};
  for (int kk = 1; kk <= n; ++kk) {
    // (lambda - m[kk-1][kk-1]) p_{k-1}
    std::vector<K> cur(kk + 1, k.zero());
    for (size_t t = 0; t < p[kk - 1].size(); ++t) {
      cur[t + 1] = k.add(cur[t + 1], p[kk - 1][t]);
      cur[t] = k.sub(cur[t], k.mul(m[kk - 1][kk - 1], p[kk - 1][t]));
    }
    K prod = k.one();
    for (int i = kk - 1; i >= 1; --i) {
      prod = k.mul(prod, m[i][i - 1]);
      K coef = k.mul(m[i - 1][kk - 1], prod);
      for (size_t t = 0; t < p[i - 1].size(); ++t)
        cur[t] = k.sub(cur[t], k.mul(coef, p[i - 1][t]));
    }
    p[kk] = std::move(cur);
  }
  return p[n];
}

// ---------------------------------------------------------------------------
// Jacobson radical
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
std::vector<std::vector<typename F::Elem>> kernel_of_dense(
    const F& k, const std::vector<std::vector<typename F::Elem>>& rows, int cols) {
  linalg::SparseMat<F> m(static_cast<int>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < cols; ++c)
      if (!k.is_zero(rows[r][c])) m.row[r].emplace_back(c, rows[r][c]);
  auto ker = linalg::kernel_basis(k, m);
  std::vector<std::vector<typename F::Elem>> out;
  for (const auto& v : ker) {
    std::vector<typename F::Elem> x(cols, k.zero());
    for (const auto& [c, val] : v) x[c] = val;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

// radical over Q: kernel of the trace form (Dickson)
inline std::vector<std::vector<mpq_class>> radical_rational(const FinAlgebra<RationalField>& a) {
  const auto& k = a.field;
  std::vector<std::vector<mpq_class>> gram(a.dim, std::vector<mpq_class>(a.dim, 0));
  for (int i = 0; i < a.dim; ++i) {
    std::vector<mpq_class> ei = a.zero_vec();
    ei[i] = 1;
    for (int j = 0; j < a.dim; ++j) {
      std::vector<mpq_class> ej = a.zero_vec();
      ej[j] = 1;
      gram[i][j] = a.trace_left(a.mul(ei, ej));
    }
  }
  return detail::kernel_of_dense(k, gram, a.dim);
}

// radical over F_p: iterated semilinear trace refinement on characteristic
// polynomial coefficients (the classical char-p correction of the trace form)
inline std::vector<std::vector<long>> radical_prime(const FinAlgebra<PrimeField>& a) {
  const auto& k = a.field;
  const long p = k.p;
  // current subspace basis, initially everything
  std::vector<std::vector<long>> basis;
  for (int i = 0; i < a.dim; ++i) {
    auto e = a.zero_vec();
    e[i] = 1;
    basis.push_back(e);
  }
  long q = 1;
  int level = 0;
  while (q <= a.dim) {
    // conditions: coefficient of lambda^{dim - q} in charpoly(L_{x y}) vanishes
    // for all y in the current space; linear in x over the prime field
    std::vector<std::vector<long>> rows;
    for (const auto& y : basis) {
      std::vector<long> row(basis.size(), 0);
      for (size_t b = 0; b < basis.size(); ++b) {
        auto cp = charpoly(k, a.left_mult(a.mul(basis[b], y)));
        row[b] = cp[a.dim - q];
      }
      rows.push_back(std::move(row));
    }
    auto ker = detail::kernel_of_dense(k, rows, static_cast<int>(basis.size()));
    std::vector<std::vector<long>> next;
    for (const auto& combo : ker) {
      auto x = a.zero_vec();
      for (size_t b = 0; b < basis.size(); ++b)
        if (combo[b])
          for (int t = 0; t < a.dim; ++t)
            x[t] = k.add(x[t], k.mul(combo[b], basis[b][t]));
      next.push_back(std::move(x));
    }
    basis = std::move(next);
    if (basis.empty()) break;
    q *= p;
    ++level;
    (void)level;
  }
  return basis;
}

template <class F>
std::vector<std::vector<typename F::Elem>> radical(const FinAlgebra<F>& a) {
  if constexpr (std::is_same_v<F, RationalField>)
    return radical_rational(a);
  else
    return radical_prime(a);
}

template <class F>
bool semisimple(const FinAlgebra<F>& a) {
  return radical(a).empty();
}

// brute force oracle over tiny prime fields: the radical is exactly the set of
// x whose two-sided ideal is nilpotent
inline std::vector<std::vector<long>> radical_bruteforce(const FinAlgebra<PrimeField>& a) {
  const auto& k = a.field;
  require(a.dim <= 12, Errc::DimensionCap, "brute force oracle capped at dimension 12");
  const long p = k.p;
  auto nilpotent_elt = [&](const std::vector<long>& x) {
    auto y = x;
    int e = 1;
    while (e < 2 * a.dim) {
      y = a.mul(y, y);
      e *= 2;
      bool zero = true;
      for (long c : y)
        if (c) zero = false;
      if (zero) return true;
    }
    return false;
  };
  auto subspace_closure = [&](std::vector<std::vector<long>> gens) {
    // span closure under left/right multiplication by basis elements
    linalg::SparseMat<PrimeField> m(0, a.dim);
    std::vector<std::vector<long>> space;
    auto add = [&](const std::vector<long>& v) {
      linalg::SparseVec<PrimeField> row;
      for (int c = 0; c < a.dim; ++c)
        if (v[c]) row.emplace_back(c, v[c]);
      if (row.empty()) return false;
      auto ech = linalg::echelon<PrimeField>(k, m.row, a.dim, false);
      if (ech.in_rowspan(row)) return false;
      m.row.push_back(row);
      ++m.rows;
      space.push_back(v);
      return true;
    };
    for (const auto& g : gens) add(g);
    for (size_t head = 0; head < space.size(); ++head)
      for (int i = 0; i < a.dim; ++i) {
        std::vector<long> ei = a.zero_vec();
        ei[i] = 1;
        add(a.mul(ei, space[head]));
        add(a.mul(space[head], ei));
      }
    return space;
  };
  auto subspace_nilpotent = [&](const std::vector<std::vector<long>>& space) {
    // powers of the subspace until zero or stabilization
    auto cur = space;
    for (int step = 0; step <= a.dim + 1; ++step) {
      if (cur.empty()) return true;
      std::vector<std::vector<long>> prods;
      for (const auto& x : cur)
        for (const auto& y : space) prods.push_back(a.mul(x, y));
      // span
      std::vector<linalg::SparseVec<PrimeField>> rows;
      for (const auto& v : prods) {
        linalg::SparseVec<PrimeField> row;
        for (int c = 0; c < a.dim; ++c)
          if (v[c]) row.emplace_back(c, v[c]);
        if (!row.empty()) rows.push_back(row);
      }
      auto ech = linalg::echelon<PrimeField>(k, rows, a.dim, false);
      std::vector<std::vector<long>> next;
      for (const auto& r : ech.rows) {
        std::vector<long> v(a.dim, 0);
        for (const auto& [c, val] : r) v[c] = val;
        next.push_back(v);
      }
      if (next.empty()) return true;
      if (next.size() >= cur.size() && step > a.dim) return false;
      cur = std::move(next);
    }
    return false;
  };
  // enumerate all elements; keep those generating a nilpotent two-sided ideal
  std::vector<std::vector<long>> rad_rows;
  linalg::SparseMat<PrimeField> span(0, a.dim);
  long total = 1;
  for (int i = 0; i < a.dim; ++i) total *= p;
  for (long code = 1; code < total; ++code) {
    std::vector<long> x(a.dim, 0);
    long c = code;
    for (int i = 0; i < a.dim; ++i) {
      x[i] = c % p;
      c /= p;
    }
    // cheap prechecks: nilpotency, not already in the known span
    if (!nilpotent_elt(x)) continue;
    {
      linalg::SparseVec<PrimeField> row;
      for (int i = 0; i < a.dim; ++i)
        if (x[i]) row.emplace_back(i, x[i]);
      auto ech = linalg::echelon<PrimeField>(k, span.row, a.dim, false);
      if (ech.in_rowspan(row)) continue;
    }
    auto ideal = subspace_closure({x});
    if (subspace_nilpotent(ideal)) {
      linalg::SparseVec<PrimeField> row;
      for (int i = 0; i < a.dim; ++i)
        if (x[i]) row.emplace_back(i, x[i]);
      span.row.push_back(row);
      ++span.rows;
      rad_rows.push_back(x);
    }
  }
  // reduce to an echelonized basis
  std::vector<linalg::SparseVec<PrimeField>> rows;
  for (const auto& v : rad_rows) {
    linalg::SparseVec<PrimeField> row;
    for (int c = 0; c < a.dim; ++c)
      if (v[c]) row.emplace_back(c, v[c]);
    rows.push_back(row);
  }
  auto ech = linalg::echelon<PrimeField>(k, rows, a.dim, false);
  std::vector<std::vector<long>> out;
  for (const auto& r : ech.rows) {
    std::vector<long> v(a.dim, 0);
    for (const auto& [c, val] : r) v[c] = val;
    out.push_back(v);
  }
  return out;
}

// same space test for two spanning sets
template <class F>
bool same_span(const F& k, const std::vector<std::vector<typename F::Elem>>& a,
               const std::vector<std::vector<typename F::Elem>>& b, int dim) {
  auto rowsof = [&](const std::vector<std::vector<typename F::Elem>>& v) {
    std::vector<linalg::SparseVec<F>> rows;
    for (const auto& x : v) {
      linalg::SparseVec<F> row;
      for (int c = 0; c < dim; ++c)
        if (!k.is_zero(x[c])) row.emplace_back(c, x[c]);
      if (!row.empty()) rows.push_back(row);
    }
    return rows;
  };
  auto ea = linalg::echelon<F>(k, rowsof(a), dim, false);
  auto eb = linalg::echelon<F>(k, rowsof(b), dim, false);
  if (ea.rank() != eb.rank()) return false;
  for (const auto& r : rowsof(a))
    if (!eb.in_rowspan(r)) return false;
  return true;
}

}  // namespace heckeforge::findim
