#pragma once

#include "heckeforge/findim_res.hpp"

namespace heckeforge::findim {

// Primitive idempotent machinery over prime fields, powering projective
// covers and minimal resolutions.

namespace idem_detail {

using K = long;
using PF = PrimeField;

// minimal polynomial of a square matrix, low-to-high coefficients, monic
inline std::vector<K> min_poly(const PF& k, const DenseMat<K>& m) {
  const int n = static_cast<int>(m.size());
  // powers of m flattened, incremental dependency search
  std::vector<std::vector<K>> pows;
  DenseMat<K> cur = module::dense_identity(k, n);
  for (int d = 0; d <= n; ++d) {
    std::vector<K> flat;
    for (const auto& row : cur) flat.insert(flat.end(), row.begin(), row.end());
    pows.push_back(flat);
    // is the last power a combination of the previous ones?
    std::vector<std::vector<K>> cols(flat.size(), std::vector<K>(pows.size() - 1));
    for (size_t r = 0; r + 1 < pows.size(); ++r)
      for (size_t c = 0; c < flat.size(); ++c) cols[c][r] = pows[r][c];
    if (d > 0) {
      auto sol = linalg::dense_solve(k, cols, flat);
      if (sol.has_value()) {
        std::vector<K> poly(d + 1, 0);
        for (int i = 0; i < d; ++i) poly[i] = k.neg((*sol)[i]);
        poly[d] = 1;
        return poly;
      }
    }
    cur = module::dense_mul(k, cur, m);
  }
  fail(Errc::Internal, "minimal polynomial not found");
}

inline DenseMat<K> poly_eval(const PF& k, const std::vector<K>& poly, const DenseMat<K>& m) {
  const int n = static_cast<int>(m.size());
  auto out = module::dense_identity(k, n);
  for (auto& row : out)
    for (auto& x : row) x = 0;
  DenseMat<K> pw = module::dense_identity(k, n);
  for (size_t i = 0; i < poly.size(); ++i) {
    if (poly[i])
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out[r][c] = k.add(out[r][c], k.mul(poly[i], pw[r][c]));
    pw = module::dense_mul(k, pw, m);
  }
  return out;
}

}  // namespace idem_detail

// corner algebra f A f with unit f
inline Subquotient<PrimeField> corner_algebra(const FinAlgebra<PrimeField>& a,
                                              const std::vector<long>& f) {
  const auto& k = a.field;
  std::vector<std::vector<long>> gens;
  for (int i = 0; i < a.dim; ++i) {
    std::vector<long> e(a.dim, 0);
    e[i] = 1;
    gens.push_back(a.mul(f, a.mul(e, f)));
  }
  auto basis = detail::echelon_rows(k, gens, a.dim);
  Subquotient<PrimeField> out{FinAlgebra<PrimeField>{k}};
  out.basis = basis;
  const int cd = static_cast<int>(basis.size());
  out.alg.dim = cd;
  out.alg.table.assign(cd, std::vector<std::vector<long>>(cd, std::vector<long>(cd, 0)));
  for (int i = 0; i < cd; ++i)
    for (int j = 0; j < cd; ++j) {
      auto co = detail::coords_in(k, basis, a.mul(basis[i], basis[j]));
      require(co.has_value(), Errc::Internal, "corner not closed");
      for (int t = 0; t < cd; ++t) out.alg.table[i][j][t] = (*co)[t];
    }
  auto cu = detail::coords_in(k, basis, f);
  require(cu.has_value(), Errc::Internal, "corner unit");
  out.alg.unit = *cu;
  out.alg.provenance = a.provenance + " corner";
  out.alg.validate();
  return out;
}

// orthogonal primitive idempotent decomposition of 1 in a SEMISIMPLE algebra
inline std::vector<std::vector<long>> primitive_idempotents_semisimple(
    const FinAlgebra<PrimeField>& b, unsigned seed = 12345) {
  const auto& k = b.field;
  if (b.dim == 0) return {};
  // find a minimal left ideal by descending through endomorphism rings
  auto left_module_of = [&](const std::vector<std::vector<long>>& span) {
    std::vector<std::vector<long>> gens = span;
    for (const auto& v : span)
      for (int i = 0; i < b.dim; ++i) {
        std::vector<long> e(b.dim, 0);
        e[i] = 1;
        gens.push_back(b.mul(e, v));
      }
    return detail::echelon_rows(k, gens, b.dim);
  };
  std::vector<std::vector<long>> L = left_module_of({b.unit});  // = B
  std::mt19937 rng(seed);
  for (int guard = 0; guard < 200; ++guard) {
    const int ld = static_cast<int>(L.size());
    // endomorphisms of L as a left module
    linalg::SparseMat<PrimeField> sys(b.dim * ld * ld, ld * ld);
    // action matrices of the basis on L
    std::vector<DenseMat<long>> act;
    for (int g = 0; g < b.dim; ++g) {
      std::vector<long> eg(b.dim, 0);
      eg[g] = 1;
      DenseMat<long> m(ld, std::vector<long>(ld, 0));
      for (int c = 0; c < ld; ++c) {
        auto co = detail::coords_in(k, L, b.mul(eg, L[c]));
        require(co.has_value(), Errc::Internal, "left ideal not invariant");
        for (int r = 0; r < ld; ++r) m[r][c] = (*co)[r];
      }
      act.push_back(std::move(m));
    }
    int row = 0;
    for (int g = 0; g < b.dim; ++g)
      for (int i = 0; i < ld; ++i)
        for (int j = 0; j < ld; ++j) {
          for (int t = 0; t < ld; ++t) {
            if (act[g][t][j]) linalg::sparse_add_to(k, sys, row, i * ld + t, act[g][t][j]);
            if (act[g][i][t])
              linalg::sparse_add_to(k, sys, row, t * ld + j, k.neg(act[g][i][t]));
          }
          ++row;
        }
    auto ker = linalg::kernel_basis(k, sys);
    std::vector<DenseMat<long>> endos;
    for (const auto& v : ker) {
      DenseMat<long> x(ld, std::vector<long>(ld, 0));
      for (const auto& [c, val] : v) x[c / ld][c % ld] = val;
      endos.push_back(std::move(x));
    }
    // commutativity test
    bool comm = true;
    for (size_t i = 0; i < endos.size() && comm; ++i)
      for (size_t j = 0; j < i && comm; ++j)
        if (!module::dense_eq(k, module::dense_mul(k, endos[i], endos[j]),
                              module::dense_mul(k, endos[j], endos[i])))
          comm = false;
    std::optional<DenseMat<long>> splitter;
    if (comm) {
      // commutative: count Frobenius fixed points; one block means minimal
      // End is spanned by endos; p-power map on the span
      const int ed = static_cast<int>(endos.size());
      linalg::SparseMat<PrimeField> frob(ed, ed);
      // express x^p - x in the endo basis for each basis endo
      std::vector<std::vector<long>> eflat;
      for (const auto& x : endos) {
        std::vector<long> flat;
        for (const auto& r : x) flat.insert(flat.end(), r.begin(), r.end());
        eflat.push_back(flat);
      }
      auto ech = detail::echelon_rows(k, eflat, ld * ld);
      bool one_block = true;
      int fixed_dim = 0;
      {
        std::vector<std::vector<long>> rows;
        for (int i = 0; i < ed; ++i) {
          DenseMat<long> xp = endos[i];
          for (long t = 1; t < k.p; ++t) xp = module::dense_mul(k, xp, endos[i]);
          // hmm: need (sum c_i E_i)^p; p-power is additive only in char p over
          // commuting elements... E_i commute, and over F_p the map x -> x^p is
          // additive on a commutative algebra, so the basis images determine it
          std::vector<long> flat;
          for (const auto& r : xp) flat.insert(flat.end(), r.begin(), r.end());
          auto co = detail::coords_in(k, ech, flat);
          require(co.has_value(), Errc::Internal, "Frobenius leaves End");
          std::vector<long> row(ed, 0);
          // coordinates are over the echelonized basis; rewrite eflat in it too
          rows.push_back(*co);
        }
        // fixed points of frobenius in the echelon coordinates
        std::vector<std::vector<long>> basis_coords;
        for (const auto& f : eflat) {
          auto co = detail::coords_in(k, ech, f);
          basis_coords.push_back(*co);
        }
        // solve (Frob - id) c = 0 where an element sum c_i E_i has echelon
        // coordinates sum c_i basis_coords[i]
        const int m = static_cast<int>(ech.size());
        std::vector<std::vector<long>> sysrows(m, std::vector<long>(ed, 0));
        for (int i = 0; i < ed; ++i)
          for (int r = 0; r < m; ++r)
            sysrows[r][i] = k.sub(rows[i][r], basis_coords[i][r]);
        auto fker = detail::kernel_of_dense(k, sysrows, ed);
        fixed_dim = static_cast<int>(fker.size());
        one_block = fixed_dim <= 1;
        if (!one_block) {
          // a non-scalar Frobenius-fixed element has a split minimal
          // polynomial over F_p; some shift is a nonzero zero divisor
          for (const auto& combo : fker) {
            DenseMat<long> cand(ld, std::vector<long>(ld, 0));
            for (int i = 0; i < ed; ++i)
              if (combo[i])
                for (int r = 0; r < ld; ++r)
                  for (int c = 0; c < ld; ++c)
                    cand[r][c] = k.add(cand[r][c], k.mul(combo[i], endos[i][r][c]));
            bool scalar = true;
            for (int r = 0; r < ld && scalar; ++r)
              for (int c = 0; c < ld && scalar; ++c)
                if ((r != c && cand[r][c]) || (r == c && cand[r][c] != cand[0][0]))
                  scalar = false;
            if (scalar) continue;
            for (long shift = 0; shift < k.p; ++shift) {
              DenseMat<long> sh = cand;
              for (int r = 0; r < ld; ++r) sh[r][r] = k.sub(sh[r][r], shift);
              bool zero = true;
              for (const auto& r2 : sh)
                for (long x : r2)
                  if (x) zero = false;
              if (zero) continue;
              if (!module::dense_inverse(k, sh).has_value()) {
                splitter = sh;
                break;
              }
            }
            if (splitter) break;
          }
          require(splitter.has_value(), Errc::Internal, "no splitter in commutative End");
        }
      }
      if (one_block) {
        // minimal left ideal found: extract its idempotent
        // solve e in L with x e = x for all x in L
        std::vector<std::vector<long>> cols(b.dim * ld, std::vector<long>(ld, 0));
        std::vector<long> rhs(b.dim * ld, 0);
        for (int x = 0; x < ld; ++x) {
          // sum_c e_c (L[x] * L[c]) = L[x]
          for (int c = 0; c < ld; ++c) {
            auto prod = b.mul(L[x], L[c]);
            for (int t = 0; t < b.dim; ++t) cols[x * b.dim + t][c] = prod[t];
          }
          for (int t = 0; t < b.dim; ++t) rhs[x * b.dim + t] = L[x][t];
        }
        auto sol = linalg::dense_solve(k, cols, rhs);
        require(sol.has_value(), Errc::Internal, "minimal ideal has no idempotent");
        std::vector<long> e(b.dim, 0);
        for (int c = 0; c < ld; ++c)
          for (int t = 0; t < b.dim; ++t) e[t] = k.add(e[t], k.mul((*sol)[c], L[c][t]));
        require(e == b.mul(e, e), Errc::Internal, "idempotent equation failed");
        // recurse on the complementary corner
        std::vector<long> f = b.unit;
        for (int t = 0; t < b.dim; ++t) f[t] = k.sub(f[t], e[t]);
        bool fzero = std::all_of(f.begin(), f.end(), [](long x) { return x == 0; });
        std::vector<std::vector<long>> rest;
        if (!fzero) {
          auto cor = corner_algebra(b, f);
          auto sub = primitive_idempotents_semisimple(cor.alg, seed + 1);
          for (const auto& ce : sub) {
            std::vector<long> lifted(b.dim, 0);
            for (size_t i = 0; i < cor.basis.size(); ++i)
              if (ce[i])
                for (int t = 0; t < b.dim; ++t)
                  lifted[t] = k.add(lifted[t], k.mul(ce[i], cor.basis[i][t]));
            rest.push_back(lifted);
          }
        }
        std::vector<std::vector<long>> out{e};
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
      }
    } else {
      // noncommutative End: hunt a singular nonzero endomorphism
      auto singular = [&](const DenseMat<long>& x) {
        bool zero = true;
        for (const auto& r : x)
          for (long v : r)
            if (v) zero = false;
        if (zero) return false;
        return !module::dense_inverse(k, x).has_value();
      };
      for (const auto& x : endos)
        if (singular(x)) splitter = x;
      if (!splitter)
        for (size_t i = 0; i < endos.size() && !splitter; ++i)
          for (size_t j = 0; j < i && !splitter; ++j) {
            DenseMat<long> s = endos[i];
            for (int r = 0; r < ld; ++r)
              for (int c = 0; c < ld; ++c) s[r][c] = k.add(s[r][c], endos[j][r][c]);
            if (singular(s)) splitter = s;
          }
      std::uniform_int_distribution<long> coef(0, k.p - 1);
      for (int trial = 0; trial < 500 && !splitter; ++trial) {
        DenseMat<long> s(ld, std::vector<long>(ld, 0));
        for (const auto& x : endos) {
          long c = coef(rng);
          if (!c) continue;
          for (int r = 0; r < ld; ++r)
            for (int cc = 0; cc < ld; ++cc) s[r][cc] = k.add(s[r][cc], k.mul(c, x[r][cc]));
        }
        if (singular(s)) splitter = s;
      }
      require(splitter.has_value(), Errc::Internal, "no singular endomorphism found");
    }
    // descend into the kernel of the splitter (a proper nonzero submodule)
    std::vector<std::vector<long>> kerflat;
    {
      std::vector<std::vector<long>> rows(splitter->size(),
                                          std::vector<long>(splitter->size(), 0));
      for (size_t r = 0; r < splitter->size(); ++r)
        for (size_t c = 0; c < splitter->size(); ++c) rows[r][c] = (*splitter)[r][c];
      kerflat = detail::kernel_of_dense(k, rows, static_cast<int>(splitter->size()));
    }
    require(!kerflat.empty(), Errc::Internal, "splitter kernel vanished");
    std::vector<std::vector<long>> newspan;
    for (const auto& co : kerflat) {
      std::vector<long> v(b.dim, 0);
      for (size_t c = 0; c < L.size(); ++c)
        if (co[c])
          for (int t = 0; t < b.dim; ++t) v[t] = k.add(v[t], k.mul(co[c], L[c][t]));
      newspan.push_back(v);
    }
    L = left_module_of(newspan);
  }
  fail(Errc::Internal, "minimal left ideal search did not terminate");
}

// lift orthogonal primitive idempotents of A/rad to A
inline std::vector<std::vector<long>> primitive_idempotents(
    const FinAlgebra<PrimeField>& a, const std::vector<std::vector<long>>& rad,
    unsigned seed = 12345) {
  const auto& k = a.field;
  if (rad.size() == 0) return primitive_idempotents_semisimple(a, seed);
  auto q = quotient_algebra(a, rad);
  auto bars = primitive_idempotents_semisimple(q.alg, seed);
  std::vector<std::vector<long>> lifted;
  std::vector<long> g = a.unit;  // remaining corner unit
  for (size_t i = 0; i < bars.size(); ++i) {
    if (i + 1 == bars.size()) {
      lifted.push_back(g);
      break;
    }
    // preimage of bars[i] through the section, then corner and iterate
    std::vector<long> x(a.dim, 0);
    for (size_t j = 0; j < bars[i].size(); ++j)
      if (bars[i][j]) x[q.section_cols[j]] = k.add(x[q.section_cols[j]], bars[i][j]);
    x = a.mul(g, a.mul(x, g));
    for (int it = 0; it < 40; ++it) {
      auto x2 = a.mul(x, x);
      if (x2 == x) break;
      // x <- 3x^2 - 2x^3
      auto x3 = a.mul(x2, x);
      for (int t = 0; t < a.dim; ++t)
        x[t] = k.sub(k.mul(k.from_long(3), x2[t]), k.mul(k.from_long(2), x3[t]));
    }
    require(a.mul(x, x) == x, Errc::Internal, "idempotent lifting did not converge");
    lifted.push_back(x);
    for (int t = 0; t < a.dim; ++t) g[t] = k.sub(g[t], x[t]);
  }
  // sanity: orthogonal and summing to one
  std::vector<long> s(a.dim, 0);
  for (const auto& e : lifted) {
    require(a.mul(e, e) == e, Errc::Internal, "lifted element is not idempotent");
    for (int t = 0; t < a.dim; ++t) s[t] = k.add(s[t], e[t]);
  }
  require(s == a.unit, Errc::Internal, "idempotents do not sum to one");
  for (size_t i = 0; i < lifted.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      auto z = a.mul(lifted[i], lifted[j]);
      require(std::all_of(z.begin(), z.end(), [](long x) { return x == 0; }), Errc::Internal,
              "lifted idempotents are not orthogonal");
    }
  return lifted;
}

}  // namespace heckeforge::findim
