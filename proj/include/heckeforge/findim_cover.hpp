#pragma once

#include "heckeforge/findim_idem.hpp"

namespace heckeforge::findim {

// Projective covers and minimal projective resolutions over prime fields.

struct ResolutionVerdict {
  enum class Kind { Finite, Periodic, Unknown } kind = Kind::Unknown;
  int length = -1;  // Finite: the first step with zero syzygy
  int period = -1;  // Periodic: syzygy step j isomorphic to step j - period
  int first = -1;
  std::vector<int> cover_dims;
  std::vector<int> syzygy_dims;
};

struct PIMSet {
  std::vector<std::vector<long>> idempotents;
  std::vector<std::vector<std::vector<long>>> pim_basis;  // basis of A e_i in A
  std::vector<FinModule<PrimeField>> pim_module;
  std::vector<std::vector<std::vector<long>>> corner_basis;  // of e_i A e_i
};

inline PIMSet build_pims(const FinAlgebra<PrimeField>& a,
                         const std::vector<std::vector<long>>& rad, unsigned seed = 12345) {
  const auto& k = a.field;
  PIMSet out;
  out.idempotents = primitive_idempotents(a, rad, seed);
  for (const auto& e : out.idempotents) {
    std::vector<std::vector<long>> gens;
    std::vector<std::vector<long>> corner;
    for (int i = 0; i < a.dim; ++i) {
      std::vector<long> b(a.dim, 0);
      b[i] = 1;
      gens.push_back(a.mul(b, e));
      corner.push_back(a.mul(e, a.mul(b, e)));
    }
    auto basis = detail::echelon_rows(k, gens, a.dim);
    out.pim_basis.push_back(basis);
    out.corner_basis.push_back(detail::echelon_rows(k, corner, a.dim));
    // module structure on A e
    FinModule<PrimeField> m;
    m.dim = static_cast<int>(basis.size());
    for (int g = 0; g < a.dim; ++g) {
      DenseMat<long> mat(m.dim, std::vector<long>(m.dim, 0));
      std::vector<long> eg(a.dim, 0);
      eg[g] = 1;
      for (int c = 0; c < m.dim; ++c) {
        auto co = detail::coords_in(k, basis, a.mul(eg, basis[c]));
        require(co.has_value(), Errc::Internal, "PIM not invariant");
        for (int r = 0; r < m.dim; ++r) mat[r][c] = (*co)[r];
      }
      m.rho.push_back(std::move(mat));
    }
    out.pim_module.push_back(std::move(m));
  }
  return out;
}

struct Cover {
  FinModule<PrimeField> proj;            // P(M)
  std::vector<int> multiplicity;         // per PIM
  DenseMat<long> phi;                    // P -> M (dim M x dim P)
  std::vector<std::vector<long>> kernel; // basis of ker phi in P coordinates
};

inline Cover projective_cover(const FinAlgebra<PrimeField>& a,
                              const std::vector<std::vector<long>>& rad, const PIMSet& pims,
                              const FinModule<PrimeField>& m) {
  const auto& k = a.field;
  Cover out;
  out.multiplicity.assign(pims.idempotents.size(), 0);
  // top of M
  auto radm = radical_submodule(a, m, rad);
  auto [top, proj] = quotient_module(a, m, radm);
  // choose generators per PIM
  std::vector<std::pair<int, std::vector<long>>> chosen;  // (pim index, x in M)
  for (size_t pi = 0; pi < pims.idempotents.size(); ++pi) {
    const auto& e = pims.idempotents[pi];
    // image of e on the top
    std::vector<std::vector<long>> etop;
    for (int j = 0; j < top.dim; ++j) {
      std::vector<long> v(top.dim, 0);
      v[j] = 1;
      etop.push_back(top.apply(k, e, v));
    }
    auto espace = detail::echelon_rows(k, etop, top.dim);
    std::vector<std::vector<long>> covered;  // D-span so far (rows in top coords)
    for (const auto& v : espace) {
      // already covered?
      auto test = covered;
      test.push_back(v);
      if (detail::echelon_rows(k, test, top.dim).size() == covered.size()) continue;
      // lift v through M -> top, then project into eM
      // solve proj * u = v
      std::vector<std::vector<long>> rows(top.dim, std::vector<long>(m.dim, 0));
      for (int r = 0; r < top.dim; ++r)
        for (int c = 0; c < m.dim; ++c) rows[r][c] = proj[r][c];
      auto u = linalg::dense_solve(k, rows, v);
      require(u.has_value(), Errc::Internal, "projection is onto");
      auto x = m.apply(k, e, *u);
      chosen.emplace_back(static_cast<int>(pi), x);
      ++out.multiplicity[pi];
      // extend the covered space by the corner orbit of v
      std::vector<std::vector<long>> grow = covered;
      for (const auto& c : pims.corner_basis[pi]) grow.push_back(top.apply(k, c, v));
      grow.push_back(v);
      covered = detail::echelon_rows(k, grow, top.dim);
    }
  }
  // assemble P = (+) A e_i copies and phi
  int pdim = 0;
  for (const auto& [pi, x] : chosen) pdim += pims.pim_module[pi].dim;
  out.proj.dim = pdim;
  out.proj.rho.assign(a.dim, DenseMat<long>(pdim, std::vector<long>(pdim, 0)));
  out.phi.assign(m.dim, std::vector<long>(pdim, 0));
  int off = 0;
  for (const auto& [pi, x] : chosen) {
    const auto& pm = pims.pim_module[pi];
    for (int g = 0; g < a.dim; ++g)
      for (int r = 0; r < pm.dim; ++r)
        for (int c = 0; c < pm.dim; ++c) out.proj.rho[g][off + r][off + c] = pm.rho[g][r][c];
    // phi on this block: basis vector b (an element of A e_i) maps to b . x
    for (int c = 0; c < pm.dim; ++c) {
      auto img = m.apply(k, pims.pim_basis[pi][c], x);
      for (int r = 0; r < m.dim; ++r) out.phi[r][off + c] = img[r];
    }
    off += pm.dim;
  }
  // kernel of phi
  {
    std::vector<std::vector<long>> rows(m.dim, std::vector<long>(pdim, 0));
    for (int r = 0; r < m.dim; ++r) rows[r] = out.phi[r];
    out.kernel = detail::kernel_of_dense(k, rows, pdim);
  }
  // surjectivity and minimality: ker phi inside rad P
  {
    linalg::SparseMat<PrimeField> pm(m.dim, pdim);
    for (int r = 0; r < m.dim; ++r)
      for (int c = 0; c < pdim; ++c)
        if (out.phi[r][c]) pm.row[r].emplace_back(c, out.phi[r][c]);
    require(linalg::rank(k, pm) == m.dim, Errc::Internal, "cover is not surjective");
    auto radp = radical_submodule(a, out.proj, rad);
    std::vector<linalg::SparseVec<PrimeField>> rows;
    for (const auto& v : radp) {
      linalg::SparseVec<PrimeField> row;
      for (int c = 0; c < pdim; ++c)
        if (v[c]) row.emplace_back(c, v[c]);
      rows.push_back(row);
    }
    auto ech = linalg::echelon<PrimeField>(k, rows, pdim, false);
    for (const auto& v : out.kernel) {
      linalg::SparseVec<PrimeField> row;
      for (int c = 0; c < pdim; ++c)
        if (v[c]) row.emplace_back(c, v[c]);
      require(ech.in_rowspan(row), Errc::Internal, "cover is not minimal");
    }
  }
  return out;
}

inline ResolutionVerdict minimal_resolution(const FinAlgebra<PrimeField>& a,
                                            const FinModule<PrimeField>& m0, int steps,
                                            unsigned seed = 12345) {
  auto rad = radical_prime(a);
  ResolutionVerdict verdict;
  if (rad.empty()) {
    verdict.kind = ResolutionVerdict::Kind::Finite;
    verdict.length = 0;
    return verdict;
  }
  if (m0.dim == 0) {
    verdict.kind = ResolutionVerdict::Kind::Finite;
    verdict.length = 0;
    return verdict;
  }
  auto pims = build_pims(a, rad, seed);
  std::vector<FinModule<PrimeField>> syzygies;
  FinModule<PrimeField> cur = m0;
  for (int step = 0; step < steps; ++step) {
    auto cover = projective_cover(a, rad, pims, cur);
    verdict.cover_dims.push_back(cover.proj.dim);
    auto [syz, basis] = submodule(a, cover.proj, cover.kernel);
    verdict.syzygy_dims.push_back(syz.dim);
    if (syz.dim == 0) {
      // projective dimension equals the number of covers taken so far minus one
      verdict.kind = ResolutionVerdict::Kind::Finite;
      verdict.length = step;
      return verdict;
    }
    for (size_t j = 0; j < syzygies.size(); ++j)
      if (modules_isomorphic(a, syzygies[j], syz, seed)) {
        verdict.kind = ResolutionVerdict::Kind::Periodic;
        verdict.first = static_cast<int>(j) + 1;
        verdict.period = static_cast<int>(syzygies.size() - j);
        return verdict;
      }
    syzygies.push_back(syz);
    cur = std::move(syz);
  }
  verdict.kind = ResolutionVerdict::Kind::Unknown;
  return verdict;
}

// the restriction of a character of H (or H') to a materialized parahoric, as
// a one-dimensional module over its FinAlgebra
template <class F>
FinModule<F> character_restriction(const parahoric::Parahoric<F>& p,
                                   const hecke::Character<F>& chi) {
  FinModule<F> m;
  m.dim = 1;
  for (int i = 0; i < p.dim(); ++i) m.rho.push_back({{chi.eval_key(p.basis[i])}});
  return m;
}

}  // namespace heckeforge::findim
