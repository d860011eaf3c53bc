#pragma once

#include <map>
#include <utility>
#include <vector>

#include "heckeforge/apartment.hpp"
#include "heckeforge/module.hpp"
#include "heckeforge/parahoric.hpp"

namespace heckeforge::homology {

using apartment::Apartment;
using apartment::Facet;
using module::FiniteModule;
using weyl::ProPElt;
using weyl::WeylElt;

using linalg::sparse_add_to;

struct BuildOptions {
  int omega_cap = 0;          // required for gl-style data
  bool corrupt_sign = false;  // negative control: flip one boundary summand
  int graded_layer = -1;      // >= 0: the associated graded piece in that degree
};

// ---------------------------------------------------------------------------
// the filtration piece F_n of the bimodule resolution
// ---------------------------------------------------------------------------

template <class F>
struct StrictComplex {
  struct Term {
    Facet rep;
    std::vector<std::pair<ProPElt, ProPElt>> basis;  // (d-lift, w-key)
    std::map<std::pair<ProPElt, ProPElt>, int> index;
  };
  std::vector<std::vector<Term>> terms;    // [degree i][facet]
  std::vector<int> dim_at;                 // per degree
  std::vector<linalg::SparseMat<F>> diff;  // diff[i] : degree i -> i-1 (i >= 1)
  linalg::SparseMat<F> aug;                // degree 0 -> F_n H
  std::vector<ProPElt> target;             // basis of F_n H
  std::map<ProPElt, int> target_index;
};

template <class F>
StrictComplex<F> build_strict_complex(const hecke::Algebra<F>& alg, const Apartment& ap, int n,
                                      BuildOptions opt = {}) {
  const auto& w = alg.weyl();
  const auto& grp = alg.group();
  const auto& k = alg.field();
  const int d = ap.dim_top();
  const bool graded = opt.graded_layer >= 0;
  require(!graded || opt.graded_layer <= n, Errc::Internal, "graded layer beyond truncation");
  StrictComplex<F> c;
  c.terms.resize(d + 1);
  c.dim_at.assign(d + 1, 0);
  auto keys_of_len = [&](int lo, int hi) {
    std::vector<ProPElt> out;
    if (hi < 0 || hi < lo) return out;
    for (const auto& elt : w.ball(hi, opt.omega_cap)) {
      long l = w.length(elt);
      if (l < lo) continue;
      for (const auto& t : grp.torus_all()) out.push_back(ProPElt{t, elt});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  for (int i = 0; i <= d; ++i) {
    for (const auto& rep : ap.face_representatives()[i]) {
      typename StrictComplex<F>::Term term;
      term.rep = rep;
      for (const auto& dd : w.distinguished_reps(ap.spec(rep), n, true, opt.omega_cap)) {
        int ld = static_cast<int>(w.length(dd));
        ProPElt dlift = grp.from_weyl(dd);
        std::vector<ProPElt> keys = graded ? keys_of_len(opt.graded_layer - ld, opt.graded_layer - ld)
                                           : keys_of_len(0, n - ld);
        for (const auto& key : keys) term.basis.emplace_back(dlift, key);
      }
      std::sort(term.basis.begin(), term.basis.end());
      for (size_t b = 0; b < term.basis.size(); ++b)
        term.index.emplace(term.basis[b], static_cast<int>(b));
      c.dim_at[i] += static_cast<int>(term.basis.size());
      c.terms[i].push_back(std::move(term));
    }
  }
  c.target = graded ? keys_of_len(opt.graded_layer, opt.graded_layer) : keys_of_len(0, n);
  for (size_t i = 0; i < c.target.size(); ++i)
    c.target_index.emplace(c.target[i], static_cast<int>(i));
  auto offset = [&](int deg, size_t fidx) {
    int off = 0;
    for (size_t t = 0; t < fidx; ++t) off += static_cast<int>(c.terms[deg][t].basis.size());
    return off;
  };
  c.diff.resize(d + 1);
  // the negative control flips exactly one boundary summand of one column
  bool corrupt_pending = opt.corrupt_sign;
  for (int i = d; i >= 1; --i) {
    linalg::SparseMat<F> mat(c.dim_at[i - 1], c.dim_at[i]);
    for (size_t fidx = 0; fidx < c.terms[i].size(); ++fidx) {
      const auto& term = c.terms[i][fidx];
      auto bd = ap.boundary_data(term.rep);
      int col0 = offset(i, fidx);
      for (size_t b = 0; b < term.basis.size(); ++b) {
        const auto& [dlift, key] = term.basis[b];
        long src_len = grp.length(dlift) + grp.length(key);
        for (const auto& e : bd) {
          int sgn = e.sign;
          if (corrupt_pending) {
            sgn = -sgn;
            corrupt_pending = false;
          }
          size_t tgt = 0;
          while (!(c.terms[i - 1][tgt].rep == e.rep)) ++tgt;
          const auto& tterm = c.terms[i - 1][tgt];
          int row0 = offset(i - 1, tgt);
          // tau_d tau_omega = tau_{d''} tau_h, then
          // tau_{d''} (x) j_{F'}(tau_h) tau_{omega^{-1}} tau_key
          ProPElt x = grp.mult(dlift, grp.from_weyl(e.omega));
          auto [dpp, hw] = w.facet_factorize(ap.spec(e.rep), x.w, true);
          ProPElt dpp_lift = grp.from_weyl(dpp);
          ProPElt h = grp.mult(grp.inverse(dpp_lift), x);
          auto [h_om, h_aff] = w.split_omega(h.w);
          int jsign = w.eps_face(h_om, e.rep.s_indices);
          auto mod = alg.mul(alg.basis(h),
                             alg.basis(grp.mult(grp.inverse(grp.from_weyl(e.omega)), key)));
          typename F::Elem coef = k.from_long(sgn * jsign);
          for (const auto& [mkey, mc] : mod.terms) {
            if (graded && grp.length(dpp_lift) + grp.length(mkey) != src_len) continue;
            auto it = tterm.index.find(std::make_pair(dpp_lift, mkey));
            require(it != tterm.index.end(), Errc::TruncationTooSmall,
                    "differential escapes the truncation window");
            sparse_add_to(k, mat, row0 + it->second, col0 + static_cast<int>(b),
                          k.mul(coef, mc));
          }
        }
      }
    }
    c.diff[i] = std::move(mat);
  }
  {
    linalg::SparseMat<F> mat(static_cast<int>(c.target.size()), c.dim_at[0]);
    for (size_t fidx = 0; fidx < c.terms[0].size(); ++fidx) {
      const auto& term = c.terms[0][fidx];
      int col0 = offset(0, fidx);
      for (size_t b = 0; b < term.basis.size(); ++b) {
        const auto& [dlift, key] = term.basis[b];
        long src_len = grp.length(dlift) + grp.length(key);
        auto prod = alg.mul(alg.basis(dlift), alg.basis(key));
        for (const auto& [mkey, mc] : prod.terms) {
          if (graded && grp.length(mkey) != src_len) continue;
          auto it = c.target_index.find(mkey);
          require(it != c.target_index.end(), Errc::TruncationTooSmall,
                  "augmentation escapes the truncation window");
          sparse_add_to(k, mat, it->second, col0 + static_cast<int>(b), mc);
        }
      }
    }
    c.aug = std::move(mat);
  }
  return c;
}

template <class F>
struct ExactnessReport {
  bool d_squared_zero = true;
  bool aug_after_d_zero = true;
  bool aug_surjective = true;
  std::vector<bool> exact_at;  // per degree 0..d
  std::vector<int> ranks;      // rank(aug), rank(diff[1]), ..., rank(diff[d])
  bool all() const {
    if (!d_squared_zero || !aug_after_d_zero || !aug_surjective) return false;
    for (bool b : exact_at)
      if (!b) return false;
    return true;
  }
};

namespace detail {

// z = A * (column y), both sparse
template <class F>
std::map<int, typename F::Elem> apply_sparse(const F& k, const linalg::SparseMat<F>& a,
                                             const std::map<int, typename F::Elem>& y) {
  std::map<int, typename F::Elem> z;
  for (int r = 0; r < a.rows; ++r) {
    typename F::Elem acc = k.zero();
    bool any = false;
    for (const auto& [c, v] : a.row[r]) {
      auto it = y.find(c);
      if (it != y.end()) {
        acc = k.add(acc, k.mul(v, it->second));
        any = true;
      }
    }
    if (any && !k.is_zero(acc)) z.emplace(r, acc);
  }
  return z;
}

template <class F>
bool composite_vanishes(const F& k, const linalg::SparseMat<F>& outer,
                        const linalg::SparseMat<F>& inner) {
  for (int col = 0; col < inner.cols; ++col) {
    std::map<int, typename F::Elem> y;
    for (int r = 0; r < inner.rows; ++r) {
      const auto* v = linalg::sparse_get<F>(inner.row[r], col);
      if (v) y.emplace(r, *v);
    }
    if (!apply_sparse(k, outer, y).empty()) return false;
  }
  return true;
}

}  // namespace detail

template <class F, class Complex>
ExactnessReport<F> check_exactness(const F& k, const Complex& c, int target_dim) {
  const int d = static_cast<int>(c.terms.size()) - 1;
  ExactnessReport<F> rep;
  for (int i = 2; i <= d; ++i)
    if (!detail::composite_vanishes(k, c.diff[i - 1], c.diff[i])) rep.d_squared_zero = false;
  if (d >= 1 && !detail::composite_vanishes(k, c.aug, c.diff[1])) rep.aug_after_d_zero = false;
  int rank_aug = linalg::rank(k, c.aug);
  rep.ranks.push_back(rank_aug);
  std::vector<int> rk(d + 1, 0);
  for (int i = 1; i <= d; ++i) {
    rk[i] = linalg::rank(k, c.diff[i]);
    rep.ranks.push_back(rk[i]);
  }
  rep.aug_surjective = rank_aug == target_dim;
  rep.exact_at.assign(d + 1, true);
  if (d >= 1) rep.exact_at[0] = (c.dim_at[0] - rank_aug) == rk[1];
  for (int i = 1; i < d; ++i) rep.exact_at[i] = (c.dim_at[i] - rk[i]) == rk[i + 1];
  if (d >= 1) rep.exact_at[d] = rk[d] == c.dim_at[d];
  return rep;
}

// Theorem strict-exact, verified at filtration level n.
template <class F>
ExactnessReport<F> check_strict_exactness(const hecke::Algebra<F>& alg, const Apartment& ap,
                                          int n, BuildOptions opt = {}) {
  auto c = build_strict_complex(alg, ap, n, opt);
  return check_exactness<F>(alg.field(), c, static_cast<int>(c.target.size()));
}

// ---------------------------------------------------------------------------
// resolutions of a finite module
// ---------------------------------------------------------------------------

template <class F>
struct ModuleComplex {
  struct Term {
    Facet rep;
    std::vector<ProPElt> dvec;  // dagger representatives, trivial torus lift
    std::vector<long> dlen;
  };
  std::vector<std::vector<Term>> terms;
  std::vector<int> dim_at;
  std::vector<linalg::SparseMat<F>> diff;
  linalg::SparseMat<F> aug;  // to m
  int mdim = 0;

  // indices of the basis vectors tau_d (x) e_j with l(d) <= bound, per degree
  std::vector<int> ball_columns(int degree, long bound) const {
    std::vector<int> out;
    int off = 0;
    for (const auto& term : terms[degree]) {
      for (size_t b = 0; b < term.dvec.size(); ++b)
        if (term.dlen[b] <= bound)
          for (int j = 0; j < mdim; ++j) out.push_back(off + static_cast<int>(b) * mdim + j);
      off += static_cast<int>(term.dvec.size()) * mdim;
    }
    return out;
  }
};

template <class F>
ModuleComplex<F> build_module_complex(const hecke::Algebra<F>& alg, const Apartment& ap,
                                      const FiniteModule<F>& m, int n, BuildOptions opt = {}) {
  const auto& w = alg.weyl();
  const auto& grp = alg.group();
  const auto& k = alg.field();
  const int d = ap.dim_top();
  ModuleComplex<F> c;
  c.mdim = m.dim;
  c.terms.resize(d + 1);
  c.dim_at.assign(d + 1, 0);
  for (int i = 0; i <= d; ++i)
    for (const auto& rep : ap.face_representatives()[i]) {
      typename ModuleComplex<F>::Term term;
      term.rep = rep;
      for (const auto& dd : w.distinguished_reps(ap.spec(rep), n, true, opt.omega_cap)) {
        term.dvec.push_back(grp.from_weyl(dd));
        term.dlen.push_back(w.length(dd));
      }
      c.dim_at[i] += static_cast<int>(term.dvec.size()) * m.dim;
      c.terms[i].push_back(std::move(term));
    }
  auto offset = [&](int deg, size_t fidx) {
    int off = 0;
    for (size_t t = 0; t < fidx; ++t)
      off += static_cast<int>(c.terms[deg][t].dvec.size()) * m.dim;
    return off;
  };
  c.diff.resize(d + 1);
  bool corrupt_pending = opt.corrupt_sign;
  for (int i = d; i >= 1; --i) {
    linalg::SparseMat<F> mat(c.dim_at[i - 1], c.dim_at[i]);
    for (size_t fidx = 0; fidx < c.terms[i].size(); ++fidx) {
      const auto& term = c.terms[i][fidx];
      auto bd = ap.boundary_data(term.rep);
      int col0 = offset(i, fidx);
      for (size_t b = 0; b < term.dvec.size(); ++b) {
        for (const auto& e : bd) {
          int sgn = e.sign;
          if (corrupt_pending) {
            sgn = -sgn;
            corrupt_pending = false;
          }
          size_t tgt = 0;
          while (!(c.terms[i - 1][tgt].rep == e.rep)) ++tgt;
          const auto& tterm = c.terms[i - 1][tgt];
          int row0 = offset(i - 1, tgt);
          ProPElt x = grp.mult(term.dvec[b], grp.from_weyl(e.omega));
          auto [dpp, hw] = w.facet_factorize(ap.spec(e.rep), x.w, true);
          ProPElt dpp_lift = grp.from_weyl(dpp);
          ProPElt h = grp.mult(grp.inverse(dpp_lift), x);
          auto [h_om, h_aff] = w.split_omega(h.w);
          int jsign = w.eps_face(h_om, e.rep.s_indices);
          size_t drow = 0;
          while (drow < tterm.dvec.size() && !(tterm.dvec[drow] == dpp_lift)) ++drow;
          require(drow < tterm.dvec.size(), Errc::TruncationTooSmall,
                  "differential escapes the truncation window");
          ProPElt om_inv = grp.inverse(grp.from_weyl(e.omega));
          for (int j = 0; j < m.dim; ++j) {
            std::vector<typename F::Elem> v(m.dim, k.zero());
            v[j] = k.one();
            v = module::apply_key(alg, m, om_inv, std::move(v));
            v = module::apply_key(alg, m, h, std::move(v));
            for (int r = 0; r < m.dim; ++r)
              sparse_add_to(k, mat, row0 + static_cast<int>(drow) * m.dim + r,
                            col0 + static_cast<int>(b) * m.dim + j,
                            k.mul(k.from_long(sgn * jsign), v[r]));
          }
        }
      }
    }
    c.diff[i] = std::move(mat);
  }
  {
    linalg::SparseMat<F> mat(m.dim, c.dim_at[0]);
    for (size_t fidx = 0; fidx < c.terms[0].size(); ++fidx) {
      const auto& term = c.terms[0][fidx];
      int col0 = offset(0, fidx);
      for (size_t b = 0; b < term.dvec.size(); ++b)
        for (int j = 0; j < m.dim; ++j) {
          std::vector<typename F::Elem> v(m.dim, k.zero());
          v[j] = k.one();
          v = module::apply_key(alg, m, term.dvec[b], std::move(v));
          for (int r = 0; r < m.dim; ++r)
            sparse_add_to(k, mat, r, col0 + static_cast<int>(b) * m.dim + j, v[r]);
        }
    }
    c.aug = std::move(mat);
  }
  return c;
}

// Margin-style exactness at one spot T: every cycle of `out_map` supported on
// `spot_cols` lies in the span of the `boundary_cols` columns of `into_map`.
template <class F>
bool boundaries_cover_cycles(const F& k, const linalg::SparseMat<F>& out_map,
                             const std::vector<int>& spot_cols,
                             const linalg::SparseMat<F>& into_map,
                             const std::vector<int>& boundary_cols) {
  linalg::SparseMat<F> restricted(out_map.rows, static_cast<int>(spot_cols.size()));
  std::vector<int> col_pos(out_map.cols, -1);
  for (size_t cc = 0; cc < spot_cols.size(); ++cc) col_pos[spot_cols[cc]] = static_cast<int>(cc);
  for (int r = 0; r < out_map.rows; ++r)
    for (const auto& [c, v] : out_map.row[r])
      if (col_pos[c] >= 0) restricted.row[r].emplace_back(col_pos[c], v);
  for (auto& row : restricted.row)
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  auto cycles = linalg::kernel_basis(k, restricted);
  if (cycles.empty()) return true;
  // span of boundaries, as vectors in the spot space
  std::vector<linalg::SparseVec<F>> gens;
  for (int col : boundary_cols) {
    linalg::SparseVec<F> g;
    for (int r = 0; r < into_map.rows; ++r) {
      const auto* v = linalg::sparse_get<F>(into_map.row[r], col);
      if (v) g.emplace_back(r, *v);
    }
    if (!g.empty()) gens.push_back(std::move(g));
  }
  auto ech = linalg::echelon<F>(k, std::move(gens), into_map.rows, false);
  for (const auto& z : cycles) {
    linalg::SparseVec<F> amb;
    for (const auto& [c, v] : z) amb.emplace_back(spot_cols[c], v);
    std::sort(amb.begin(), amb.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!ech.in_rowspan(amb)) return false;
  }
  return true;
}

}  // namespace heckeforge::homology
