#pragma once

#include <map>
#include <vector>

#include "heckeforge/module.hpp"

namespace heckeforge::parahoric {

using weyl::FacetSpec;
using weyl::ProPElt;
using weyl::WeylElt;

// The subalgebra H_F (dagger: H_F-dagger) of H or H', materialized with its
// finite basis.  Finite only when Omega_F is finite (always true for the
// non-dagger version); the gl-style dagger algebras are handled upstream
// through truncations and never materialized here.
template <class F>
struct Parahoric {
  using Alg = hecke::Algebra<F>;
  using Elt = typename Alg::Elt;
  using K = typename F::Elem;

  const Alg* alg = nullptr;
  FacetSpec facet;
  bool dagger = false;
  std::vector<ProPElt> basis;  // torus x W_F (x Omega_F when dagger)
  std::map<ProPElt, int> index;
  ProPElt w_longest;  // longest element of W_F, lifted with trivial torus

  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const Elt& a) const {
    for (const auto& [key, c] : a.terms)
      if (!index.count(key)) return false;
    return true;
  }
};

template <class F>
Parahoric<F> make_parahoric(const hecke::Algebra<F>& alg, const FacetSpec& facet, bool dagger) {
  require(!(dagger && alg.weyl().omega_infinite()), Errc::NotFinite,
          "dagger algebra is infinite dimensional for gl-style data");
  Parahoric<F> p;
  p.alg = &alg;
  p.facet = facet;
  p.dagger = dagger;
  const auto& grp = alg.group();
  std::vector<WeylElt> ws;
  for (const auto& wf : facet.wf) {
    if (dagger) {
      for (const auto& om : facet.omega_f) ws.push_back(alg.weyl().mult(wf, om));
    } else {
      ws.push_back(wf);
    }
  }
  for (const auto& t : grp.torus_all())
    for (const auto& w : ws) p.basis.push_back(ProPElt{t, w});
  std::sort(p.basis.begin(), p.basis.end());
  for (size_t i = 0; i < p.basis.size(); ++i) p.index.emplace(p.basis[i], static_cast<int>(i));
  p.w_longest = grp.from_weyl(facet.wf[facet.wf_longest]);
  return p;
}

// j_F: scale tau_w by eps_F(Omega_F part of w); an algebra involution
template <class F>
typename Parahoric<F>::Elt j_facet(const Parahoric<F>& p, const typename Parahoric<F>::Elt& a) {
  const auto& alg = *p.alg;
  auto out = alg.zero();
  for (const auto& [key, c] : a.terms) {
    auto [om, aff] = alg.weyl().split_omega(key.w);
    int s = alg.weyl().eps_face(om, p.facet.s_indices);
    alg.add_term(out, key, s == 1 ? c : alg.field().neg(c));
  }
  return out;
}

// coefficient extraction along the torus coset of w_F
template <class F>
typename F::Elem delta_wf(const Parahoric<F>& p, const typename Parahoric<F>::Elt& a) {
  auto it = a.terms.find(p.w_longest);
  return it == a.terms.end() ? p.alg->field().zero() : it->second;
}

// theta: H_F-dagger -> k[T0/T1], sum a_{xi w0} xi (returned as a torus-supported element)
template <class F>
typename Parahoric<F>::Elt theta_functional(const Parahoric<F>& p,
                                            const typename Parahoric<F>::Elt& a,
                                            const ProPElt& w0_lift) {
  const auto& alg = *p.alg;
  const auto& grp = alg.group();
  auto out = alg.zero();
  for (const auto& [key, c] : a.terms) {
    if (!(key.w == w0_lift.w)) continue;
    // key = xi * w0_lift with xi a torus element
    ProPElt xi = grp.mult(key, grp.inverse(w0_lift));
    require(alg.weyl().is_identity(xi.w), Errc::Internal, "theta coset extraction");
    alg.add_term(out, xi, c);
  }
  return out;
}

template <class F>
struct FrobeniusReport {
  bool unit_diagonal = true;
  bool lower_triangular = true;
  // Gram matrix of theta(tau_v tau_{w^{-1} w0}) over k[T0/T1], one row per v
  std::vector<std::vector<typename Parahoric<F>::Elt>> gram;
  std::vector<WeylElt> order;  // the enumeration of W_F-dagger used
};

// Prop. Hecke-Frob: unit diagonal, lower triangular for the Bruhat order
template <class F>
FrobeniusReport<F> frobenius_triangularity(const Parahoric<F>& p, const ProPElt& w0_lift) {
  const auto& alg = *p.alg;
  const auto& grp = alg.group();
  const auto& w = alg.weyl();
  FrobeniusReport<F> rep;
  for (const auto& wf : p.facet.wf)
    for (const auto& om : p.dagger ? p.facet.omega_f : std::vector<WeylElt>{w.identity()})
      rep.order.push_back(w.mult(wf, om));
  const size_t n = rep.order.size();
  rep.gram.assign(n, {});
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      ProPElt vi = grp.from_weyl(rep.order[i]);
      ProPElt wj = grp.mult(grp.inverse(grp.from_weyl(rep.order[j])), w0_lift);
      auto prod = alg.mul(alg.basis(vi), alg.basis(wj));
      auto entry = theta_functional(p, prod, w0_lift);
      rep.gram[i].push_back(entry);
      if (i == j) {
        bool unit = entry.terms.size() == 1 && entry.terms.count(grp.identity()) &&
                    alg.field().eq(entry.terms.at(grp.identity()), alg.field().one());
        if (!unit) rep.unit_diagonal = false;
      } else if (!w.bruhat_leq(rep.order[j], rep.order[i])) {
        if (!alg.is_zero(entry)) rep.lower_triangular = false;
      }
    }
  }
  return rep;
}

// Gram matrix of the delta_{w_F} pairing over the full basis; nondegenerate in
// the semisimple case
template <class F>
int delta_pairing_rank(const Parahoric<F>& p) {
  const auto& alg = *p.alg;
  linalg::SparseMat<F> g(p.dim(), p.dim());
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) {
      auto prod = alg.mul(alg.basis(p.basis[i]), alg.basis(p.basis[j]));
      g.set(alg.field(), i, j, delta_wf(p, prod));
    }
  return linalg::rank(alg.field(), g);
}

// f(x) = sum_w f0(tau*_{w w_F^{-1}} x) tau_w  (Lemma explicit-inverse)
// f0 is a linear functional on the module (a row vector); the result is the
// H_F-dagger-linear map M -> H_F-dagger it reconstructs, given by its values
// on the basis of M.
template <class F>
std::vector<typename Parahoric<F>::Elt> dual_reconstruct(
    const Parahoric<F>& p, const module::FiniteModule<F>& m,
    const std::vector<typename F::Elem>& f0) {
  const auto& alg = *p.alg;
  const auto& grp = alg.group();
  const auto& k = alg.field();
  require(alg.rd().semisimple(), Errc::NotSemisimpleDatum,
          "dual reconstruction needs a semisimple datum");
  std::vector<typename Parahoric<F>::Elt> out(m.dim, alg.zero());
  for (const auto& wkey : p.basis) {
    ProPElt u = grp.mult(wkey, grp.inverse(p.w_longest));
    auto star = alg.tau_star(u);
    // column j: f0(tau*_u e_j)
    for (int j = 0; j < m.dim; ++j) {
      std::vector<typename F::Elem> e(m.dim, k.zero());
      e[j] = k.one();
      auto v = module::apply_elt(alg, m, star, e);
      typename F::Elem c = k.zero();
      for (int i = 0; i < m.dim; ++i) c = k.add(c, k.mul(f0[i], v[i]));
      alg.add_term(out[j], wkey, c);
    }
  }
  return out;
}

// the central idempotent eps'_{F,chi}-dagger of H'_F-dagger
enum class IdChar { Trivial, Sign };

template <class F>
typename Parahoric<F>::Elt character_idempotent(const Parahoric<F>& p, IdChar chi) {
  const auto& alg = *p.alg;
  const auto& k = alg.field();
  require(alg.kind() == hecke::AlgebraKind::Iwahori, Errc::MismatchedAlgebra,
          "character idempotents are formed in the Iwahori-Hecke algebra");
  require(p.dagger, Errc::MismatchedAlgebra, "the idempotent lives in the dagger algebra");
  const auto& w = alg.weyl();
  long lwf = w.length(p.facet.wf[p.facet.wf_longest]);
  // Poincare sum over W_F-dagger
  typename F::Elem denom = k.zero();
  auto e = alg.zero();
  for (const auto& key : p.basis) {
    long l = w.length(key.w);
    typename F::Elem ql = k.one();
    for (long i = 0; i < l; ++i) ql = k.mul(ql, alg.q_in_k());
    denom = k.add(denom, ql);
    typename F::Elem coef;
    if (chi == IdChar::Trivial) {
      coef = k.one();
    } else {
      coef = k.one();
      for (long i = 0; i < lwf - l; ++i) coef = k.mul(coef, alg.q_in_k());
      if (l % 2 == 1) coef = k.neg(coef);
    }
    alg.add_term(e, key, coef);
  }
  require(!k.is_zero(denom), Errc::PoincareVanishes,
          "the Poincare sum over W_F-dagger vanishes in k");
  return alg.scale(k.inv(denom), e);
}

}  // namespace heckeforge::parahoric
