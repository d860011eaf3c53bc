#pragma once

#include <vector>

#include "heckeforge/hecke.hpp"
#include "heckeforge/linalg.hpp"

namespace heckeforge::module {

using weyl::ProPElt;
using weyl::WeylElt;

template <class K>
using DenseMat = std::vector<std::vector<K>>;

template <class F>
DenseMat<typename F::Elem> dense_identity(const F& k, int n) {
  DenseMat<typename F::Elem> m(n, std::vector<typename F::Elem>(n, k.zero()));
  for (int i = 0; i < n; ++i) m[i][i] = k.one();
  return m;
}

template <class F>
DenseMat<typename F::Elem> dense_mul(const F& k, const DenseMat<typename F::Elem>& a,
                                     const DenseMat<typename F::Elem>& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), l = b.size();
  DenseMat<typename F::Elem> c(n, std::vector<typename F::Elem>(m, k.zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < l; ++j) {
      if (k.is_zero(a[i][j])) continue;
      for (size_t t = 0; t < m; ++t) c[i][t] = k.add(c[i][t], k.mul(a[i][j], b[j][t]));
    }
  return c;
}

template <class F>
std::vector<typename F::Elem> dense_apply(const F& k, const DenseMat<typename F::Elem>& a,
                                          const std::vector<typename F::Elem>& v) {
  std::vector<typename F::Elem> out(a.size(), k.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!k.is_zero(a[i][j]) && !k.is_zero(v[j])) out[i] = k.add(out[i], k.mul(a[i][j], v[j]));
  return out;
}

template <class F>
bool dense_eq(const F& k, const DenseMat<typename F::Elem>& a,
              const DenseMat<typename F::Elem>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!k.eq(a[i][j], b[i][j])) return false;
  }
  return true;
}

template <class F>
DenseMat<typename F::Elem> dense_transpose(const F& k, const DenseMat<typename F::Elem>& a) {
  size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  DenseMat<typename F::Elem> t(m, std::vector<typename F::Elem>(n, k.zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
  return t;
}

template <class F>
std::optional<DenseMat<typename F::Elem>> dense_inverse(const F& k,
                                                        DenseMat<typename F::Elem> a) {
  const size_t n = a.size();
  auto inv = dense_identity(k, static_cast<int>(n));
  for (size_t c = 0; c < n; ++c) {
    size_t sel = c;
    while (sel < n && k.is_zero(a[sel][c])) ++sel;
    if (sel == n) return std::nullopt;
    std::swap(a[sel], a[c]);
    std::swap(inv[sel], inv[c]);
    auto d = k.inv(a[c][c]);
    for (size_t j = 0; j < n; ++j) {
      a[c][j] = k.mul(a[c][j], d);
      inv[c][j] = k.mul(inv[c][j], d);
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || k.is_zero(a[i][c])) continue;
      auto f = a[i][c];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] = k.sub(a[i][j], k.mul(f, a[c][j]));
        inv[i][j] = k.sub(inv[i][j], k.mul(f, inv[c][j]));
      }
    }
  }
  return inv;
}

// A finite-dimensional left module over H or H' (or over a parahoric
// subalgebra: only the generators of that subalgebra are consulted), given by
// the action matrices of the algebra generators.
template <class F>
struct FiniteModule {
  using K = typename F::Elem;

  int dim = 0;
  std::vector<DenseMat<K>> torus_gen;   // per X_* coordinate
  std::vector<DenseMat<K>> simple;      // per affine-simple index
  std::vector<DenseMat<K>> omega_tors;  // aligned with weyl().omega_torsion()
  std::vector<DenseMat<K>> omega_free;  // per free generator
};

template <class F>
std::vector<typename F::Elem> apply_key(const hecke::Algebra<F>& alg, const FiniteModule<F>& m,
                                        const ProPElt& key,
                                        std::vector<typename F::Elem> v) {
  const auto& k = alg.field();
  const auto& w = alg.weyl();
  // tau_key = tau_torus * tau_omega * tau_{s_1} ... tau_{s_l}; matrices act on
  // the right factor first
  auto [om, aff] = w.split_omega(key.w);
  auto word = w.canonical_word(aff);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    v = dense_apply(alg.field(), m.simple[*it], v);
  // omega part: free exponents then the torsion element
  WeylElt rem = om;
  if (w.omega_infinite()) {
    for (size_t g = 0; g < w.omega_free_gens().size(); ++g) {
      long e = om.lambda[alg.rd().rank() + g];
      const auto& gen = w.omega_free_gens()[g];
      for (size_t i = 0; i < rem.lambda.size(); ++i) rem.lambda[i] -= e * gen.lambda[i];
      if (e != 0) {
        DenseMat<typename F::Elem> mat = m.omega_free[g];
        if (e < 0) {
          auto invm = dense_inverse(alg.field(), mat);
          require(invm.has_value(), Errc::Internal, "omega generator must act invertibly");
          mat = *invm;
          e = -e;
        }
        for (long t = 0; t < e; ++t) v = dense_apply(alg.field(), mat, v);
      }
    }
  }
  {
    const auto& tors = w.omega_torsion();
    bool found = false;
    for (size_t i = 0; i < tors.size(); ++i)
      if (tors[i] == rem) {
        v = dense_apply(alg.field(), m.omega_tors[i], v);
        found = true;
        break;
      }
    require(found, Errc::Internal, "omega part not found");
  }
  for (size_t i = 0; i < key.torus.size(); ++i)
    for (long c = 0; c < key.torus[i]; ++c) v = dense_apply(alg.field(), m.torus_gen[i], v);
  (void)k;
  return v;
}

template <class F>
std::vector<typename F::Elem> apply_elt(const hecke::Algebra<F>& alg, const FiniteModule<F>& m,
                                        const typename hecke::Algebra<F>::Elt& a,
                                        const std::vector<typename F::Elem>& v) {
  const auto& k = alg.field();
  std::vector<typename F::Elem> out(m.dim, k.zero());
  for (const auto& [key, c] : a.terms) {
    auto piece = apply_key(alg, m, key, v);
    for (int i = 0; i < m.dim; ++i) out[i] = k.add(out[i], k.mul(c, piece[i]));
  }
  return out;
}

template <class F>
DenseMat<typename F::Elem> action_matrix(const hecke::Algebra<F>& alg, const FiniteModule<F>& m,
                                         const typename hecke::Algebra<F>::Elt& a) {
  const auto& k = alg.field();
  DenseMat<typename F::Elem> out(m.dim, std::vector<typename F::Elem>(m.dim, k.zero()));
  for (int j = 0; j < m.dim; ++j) {
    std::vector<typename F::Elem> e(m.dim, k.zero());
    e[j] = k.one();
    auto col = apply_elt(alg, m, a, e);
    for (int i = 0; i < m.dim; ++i) out[i][j] = col[i];
  }
  return out;
}

// check the defining relations on the generator matrices
template <class F>
void validate_module(const hecke::Algebra<F>& alg, const FiniteModule<F>& m) {
  const auto& k = alg.field();
  const auto& w = alg.weyl();
  const auto& grp = alg.group();
  auto chk = [&](bool ok, const char* what) {
    require(ok, Errc::InconsistentCharacter, std::string("module violates relations: ") + what);
  };
  auto key_mat = [&](const ProPElt& key) { return action_matrix(alg, m, alg.basis(key)); };
  const int n = alg.rd().lattice_rank();
  // torus orders and commutativity
  for (int i = 0; i < n; ++i) {
    auto p = dense_identity(k, m.dim);
    for (long c = 0; c < grp.qm(); ++c) p = dense_mul(k, m.torus_gen[i], p);
    chk(dense_eq(k, p, dense_identity(k, m.dim)), "torus order");
    for (int j = 0; j < i; ++j)
      chk(dense_eq(k, dense_mul(k, m.torus_gen[i], m.torus_gen[j]),
                   dense_mul(k, m.torus_gen[j], m.torus_gen[i])),
          "torus commutativity");
  }
  // quadratic relations and the semidirect torus conjugation
  for (int s = 0; s < alg.rd().num_affine_simples(); ++s) {
    auto lhs = dense_mul(k, m.simple[s], m.simple[s]);
    DenseMat<typename F::Elem> rhs = key_mat(grp.torus_elt(grp.s_squared_torus(s)));
    for (auto& row : rhs)
      for (auto& x : row) x = k.mul(x, alg.q_in_k());
    auto theta_mat = action_matrix(alg, m, alg.theta(s));
    rhs = [&] {
      auto t = dense_mul(k, m.simple[s], theta_mat);
      for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = 0; j < t.size(); ++j) t[i][j] = k.add(t[i][j], rhs[i][j]);
      return t;
    }();
    chk(dense_eq(k, lhs, rhs), "quadratic relation");
    // tau_s tau_t = tau_{s(t)} tau_s on torus generators
    for (int i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      auto l = dense_mul(k, m.simple[s], m.torus_gen[i]);
      auto r = dense_mul(k, key_mat(grp.torus_elt(grp.act_torus(w.simple_reflection(s), e))),
                         m.simple[s]);
      chk(dense_eq(k, l, r), "semidirect torus relation");
    }
  }
  // braid relations
  for (int s = 0; s < alg.rd().num_affine_simples(); ++s)
    for (int t = 0; t < s; ++t) {
      // braid length = order of s_s s_t in W
      WeylElt st = w.mult(w.simple_reflection(s), w.simple_reflection(t));
      WeylElt p = st;
      int order = 1;
      while (!w.is_identity(p) && order < 12) {
        p = w.mult(p, st);
        ++order;
      }
      if (w.is_identity(p)) {
        auto a = dense_identity(k, m.dim);
        auto b = dense_identity(k, m.dim);
        for (int i = 0; i < order; ++i) {
          a = dense_mul(k, a, m.simple[i % 2 == 0 ? s : t]);
          b = dense_mul(k, b, m.simple[i % 2 == 0 ? t : s]);
        }
        chk(dense_eq(k, a, b), "braid relation");
      }
    }
  // omega relations
  const auto& tors = w.omega_torsion();
  for (size_t i = 0; i < tors.size(); ++i) {
    for (size_t j = 0; j < tors.size(); ++j) {
      WeylElt p = w.mult(tors[i], tors[j]);
      auto rhs = dense_mul(k, m.omega_tors[i], m.omega_tors[j]);
      chk(dense_eq(k, key_mat(grp.from_weyl(p)), rhs), "omega multiplicativity");
    }
    for (int s = 0; s < alg.rd().num_affine_simples(); ++s) {
      auto lhs = dense_mul(k, m.omega_tors[i], m.simple[s]);
      auto rhs = dense_mul(k, m.simple[w.omega_on_simple(tors[i], s)], m.omega_tors[i]);
      chk(dense_eq(k, lhs, rhs), "omega conjugation");
    }
  }
}

// one-dimensional module attached to a validated character
template <class F>
FiniteModule<F> character_module(const hecke::Algebra<F>& alg, const hecke::Character<F>& chi) {
  const auto& w = alg.weyl();
  const auto& grp = alg.group();
  FiniteModule<F> m;
  m.dim = 1;
  const int n = alg.rd().lattice_rank();
  for (int i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    m.torus_gen.push_back({{chi.eval_key(grp.torus_elt(e))}});
  }
  for (int s = 0; s < alg.rd().num_affine_simples(); ++s)
    m.simple.push_back({{chi.eval_key(grp.from_weyl(w.simple_reflection(s)))}});
  for (const auto& om : w.omega_torsion())
    m.omega_tors.push_back({{chi.eval_key(grp.from_weyl(om))}});
  for (const auto& om : w.omega_free_gens())
    m.omega_free.push_back({{chi.eval_key(grp.from_weyl(om))}});
  return m;
}

template <class F>
FiniteModule<F> direct_sum(const F& k, const FiniteModule<F>& a, const FiniteModule<F>& b) {
  FiniteModule<F> m;
  m.dim = a.dim + b.dim;
  auto blocks = [&](const DenseMat<typename F::Elem>& x, const DenseMat<typename F::Elem>& y) {
    DenseMat<typename F::Elem> out(m.dim, std::vector<typename F::Elem>(m.dim, k.zero()));
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) out[i][j] = x[i][j];
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j) out[a.dim + i][a.dim + j] = y[i][j];
    return out;
  };
  for (size_t i = 0; i < a.torus_gen.size(); ++i)
    m.torus_gen.push_back(blocks(a.torus_gen[i], b.torus_gen[i]));
  for (size_t i = 0; i < a.simple.size(); ++i) m.simple.push_back(blocks(a.simple[i], b.simple[i]));
  for (size_t i = 0; i < a.omega_tors.size(); ++i)
    m.omega_tors.push_back(blocks(a.omega_tors[i], b.omega_tors[i]));
  for (size_t i = 0; i < a.omega_free.size(); ++i)
    m.omega_free.push_back(blocks(a.omega_free[i], b.omega_free[i]));
  return m;
}

// change of basis x -> g x g^{-1}: an isomorphic copy with scrambled matrices
template <class F>
FiniteModule<F> conjugate(const F& k, const FiniteModule<F>& a,
                          const DenseMat<typename F::Elem>& g) {
  auto gi = dense_inverse(k, g);
  require(gi.has_value(), Errc::Internal, "conjugating matrix must be invertible");
  FiniteModule<F> m = a;
  auto tr = [&](DenseMat<typename F::Elem>& x) { x = dense_mul(k, g, dense_mul(k, x, *gi)); };
  for (auto& x : m.torus_gen) tr(x);
  for (auto& x : m.simple) tr(x);
  for (auto& x : m.omega_tors) tr(x);
  for (auto& x : m.omega_free) tr(x);
  return m;
}

}  // namespace heckeforge::module
