#pragma once

#include "heckeforge/homology.hpp"

namespace heckeforge::homology {

// The complex Hom_{H_F-dagger}((eps_F) m, H_F-dagger) (x)_{H_F-dagger} H used to
// compute Ext^i(m, H), held in "raw" coordinates: an element of the degree-i
// piece is a tuple, indexed by F in F_i, of k-linear maps m -> F_B H.  The
// codifferential and the augmentation act exactly in these coordinates; the
// term subspaces are spanned by the vectors phi_b(.) tau_{d^{-1}}.
template <class F>
class DualComplex {
 public:
  using Alg = hecke::Algebra<F>;
  using Elt = typename Alg::Elt;
  using K = typename F::Elem;
  using Raw = linalg::SparseVec<F>;

  DualComplex(const Alg& alg, const Apartment& ap, const FiniteModule<F>& m, int ball)
      : alg_(&alg), ap_(&ap), m_(&m), ball_(ball) {
    require(alg.rd().semisimple(), Errc::NotSemisimpleDatum,
            "the dual complex requires a semisimple datum");
    keys_ = alg.filtration_basis(ball);
    for (size_t i = 0; i < keys_.size(); ++i) key_index_.emplace(keys_[i], static_cast<int>(i));
    const int d = ap.dim_top();
    paras_.resize(d + 1);
    dbasis_.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
      for (const auto& rep : ap.face_representatives()[i]) {
        paras_[i].push_back(parahoric::make_parahoric(alg, ap.spec(rep), true));
        dbasis_[i].push_back(solve_hom_space(paras_[i].back(), rep));
      }
    }
  }

  const Alg& algebra() const { return *alg_; }
  const Apartment& apartment() const { return *ap_; }
  int mdim() const { return m_->dim; }
  int ball() const { return ball_; }
  int key_count() const { return static_cast<int>(keys_.size()); }
  int blocks(int degree) const { return static_cast<int>(paras_[degree].size()); }
  int raw_dim(int degree) const { return blocks(degree) * mdim() * key_count(); }
  const std::vector<std::vector<Elt>>& hom_basis(int degree, int block) const {
    return dbasis_[degree][block];
  }

  int raw_index(int block, int j, int key) const {
    return (block * mdim() + j) * key_count() + key;
  }

  void raw_add(Raw& raw, int block, int j, const Elt& value, const K& scale) const {
    const auto& k = alg_->field();
    for (const auto& [key, c] : value.terms) {
      auto it = key_index_.find(key);
      require(it != key_index_.end(), Errc::TruncationTooSmall, "key outside the dual ball");
      int idx = raw_index(block, j, it->second);
      K v = k.mul(scale, c);
      auto pos = std::lower_bound(raw.begin(), raw.end(), idx,
                                  [](const auto& a, int b) { return a.first < b; });
      if (pos != raw.end() && pos->first == idx) {
        pos->second = k.add(pos->second, v);
        if (k.is_zero(pos->second)) raw.erase(pos);
      } else if (!k.is_zero(v)) {
        raw.insert(pos, {idx, v});
      }
    }
  }

  // value of the (block, j) component of a raw vector, as a Hecke element
  Elt raw_component(const Raw& raw, int block, int j) const {
    Elt out = alg_->zero();
    int lo = raw_index(block, j, 0), hi = raw_index(block, j, key_count() - 1);
    for (const auto& [idx, c] : raw)
      if (idx >= lo && idx <= hi) alg_->add_term(out, keys_[idx - lo], c);
    return out;
  }

  // basis vector phi_b (x) tau_{d^{-1}} of the degree-i term
  struct TermVec {
    int block = 0;
    int phi = 0;
    ProPElt dlift;
    long dlen = 0;
    Raw raw;
  };

  std::vector<TermVec> term_basis(int degree, int dbound) const {
    const auto& w = alg_->weyl();
    const auto& grp = alg_->group();
    std::vector<TermVec> out;
    for (int blk = 0; blk < blocks(degree); ++blk) {
      const auto& rep = ap_->face_representatives()[degree][blk];
      auto ds = w.distinguished_reps(ap_->spec(rep), dbound, true);
      for (size_t phi = 0; phi < dbasis_[degree][blk].size(); ++phi)
        for (const auto& dd : ds) {
          TermVec tv;
          tv.block = blk;
          tv.phi = static_cast<int>(phi);
          tv.dlift = grp.from_weyl(dd);
          tv.dlen = w.length(dd);
          ProPElt dinv = grp.inverse(tv.dlift);
          for (int j = 0; j < mdim(); ++j) {
            // phi_b(e_j) * tau_{d^{-1}}: lengths add, so this is key by key
            Elt moved = alg_->zero();
            for (const auto& [hkey, c] : dbasis_[degree][blk][phi][j].terms)
              alg_->add_term(moved, grp.mult(hkey, dinv), c);
            raw_add(tv.raw, blk, j, moved, alg_->field().one());
          }
          out.push_back(std::move(tv));
        }
    }
    return out;
  }

  // codifferential: degree-1 -> degree (cohomological direction)
  Raw codiff(int degree, const Raw& f) const {
    const auto& w = alg_->weyl();
    const auto& grp = alg_->group();
    const auto& k = alg_->field();
    Raw out;
    for (int blk = 0; blk < blocks(degree); ++blk) {
      const auto& rep = ap_->face_representatives()[degree][blk];
      for (const auto& e : ap_->boundary_data(rep)) {
        int src = 0;
        while (!(ap_->face_representatives()[degree - 1][src] == e.rep)) ++src;
        ProPElt om = grp.from_weyl(e.omega);
        ProPElt om_inv = grp.inverse(om);
        for (int j = 0; j < mdim(); ++j) {
          std::vector<K> v(mdim(), k.zero());
          v[j] = k.one();
          v = module::apply_key(*alg_, *m_, om_inv, std::move(v));
          Elt acc = alg_->zero();
          for (int l = 0; l < mdim(); ++l) {
            if (k.is_zero(v[l])) continue;
            Elt fl = raw_component(f, src, l);
            for (const auto& [key, c] : fl.terms)
              alg_->add_term(acc, grp.mult(om, key), k.mul(v[l], c));
          }
          raw_add(out, blk, j, acc, k.from_long(e.sign));
        }
      }
    }
    return out;
  }

  // m^d with its right action: matrices rho(g) with rho(ab) = rho(b) rho(a)
  module::DenseMat<K> dual_action(const Elt& tau) const {
    auto mat = module::action_matrix(*alg_, *m_, alg_->iota_chamber(tau));
    return module::dense_transpose(alg_->field(), mat);
  }

  // augmentation on the top degree: raw -> m^d coordinates
  std::vector<K> augment(const Raw& f) const {
    const auto& w = alg_->weyl();
    const auto& grp = alg_->group();
    const auto& k = alg_->field();
    const int top = ap_->dim_top();
    require(blocks(top) == 1, Errc::Internal, "top degree must be the chamber block");
    const auto& cspec = ap_->spec(ap_->face_representatives()[top][0]);
    std::vector<K> out(mdim(), k.zero());
    // decompose the components over H = (+)_d H_C-dagger tau_{d^{-1}}:
    // collect per (d, l): phi_d(e_l) as elements of H_C-dagger
    std::map<ProPElt, std::vector<Elt>> phi_of_d;
    for (int l = 0; l < mdim(); ++l) {
      Elt g = raw_component(f, 0, l);
      for (const auto& [key, c] : g.terms) {
        auto [dd, h] = w.facet_factorize(cspec, w.inverse(key.w), true);
        ProPElt dlift = grp.from_weyl(dd);
        ProPElt x = grp.mult(key, dlift);
        require(grp.length(x) == 0, Errc::Internal, "chamber block factorization");
        auto it = phi_of_d.try_emplace(dlift, std::vector<Elt>(mdim(), alg_->zero())).first;
        alg_->add_term(it->second[l], x, c);
      }
    }
    for (const auto& [dlift, phis] : phi_of_d) {
      Elt ic = alg_->iota_chamber(alg_->basis(grp.inverse(dlift)));
      auto mat = module::action_matrix(*alg_, *m_, ic);
      for (int j = 0; j < mdim(); ++j) {
        // v = iota_C(tau_{d^{-1}}) e_j, psi(e_j) += sum_l v_l delta_1(phi(e_l))
        for (int l = 0; l < mdim(); ++l) {
          if (k.is_zero(mat[l][j])) continue;
          auto it = phis[l].terms.find(grp.identity());
          if (it != phis[l].terms.end())
            out[j] = k.add(out[j], k.mul(mat[l][j], it->second));
        }
      }
    }
    return out;
  }

  // the element psi (x) tau of m^d (x)_{H_C-dagger} H, as a raw top-degree vector
  Raw md_tensor(const std::vector<K>& psi, const Elt& tau) const {
    const auto& w = alg_->weyl();
    const auto& grp = alg_->group();
    const auto& k = alg_->field();
    // Delta^{-1}(psi)(x) = sum_{u in Omega-tilde} eps_C(u) psi(tau_{u^{-1}} x) tau_u
    Raw out;
    const auto& para = paras_[ap_->dim_top()][0];
    for (int j = 0; j < mdim(); ++j) {
      Elt val = alg_->zero();
      for (const auto& ukey : para.basis) {
        int eps = w.eps_chamber(ukey.w);
        std::vector<K> e(mdim(), k.zero());
        e[j] = k.one();
        auto v = module::apply_key(*alg_, *m_, grp.inverse(ukey), std::move(e));
        K c = k.zero();
        for (int l = 0; l < mdim(); ++l) c = k.add(c, k.mul(psi[l], v[l]));
        if (eps == -1) c = k.neg(c);
        alg_->add_term(val, ukey, c);
      }
      raw_add(out, 0, j, alg_->mul(val, tau), k.one());
    }
    return out;
  }

  std::vector<K> md_act(const std::vector<K>& psi, const Elt& tau) const {
    const auto& k = alg_->field();
    auto mat = dual_action(tau);
    std::vector<K> out(mdim(), k.zero());
    for (int i = 0; i < mdim(); ++i)
      for (int j = 0; j < mdim(); ++j) out[i] = k.add(out[i], k.mul(mat[i][j], psi[j]));
    return out;
  }

 private:
  const Alg* alg_;
  const Apartment* ap_;
  const FiniteModule<F>* m_;
  int ball_;
  std::vector<ProPElt> keys_;
  std::map<ProPElt, int> key_index_;
  std::vector<std::vector<parahoric::Parahoric<F>>> paras_;
  // dbasis_[degree][block][phi][j] = phi(e_j) as an element of H_F-dagger
  std::vector<std::vector<std::vector<std::vector<Elt>>>> dbasis_;

  // solve Hom_{H_F-dagger}((eps_F) m, H_F-dagger): phi(b x) = j_F(tau_b) phi(x)
  std::vector<std::vector<Elt>> solve_hom_space(const parahoric::Parahoric<F>& p,
                                                const Facet& rep) const {
    const auto& k = alg_->field();
    const auto& w = alg_->weyl();
    const auto& grp = alg_->group();
    const int pd = p.dim();
    const int unknowns = mdim() * pd;  // phi[l][b]
    // generators of H_F-dagger with their module matrices and j_F-twisted
    // left multiplication matrices
    std::vector<std::pair<module::DenseMat<K>, module::DenseMat<K>>> gens;
    auto left_mult = [&](const Elt& g) {
      module::DenseMat<K> lm(pd, std::vector<K>(pd, k.zero()));
      for (int b = 0; b < pd; ++b) {
        auto prod = alg_->mul(g, alg_->basis(p.basis[b]));
        for (const auto& [key, c] : prod.terms) {
          auto it = p.index.find(key);
          require(it != p.index.end(), Errc::Internal, "product left the parahoric algebra");
          lm[it->second][b] = k.add(lm[it->second][b], c);
        }
      }
      return lm;
    };
    const int n = alg_->rd().lattice_rank();
    for (int i = 0; i < n && grp.qm() > 1; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      auto mod = module::action_matrix(*alg_, *m_, alg_->tau_torus(e));
      gens.emplace_back(mod, left_mult(alg_->tau_torus(e)));
    }
    for (int s : p.facet.s_indices) {
      auto g = alg_->tau(w.simple_reflection(s));
      gens.emplace_back(module::action_matrix(*alg_, *m_, g), left_mult(g));
    }
    for (const auto& om : p.facet.omega_f) {
      if (w.is_identity(om)) continue;
      auto g = alg_->tau(om);
      auto mod = module::action_matrix(*alg_, *m_, g);
      auto lm = left_mult(g);
      int eps = w.eps_face(om, rep.s_indices);
      if (eps == -1)
        for (auto& row : lm)
          for (auto& x : row) x = k.neg(x);
      gens.emplace_back(mod, lm);
    }
    // equations: for all gens (A on m, L on P): phi . A = L . phi
    // unknown phi as matrix pd x mdim: columns phi(e_j)
    linalg::SparseMat<F> sys(static_cast<int>(gens.size()) * pd * mdim(), unknowns);
    int row = 0;
    for (const auto& [amat, lmat] : gens) {
      for (int b = 0; b < pd; ++b)
        for (int j = 0; j < mdim(); ++j) {
          // sum_l phi[l][b] A[l][j] - sum_b' L[b][b'] phi[j][b'] = 0
          for (int l = 0; l < mdim(); ++l)
            if (!k.is_zero(amat[l][j]))
              sparse_add_to(k, sys, row, l * pd + b, amat[l][j]);
          for (int b2 = 0; b2 < pd; ++b2)
            if (!k.is_zero(lmat[b][b2]))
              sparse_add_to(k, sys, row, j * pd + b2, k.neg(lmat[b][b2]));
          ++row;
        }
    }
    auto ker = linalg::kernel_basis(k, sys);
    std::vector<std::vector<Elt>> out;
    for (const auto& sol : ker) {
      std::vector<Elt> phi(mdim(), alg_->zero());
      for (const auto& [idx, c] : sol) alg_->add_term(phi[idx / pd], p.basis[idx % pd], c);
      out.push_back(std::move(phi));
    }
    return out;
  }
};

}  // namespace heckeforge::homology
