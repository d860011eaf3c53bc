#pragma once

#include <map>
#include <string>
#include <vector>

#include "heckeforge/field.hpp"
#include "heckeforge/flatmap.hpp"
#include "heckeforge/prop.hpp"

namespace heckeforge::hecke {

using weyl::ProP;
using weyl::ProPElt;
using weyl::Weyl;
using weyl::WeylElt;

enum class AlgebraKind { ProP, Iwahori };

// H (pro-p Iwahori-Hecke) or H' (Iwahori-Hecke) over an exact field, for one
// (root datum, q, k).  Elements are finitely supported combinations of basis
// symbols tau_w indexed by the pro-p cover (resp. by W, realized as the cover
// with trivial torus).
template <class F>
class Algebra {
 public:
  using K = typename F::Elem;

  struct Elt {
    const void* tag = nullptr;
    FlatMap<ProPElt, K> terms;
  };

  Algebra(const Weyl& w, long q, F field, AlgebraKind kind)
      : w_(&w),
        q_(q),
        field_(std::move(field)),
        kind_(kind),
        grp_(w, q, kind == AlgebraKind::ProP ? q - 1 : 1) {
    prime_power_base(q);  // validates
  }

  const Weyl& weyl() const { return *w_; }
  const rootdata::RootDatum& rd() const { return w_->rd(); }
  const ProP& group() const { return grp_; }
  const F& field() const { return field_; }
  long q() const { return q_; }
  AlgebraKind kind() const { return kind_; }
  const void* tag() const { return this; }
  K q_in_k() const { return field_.from_long(q_); }

  bool same_algebra(const Elt& a) const { return a.tag == tag(); }
  void check(const Elt& a) const {
    require(same_algebra(a), Errc::MismatchedAlgebra, "element belongs to another algebra");
  }

  // --- element constructors ---------------------------------------------------
  Elt zero() const { return Elt{tag(), {}}; }
  Elt unit() const { return basis(grp_.identity()); }
  Elt basis(const ProPElt& w) const {
    Elt e{tag(), {}};
    e.terms.emplace(w, field_.one());
    return e;
  }
  Elt tau(const WeylElt& w) const { return basis(grp_.from_weyl(w)); }
  Elt tau_torus(const IntVec& t) const { return basis(grp_.torus_elt(t)); }

  void add_term(Elt& e, const ProPElt& w, const K& c) const {
    if (field_.is_zero(c)) return;
    auto it = e.terms.find(w);
    if (it == e.terms.end()) {
      e.terms.emplace(w, c);
    } else {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) e.terms.erase(it);
    }
  }
  Elt add(const Elt& a, const Elt& b) const {
    check(a);
    check(b);
    Elt out = a;
    for (const auto& [w, c] : b.terms) add_term(out, w, c);
    return out;
  }
  Elt sub(const Elt& a, const Elt& b) const { return add(a, scale(field_.from_long(-1), b)); }
  Elt scale(const K& c, const Elt& a) const {
    Elt out{tag(), {}};
    if (field_.is_zero(c)) return out;
    for (const auto& [w, v] : a.terms) {
      K p = field_.mul(c, v);
      if (!field_.is_zero(p)) out.terms.emplace(w, p);
    }
    return out;
  }
  bool is_zero(const Elt& a) const { return a.terms.empty(); }
  // terms are kept canonical (sorted keys, normalized nonzero coefficients)
  bool eq(const Elt& a, const Elt& b) const { return a.terms == b.terms; }

  long deg(const Elt& a) const {
    long d = -1;
    for (const auto& [w, c] : a.terms) d = std::max(d, grp_.length(w));
    return d;
  }

  // sum of tau_t over the subgroup T_s(F_q); the identity for the Iwahori kind
  Elt theta(int aff_idx) const {
    Elt out = zero();
    if (kind_ == AlgebraKind::Iwahori) {
      add_term(out, grp_.identity(), field_.from_long(q_ - 1));
      return out;
    }
    for (const auto& t : grp_.theta_subgroup(aff_idx))
      add_term(out, grp_.torus_elt(t), field_.one());
    return out;
  }

  // --- multiplication ------------------------------------------------------------
  // right recursion along the canonical word of each basis factor
  Elt mul_basis_simple(const Elt& a, int aff_idx) const {
    Elt out = zero();
    WeylElt s = w_->simple_reflection(aff_idx);
    ProPElt stilde = grp_.from_weyl(s);
    for (const auto& [u, c] : a.terms) {
      if (w_->raises_on_right(u.w, aff_idx)) {
        add_term(out, grp_.mult(u, stilde), c);
      } else if (kind_ == AlgebraKind::ProP) {
        // tau_u tau_s = q tau_{us} + sum_{t in T_s} tau_{ut}
        add_term(out, grp_.mult(u, stilde), field_.mul(c, q_in_k()));
        for (const auto& t : grp_.theta_subgroup(aff_idx))
          add_term(out, grp_.mult(u, grp_.torus_elt(t)), c);
      } else {
        // tau'_u tau'_s = q tau'_{us} + (q-1) tau'_u
        add_term(out, grp_.mult(u, stilde), field_.mul(c, q_in_k()));
        add_term(out, u, field_.mul(c, field_.from_long(q_ - 1)));
      }
    }
    return out;
  }

  Elt mul_basis(const Elt& a, const ProPElt& v) const {
    // multiply on the right by the basis element tau_v
    Elt cur = zero();
    auto [om, aff] = w_->split_omega(v.w);
    ProPElt head = grp_.mult(grp_.torus_elt(v.torus), grp_.from_weyl(om));
    for (const auto& [u, c] : a.terms) add_term(cur, grp_.mult(u, head), c);
    for (int i : w_->canonical_word(aff)) cur = mul_basis_simple(cur, i);
    return cur;
  }

  Elt mul(const Elt& a, const Elt& b) const {
    check(a);
    check(b);
    Elt out = zero();
    for (const auto& [v, c] : b.terms) {
      Elt piece = mul_basis(a, v);
      for (const auto& [w, d] : piece.terms) add_term(out, w, field_.mul(d, c));
    }
    return out;
  }

  // --- involutions ------------------------------------------------------------------
  // iota(tau_s) = theta_s - tau_s (resp. (q-1) - tau'_s); identity on length zero
  Elt iota(const Elt& a) const {
    check(a);
    Elt out = zero();
    for (const auto& [u, c] : a.terms) {
      auto [om, aff] = w_->split_omega(u.w);
      Elt cur = basis(grp_.mult(grp_.torus_elt(u.torus), grp_.from_weyl(om)));
      for (int i : w_->canonical_word(aff)) {
        Elt t = mul(cur, theta(i));
        cur = sub(t, mul_basis_simple(cur, i));
      }
      for (const auto& [w, d] : cur.terms) add_term(out, w, field_.mul(d, c));
    }
    return out;
  }

  // j_C: scale tau_w by eps_C(omega part of w)
  Elt j_chamber(const Elt& a) const {
    check(a);
    Elt out = zero();
    for (const auto& [u, c] : a.terms) {
      auto [om, aff] = w_->split_omega(u.w);
      int s = w_->eps_chamber(om);
      add_term(out, u, s == 1 ? c : field_.neg(c));
    }
    return out;
  }

  Elt iota_chamber(const Elt& a) const { return iota(j_chamber(a)); }

  // tau^*_w = (-1)^{l(w)} iota(tau_{w^{-1}})
  Elt tau_star(const ProPElt& w) const {
    Elt e = iota(basis(grp_.inverse(w)));
    if (grp_.length(w) % 2 == 1) e = scale(field_.from_long(-1), e);
    return e;
  }

  // --- filtration -----------------------------------------------------------------
  // all basis keys of F_n, finite only when Omega is finite unless capped
  std::vector<ProPElt> filtration_basis(int n, int omega_cap = 0) const {
    std::vector<ProPElt> out;
    for (const auto& w : w_->ball(n, omega_cap))
      for (const auto& t : grp_.torus_all()) out.push_back(ProPElt{t, w});
    std::sort(out.begin(), out.end());
    return out;
  }

  // the central idempotent (1/|T0/T1|) sum tau_t (pro-p kind, q-1 nonzero in k)
  Elt eps1() const {
    require(kind_ == AlgebraKind::ProP, Errc::MismatchedAlgebra, "eps1 lives in H");
    K sz = field_.from_long(grp_.torus_size());
    require(!field_.is_zero(field_.from_long(q_ - 1)), Errc::PoincareVanishes,
            "q-1 vanishes in k: eps_1 is not defined");
    Elt out = zero();
    K c = field_.inv(sz);
    for (const auto& t : grp_.torus_all()) add_term(out, grp_.torus_elt(t), c);
    return out;
  }

  std::string to_string(const Elt& a) const {
    if (a.terms.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : a.terms) {
      if (!s.empty()) s += " + ";
      s += field_.to_string(c) + "*tau[" + key_string(w) + "]";
    }
    return s;
  }
  std::string key_string(const ProPElt& w) const {
    std::string s = "(";
    for (size_t i = 0; i < w.torus.size(); ++i) s += std::to_string(w.torus[i]) + (i + 1 < w.torus.size() ? "," : "");
    s += ";w0=" + std::to_string(w.w.w0) + ";";
    for (size_t i = 0; i < w.w.lambda.size(); ++i)
      s += std::to_string(w.w.lambda[i]) + (i + 1 < w.w.lambda.size() ? "," : "");
    return s + ")";
  }

 private:
  const Weyl* w_;
  long q_;
  F field_;
  AlgebraKind kind_;
  ProP grp_;
};

// ---------------------------------------------------------------------------
// characters
// ---------------------------------------------------------------------------

// A character of H given by its values on the generators; validated against
// the defining relations at construction.
template <class F>
class Character {
 public:
  using K = typename F::Elem;
  using Alg = Algebra<F>;

  // values: torus basis generators e_i, simple affine lifts, Omega torsion
  // elements and free generators
  Character(const Alg& alg, std::vector<K> torus_gen_values, std::vector<K> simple_values,
            std::vector<K> omega_torsion_values, std::vector<K> omega_free_values)
      : alg_(&alg),
        torus_(std::move(torus_gen_values)),
        simple_(std::move(simple_values)),
        omega_(std::move(omega_torsion_values)),
        omega_free_(std::move(omega_free_values)) {
    validate();
  }

  static Character trivial(const Alg& alg) { return constant_on_length(alg, alg.q_in_k()); }
  static Character sign(const Alg& alg) {
    return constant_on_length(alg, alg.field().from_long(-1));
  }

  const Alg& algebra() const { return *alg_; }

  K eval_key(const ProPElt& w) const {
    const auto& k = alg_->field();
    K out = k.one();
    for (size_t i = 0; i < w.torus.size(); ++i)
      out = k.mul(out, power(torus_[i], w.torus[i]));
    auto [om, aff] = alg_->weyl().split_omega(w.w);
    out = k.mul(out, omega_value(om));
    for (int i : alg_->weyl().canonical_word(aff)) out = k.mul(out, simple_[i]);
    return out;
  }

  K eval(const typename Alg::Elt& a) const {
    alg_->check(a);
    const auto& k = alg_->field();
    K out = k.zero();
    for (const auto& [w, c] : a.terms) out = k.add(out, k.mul(c, eval_key(w)));
    return out;
  }

 private:
  const Alg* alg_;
  std::vector<K> torus_;
  std::vector<K> simple_;
  std::vector<K> omega_;       // per torsion element, aligned with omega_torsion()
  std::vector<K> omega_free_;  // per free generator

  static Character constant_on_length(const Alg& alg, const K& s_value) {
    const auto& k = alg.field();
    const auto& w = alg.weyl();
    std::vector<K> torus(alg.rd().lattice_rank(), k.one());
    std::vector<K> simple(alg.rd().num_affine_simples(), s_value);
    std::vector<K> om(w.omega_torsion().size(), k.one());
    std::vector<K> omf(w.omega_free_gens().size(), k.one());
    return Character(alg, std::move(torus), std::move(simple), std::move(om), std::move(omf));
  }

  K power(const K& base, long e) const {
    const auto& k = alg_->field();
    K out = k.one();
    for (long i = 0; i < e; ++i) out = k.mul(out, base);
    return out;
  }

  K omega_value(const WeylElt& om) const {
    const auto& k = alg_->field();
    const auto& w = alg_->weyl();
    K out = k.one();
    WeylElt rem = om;
    if (w.omega_infinite()) {
      const auto& gens = w.omega_free_gens();
      for (size_t g = 0; g < gens.size(); ++g) {
        long e = om.lambda[alg_->rd().rank() + g];
        K val = omega_free_[g];
        if (e < 0) {
          val = k.inv(val);
          e = -e;
        }
        out = k.mul(out, power(val, e));
        for (size_t i = 0; i < rem.lambda.size(); ++i)
          rem.lambda[i] -= om.lambda[alg_->rd().rank() + g] * gens[g].lambda[i];
      }
    }
    const auto& tors = w.omega_torsion();
    for (size_t i = 0; i < tors.size(); ++i)
      if (tors[i] == rem) return k.mul(out, omega_[i]);
    fail(Errc::Internal, "omega part not found");
  }

  void validate() const {
    const auto& k = alg_->field();
    const auto& w = alg_->weyl();
    const auto& grp = alg_->group();
    auto chk = [&](bool c) {
      require(c, Errc::InconsistentCharacter, "character violates the defining relations");
    };
    // torus values have the right order and are Weyl invariant
    for (size_t i = 0; i < torus_.size(); ++i) chk(k.eq(power(torus_[i], grp.qm()), k.one()));
    // quadratic relations
    for (int i = 0; i < alg_->rd().num_affine_simples(); ++i) {
      K lhs = k.mul(simple_[i], simple_[i]);
      K rhs = k.mul(alg_->q_in_k(), eval_key(grp.torus_elt(grp.s_squared_torus(i))));
      K th = k.zero();
      if (alg_->kind() == AlgebraKind::ProP) {
        for (const auto& t : grp.theta_subgroup(i)) th = k.add(th, eval_key(grp.torus_elt(t)));
      } else {
        th = k.from_long(alg_->q() - 1);
      }
      rhs = k.add(rhs, k.mul(simple_[i], th));
      chk(k.eq(lhs, rhs));
      // s-conjugation on the torus: chi(s(t)) = chi(t)
      for (size_t j = 0; j < torus_.size(); ++j) {
        IntVec e(torus_.size(), 0);
        e[j] = 1;
        IntVec img = grp.act_torus(w.simple_reflection(i), e);
        chk(k.eq(eval_key(grp.torus_elt(img)), torus_[j]));
      }
    }
    // omega torsion values multiply and conjugate consistently
    const auto& tors = w.omega_torsion();
    for (size_t i = 0; i < tors.size(); ++i)
      for (size_t j = 0; j < tors.size(); ++j) {
        WeylElt p = w.mult(tors[i], tors[j]);
        chk(k.eq(omega_value(p), k.mul(omega_[i], omega_[j])));
      }
    for (size_t i = 0; i < tors.size(); ++i)
      for (int s = 0; s < alg_->rd().num_affine_simples(); ++s)
        chk(k.eq(simple_[w.omega_on_simple(tors[i], s)], simple_[s]));
  }
};

}  // namespace heckeforge::hecke
