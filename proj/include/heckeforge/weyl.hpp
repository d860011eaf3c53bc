#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "heckeforge/rootdata.hpp"

namespace heckeforge::weyl {

using rootdata::AffineRoot;
using rootdata::RootDatum;

// Element of the extended affine Weyl group W = W0 x| Lambda, acting on the
// apartment by x -> w0(x + lambda).
struct WeylElt {
  int w0 = 0;     // index into the RootDatum W0 table
  IntVec lambda;  // coords in X_*

  friend bool operator==(const WeylElt& a, const WeylElt& b) {
    return a.w0 == b.w0 && a.lambda == b.lambda;
  }
  friend bool operator<(const WeylElt& a, const WeylElt& b) {
    if (a.w0 != b.w0) return a.w0 < b.w0;
    return std::lexicographical_compare(a.lambda.begin(), a.lambda.end(), b.lambda.begin(),
                                        b.lambda.end());
  }
};

struct WeylEltHash {
  size_t operator()(const WeylElt& w) const {
    size_t h = hash_intvec(w.lambda);
    hash_combine(h, std::hash<int>{}(w.w0));
    return h;
  }
};

// Spherical subset of S_aff together with everything attached to it.
struct FacetSpec {
  std::vector<int> s_indices;         // sorted subset of {0..d}, proper
  std::vector<AffineRoot> pi_f;       // Pi_F
  std::vector<AffineRoot> phi_f_pos;  // Phi_F^+
  std::vector<WeylElt> wf;            // all of W_F; wf[0] = identity
  int wf_longest = 0;                 // index into wf
  std::vector<WeylElt> omega_f;       // finite part of Omega_F (identity first)
  // gl_style central translations stabilize every facet and are implicit

  bool contains_s(int idx) const {
    for (int s : s_indices)
      if (s == idx) return true;
    return false;
  }
};

class Weyl {
 public:
  explicit Weyl(const RootDatum& rd);

  const RootDatum& rd() const { return *rd_; }

  // --- group operations -----------------------------------------------------
  WeylElt identity() const { return {rd_->w0_identity(), IntVec(rd_->lattice_rank(), 0)}; }
  WeylElt translation(const IntVec& lambda) const { return {rd_->w0_identity(), lambda}; }
  WeylElt finite(int w0) const { return {w0, IntVec(rd_->lattice_rank(), 0)}; }
  WeylElt mult(const WeylElt& a, const WeylElt& b) const;
  WeylElt inverse(const WeylElt& a) const;
  bool is_identity(const WeylElt& a) const;
  bool is_translation(const WeylElt& a) const { return a.w0 == rd_->w0_identity(); }

  WeylElt simple_reflection(int aff_idx) const;         // s_A for A in Pi_aff
  WeylElt affine_reflection(const AffineRoot& a) const;  // s_(alpha,h)

  // action on affine roots: w(alpha,h) = (w0(alpha), h - <lambda, alpha>)
  AffineRoot act(const WeylElt& w, const AffineRoot& a) const;
  bool positive_after(const WeylElt& w, const AffineRoot& a) const {
    return rd_->affine_positive(act(w, a));
  }

  // --- length and words -------------------------------------------------------
  // inversion count over the level window |h| <= max|<lambda,alpha>| + 1
  long length(const WeylElt& w) const;
  // closed form length for translations: sum over positive roots |<x,alpha>|
  long translation_length_formula(const IntVec& lambda) const;
  // w = omega * s_{w_1} ... s_{w_l}; returns the affine-simple indices
  std::vector<int> canonical_word(const WeylElt& w) const;
  // precompute split/word data for the length ball; call before sharing the
  // context across threads (later lookups are read-only)
  void warm(int n, int omega_cap = 0) const;
  // right-descent test: l(w s_A) = l(w) + 1  iff  w(A) positive
  bool raises_on_right(const WeylElt& w, int aff_idx) const {
    return positive_after(w, rd_->affine_simples()[aff_idx]);
  }

  // --- Omega ------------------------------------------------------------------
  // length-zero subgroup; torsion part is the full group when semisimple
  const std::vector<WeylElt>& omega_torsion() const { return omega_torsion_; }
  const std::vector<WeylElt>& omega_free_gens() const { return omega_free_; }
  bool omega_infinite() const { return !omega_free_.empty(); }
  long omega_order() const;  // 0 when infinite
  // w = omega * a with a in W_aff; returns (omega, a)
  std::pair<WeylElt, WeylElt> split_omega(const WeylElt& w) const;
  bool in_waff(const WeylElt& w) const;
  // Omega-translate action on affine-simple indices (omega permutes Pi_aff)
  int omega_on_simple(const WeylElt& omega, int aff_idx) const;
  // parity of the permutation omega induces on the vertex labels of the face
  // with the given S_F; for S_F empty this is the chamber character eps_C
  int eps_face(const WeylElt& omega, const std::vector<int>& s_indices) const;
  int eps_chamber(const WeylElt& omega) const { return eps_face(omega, {}); }

  // --- balls --------------------------------------------------------------------
  // W_aff elements grouped by length 0..n
  const std::vector<std::vector<WeylElt>>& waff_ball(int n) const;
  // full ball of the extended group: W_aff-length <= n; for gl_style the
  // central exponents are capped by omega_cap (required > 0 there)
  std::vector<WeylElt> ball(int n, int omega_cap = 0) const;

  // --- facets -------------------------------------------------------------------
  FacetSpec make_facet(std::vector<int> s_indices) const;
  // minimal length coset representatives d with d(Phi_F^+) positive
  bool in_distinguished(const FacetSpec& f, const WeylElt& d) const;
  std::vector<WeylElt> distinguished_reps(const FacetSpec& f, int max_len, bool dagger,
                                          int omega_cap = 0) const;
  // reduce w to its minimal-length representative in w W_F
  WeylElt to_distinguished(const FacetSpec& f, WeylElt w) const;
  // canonical representative of d Omega_F (right action); central part zeroed
  WeylElt dagger_rep(const FacetSpec& f, const WeylElt& d) const;
  // w = d * h with d in D_F (resp. the dagger variant), lengths additive
  std::pair<WeylElt, WeylElt> facet_factorize(const FacetSpec& f, const WeylElt& w,
                                              bool dagger) const;

  // --- Bruhat order ----------------------------------------------------------------
  // subword order on W_aff parts, equal Omega parts
  bool bruhat_leq(const WeylElt& v, const WeylElt& w) const;

 private:
  const RootDatum* rd_;
  std::vector<WeylElt> omega_torsion_;
  std::vector<WeylElt> omega_free_;
  IntMat coroot_adj_;  // adjugate of the simple-coroot matrix (ss block)
  long coroot_det_ = 1;
  mutable std::vector<std::vector<WeylElt>> waff_ball_;  // grown on demand
  struct CanonData {
    WeylElt omega;
    WeylElt aff;
    std::vector<int> word;
  };
  mutable std::unordered_map<WeylElt, CanonData, WeylEltHash> canon_cache_;
  mutable std::unordered_map<WeylElt, long, WeylEltHash> len_cache_;

  void build_omega();
  bool lambda_in_coroot_lattice(const IntVec& lambda) const;
};

}  // namespace heckeforge::weyl
