#pragma once

#include "heckeforge/weyl.hpp"

namespace heckeforge::weyl {

// Element of the pro-p cover: torus part in T0/T1 = X_* (x) Z/(q-1) followed by
// the canonical lift of the W part.  An element (t, w) stands for t * w-hat
// where w-hat = omega-tilde * n_{s_1} ... n_{s_l} along the canonical word.
struct ProPElt {
  IntVec torus;  // entries in [0, qm)
  WeylElt w;

  friend bool operator==(const ProPElt& a, const ProPElt& b) {
    return a.torus == b.torus && a.w == b.w;
  }
  friend bool operator<(const ProPElt& a, const ProPElt& b) {
    if (a.w == b.w)
      return std::lexicographical_compare(a.torus.begin(), a.torus.end(), b.torus.begin(),
                                          b.torus.end());
    return a.w < b.w;
  }
};

struct ProPEltHash {
  size_t operator()(const ProPElt& x) const {
    size_t h = hash_intvec(x.torus);
    hash_combine(h, WeylEltHash{}(x.w));
    return h;
  }
};

// The group W-tilde for a fixed q.  Lift normalizations: omega-tilde lifts are
// multiplicative and conjugate the n_s to each other; n_s^2 = coroot(-1).
// Instantiating with torus_modulus 1 collapses the cover and yields plain W,
// which is how Iwahori-Hecke basis keys are represented.
class ProP {
 public:
  ProP(const Weyl& weyl, long q, long torus_modulus);

  const Weyl& weyl() const { return *w_; }
  const RootDatum& rd() const { return w_->rd(); }
  long q() const { return q_; }
  long qm() const { return qm_; }  // torus modulus
  long torus_size() const;         // |T0/T1| = qm^lattice_rank

  ProPElt identity() const { return {IntVec(rd().lattice_rank(), 0), w_->identity()}; }
  ProPElt from_weyl(const WeylElt& w) const { return {IntVec(rd().lattice_rank(), 0), w}; }
  ProPElt torus_elt(IntVec t) const { return {reduce(std::move(t)), w_->identity()}; }

  bool is_identity(const ProPElt& a) const;
  long length(const ProPElt& a) const { return w_->length(a.w); }

  ProPElt mult(const ProPElt& a, const ProPElt& b) const;
  ProPElt inverse(const ProPElt& a) const;

  // conjugation action of W on the torus quotient (through the finite part)
  IntVec act_torus(const WeylElt& w, const IntVec& t) const;

  // torus part of s-tilde^2 = coroot(-1) for the affine simple s
  IntVec s_squared_torus(int aff_idx) const;
  // the subgroup T_s(F_q) of T0/T1: the rational points of the image torus of
  // the coroot, i.e. the multiples of its primitive generator
  std::vector<IntVec> theta_subgroup(int aff_idx) const;

  // all torus vectors (qm^lattice_rank of them), lexicographic
  std::vector<IntVec> torus_all() const;

  IntVec reduce(IntVec t) const;

 private:
  const Weyl* w_;
  long q_;
  long qm_;
  long c_minus_one_;  // class of -1 in Z/qm

  ProPElt mult_simple(ProPElt a, int aff_idx) const;
};

}  // namespace heckeforge::weyl
