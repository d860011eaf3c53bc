#pragma once

#include <string>
#include <vector>

#include "heckeforge/common.hpp"
#include "heckeforge/errors.hpp"

namespace heckeforge::rootdata {

enum class CartanType { A1, A2, B2, G2 };
enum class Isogeny { SimplyConnected, Adjoint, GlStyle };

CartanType cartan_type_from_string(const std::string& s);
Isogeny isogeny_from_string(const std::string& s);
std::string to_string(CartanType t);
std::string to_string(Isogeny i);

// An affine root (alpha, h), the affine function alpha(.) + h on the apartment.
// `root` indexes into RootDatum::roots.
struct AffineRoot {
  int root = 0;
  long level = 0;
  friend bool operator==(const AffineRoot&, const AffineRoot&) = default;
  friend auto operator<=>(const AffineRoot&, const AffineRoot&) = default;
};

// Reduced irreducible root system with a chosen cocharacter lattice.
//
// Coordinates: X_* is identified with Z^lattice_rank.  A cocharacter is a
// coordinate vector; a root alpha is stored through the linear functional
// lambda -> <lambda, alpha>, i.e. as the vector of pairings with the basis.
// The pairing X_* x X^* -> Z is then the dot product.
class RootDatum {
 public:
  RootDatum(CartanType type, Isogeny isogeny, int central_rank);

  CartanType type() const { return type_; }
  Isogeny isogeny() const { return isogeny_; }
  int central_rank() const { return central_rank_; }
  int rank() const { return rank_; }                  // semisimple rank d
  int lattice_rank() const { return lattice_rank_; }  // d + central_rank
  bool semisimple() const { return central_rank_ == 0; }
  const IntMat& cartan() const { return cartan_; }

  int num_roots() const { return static_cast<int>(root_func_.size()); }
  const IntVec& root_functional(int r) const { return root_func_[r]; }
  const IntVec& coroot(int r) const { return coroot_vec_[r]; }
  const IntVec& root_simple_coords(int r) const { return root_simple_[r]; }
  bool is_positive_root(int r) const { return positive_[r]; }
  int negate_root(int r) const { return negation_[r]; }
  int simple_root(int i) const { return simple_[i]; }  // i < rank()
  const std::vector<int>& positive_roots() const { return positive_list_; }
  int find_root(const IntVec& simple_coords) const;  // -1 if absent

  long pair(const IntVec& cochar, int root) const { return dot(cochar, root_func_[root]); }

  // --- finite Weyl group, as permutations of the root list -----------------
  int w0_size() const { return static_cast<int>(w0_perm_.size()); }
  int w0_identity() const { return 0; }
  int w0_mult(int a, int b) const { return w0_mult_[a * w0_size() + b]; }
  int w0_inverse(int a) const { return w0_inv_[a]; }
  int w0_simple(int i) const { return w0_simple_[i]; }
  int w0_apply_root(int a, int r) const { return w0_perm_[a][r]; }
  int w0_length(int a) const { return w0_len_[a]; }
  int w0_longest() const { return w0_longest_; }
  // action on X_* coordinates
  IntVec w0_apply(int a, const IntVec& cochar) const { return mat_apply(w0_mat_[a], cochar); }
  const IntMat& w0_matrix(int a) const { return w0_mat_[a]; }
  // reflection s_alpha for an arbitrary root (as W0 element index)
  int w0_reflection(int root) const { return refl_elt_[root]; }

  // --- affine roots ---------------------------------------------------------
  // Pi_aff = Pi cup {(alpha,1) : alpha minimal}; finite simples come first.
  const std::vector<AffineRoot>& affine_simples() const { return aff_simple_; }
  int num_affine_simples() const { return static_cast<int>(aff_simple_.size()); }
  const std::vector<int>& minimal_roots() const { return minimal_roots_; }

  // positivity: h > 0, or h = 0 and alpha positive
  bool affine_positive(const AffineRoot& a) const {
    return a.level > 0 || (a.level == 0 && positive_[a.root]);
  }

  std::string describe_root(int r) const;
  std::string describe_affine(const AffineRoot& a) const;

 private:
  CartanType type_;
  Isogeny isogeny_;
  int central_rank_;
  int rank_;
  int lattice_rank_;
  IntMat cartan_;

  std::vector<IntVec> root_simple_;   // coords in the simple-root basis
  std::vector<IntVec> coroot_simple_; // coords in the simple-coroot basis
  std::vector<IntVec> root_func_;     // functional on X_*
  std::vector<IntVec> coroot_vec_;    // coords in X_*
  std::vector<bool> positive_;
  std::vector<int> negation_;
  std::vector<int> simple_;
  std::vector<int> positive_list_;
  std::vector<int> minimal_roots_;
  std::vector<AffineRoot> aff_simple_;

  std::vector<std::vector<int>> w0_perm_;
  std::vector<IntMat> w0_mat_;
  std::vector<int> w0_mult_;
  std::vector<int> w0_inv_;
  std::vector<int> w0_simple_;
  std::vector<int> w0_len_;
  std::vector<int> refl_elt_;
  int w0_longest_ = 0;

  void build_roots();
  void build_w0();
  void build_affine();
  void validate() const;
};

RootDatum build_root_datum(CartanType type, Isogeny isogeny, int central_rank = 0);

// s_a(b) for affine roots: the reflection attached to a, applied to b.
AffineRoot reflect(const RootDatum& rd, const AffineRoot& a, const AffineRoot& b);

}  // namespace heckeforge::rootdata
