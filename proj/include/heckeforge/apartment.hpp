#pragma once

#include <map>
#include <utility>
#include <vector>

#include "heckeforge/weyl.hpp"

namespace heckeforge::apartment {

using rootdata::RootDatum;
using weyl::FacetSpec;
using weyl::Weyl;
using weyl::WeylElt;

// A facet of the standard apartment in normal form: the unique W_aff-translate
// of a face of the closed standard chamber, with minimal-length position.
struct Facet {
  std::vector<int> s_indices;  // base face of C-bar (subset of affine simples)
  WeylElt pos;                 // in W_aff, minimal in pos * W_F

  friend bool operator==(const Facet& a, const Facet& b) {
    return a.s_indices == b.s_indices && a.pos == b.pos;
  }
  friend bool operator<(const Facet& a, const Facet& b) {
    if (a.s_indices != b.s_indices) return a.s_indices < b.s_indices;
    return a.pos < b.pos;
  }
};

class Apartment {
 public:
  explicit Apartment(const Weyl& w);

  const Weyl& weyl() const { return *w_; }
  const RootDatum& rd() const { return w_->rd(); }
  int dim_top() const { return rd().rank(); }

  const FacetSpec& spec(const std::vector<int>& s_indices) const;
  const FacetSpec& spec(const Facet& f) const { return spec(f.s_indices); }

  Facet chamber() const { return face({}); }
  Facet face(std::vector<int> s_indices) const;  // face of C-bar
  Facet normalize(const std::vector<int>& s_indices, const WeylElt& position) const;
  Facet apply(const WeylElt& w, const Facet& f) const;
  int dim(const Facet& f) const { return dim_top() - static_cast<int>(f.s_indices.size()); }
  bool is_chamber(const Facet& f) const { return f.s_indices.empty(); }

  long gallery_distance(const Facet& a, const Facet& b) const;
  std::vector<Facet> chambers_containing(const Facet& f) const;
  // the unique chamber containing f in its closure closest to C (verified)
  Facet closest_chamber(const Facet& f) const;

  // vertex labels of the base face, ascending (vertex A <-> S_aff minus {A})
  std::vector<int> vertex_labels(const Facet& f) const;
  Facet vertex(const Facet& f, int label) const;

  // Omega-orbit representatives of the i-dimensional faces of C-bar, i = 0..d
  const std::vector<std::vector<Facet>>& face_representatives() const { return reps_; }
  // face of C-bar  ->  (representative, omega) with omega * rep == face
  std::pair<Facet, WeylElt> to_representative(const Facet& face) const;

  // +-1: does w preserve the orientation of the facet it stabilizes?
  int orientation_character(const Facet& f, const WeylElt& w) const;

  struct BoundaryEntry {
    Facet rep;      // F' in F_{i-1}
    WeylElt omega;  // the face of F-bar is omega * rep
    int sign;       // eps(F, F', omega)
  };
  // F must be one of the stored representatives (dim >= 1)
  std::vector<BoundaryEntry> boundary_data(const Facet& f) const;
  // eps(F, F', omega) for an arbitrary coset representative omega; jpos indexes
  // vertex_labels(f) and selects which face of F-bar is meant
  int boundary_sign(const Facet& f, size_t jpos, const Facet& rep, const WeylElt& omega) const;

  // orientation sign of a representative (reference data; +1 except where the
  // codimension-one normalization c_F = c_{C,F} forces a sign)
  int orientation_sign(const Facet& rep) const;
  void set_orientation_flip(bool flip);
  bool orientation_flip() const { return flip_; }

  // all facets contained in the closure of a chamber at distance <= n
  std::vector<Facet> facets_within(int n) const;

 private:
  const Weyl* w_;
  mutable std::map<std::vector<int>, FacetSpec> specs_;
  std::vector<std::vector<Facet>> reps_;
  bool flip_ = false;

  int perm_parity(const std::vector<int>& from, const std::vector<int>& to) const;
};

}  // namespace heckeforge::apartment
