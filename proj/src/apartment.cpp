#include "heckeforge/apartment.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace heckeforge::apartment {

namespace {
std::mutex g_spec_mutex;
}

Apartment::Apartment(const Weyl& w) : w_(&w) {
  const int d = dim_top();
  const int ns = rd().num_affine_simples();
  // all proper subsets of S_aff, grouped into Omega-orbits per dimension
  std::vector<std::vector<int>> subsets;
  for (int mask = 0; mask < (1 << ns) - 1; ++mask) {
    std::vector<int> s;
    for (int i = 0; i < ns; ++i)
      if (mask & (1 << i)) s.push_back(i);
    subsets.push_back(s);
  }
  reps_.assign(d + 1, {});
  std::set<std::vector<int>> taken;
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  for (const auto& s : subsets) {
    if (taken.count(s)) continue;
    int i = d - static_cast<int>(s.size());
    reps_[i].push_back(Facet{s, w_->identity()});
    for (const auto& om : w_->omega_torsion()) {
      std::vector<int> img;
      for (int idx : s) img.push_back(w_->omega_on_simple(om, idx));
      std::sort(img.begin(), img.end());
      taken.insert(img);
    }
  }
}

const FacetSpec& Apartment::spec(const std::vector<int>& s_indices) const {
  std::lock_guard<std::mutex> lock(g_spec_mutex);
  auto it = specs_.find(s_indices);
  if (it == specs_.end()) it = specs_.emplace(s_indices, w_->make_facet(s_indices)).first;
  return it->second;
}

Facet Apartment::face(std::vector<int> s_indices) const {
  std::sort(s_indices.begin(), s_indices.end());
  return Facet{std::move(s_indices), w_->identity()};
}

Facet Apartment::normalize(const std::vector<int>& s_indices, const WeylElt& position) const {
  auto [om, aff] = w_->split_omega(position);
  WeylElt a = w_->mult(position, w_->inverse(om));  // W_aff part, omega on the right
  std::vector<int> base;
  for (int idx : s_indices) base.push_back(w_->omega_on_simple(om, idx));
  std::sort(base.begin(), base.end());
  WeylElt pos = w_->to_distinguished(spec(base), a);
  return Facet{std::move(base), pos};
}

Facet Apartment::apply(const WeylElt& w, const Facet& f) const {
  return normalize(f.s_indices, w_->mult(w, f.pos));
}

long Apartment::gallery_distance(const Facet& a, const Facet& b) const {
  require(is_chamber(a) && is_chamber(b), Errc::NotAChamber,
          "gallery distance is defined between chambers");
  return w_->length(w_->mult(w_->inverse(a.pos), b.pos));
}

std::vector<Facet> Apartment::chambers_containing(const Facet& f) const {
  const FacetSpec& fs = spec(f);
  std::set<Facet> out;
  for (const auto& wf : fs.wf)
    out.insert(Facet{{}, w_->mult(f.pos, wf)});
  return {out.begin(), out.end()};
}

Facet Apartment::closest_chamber(const Facet& f) const {
  auto chambers = chambers_containing(f);
  Facet best = chambers.front();
  long bestd = w_->length(best.pos);
  int nbest = 1;
  for (size_t i = 1; i < chambers.size(); ++i) {
    long d = w_->length(chambers[i].pos);
    if (d < bestd) {
      best = chambers[i];
      bestd = d;
      nbest = 1;
    } else if (d == bestd) {
      ++nbest;
    }
  }
  require(nbest == 1, Errc::Internal, "closest chamber is not unique");
  return best;
}

std::vector<int> Apartment::vertex_labels(const Facet& f) const {
  std::vector<int> out;
  for (int i = 0; i < rd().num_affine_simples(); ++i)
    if (!std::count(f.s_indices.begin(), f.s_indices.end(), i)) out.push_back(i);
  return out;
}

Facet Apartment::vertex(const Facet& f, int label) const {
  std::vector<int> s;
  for (int i = 0; i < rd().num_affine_simples(); ++i)
    if (i != label) s.push_back(i);
  return normalize(s, f.pos);
}

std::pair<Facet, WeylElt> Apartment::to_representative(const Facet& face) const {
  require(w_->is_identity(face.pos), Errc::Internal, "to_representative expects a face of C-bar");
  int i = dim(face);
  for (const auto& rep : reps_[i])
    for (const auto& om : w_->omega_torsion()) {
      std::vector<int> img;
      for (int idx : rep.s_indices) img.push_back(w_->omega_on_simple(om, idx));
      std::sort(img.begin(), img.end());
      if (img == face.s_indices) return {rep, om};
    }
  fail(Errc::Internal, "face has no stored representative");
}

int Apartment::perm_parity(const std::vector<int>& from, const std::vector<int>& to) const {
  // parity of the permutation carrying `from` to `to` (same entries)
  std::vector<int> perm(from.size());
  for (size_t i = 0; i < from.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    require(it != to.end(), Errc::Internal, "vertex lists do not match");
    perm[i] = static_cast<int>(it - to.begin());
  }
  int parity = 1;
  std::vector<bool> seen(perm.size(), false);
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) parity = -parity;
  }
  return parity;
}

int Apartment::orientation_character(const Facet& f, const WeylElt& w) const {
  Facet img = apply(w, f);
  require(img == f, Errc::DoesNotStabilize, "element does not stabilize the facet");
  auto labels = vertex_labels(f);
  if (labels.size() <= 1) return 1;
  std::vector<Facet> verts, imgs;
  for (int a : labels) verts.push_back(vertex(f, a));
  for (const auto& v : verts) imgs.push_back(apply(w, v));
  std::vector<int> perm(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    auto it = std::find(verts.begin(), verts.end(), imgs[i]);
    require(it != verts.end(), Errc::Internal, "stabilizer does not permute vertices");
    perm[i] = static_cast<int>(it - verts.begin());
  }
  std::vector<int> id(perm.size());
  for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return perm_parity(perm, id);
}

int Apartment::orientation_sign(const Facet& rep) const {
  // c_F = c_{C,F} for codimension-one representatives: deleting vertex j from
  // the chamber's ascending list carries the sign (-1)^j.  Vertices always
  // keep the canonical orientation, so in rank one the parity stays inside
  // the boundary signs instead.
  int sign = 1;
  int d = dim_top();
  if (d >= 2 && dim(rep) == d - 1) {
    int j = rep.s_indices.front();
    if (j % 2 == 1) sign = -sign;
    if (flip_) sign = -sign;
  }
  if (dim(rep) == d && flip_) sign = -sign;
  return sign;
}

void Apartment::set_orientation_flip(bool flip) { flip_ = flip; }

int Apartment::boundary_sign(const Facet& f, size_t jpos, const Facet& rep,
                             const WeylElt& omega) const {
  auto labels = vertex_labels(f);
  require(jpos < labels.size(), Errc::Internal, "vertex position out of range");
  std::vector<int> induced;
  for (size_t k = 0; k < labels.size(); ++k)
    if (k != jpos) induced.push_back(labels[k]);
  int induced_sign = orientation_sign(f) * (jpos % 2 == 0 ? 1 : -1);
  std::vector<int> moved;
  for (int a : vertex_labels(rep)) moved.push_back(w_->omega_on_simple(omega, a));
  {
    std::vector<int> sorted = moved;
    std::sort(sorted.begin(), sorted.end());
    require(sorted == induced, Errc::Internal, "omega does not carry the representative there");
  }
  if (induced.size() <= 1) return induced_sign;
  return induced_sign * orientation_sign(rep) * perm_parity(moved, induced);
}

std::vector<Apartment::BoundaryEntry> Apartment::boundary_data(const Facet& f) const {
  require(dim(f) >= 1, Errc::Internal, "boundary_data needs dim >= 1");
  require(w_->is_identity(f.pos), Errc::Internal, "boundary_data expects a representative");
  std::vector<BoundaryEntry> out;
  auto labels = vertex_labels(f);
  for (size_t j = 0; j < labels.size(); ++j) {
    // delete vertex labels[j]: the face G with S_G = S_F + {labels[j]}
    std::vector<int> sg = f.s_indices;
    sg.push_back(labels[j]);
    std::sort(sg.begin(), sg.end());
    auto [rep, om] = to_representative(Facet{sg, w_->identity()});
    out.push_back(BoundaryEntry{rep, om, boundary_sign(f, j, rep, om)});
  }
  return out;
}

std::vector<Facet> Apartment::facets_within(int n) const {
  std::set<Facet> out;
  auto ball = w_->waff_ball(n);
  const int ns = rd().num_affine_simples();
  for (const auto& lvl : ball)
    for (const auto& w : lvl)
      for (int mask = 0; mask < (1 << ns) - 1; ++mask) {
        std::vector<int> s;
        for (int i = 0; i < ns; ++i)
          if (mask & (1 << i)) s.push_back(i);
        out.insert(normalize(s, w));
      }
  return {out.begin(), out.end()};
}

}  // namespace heckeforge::apartment
