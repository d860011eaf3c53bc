#include "heckeforge/weyl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "heckeforge/prop.hpp"

namespace heckeforge::weyl {

Weyl::Weyl(const RootDatum& rd) : rd_(&rd) {
  const int d = rd.rank();
  // adjugate of the simple-coroot matrix, for membership in the coroot lattice
  IntMat m(d, IntVec(d, 0));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) m[i][j] = rd.coroot(rd.simple_root(j))[i];
  if (d == 1) {
    coroot_det_ = m[0][0];
    coroot_adj_ = {{1}};
  } else {
    coroot_det_ = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    coroot_adj_ = {{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}};
  }
  build_omega();
}

WeylElt Weyl::mult(const WeylElt& a, const WeylElt& b) const {
  WeylElt out;
  out.w0 = rd_->w0_mult(a.w0, b.w0);
  IntVec la = rd_->w0_apply(rd_->w0_inverse(b.w0), a.lambda);
  out.lambda = b.lambda;
  for (size_t i = 0; i < out.lambda.size(); ++i) out.lambda[i] += la[i];
  return out;
}

WeylElt Weyl::inverse(const WeylElt& a) const {
  WeylElt out;
  out.w0 = rd_->w0_inverse(a.w0);
  out.lambda = rd_->w0_apply(a.w0, a.lambda);
  for (auto& c : out.lambda) c = -c;
  return out;
}

bool Weyl::is_identity(const WeylElt& a) const {
  if (a.w0 != rd_->w0_identity()) return false;
  return std::all_of(a.lambda.begin(), a.lambda.end(), [](long c) { return c == 0; });
}

WeylElt Weyl::simple_reflection(int aff_idx) const {
  return affine_reflection(rd_->affine_simples()[aff_idx]);
}

WeylElt Weyl::affine_reflection(const AffineRoot& a) const {
  WeylElt out;
  out.w0 = rd_->w0_reflection(a.root);
  out.lambda = rd_->coroot(a.root);
  for (auto& c : out.lambda) c *= a.level;
  return out;
}

AffineRoot Weyl::act(const WeylElt& w, const AffineRoot& a) const {
  return {rd_->w0_apply_root(w.w0, a.root), a.level - dot(w.lambda, rd_->root_functional(a.root))};
}

long Weyl::length(const WeylElt& w) const {
  {
    auto it = len_cache_.find(w);
    if (it != len_cache_.end()) return it->second;
  }
  long window = 1;
  for (int r = 0; r < rd_->num_roots(); ++r)
    window = std::max(window, std::labs(dot(w.lambda, rd_->root_functional(r))) + 1);
  long count = 0;
  for (int r = 0; r < rd_->num_roots(); ++r) {
    long hmin = rd_->is_positive_root(r) ? 0 : 1;
    for (long h = hmin; h <= window; ++h)
      if (!positive_after(w, {r, h})) ++count;
  }
  return count;
}

long Weyl::translation_length_formula(const IntVec& lambda) const {
  long s = 0;
  for (int r : rd_->positive_roots()) s += std::labs(dot(lambda, rd_->root_functional(r)));
  return s;
}

std::vector<int> Weyl::canonical_word(const WeylElt& w) const {
  {
    auto it = canon_cache_.find(w);
    if (it != canon_cache_.end()) return it->second.word;
  }
  std::vector<int> rev;
  WeylElt cur = w;
  const int ns = rd_->num_affine_simples();
  for (;;) {
    int desc = -1;
    for (int i = 0; i < ns; ++i)
      if (!raises_on_right(cur, i)) {
        desc = i;
        break;
      }
    if (desc < 0) break;
    rev.push_back(desc);
    cur = mult(cur, simple_reflection(desc));
  }
  return {rev.rbegin(), rev.rend()};
}

void Weyl::build_omega() {
  const RootDatum& rd = *rd_;
  omega_torsion_.push_back(identity());
  if (rd.isogeny() == rootdata::Isogeny::GlStyle) {
    for (int i = rd.rank(); i < rd.lattice_rank(); ++i) {
      IntVec lam(rd.lattice_rank(), 0);
      lam[i] = 1;
      omega_free_.push_back(translation(lam));
    }
    return;
  }
  long index = std::labs(coroot_det_);
  if (index == 1) return;
  // search small boxes for the remaining length-zero elements
  const int d = rd.rank();
  std::set<WeylElt> found;
  for (int a = 0; a < rd.w0_size(); ++a) {
    IntVec lam(d, 0);
    const long B = 3;
    // enumerate lambda in [-B,B]^d
    long total = 1;
    for (int i = 0; i < d; ++i) total *= 2 * B + 1;
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int i = 0; i < d; ++i) {
        lam[i] = c % (2 * B + 1) - B;
        c /= 2 * B + 1;
      }
      WeylElt w{a, lam};
      if (!is_identity(w) && length(w) == 0) found.insert(w);
    }
  }
  for (const auto& w : found) omega_torsion_.push_back(w);
  require(static_cast<long>(omega_torsion_.size()) == index, Errc::Internal,
          "Omega enumeration does not match the lattice index");
  // closure sanity
  for (const auto& a : omega_torsion_)
    for (const auto& b : omega_torsion_) {
      WeylElt p = mult(a, b);
      require(std::find(omega_torsion_.begin(), omega_torsion_.end(), p) != omega_torsion_.end(),
              Errc::Internal, "Omega not closed under multiplication");
    }
}

long Weyl::omega_order() const {
  return omega_infinite() ? 0 : static_cast<long>(omega_torsion_.size());
}

bool Weyl::lambda_in_coroot_lattice(const IntVec& lambda) const {
  const int d = rd_->rank();
  for (int i = d; i < rd_->lattice_rank(); ++i)
    if (lambda[i] != 0) return false;
  IntVec ss(lambda.begin(), lambda.begin() + d);
  IntVec x = mat_apply(coroot_adj_, ss);
  for (long c : x)
    if (c % coroot_det_ != 0) return false;
  return true;
}

std::pair<WeylElt, WeylElt> Weyl::split_omega(const WeylElt& w) const {
  {
    auto it = canon_cache_.find(w);
    if (it != canon_cache_.end()) return {it->second.omega, it->second.aff};
  }
  WeylElt om = identity();
  if (omega_infinite()) {
    IntVec lam(rd_->lattice_rank(), 0);
    for (int i = rd_->rank(); i < rd_->lattice_rank(); ++i) lam[i] = w.lambda[i];
    om = translation(lam);
  } else if (omega_torsion_.size() > 1) {
    bool ok = false;
    for (const auto& cand : omega_torsion_) {
      WeylElt a = mult(inverse(cand), w);
      if (lambda_in_coroot_lattice(a.lambda)) {
        om = cand;
        ok = true;
        break;
      }
    }
    require(ok, Errc::Internal, "no Omega part found");
  }
  return {om, mult(inverse(om), w)};
}

bool Weyl::in_waff(const WeylElt& w) const { return lambda_in_coroot_lattice(w.lambda); }

void Weyl::warm(int n, int omega_cap) const {
  for (const auto& w : ball(n, omega_infinite() ? std::max(1, omega_cap) : 0)) {
    if (!len_cache_.count(w)) len_cache_.emplace(w, length(w));
    if (canon_cache_.count(w)) continue;
    auto [om, aff] = split_omega(w);
    std::vector<int> word = canonical_word(aff);
    // the affine part is consulted separately by the multiplication path
    if (!(aff == w) && !canon_cache_.count(aff))
      canon_cache_.emplace(aff, CanonData{identity(), aff, word});
    canon_cache_.emplace(w, CanonData{om, aff, std::move(word)});
  }
}

int Weyl::omega_on_simple(const WeylElt& omega, int aff_idx) const {
  AffineRoot img = act(omega, rd_->affine_simples()[aff_idx]);
  const auto& simples = rd_->affine_simples();
  for (int i = 0; i < static_cast<int>(simples.size()); ++i)
    if (simples[i] == img) return i;
  fail(Errc::Internal, "Omega element does not permute Pi_aff");
}

int Weyl::eps_face(const WeylElt& omega, const std::vector<int>& s_indices) const {
  std::vector<int> labels;
  for (int i = 0; i < rd_->num_affine_simples(); ++i)
    if (!std::count(s_indices.begin(), s_indices.end(), i)) labels.push_back(i);
  std::vector<int> img;
  for (int a : labels) {
    int b = omega_on_simple(omega, a);
    require(std::count(labels.begin(), labels.end(), b) == 1, Errc::DoesNotStabilize,
            "element does not stabilize the face");
    img.push_back(b);
  }
  int parity = 1;
  for (size_t i = 0; i < img.size(); ++i)
    for (size_t j = i + 1; j < img.size(); ++j)
      if (img[i] > img[j]) parity = -parity;
  return parity;
}

namespace {
std::mutex g_ball_mutex;
}

const std::vector<std::vector<WeylElt>>& Weyl::waff_ball(int n) const {
  std::lock_guard<std::mutex> lock(g_ball_mutex);
  if (static_cast<int>(waff_ball_.size()) > n) return waff_ball_;
  if (waff_ball_.empty()) waff_ball_.push_back({identity()});
  std::unordered_map<WeylElt, char, WeylEltHash> seen;
  for (const auto& lvl : waff_ball_)
    for (const auto& w : lvl) seen.emplace(w, 1);
  while (static_cast<int>(waff_ball_.size()) <= n) {
    std::vector<WeylElt> next;
    for (const auto& w : waff_ball_.back())
      for (int i = 0; i < rd_->num_affine_simples(); ++i)
        if (raises_on_right(w, i)) {
          WeylElt p = mult(w, simple_reflection(i));
          if (seen.emplace(p, 1).second) next.push_back(p);
        }
    std::sort(next.begin(), next.end());
    waff_ball_.push_back(std::move(next));
  }
  return waff_ball_;
}

std::vector<WeylElt> Weyl::ball(int n, int omega_cap) const {
  require(!omega_infinite() || omega_cap > 0, Errc::InfiniteBasis,
          "Omega is infinite: an omega_cap is required");
  auto waff = waff_ball(n);
  std::vector<WeylElt> omegas = omega_torsion_;
  if (omega_infinite()) {
    std::vector<WeylElt> cur = omegas;
    for (const auto& g : omega_free_) {
      std::vector<WeylElt> next;
      for (const auto& w : cur)
        for (int e = -omega_cap; e <= omega_cap; ++e) {
          WeylElt p = w;
          for (size_t i = 0; i < p.lambda.size(); ++i) p.lambda[i] += e * g.lambda[i];
          next.push_back(p);
        }
      cur = std::move(next);
    }
    omegas = std::move(cur);
  }
  std::vector<WeylElt> out;
  for (int l = 0; l <= n && l < static_cast<int>(waff.size()); ++l)
    for (const auto& a : waff[l])
      for (const auto& om : omegas) out.push_back(mult(om, a));
  std::sort(out.begin(), out.end());
  return out;
}

FacetSpec Weyl::make_facet(std::vector<int> s_indices) const {
  std::sort(s_indices.begin(), s_indices.end());
  s_indices.erase(std::unique(s_indices.begin(), s_indices.end()), s_indices.end());
  const int ns = rd_->num_affine_simples();
  for (int i : s_indices)
    require(i >= 0 && i < ns, Errc::InvalidFacet, "affine simple index out of range");
  require(static_cast<int>(s_indices.size()) < ns, Errc::InvalidFacet,
          "S_F = S_aff generates an infinite group");
  FacetSpec f;
  f.s_indices = s_indices;
  for (int i : s_indices) f.pi_f.push_back(rd_->affine_simples()[i]);
  // W_F by closure
  std::set<WeylElt> seen;
  f.wf.push_back(identity());
  seen.insert(identity());
  for (size_t head = 0; head < f.wf.size(); ++head)
    for (int i : s_indices) {
      WeylElt p = mult(f.wf[head], simple_reflection(i));
      if (seen.insert(p).second) f.wf.push_back(p);
    }
  long best = -1;
  for (size_t i = 0; i < f.wf.size(); ++i) {
    long l = length(f.wf[i]);
    if (l > best) {
      best = l;
      f.wf_longest = static_cast<int>(i);
    }
  }
  // Phi_F = W_F-orbit of Pi_F
  std::set<AffineRoot> phi;
  for (const auto& a : f.pi_f)
    for (const auto& w : f.wf) phi.insert(act(w, a));
  for (const auto& a : phi)
    if (rd_->affine_positive(a)) f.phi_f_pos.push_back(a);
  // Omega_F (finite part): omega with omega(Pi_F) = Pi_F
  for (const auto& om : omega_torsion_) {
    bool stab = true;
    for (const auto& a : f.pi_f) {
      AffineRoot img = act(om, a);
      if (std::find(f.pi_f.begin(), f.pi_f.end(), img) == f.pi_f.end()) stab = false;
    }
    if (stab) f.omega_f.push_back(om);
  }
  return f;
}

bool Weyl::in_distinguished(const FacetSpec& f, const WeylElt& d) const {
  for (const auto& a : f.phi_f_pos)
    if (!positive_after(d, a)) return false;
  return true;
}

WeylElt Weyl::to_distinguished(const FacetSpec& f, WeylElt w) const {
  for (;;) {
    bool moved = false;
    for (int i : f.s_indices)
      if (!raises_on_right(w, i)) {
        w = mult(w, simple_reflection(i));
        moved = true;
        break;
      }
    if (!moved) return w;
  }
}

WeylElt Weyl::dagger_rep(const FacetSpec& f, const WeylElt& d) const {
  WeylElt best = d;
  if (omega_infinite())
    for (int i = rd_->rank(); i < rd_->lattice_rank(); ++i) best.lambda[i] = 0;
  WeylElt cand = best;
  for (const auto& om : f.omega_f) {
    WeylElt p = mult(cand, om);
    if (p < best) best = p;
  }
  return best;
}

std::vector<WeylElt> Weyl::distinguished_reps(const FacetSpec& f, int max_len, bool dagger,
                                              int omega_cap) const {
  require(max_len >= 0, Errc::InvalidFacet, "max_len must be nonnegative");
  std::vector<WeylElt> out;
  if (dagger && omega_infinite()) {
    // dagger representatives have central part zero; no cap needed
    auto waff = waff_ball(max_len);
    std::set<WeylElt> seen;
    for (const auto& lvl : waff)
      for (const auto& a : lvl)
        if (in_distinguished(f, a)) {
          WeylElt r = dagger_rep(f, a);
          if (seen.insert(r).second) out.push_back(r);
        }
  } else {
    std::set<WeylElt> seen;
    for (const auto& w : ball(max_len, omega_cap))
      if (in_distinguished(f, w)) {
        WeylElt r = dagger ? dagger_rep(f, w) : w;
        if (seen.insert(r).second) out.push_back(r);
      }
  }
  std::sort(out.begin(), out.end());
  std::stable_sort(out.begin(), out.end(),
                   [&](const WeylElt& a, const WeylElt& b) { return length(a) < length(b); });
  return out;
}

std::pair<WeylElt, WeylElt> Weyl::facet_factorize(const FacetSpec& f, const WeylElt& w,
                                                  bool dagger) const {
  WeylElt d = to_distinguished(f, w);
  if (dagger) d = dagger_rep(f, d);
  WeylElt h = mult(inverse(d), w);
  return {d, h};
}

bool Weyl::bruhat_leq(const WeylElt& v, const WeylElt& w) const {
  auto [ov, av] = split_omega(v);
  auto [ow, aw] = split_omega(w);
  if (!(ov == ow)) return false;
  // subword recursion on the affine parts
  std::function<bool(const WeylElt&, const WeylElt&)> rec = [&](const WeylElt& x,
                                                                const WeylElt& y) -> bool {
    if (x == y) return true;
    if (is_identity(y)) return false;
    long lx = length(x), ly = length(y);
    if (lx > ly) return false;
    // pick a left descent of y: l(s y) < l(y)  iff  y^{-1}(A) negative
    WeylElt yi = inverse(y);
    int desc = -1;
    for (int i = 0; i < rd_->num_affine_simples(); ++i)
      if (!raises_on_right(yi, i)) {
        desc = i;
        break;
      }
    WeylElt s = simple_reflection(desc);
    WeylElt sy = mult(s, y);
    WeylElt sx = mult(s, x);
    if (length(sx) < lx) return rec(sx, sy);
    return rec(x, sy);
  };
  return rec(av, aw);
}

// ---------------------------------------------------------------------------
// pro-p cover
// ---------------------------------------------------------------------------

ProP::ProP(const Weyl& weyl, long q, long torus_modulus) : w_(&weyl), q_(q), qm_(torus_modulus) {
  require(qm_ >= 1, Errc::Internal, "torus modulus must be >= 1");
  c_minus_one_ = (qm_ % 2 == 0) ? qm_ / 2 : 0;
}

long ProP::torus_size() const {
  long s = 1;
  for (int i = 0; i < rd().lattice_rank(); ++i) s *= qm_;
  return s;
}

IntVec ProP::reduce(IntVec t) const {
  for (auto& c : t) {
    c %= qm_;
    if (c < 0) c += qm_;
  }
  return t;
}

bool ProP::is_identity(const ProPElt& a) const {
  if (!w_->is_identity(a.w)) return false;
  return std::all_of(a.torus.begin(), a.torus.end(), [](long c) { return c == 0; });
}

IntVec ProP::act_torus(const WeylElt& w, const IntVec& t) const {
  return reduce(rd().w0_apply(w.w0, t));
}

ProPElt ProP::mult_simple(ProPElt a, int aff_idx) const {
  const WeylElt s = w_->simple_reflection(aff_idx);
  bool raises = w_->raises_on_right(a.w, aff_idx);
  WeylElt ws = w_->mult(a.w, s);
  if (!raises) {
    // n(a) n_s = n(a s) * n_s^2, push the torus part to the left
    IntVec u = s_squared_torus(aff_idx);
    IntVec moved = act_torus(ws, u);
    for (size_t i = 0; i < a.torus.size(); ++i) a.torus[i] += moved[i];
    a.torus = reduce(std::move(a.torus));
  }
  a.w = ws;
  return a;
}

ProPElt ProP::mult(const ProPElt& a, const ProPElt& b) const {
  ProPElt res = a;
  IntVec moved = act_torus(res.w, b.torus);
  for (size_t i = 0; i < res.torus.size(); ++i) res.torus[i] += moved[i];
  res.torus = reduce(std::move(res.torus));
  auto [om, aff] = w_->split_omega(b.w);
  res.w = w_->mult(res.w, om);
  for (int i : w_->canonical_word(aff)) res = mult_simple(std::move(res), i);
  return res;
}

ProPElt ProP::inverse(const ProPElt& a) const {
  WeylElt wi = w_->inverse(a.w);
  ProPElt c = mult(from_weyl(a.w), from_weyl(wi));  // = (cocycle, identity)
  IntVec t(a.torus.size(), 0);
  for (size_t i = 0; i < t.size(); ++i) t[i] = -a.torus[i] - c.torus[i];
  ProPElt out{reduce(mat_apply(rd().w0_matrix(rd().w0_inverse(a.w.w0)), t)), wi};
  return out;
}

IntVec ProP::s_squared_torus(int aff_idx) const {
  const AffineRoot& a = rd().affine_simples()[aff_idx];
  IntVec u = rd().coroot(a.root);
  for (auto& c : u) c *= c_minus_one_;
  return reduce(std::move(u));
}

std::vector<IntVec> ProP::theta_subgroup(int aff_idx) const {
  const AffineRoot& a = rd().affine_simples()[aff_idx];
  IntVec beta = rd().coroot(a.root);
  long g = 0;
  for (long c : beta) g = std::gcd(g, std::labs(c));
  if (g > 1)
    for (auto& c : beta) c /= g;
  std::vector<IntVec> out;
  for (long j = 0; j < qm_; ++j) {
    IntVec t = beta;
    for (auto& c : t) c *= j;
    out.push_back(reduce(std::move(t)));
  }
  return out;
}

std::vector<IntVec> ProP::torus_all() const {
  std::vector<IntVec> out{IntVec(rd().lattice_rank(), 0)};
  for (int i = 0; i < rd().lattice_rank(); ++i) {
    std::vector<IntVec> next;
    for (const auto& t : out)
      for (long c = 0; c < qm_; ++c) {
        IntVec u = t;
        u[i] = c;
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace heckeforge::weyl
