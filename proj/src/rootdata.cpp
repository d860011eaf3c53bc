#include "heckeforge/rootdata.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace heckeforge::rootdata {

namespace {

IntMat cartan_matrix(CartanType t) {
  // C[i][j] = <coroot_i, root_j>
  switch (t) {
    case CartanType::A1: return {{2}};
    case CartanType::A2: return {{2, -1}, {-1, 2}};
    case CartanType::B2: return {{2, -1}, {-2, 2}};
    case CartanType::G2: return {{2, -1}, {-3, 2}};
  }
  fail(Errc::UnsupportedType, "unknown Cartan type");
}

}  // namespace

CartanType cartan_type_from_string(const std::string& s) {
  if (s == "A1") return CartanType::A1;
  if (s == "A2") return CartanType::A2;
  if (s == "B2") return CartanType::B2;
  if (s == "G2") return CartanType::G2;
  fail(Errc::UnsupportedType, "unsupported Cartan type '" + s + "'");
}

Isogeny isogeny_from_string(const std::string& s) {
  if (s == "simply_connected") return Isogeny::SimplyConnected;
  if (s == "adjoint") return Isogeny::Adjoint;
  if (s == "gl_style") return Isogeny::GlStyle;
  fail(Errc::UnsupportedType, "unsupported isogeny '" + s + "'");
}

std::string to_string(CartanType t) {
  switch (t) {
    case CartanType::A1: return "A1";
    case CartanType::A2: return "A2";
    case CartanType::B2: return "B2";
    case CartanType::G2: return "G2";
  }
  return "?";
}

std::string to_string(Isogeny i) {
  switch (i) {
    case Isogeny::SimplyConnected: return "simply_connected";
    case Isogeny::Adjoint: return "adjoint";
    case Isogeny::GlStyle: return "gl_style";
  }
  return "?";
}

RootDatum::RootDatum(CartanType type, Isogeny isogeny, int central_rank)
    : type_(type), isogeny_(isogeny), central_rank_(central_rank) {
  if (isogeny_ == Isogeny::GlStyle)
    require(central_rank_ >= 1, Errc::UnsupportedType, "gl_style needs central_rank >= 1");
  else
    require(central_rank_ == 0, Errc::UnsupportedType,
            "central_rank > 0 only makes sense for gl_style");
  cartan_ = cartan_matrix(type_);
  rank_ = static_cast<int>(cartan_.size());
  lattice_rank_ = rank_ + central_rank_;
  build_roots();
  build_w0();
  build_affine();
  validate();
}

void RootDatum::build_roots() {
  const int d = rank_;
  // generate (root, coroot) pairs in simple(-co)root coordinates by closing
  // the simple pairs under the simple reflections
  std::map<IntVec, int> index;
  auto add = [&](const IntVec& rc, const IntVec& cc) -> int {
    auto it = index.find(rc);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(root_simple_.size());
    index.emplace(rc, id);
    root_simple_.push_back(rc);
    coroot_simple_.push_back(cc);
    return id;
  };
  for (int i = 0; i < d; ++i) {
    IntVec rc(d, 0), cc(d, 0);
    rc[i] = 1;
    cc[i] = 1;
    add(rc, cc);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    size_t n = root_simple_.size();
    for (size_t r = 0; r < n; ++r)
      for (int i = 0; i < d; ++i) {
        IntVec rc = root_simple_[r];
        long pr = 0;
        for (int j = 0; j < d; ++j) pr += cartan_[i][j] * rc[j];  // <coroot_i, alpha>
        rc[i] -= pr;
        IntVec cc = coroot_simple_[r];
        long pc = 0;
        for (int j = 0; j < d; ++j) pc += cartan_[j][i] * cc[j];  // <coroot, alpha_i>
        cc[i] -= pc;
        size_t before = root_simple_.size();
        add(rc, cc);
        if (root_simple_.size() != before) grew = true;
      }
  }
  const int n = static_cast<int>(root_simple_.size());
  positive_.resize(n);
  negation_.resize(n);
  for (int r = 0; r < n; ++r) {
    bool pos = true, neg = true;
    for (long c : root_simple_[r]) {
      if (c < 0) pos = false;
      if (c > 0) neg = false;
    }
    require(pos != neg, Errc::Internal, "root neither positive nor negative");
    positive_[r] = pos;
    if (pos) positive_list_.push_back(r);
    IntVec m = root_simple_[r];
    for (auto& c : m) c = -c;
    negation_[r] = index.at(m);
  }
  for (int i = 0; i < d; ++i) {
    IntVec rc(d, 0);
    rc[i] = 1;
    simple_.push_back(index.at(rc));
  }
  // embed into X_* = Z^lattice_rank
  root_func_.assign(n, IntVec(lattice_rank_, 0));
  coroot_vec_.assign(n, IntVec(lattice_rank_, 0));
  for (int r = 0; r < n; ++r) {
    if (isogeny_ == Isogeny::Adjoint) {
      // basis of X_* = fundamental coweights: <omega_i, alpha_j> = delta_ij
      for (int i = 0; i < d; ++i) root_func_[r][i] = root_simple_[r][i];
      for (int i = 0; i < d; ++i) {
        long c = 0;
        for (int j = 0; j < d; ++j) c += coroot_simple_[r][j] * cartan_[j][i];
        coroot_vec_[r][i] = c;
      }
    } else {
      // basis of X_* = simple coroots (plus a central free factor)
      for (int i = 0; i < d; ++i) {
        long c = 0;
        for (int j = 0; j < d; ++j) c += cartan_[i][j] * root_simple_[r][j];
        root_func_[r][i] = c;
      }
      for (int i = 0; i < d; ++i) coroot_vec_[r][i] = coroot_simple_[r][i];
    }
  }
}

int RootDatum::find_root(const IntVec& simple_coords) const {
  for (int r = 0; r < num_roots(); ++r)
    if (root_simple_[r] == simple_coords) return r;
  return -1;
}

void RootDatum::build_w0() {
  const int n = num_roots();
  const int d = rank_;
  // simple reflection permutations and matrices
  std::vector<std::vector<int>> gen_perm(d, std::vector<int>(n));
  std::vector<IntMat> gen_mat(d);
  for (int i = 0; i < d; ++i) {
    int si = simple_[i];
    for (int r = 0; r < n; ++r) {
      IntVec rc = root_simple_[r];
      long pr = 0;
      for (int j = 0; j < d; ++j) pr += cartan_[i][j] * rc[j];
      rc[i] -= pr;
      gen_perm[i][r] = find_root(rc);
    }
    IntMat m = mat_identity(lattice_rank_);
    for (int a = 0; a < lattice_rank_; ++a)
      for (int b = 0; b < lattice_rank_; ++b)
        m[a][b] -= coroot_vec_[si][a] * root_func_[si][b];
    gen_mat[i] = m;
  }
  std::map<std::vector<int>, int> seen;
  std::vector<int> id(n);
  for (int r = 0; r < n; ++r) id[r] = r;
  w0_perm_.push_back(id);
  w0_mat_.push_back(mat_identity(lattice_rank_));
  seen.emplace(id, 0);
  for (size_t head = 0; head < w0_perm_.size(); ++head)
    for (int i = 0; i < d; ++i) {
      // right multiply: (w s_i)(r) = w(s_i(r))
      std::vector<int> p(n);
      for (int r = 0; r < n; ++r) p[r] = w0_perm_[head][gen_perm[i][r]];
      if (seen.emplace(p, static_cast<int>(w0_perm_.size())).second) {
        w0_perm_.push_back(p);
        w0_mat_.push_back(mat_mul(w0_mat_[head], gen_mat[i]));
      }
    }
  const int sz = w0_size();
  w0_mult_.assign(sz * sz, -1);
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b) {
      std::vector<int> p(n);
      for (int r = 0; r < n; ++r) p[r] = w0_perm_[a][w0_perm_[b][r]];
      w0_mult_[a * sz + b] = seen.at(p);
    }
  w0_inv_.assign(sz, -1);
  for (int a = 0; a < sz; ++a)
    for (int b = 0; b < sz; ++b)
      if (w0_mult_[a * sz + b] == 0) w0_inv_[a] = b;
  for (int i = 0; i < d; ++i) w0_simple_.push_back(seen.at(gen_perm[i]));
  w0_len_.assign(sz, 0);
  for (int a = 0; a < sz; ++a) {
    int c = 0;
    for (int r : positive_list_)
      if (!positive_[w0_perm_[a][r]]) ++c;
    w0_len_[a] = c;
  }
  w0_longest_ = static_cast<int>(std::max_element(w0_len_.begin(), w0_len_.end()) -
                                 w0_len_.begin());
  refl_elt_.assign(n, -1);
  for (int r = 0; r < n; ++r) {
    // the reflection s_alpha: find the W0 element acting as r -> r - <ar,.>...
    for (int a = 0; a < sz; ++a) {
      if (w0_perm_[a][r] != negation_[r]) continue;
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) {
        IntVec rc = root_simple_[x];
        long pr = dot(coroot_vec_[r], root_func_[x]);
        for (int j = 0; j < rank_; ++j) rc[j] -= pr * root_simple_[r][j];
        ok = w0_perm_[a][x] == find_root(rc);
      }
      if (ok) {
        refl_elt_[r] = a;
        break;
      }
    }
    require(refl_elt_[r] >= 0, Errc::Internal, "reflection not found in W0");
  }
}

void RootDatum::build_affine() {
  const int n = num_roots();
  for (int r = 0; r < n; ++r) {
    bool minimal = true;
    for (int s = 0; s < n && minimal; ++s) {
      if (s == r) continue;
      bool leq = true;  // s <= r, i.e. r - s has nonnegative coords
      for (int j = 0; j < rank_; ++j)
        if (root_simple_[r][j] - root_simple_[s][j] < 0) leq = false;
      if (leq) minimal = false;
    }
    if (minimal) minimal_roots_.push_back(r);
  }
  for (int i = 0; i < rank_; ++i) aff_simple_.push_back({simple_[i], 0});
  for (int r : minimal_roots_) aff_simple_.push_back({r, 1});
  require(static_cast<int>(aff_simple_.size()) == rank_ + 1, Errc::Internal,
          "irreducible system must have d+1 simple affine roots");
}

void RootDatum::validate() const {
  for (int r = 0; r < num_roots(); ++r) {
    require(dot(coroot_vec_[r], root_func_[r]) == 2, Errc::Internal, "<coroot,root> != 2");
    require(negation_[negation_[r]] == r, Errc::Internal, "negation not involutive");
  }
  // W0 matrices and root permutations are the same action:
  // <w(lambda), w(alpha)> = <lambda, alpha>
  for (int a = 0; a < w0_size(); ++a)
    for (int r = 0; r < num_roots(); ++r) {
      const IntVec& f = root_func_[w0_apply_root(a, r)];
      for (int i = 0; i < lattice_rank_; ++i) {
        IntVec e(lattice_rank_, 0);
        e[i] = 1;
        require(dot(w0_apply(a, e), f) == root_func_[r][i], Errc::Internal,
                "W0 permutation/matrix mismatch");
      }
    }
}

std::string RootDatum::describe_root(int r) const {
  std::ostringstream os;
  os << "(";
  for (int j = 0; j < rank_; ++j) {
    if (j) os << ",";
    os << root_simple_[r][j];
  }
  os << ")";
  return os.str();
}

std::string RootDatum::describe_affine(const AffineRoot& a) const {
  std::ostringstream os;
  os << describe_root(a.root) << "+" << a.level;
  return os.str();
}

RootDatum build_root_datum(CartanType type, Isogeny isogeny, int central_rank) {
  return RootDatum(type, isogeny, central_rank);
}

AffineRoot reflect(const RootDatum& rd, const AffineRoot& a, const AffineRoot& b) {
  // s_(alpha,h) = s_alpha followed by translation bookkeeping: acting on the
  // affine root (beta,m) it gives (s_alpha(beta), m - h <coroot_alpha, beta>)
  long p = dot(rd.coroot(a.root), rd.root_functional(b.root));
  int w = rd.w0_reflection(a.root);
  return {rd.w0_apply_root(w, b.root), b.level - a.level * p};
}

}  // namespace heckeforge::rootdata
