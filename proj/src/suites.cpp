#include "heckeforge/suites.hpp"

#include <omp.h>

#include <chrono>
#include <random>
#include <set>
#include <sstream>

namespace heckeforge::suites {

namespace {

using hecke::Algebra;
using hecke::AlgebraKind;
using hecke::Character;
using weyl::FacetSpec;
using weyl::ProPElt;
using weyl::WeylElt;

constexpr const char* kToolVersion = "0.1.0";

template <class Fn>
SuiteResult with_field(const cli::RunConfig& cfg, Fn&& fn) {
  long p = cfg.field_characteristic();
  if (p == 0) return fn(RationalField{});
  return fn(PrimeField{p});
}

std::vector<std::vector<int>> proper_subsets(const rootdata::RootDatum& rd) {
  const int ns = rd.num_affine_simples();
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << ns) - 1; ++mask) {
    std::vector<int> s;
    for (int i = 0; i < ns; ++i)
      if (mask & (1 << i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// relations
// ---------------------------------------------------------------------------

template <class F>
SuiteResult relations_suite(Instance& inst, F field) {
  SuiteResult res{"relations", "pass", "", json::object()};
  Algebra<F> alg(inst.w, inst.cfg.q, field, AlgebraKind::ProP);
  const int cap = inst.rd.semisimple() ? 0 : inst.cfg.omega_cap;
  auto tick = std::chrono::steady_clock::now();
  auto lap = [&](const char* name) {
    auto now = std::chrono::steady_clock::now();
    if (inst.cfg.timings)
      res.details[std::string("ms_") + name] =
          std::chrono::duration_cast<std::chrono::milliseconds>(now - tick).count();
    tick = now;
  };
  inst.w.warm(9, cap);
  lap("warm");
  auto keys6 = alg.filtration_basis(6, cap);
  std::vector<long> len6(keys6.size());
  for (size_t i = 0; i < keys6.size(); ++i) len6[i] = alg.group().length(keys6[i]);
  // Associativity on all basis triples of total length <= 6.  The sweep runs
  // over triples whose first factor has trivial torus part; together with the
  // left-translation equivariance of the product (checked below on all pairs
  // and torus generators) this covers every basis triple: tau_{t a} = tau_t
  // tau_a splits the general first factor, and translation equivariance
  // moves tau_t through both sides.
  long bad_assoc = 0;
  long triples = 0;
  std::vector<size_t> torus_free;
  for (size_t i = 0; i < keys6.size(); ++i) {
    bool tf = true;
    for (long c : keys6[i].torus)
      if (c) tf = false;
    if (tf) torus_free.push_back(i);
  }
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : bad_assoc, triples)
  for (long bpos = 0; bpos < static_cast<long>(keys6.size()); ++bpos) {
    auto b = alg.basis(keys6[bpos]);
    // cache a*b and b*c rows for this middle factor
    std::vector<typename Algebra<F>::Elt> ab(torus_free.size()), bc(keys6.size());
    for (size_t i = 0; i < torus_free.size(); ++i)
      if (len6[torus_free[i]] + len6[bpos] <= 6)
        ab[i] = alg.mul(alg.basis(keys6[torus_free[i]]), b);
    for (size_t i = 0; i < keys6.size(); ++i)
      if (len6[i] + len6[bpos] <= 6) bc[i] = alg.mul(b, alg.basis(keys6[i]));
    for (size_t ai = 0; ai < torus_free.size(); ++ai) {
      long la = len6[torus_free[ai]];
      if (la + len6[bpos] > 6) continue;
      for (size_t ci = 0; ci < keys6.size(); ++ci) {
        if (la + len6[bpos] + len6[ci] > 6) continue;
        ++triples;
        auto lhs = alg.mul_basis(ab[ai], keys6[ci]);
        auto rhs = alg.mul(alg.basis(keys6[torus_free[ai]]), bc[ci]);
        if (!alg.eq(lhs, rhs)) ++bad_assoc;
      }
    }
  }
  lap("associativity");
  // left-translation equivariance on all pairs and torus generators
  long bad_translate = 0;
  if (alg.group().qm() > 1) {
    const int lat = inst.rd.lattice_rank();
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : bad_translate)
    for (long bi = 0; bi < static_cast<long>(keys6.size()); ++bi) {
      for (size_t ci = 0; ci < keys6.size(); ++ci) {
        if (len6[bi] + len6[ci] > 6) continue;
        auto prod = alg.mul_basis(alg.basis(keys6[bi]), keys6[ci]);
        for (int g = 0; g < lat; ++g) {
          IntVec e(lat, 0);
          e[g] = 1;
          ProPElt t = alg.group().torus_elt(e);
          auto lhs = alg.mul_basis(alg.basis(alg.group().mult(t, keys6[bi])), keys6[ci]);
          auto rhs = alg.zero();
          for (const auto& [key, c] : prod.terms)
            alg.add_term(rhs, alg.group().mult(t, key), c);
          if (!alg.eq(lhs, rhs)) ++bad_translate;
        }
      }
    }
  }
  lap("equivariance");
  res.details["associativity_triples"] = triples;
  res.details["translation_equivariance_failures"] = bad_translate;
  if (bad_assoc || bad_translate) {
    res.verdict = "fail";
    res.details["associativity_failures"] = bad_assoc;
  }
  // involutions on the length <= 4 ball
  auto keys4 = alg.filtration_basis(4, cap);
  long bad_inv = 0;
  for (const auto& k : keys4) {
    auto e = alg.basis(k);
    if (!alg.eq(alg.iota(alg.iota(e)), e)) ++bad_inv;
    if (!alg.eq(alg.j_chamber(alg.j_chamber(e)), e)) ++bad_inv;
    if (!alg.eq(alg.iota_chamber(alg.iota_chamber(e)), e)) ++bad_inv;
  }
  long bad_hom = 0;
  {
    auto keys2 = alg.filtration_basis(2, cap);
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : bad_hom)
    for (long i = 0; i < static_cast<long>(keys2.size()); ++i)
      for (size_t j = 0; j < keys2.size(); ++j) {
        auto a = alg.basis(keys2[i]);
        auto b = alg.basis(keys2[j]);
        auto ab = alg.mul(a, b);
        if (!alg.eq(alg.iota(ab), alg.mul(alg.iota(a), alg.iota(b)))) ++bad_hom;
        if (!alg.eq(alg.j_chamber(ab), alg.mul(alg.j_chamber(a), alg.j_chamber(b)))) ++bad_hom;
        if (!alg.eq(alg.iota_chamber(ab),
                    alg.mul(alg.iota_chamber(a), alg.iota_chamber(b))))
          ++bad_hom;
      }
  }
  lap("involutions");
  res.details["involution_ball"] = static_cast<long>(keys4.size());
  if (bad_inv + bad_hom) {
    res.verdict = "fail";
    res.details["involution_failures"] = bad_inv + bad_hom;
  }
  // eps1 compression when q-1 is invertible in k
  if (!field.is_zero(field.from_long(inst.cfg.q - 1))) {
    Algebra<F> iw(inst.w, inst.cfg.q, field, AlgebraKind::Iwahori);
    auto e1 = alg.eps1();
    long bad = alg.eq(alg.mul(e1, e1), e1) ? 0 : 1;
    auto lift = [&](const ProPElt& k) { return alg.mul(e1, alg.tau(k.w)); };
    auto ballp = iw.filtration_basis(2, cap);
    for (const auto& ka : ballp)
      for (const auto& kb : ballp) {
        auto prod = iw.mul(iw.basis(ka), iw.basis(kb));
        auto rhs = alg.zero();
        for (const auto& [kk, cc] : prod.terms) rhs = alg.add(rhs, alg.scale(cc, lift(kk)));
        if (!alg.eq(alg.mul(lift(ka), lift(kb)), rhs)) ++bad;
      }
    // injectivity of the compression on the ball
    {
      auto keys = alg.filtration_basis(2, cap);
      std::map<ProPElt, int> kidx;
      for (size_t i = 0; i < keys.size(); ++i) kidx.emplace(keys[i], static_cast<int>(i));
      std::vector<linalg::SparseVec<F>> rows;
      for (const auto& kp : ballp) {
        auto img = lift(kp);
        linalg::SparseVec<F> row;
        for (const auto& [kk, cc] : img.terms) row.emplace_back(kidx.at(kk), cc);
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
      }
      auto ech = linalg::echelon<F>(field, rows, static_cast<int>(keys.size()), false);
      if (ech.rank() != static_cast<int>(ballp.size())) ++bad;
    }
    res.details["eps1_compression"] = bad == 0 ? "pass" : "fail";
    if (bad) res.verdict = "fail";
  } else {
    res.details["eps1_compression"] = "skipped: q-1 vanishes in k";
  }
  lap("eps1");
  return res;
}

// ---------------------------------------------------------------------------
// coxeter
// ---------------------------------------------------------------------------

SuiteResult coxeter_suite(Instance& inst) {
  SuiteResult res{"coxeter", "pass", "", json::object()};
  const auto& w = inst.w;
  const auto& rd = inst.rd;
  const int cap = rd.semisimple() ? 0 : inst.cfg.omega_cap;
  long bad = 0;
  auto ball6 = w.ball(6, cap);
  // exchange bookkeeping
  for (const auto& elt : ball6)
    for (int i = 0; i < rd.num_affine_simples(); ++i) {
      long l = w.length(elt), ls = w.length(w.mult(elt, w.simple_reflection(i)));
      if (w.raises_on_right(elt, i) ? ls != l + 1 : ls != l - 1) ++bad;
    }
  res.details["exchange_ball"] = static_cast<long>(ball6.size());
  // factorization and double coset properties for every proper subset
  for (const auto& s : proper_subsets(rd)) {
    FacetSpec f = w.make_facet(s);
    for (const auto& elt : ball6) {
      auto [d, h] = w.facet_factorize(f, elt, false);
      if (!w.in_distinguished(f, d)) ++bad;
      if (!(w.mult(d, h) == elt)) ++bad;
      if (w.length(elt) != w.length(d) + w.length(h)) ++bad;
      int count = 0;
      for (const auto& wf : f.wf)
        if (w.in_distinguished(f, w.mult(elt, w.inverse(wf)))) ++count;
      if (count != 1) ++bad;
      auto [dd, hh] = w.facet_factorize(f, elt, true);
      if (w.length(elt) != w.length(dd) + w.length(hh)) ++bad;
    }
    // stability under Omega_F and the trichotomy for left multiplication
    auto reps = w.distinguished_reps(f, 4, false, cap);
    for (const auto& d : reps) {
      for (const auto& om : f.omega_f)
        if (!w.in_distinguished(f, w.mult(d, om))) ++bad;
      for (int i : f.s_indices) {
        WeylElt sd = w.mult(w.simple_reflection(i), d);
        bool in_d = w.in_distinguished(f, sd);
        bool in_coset = false;
        for (const auto& wf : f.wf)
          if (sd == w.mult(d, wf)) in_coset = true;
        long diff = w.length(sd) - w.length(d);
        if (diff != 1 && diff != -1) ++bad;
        if (diff == -1 && !in_d) ++bad;
        if (!in_d && !in_coset) ++bad;
      }
    }
  }
  // closest chamber uniqueness and distance identity
  for (const auto& reps : inst.ap.face_representatives())
    for (const auto& rep : reps) {
      for (const auto& d : w.distinguished_reps(inst.ap.spec(rep), 4, true, cap)) {
        auto moved = inst.ap.apply(d, rep);
        auto cc = inst.ap.closest_chamber(moved);
        if (inst.ap.gallery_distance(inst.ap.chamber(), cc) != w.length(moved.pos)) ++bad;
        if (!(cc == inst.ap.normalize({}, moved.pos))) ++bad;
      }
    }
  // disjoint decomposition for n <= 4
  for (int n = 1; n <= 4; ++n) {
    auto an = inst.ap.facets_within(n);
    auto an1 = inst.ap.facets_within(n - 1);
    std::set<apartment::Facet> prev(an1.begin(), an1.end());
    std::map<apartment::Facet, int> cover;
    for (const auto& f : an1) cover[f] += 1;
    for (const auto& pos : w.waff_ball(n)[n]) {
      for (const auto& s : proper_subsets(rd)) {
        apartment::Facet f = inst.ap.normalize(s, pos);
        if (!prev.count(f)) cover[f] += 1;
      }
    }
    for (const auto& f : an)
      if (cover[f] != 1) ++bad;
  }
  // inversion count against the closed translation formula
  {
    IntVec lam(rd.lattice_rank(), 0);
    long boxtotal = 1;
    for (int i = 0; i < rd.lattice_rank(); ++i) boxtotal *= 7;
    for (long code = 0; code < boxtotal; ++code) {
      long c = code;
      for (int i = 0; i < rd.lattice_rank(); ++i) {
        lam[i] = c % 7 - 3;
        c /= 7;
      }
      if (w.length(w.translation(lam)) != w.translation_length_formula(lam)) ++bad;
    }
  }
  if (bad) {
    res.verdict = "fail";
    res.details["counterexamples"] = bad;
  } else {
    res.details["counterexamples"] = 0;
  }
  return res;
}

// ---------------------------------------------------------------------------
// frobenius
// ---------------------------------------------------------------------------

template <class F>
SuiteResult frobenius_suite(Instance& inst, F field) {
  SuiteResult res{"frobenius", "pass", "", json::object()};
  if (!inst.rd.semisimple()) {
    res.verdict = "skipped";
    res.reason = "gl-style dagger algebras are infinite dimensional";
    return res;
  }
  Algebra<F> alg(inst.w, inst.cfg.q, field, AlgebraKind::ProP);
  json faces = json::array();
  std::mt19937 rng(static_cast<unsigned>(inst.cfg.seed));
  bool ok = true;
  for (const auto& s : proper_subsets(inst.rd)) {
    auto p = parahoric::make_parahoric(alg, inst.w.make_facet(s), true);
    auto rep = frobenius_triangularity(p, p.w_longest);
    bool tri = rep.unit_diagonal && rep.lower_triangular;
    bool nondeg = parahoric::delta_pairing_rank(p) == p.dim();
    // dual reconstruction on the regular module, 20 seeded functionals
    module::FiniteModule<F> reg;
    reg.dim = p.dim();
    auto matrix_of = [&](const typename Algebra<F>::Elt& g) {
      module::DenseMat<typename F::Elem> m(p.dim(),
                                           std::vector<typename F::Elem>(p.dim(), field.zero()));
      for (int b = 0; b < p.dim(); ++b) {
        auto prod = alg.mul(g, alg.basis(p.basis[b]));
        for (const auto& [key, cc] : prod.terms) m[p.index.at(key)][b] = cc;
      }
      return m;
    };
    for (int i = 0; i < inst.rd.lattice_rank(); ++i) {
      IntVec e(inst.rd.lattice_rank(), 0);
      e[i] = 1;
      reg.torus_gen.push_back(matrix_of(alg.tau_torus(e)));
    }
    for (int si = 0; si < inst.rd.num_affine_simples(); ++si)
      reg.simple.push_back(p.facet.contains_s(si)
                               ? matrix_of(alg.tau(inst.w.simple_reflection(si)))
                               : module::DenseMat<typename F::Elem>{});
    for (const auto& om : inst.w.omega_torsion()) {
      bool in_f = false;
      for (const auto& o : p.facet.omega_f)
        if (o == om) in_f = true;
      reg.omega_tors.push_back(in_f ? matrix_of(alg.tau(om))
                                    : module::DenseMat<typename F::Elem>{});
    }
    bool roundtrip = true;
    std::uniform_int_distribution<long> dist(0, 6);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<typename F::Elem> f0(p.dim(), field.zero());
      for (auto& x : f0) x = field.from_long(dist(rng));
      auto f = parahoric::dual_reconstruct(p, reg, f0);
      for (int j = 0; j < p.dim(); ++j)
        if (!field.eq(parahoric::delta_wf(p, f[j]), f0[j])) roundtrip = false;
    }
    json face;
    face["S_F"] = s;
    face["dim"] = p.dim();
    face["triangular"] = tri;
    face["nondegenerate"] = nondeg;
    face["dual_reconstruct"] = roundtrip;
    if (p.dim() <= 8) {
      json gram = json::array();
      for (const auto& row : rep.gram) {
        json r = json::array();
        for (const auto& e : row) r.push_back(elt_json(alg, e));
        gram.push_back(r);
      }
      face["gram"] = gram;
    }
    faces.push_back(face);
    ok = ok && tri && nondeg && roundtrip;
  }
  res.details["faces"] = faces;
  if (!ok) res.verdict = "fail";
  return res;
}

// ---------------------------------------------------------------------------
// resolution
// ---------------------------------------------------------------------------

template <class F>
SuiteResult resolution_suite(Instance& inst, F field) {
  SuiteResult res{"resolution", "pass", "", json::object()};
  Algebra<F> alg(inst.w, inst.cfg.q, field, AlgebraKind::ProP);
  homology::BuildOptions opt;
  if (!inst.rd.semisimple()) opt.omega_cap = inst.cfg.omega_cap;
  json levels = json::array();
  bool ok = true;
  for (int n = 0; n <= inst.cfg.n_max; ++n) {
    auto cx = homology::build_strict_complex(alg, inst.ap, n, opt);
    auto rep = homology::check_exactness<F>(field, cx, static_cast<int>(cx.target.size()));
    json lvl;
    lvl["n"] = n;
    lvl["dims"] = cx.dim_at;
    lvl["target_dim"] = cx.target.size();
    lvl["ranks"] = rep.ranks;
    lvl["d_squared_zero"] = rep.d_squared_zero;
    lvl["aug_after_d_zero"] = rep.aug_after_d_zero;
    if (inst.rd.semisimple()) {
      lvl["exact"] = rep.all();
      ok = ok && rep.all();
    } else {
      // for capped gl-style data only the differential identities are claims
      lvl["exact"] = "not asserted at the omega cap";
      ok = ok && rep.d_squared_zero && rep.aug_after_d_zero;
    }
    levels.push_back(lvl);
  }
  res.details["levels"] = levels;
  // negative control (signs are invisible in characteristic two)
  if (field.characteristic() != 2) {
    homology::BuildOptions bad = opt;
    bad.corrupt_sign = true;
    auto cx = homology::build_strict_complex(alg, inst.ap, std::min(inst.cfg.n_max, 2), bad);
    auto rep = homology::check_exactness<F>(field, cx, static_cast<int>(cx.target.size()));
    res.details["negative_control_inexact"] = !rep.all();
    if (rep.all()) ok = false;
  } else {
    res.details["negative_control_inexact"] = "skipped: characteristic two";
  }
  if (!ok) res.verdict = "fail";
  return res;
}

// ---------------------------------------------------------------------------
// duality
// ---------------------------------------------------------------------------

template <class F>
SuiteResult duality_suite(Instance& inst, F field) {
  SuiteResult res{"duality", "pass", "", json::object()};
  if (!inst.rd.semisimple()) {
    res.verdict = "skipped";
    res.reason = "duality requires a semisimple datum";
    return res;
  }
  Algebra<F> alg(inst.w, inst.cfg.q, field, AlgebraKind::ProP);
  const int d = inst.ap.dim_top();
  const int n = inst.cfg.n_max;
  bool ok = true;
  auto triv = Character<F>::trivial(alg);
  auto sign = Character<F>::sign(alg);
  auto expected_scalar = [&](const Character<F>& other, const std::string& name) ->
      typename F::Elem {
        typename Algebra<F>::Elt g = alg.unit();
        if (name[0] == 't') {
          IntVec e(inst.rd.lattice_rank(), 0);
          e[std::stoi(name.substr(1))] = 1;
          g = alg.tau_torus(e);
        } else if (name[0] == 's') {
          g = alg.tau(inst.w.simple_reflection(std::stoi(name.substr(1))));
        } else {
          g = alg.tau(inst.w.omega_torsion()[std::stoul(name.substr(5))]);
        }
        return other.eval(alg.j_chamber(g));
      };
  json chars = json::object();
  for (int which = 0; which < 2; ++which) {
    const auto& chi = which == 0 ? triv : sign;
    const auto& other = which == 0 ? sign : triv;
    std::string nm = which == 0 ? "trivial" : "sign";
    auto m = module::character_module(alg, chi);
    auto ext = homology::ext_top(alg, inst.ap, m, n, inst.cfg.c_max);
    bool match = ext.ok();
    for (const auto& [name, mat] : ext.dual_generators)
      if (!field.eq(mat[0][0], expected_scalar(other, name))) match = false;
    bool hom0 = homology::hom_h_vanishes(alg, m, n);
    bool mid = true;
    if (d >= 2)
      for (int i = 1; i < d; ++i) mid = mid && homology::ext_mid_vanishes(alg, inst.ap, m, i, n, inst.cfg.c_max);
    json jc;
    jc["ext_top_matches"] = match;
    jc["margin"] = ext.margin_used;
    jc["stable"] = ext.stable;
    jc["hom_vanishes"] = hom0;
    jc["mid_vanishes"] = mid;
    chars[nm] = jc;
    ok = ok && match && hom0 && mid;
  }
  res.details["characters"] = chars;
  // seeded two-dimensional module: a scrambled direct sum of the characters
  {
    auto sum = module::direct_sum(field, module::character_module(alg, triv),
                                  module::character_module(alg, sign));
    std::mt19937 rng(static_cast<unsigned>(inst.cfg.seed) + 17);
    std::uniform_int_distribution<long> dist(0, 4);
    module::DenseMat<typename F::Elem> g;
    for (;;) {
      g = {{field.from_long(1 + dist(rng)), field.from_long(dist(rng))},
           {field.from_long(dist(rng)), field.from_long(1 + dist(rng))}};
      if (module::dense_inverse(field, g).has_value()) break;
    }
    auto m = module::conjugate(field, sum, g);
    module::validate_module(alg, m);
    auto ext = homology::ext_top(alg, inst.ap, m, std::min(n, 4), inst.cfg.c_max);
    bool hom0 = homology::hom_h_vanishes(alg, m, std::min(n, 4));
    bool mid = true;
    if (d >= 2)
      for (int i = 1; i < d; ++i)
        mid = mid && homology::ext_mid_vanishes(alg, inst.ap, m, i, std::min(n, 4),
                                                inst.cfg.c_max);
    // double duality: transpose of the dual action of iota_C(tau) is the original
    long lmax = homology::facet_length_bound(alg, inst.ap);
    homology::DualComplex<F> dc(alg, inst.ap, m, 2 + static_cast<int>(lmax));
    bool dd = true;
    for (int s = 0; s < inst.rd.num_affine_simples(); ++s) {
      auto tau = alg.tau(inst.w.simple_reflection(s));
      auto back = module::dense_transpose(field, dc.dual_action(alg.iota_chamber(tau)));
      if (!module::dense_eq(field, back, module::action_matrix(alg, m, tau))) dd = false;
    }
    json jm;
    jm["ext_top_stable"] = ext.ok();
    jm["hom_vanishes"] = hom0;
    jm["mid_vanishes"] = mid;
    jm["double_dual_identity"] = dd;
    res.details["seeded_module"] = jm;
    ok = ok && ext.ok() && hom0 && mid && dd;
  }
  if (!ok) res.verdict = "fail";
  return res;
}

// ---------------------------------------------------------------------------
// character projectivity
// ---------------------------------------------------------------------------

template <class F>
SuiteResult charproj_suite(Instance& inst, F field) {
  SuiteResult res{"charproj", "pass", "", json::object()};
  if (!inst.rd.semisimple()) {
    res.verdict = "skipped";
    res.reason = "gl-style dagger algebras are infinite dimensional";
    return res;
  }
  Algebra<F> iw(inst.w, inst.cfg.q, field, AlgebraKind::Iwahori);
  bool ok = true;
  json faces = json::array();
  for (const auto& s : proper_subsets(inst.rd)) {
    auto p = parahoric::make_parahoric(iw, inst.w.make_facet(s), true);
    // the hypothesis boundary: the Poincare sum over W_F-dagger in k
    typename F::Elem denom = field.zero();
    for (const auto& key : p.basis) {
      typename F::Elem ql = field.one();
      for (long i = 0; i < iw.group().length(key); ++i) ql = field.mul(ql, iw.q_in_k());
      denom = field.add(denom, ql);
    }
    for (auto chi : {parahoric::IdChar::Trivial, parahoric::IdChar::Sign}) {
      json jf;
      jf["S_F"] = s;
      jf["character"] = chi == parahoric::IdChar::Trivial ? "trivial" : "sign";
      bool vanishes = field.is_zero(denom);
      try {
        auto e = parahoric::character_idempotent(p, chi);
        bool good = !vanishes;
        good = good && iw.eq(iw.mul(e, e), e);
        // centrality and the eigenvector property inside the dagger algebra
        auto chr = chi == parahoric::IdChar::Trivial ? Character<F>::trivial(iw)
                                                     : Character<F>::sign(iw);
        for (const auto& key : p.basis) {
          auto t = iw.basis(key);
          if (!iw.eq(iw.mul(t, e), iw.mul(e, t))) good = false;
          if (!iw.eq(iw.mul(t, e), iw.scale(chr.eval_key(key), e))) good = false;
        }
        if (!field.eq(chr.eval(e), field.one())) good = false;
        jf["outcome"] = "idempotent";
        jf["consistent"] = good;
        if (p.dim() <= 8) jf["idempotent"] = elt_json(iw, e);
        ok = ok && good;
      } catch (const Error& err) {
        if (err.code() == Errc::PoincareVanishes) {
          jf["outcome"] = "poincare_vanishes";
          jf["consistent"] = vanishes;
          ok = ok && vanishes;
        } else {
          throw;
        }
      }
      faces.push_back(jf);
    }
  }
  res.details["faces"] = faces;
  if (!ok) res.verdict = "fail";
  return res;
}

// ---------------------------------------------------------------------------
// graded
// ---------------------------------------------------------------------------

template <class F>
SuiteResult graded_suite(Instance& inst, F field) {
  SuiteResult res{"graded", "pass", "", json::object()};
  Algebra<F> alg(inst.w, inst.cfg.q, field, AlgebraKind::ProP);
  graded::GradedAlgebra<F> gr(alg);
  const int cap = inst.rd.semisimple() ? 0 : inst.cfg.omega_cap;
  inst.w.warm(7, cap);
  auto keys6 = alg.filtration_basis(6, cap);
  std::vector<long> len6(keys6.size());
  for (size_t i = 0; i < keys6.size(); ++i) len6[i] = alg.group().length(keys6[i]);
  // as in the relations suite, torus parts of the outer factors reduce to the
  // translation equivariance of the (graded) product
  std::vector<size_t> torus_free;
  for (size_t i = 0; i < keys6.size(); ++i) {
    bool tf = true;
    for (long c : keys6[i].torus)
      if (c) tf = false;
    if (tf) torus_free.push_back(i);
  }
  long bad = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : bad)
  for (long bi = 0; bi < static_cast<long>(keys6.size()); ++bi) {
    auto b = alg.basis(keys6[bi]);
    for (size_t api = 0; api < torus_free.size(); ++api) {
      size_t ai = torus_free[api];
      if (len6[ai] + len6[bi] > 6) continue;
      auto ab = gr.mul(alg.basis(keys6[ai]), b);
      for (size_t ci = 0; ci < keys6.size(); ++ci) {
        if (len6[ai] + len6[bi] + len6[ci] > 6) continue;
        auto lhs = gr.mul(ab, alg.basis(keys6[ci]));
        auto rhs = gr.mul(alg.basis(keys6[ai]), gr.mul(b, alg.basis(keys6[ci])));
        if (!alg.eq(lhs, rhs)) ++bad;
      }
    }
  }
  res.details["gr_associativity_failures"] = bad;
  long bad_sym = 0;
  auto keys3 = alg.filtration_basis(3, cap);
  for (const auto& ka : keys3)
    for (const auto& kb : keys3)
      if (!gr.symbol_consistent(alg.basis(ka), alg.basis(kb))) ++bad_sym;
  res.details["symbol_failures"] = bad_sym;
  auto ch = graded::check_chamber_additivity(alg, 3);
  res.details["A_commutative"] = ch.commutative;
  res.details["chamber_additivity"] = ch.additivity_matches_chambers;
  res.details["length_w0_invariant"] = ch.w0_invariant;
  bool gexact = true;
  if (inst.rd.semisimple()) {
    for (int m = 0; m <= std::min(inst.cfg.n_max, 4); ++m) {
      homology::BuildOptions opt;
      opt.graded_layer = m;
      auto cx = homology::build_strict_complex(alg, inst.ap, m, opt);
      auto rep = homology::check_exactness<F>(field, cx, static_cast<int>(cx.target.size()));
      if (!rep.all()) gexact = false;
    }
    res.details["graded_strict_exactness"] = gexact;
  } else {
    res.details["graded_strict_exactness"] = "not asserted at the omega cap";
  }
  if (bad || bad_sym || !ch.commutative || !ch.additivity_matches_chambers ||
      !ch.w0_invariant || !gexact)
    res.verdict = "fail";
  return res;
}

// ---------------------------------------------------------------------------
// section 7
// ---------------------------------------------------------------------------

json finalg_info(const findim::FinAlgebra<PrimeField>& a, bool check_oracle, bool* oracle_ok) {
  json out;
  out["provenance"] = a.provenance;
  out["dim"] = a.dim;
  auto rad = findim::radical(a);
  out["radical_dim"] = rad.size();
  out["semisimple"] = rad.empty();
  if (check_oracle && a.dim <= 12) {
    auto slow = findim::radical_bruteforce(a);
    bool agree = findim::same_span(a.field, rad, slow, a.dim);
    out["oracle_agrees"] = agree;
    if (!agree && oracle_ok) *oracle_ok = false;
  }
  return out;
}

SuiteResult section7_suite(Instance& inst) {
  SuiteResult res{"section7", "pass", "", json::object()};
  long p = inst.cfg.field_characteristic();
  if (p == 0) {
    res.verdict = "skipped";
    res.reason = "the global dimension examples live in characteristic p";
    return res;
  }
  PrimeField field(p);
  auto iso = rootdata::isogeny_from_string(inst.cfg.isogeny);
  bool oracle_ok = true;
  json algs = json::array();
  auto daggers_semisimple = [&](Algebra<PrimeField>& alg, bool* all_ss) {
    *all_ss = true;
    for (const auto& s : proper_subsets(inst.rd)) {
      auto pa = parahoric::make_parahoric(alg, inst.w.make_facet(s), true);
      auto a = findim::from_parahoric(pa, "dagger S_F size " + std::to_string(s.size()));
      bool ss = findim::semisimple(a);
      algs.push_back(finalg_info(a, true, &oracle_ok));
      if (!ss) *all_ss = false;
    }
  };
  bool matched = false;
  bool ok = true;
  if (inst.cfg.type == "A1" && iso == rootdata::Isogeny::SimplyConnected && inst.cfg.q == 2 &&
      p == 2) {
    matched = true;
    Algebra<PrimeField> alg(inst.w, 2, field, AlgebraKind::ProP);
    bool all_ss = false;
    daggers_semisimple(alg, &all_ss);
    ok = all_ss;
    res.details["headline"] = "all parahoric dagger algebras semisimple: global dimension 1";
  } else if (inst.cfg.type == "A1" && iso == rootdata::Isogeny::Adjoint && inst.cfg.q == 2 &&
             p == 2) {
    matched = true;
    Algebra<PrimeField> alg(inst.w, 2, field, AlgebraKind::ProP);
    auto pc = parahoric::make_parahoric(alg, inst.w.make_facet({}), true);
    auto hc = findim::from_parahoric(pc, "H_C dagger");
    algs.push_back(finalg_info(hc, true, &oracle_ok));
    bool not_ss = !findim::semisimple(hc);
    findim::FinModule<PrimeField> triv;
    triv.dim = 1;
    for (int i = 0; i < hc.dim; ++i) triv.rho.push_back({{1}});
    auto v = findim::minimal_resolution(hc, triv, 6, static_cast<unsigned>(inst.cfg.seed));
    bool periodic = v.kind == findim::ResolutionVerdict::Kind::Periodic && v.period == 1;
    res.details["H_C_dagger_not_semisimple"] = not_ss;
    res.details["trivial_module_resolution"] =
        periodic ? "Periodic(1)" : "unexpected";
    res.details["headline"] =
        "H_C dagger is k[Z/2], not semisimple: a simple module of infinite projective dimension";
    ok = not_ss && periodic;
  } else if (inst.cfg.type == "A1" && iso == rootdata::Isogeny::Adjoint && inst.cfg.q % 2 == 1 &&
             p != 2) {
    matched = true;
    Algebra<PrimeField> iw(inst.w, inst.cfg.q, field, AlgebraKind::Iwahori);
    bool all_ss = true;
    for (const auto& s : proper_subsets(inst.rd)) {
      auto pa = parahoric::make_parahoric(iw, inst.w.make_facet(s), true);
      auto a = findim::from_parahoric(pa, "Iwahori dagger S_F size " + std::to_string(s.size()));
      algs.push_back(finalg_info(a, true, &oracle_ok));
      if (!findim::semisimple(a)) all_ss = false;
    }
    ok = all_ss;
    res.details["headline"] = "Iwahori-level dagger algebras semisimple: H' has global dimension 1";
  } else if (inst.cfg.type == "A1" && iso == rootdata::Isogeny::SimplyConnected &&
             inst.cfg.q == 3 && p == 3) {
    matched = true;
    Algebra<PrimeField> alg(inst.w, 3, field, AlgebraKind::ProP);
    auto pa = parahoric::make_parahoric(alg, inst.w.make_facet({0}), false);
    auto a = findim::from_parahoric(pa, "H_x0(A1, q=3)");
    algs.push_back(finalg_info(a, true, &oracle_ok));
    bool not_ss = !findim::semisimple(a);
    auto theta = alg.theta(0);
    auto u = alg.sub(alg.unit(), alg.scale(field.inv(field.from_long(2)), theta));
    auto witness = alg.mul(u, alg.tau(inst.w.simple_reflection(0)));
    bool wit = !alg.is_zero(witness) && alg.is_zero(alg.mul(witness, witness));
    res.details["nilpotent_witness"] = wit;
    res.details["H_x0_not_semisimple"] = not_ss;
    res.details["headline"] = "H_x0 carries a nonzero nilpotent: not semisimple";
    ok = not_ss && wit;
  } else if (inst.cfg.type == "A1" && iso == rootdata::Isogeny::GlStyle && inst.cfg.q == 2 &&
             p == 2) {
    matched = true;
    Algebra<PrimeField> alg(inst.w, 2, field, AlgebraKind::ProP);
    // H_{x0} = k x k (semisimple), H_C dagger is the group algebra of Z
    auto px = parahoric::make_parahoric(alg, inst.w.make_facet({0}), false);
    auto hx = findim::from_parahoric(px, "H_x0(GL2-style)");
    algs.push_back(finalg_info(hx, true, &oracle_ok));
    bool hx_ss = findim::semisimple(hx) && hx.dim == 2;
    // group algebra structure of the chamber dagger on a capped window
    bool group_algebra = true;
    const auto& gen = inst.w.omega_free_gens()[0];
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        IntVec la(inst.rd.lattice_rank(), 0), lb(inst.rd.lattice_rank(), 0);
        for (size_t i = 0; i < la.size(); ++i) {
          la[i] = a * gen.lambda[i];
          lb[i] = b * gen.lambda[i];
        }
        auto prod = alg.mul(alg.tau(inst.w.translation(la)), alg.tau(inst.w.translation(lb)));
        IntVec lab(inst.rd.lattice_rank(), 0);
        for (size_t i = 0; i < la.size(); ++i) lab[i] = la[i] + lb[i];
        if (!alg.eq(prod, alg.tau(inst.w.translation(lab)))) group_algebra = false;
      }
    res.details["H_x0_is_k_x_k"] = hx_ss;
    res.details["H_C_dagger_group_algebra_of_Z"] = group_algebra;
    res.details["headline"] =
        "H_x0 = k x k and H_C dagger = k[Z] have global dimension <= 1: global dimension <= 2";
    ok = hx_ss && group_algebra;
  }
  res.details["algebras"] = algs;
  res.details["radical_oracle_agrees"] = oracle_ok;
  if (!matched) {
    res.verdict = "skipped";
    res.reason = "no section-7 example matches this configuration";
    return res;
  }
  if (!ok || !oracle_ok) res.verdict = "fail";
  return res;
}

}  // namespace

SuiteResult run_suite(Instance& inst, const std::string& name) {
  try {
    if (name == "relations")
      return with_field(inst.cfg, [&](auto f) { return relations_suite(inst, f); });
    if (name == "coxeter") return coxeter_suite(inst);
    if (name == "frobenius")
      return with_field(inst.cfg, [&](auto f) { return frobenius_suite(inst, f); });
    if (name == "resolution")
      return with_field(inst.cfg, [&](auto f) { return resolution_suite(inst, f); });
    if (name == "duality")
      return with_field(inst.cfg, [&](auto f) { return duality_suite(inst, f); });
    if (name == "charproj")
      return with_field(inst.cfg, [&](auto f) { return charproj_suite(inst, f); });
    if (name == "graded")
      return with_field(inst.cfg, [&](auto f) { return graded_suite(inst, f); });
    if (name == "section7") return section7_suite(inst);
    fail(Errc::ConfigError, "unknown suite '" + name + "'");
  } catch (const Error& e) {
    SuiteResult res{name, "error", e.what(), json::object()};
    return res;
  }
}

json run_all(const cli::RunConfig& cfg) {
  cfg.validate();
  json report;
  report["tool"] = {{"name", "heckeforge"}, {"version", kToolVersion}};
  report["config"] = {{"type", cfg.type},
                      {"isogeny", cfg.isogeny},
                      {"central_rank", cfg.central_rank},
                      {"q", cfg.q},
                      {"field", cfg.field},
                      {"n_max", cfg.n_max},
                      {"c_max", cfg.c_max},
                      {"omega_cap", cfg.omega_cap},
                      {"seed", cfg.seed},
                      {"suites", cfg.suites}};
  Instance inst(cfg);
  json suites_json = json::array();
  for (const auto& name : cfg.suites) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = run_suite(inst, name);
    auto t1 = std::chrono::steady_clock::now();
    json j;
    j["name"] = r.name;
    j["verdict"] = r.verdict;
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["details"] = r.details;
    if (cfg.timings)
      j["time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    suites_json.push_back(j);
  }
  report["suites"] = suites_json;
  return report;
}

int count_failures(const json& report) {
  int n = 0;
  for (const auto& s : report["suites"])
    if (s["verdict"] == "fail" || s["verdict"] == "error") ++n;
  return n;
}

std::string describe(const cli::RunConfig& cfg) {
  cfg.validate();
  Instance inst(cfg);
  std::ostringstream os;
  os << "root datum: " << cfg.type << " " << cfg.isogeny;
  if (cfg.central_rank) os << " central_rank=" << cfg.central_rank;
  os << ", q = " << cfg.q << ", k = " << cfg.field << "\n";
  os << "Pi_aff:";
  for (const auto& a : inst.rd.affine_simples()) os << " " << inst.rd.describe_affine(a);
  os << "\n";
  if (inst.w.omega_infinite())
    os << "|Omega| = infinite (free rank " << inst.w.omega_free_gens().size() << ")\n";
  else
    os << "|Omega| = " << inst.w.omega_order() << "\n";
  long qm = cfg.q - 1;
  long torus = 1;
  for (int i = 0; i < inst.rd.lattice_rank(); ++i) torus *= qm;
  os << "|T0/T1| = " << torus << "\n";
  for (size_t i = 0; i < inst.ap.face_representatives().size(); ++i)
    os << "F_" << i << ": " << inst.ap.face_representatives()[i].size()
       << " orbit representative(s)\n";
  for (const auto& s : proper_subsets(inst.rd)) {
    FacetSpec f = inst.w.make_facet(s);
    os << "face {";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}: dim H_F = " << torus * f.wf.size() << ", dim H_F+ = ";
    if (inst.w.omega_infinite())
      os << "infinite";
    else
      os << torus * f.wf.size() * f.omega_f.size();
    os << "\n";
  }
  // dim F_n H
  if (inst.rd.semisimple()) {
    long ball = 0;
    for (const auto& lvl : inst.w.waff_ball(cfg.n_max))
      ball += static_cast<long>(lvl.size()) * inst.w.omega_order();
    os << "dim F_" << cfg.n_max << " H = " << torus * ball << "\n";
  } else {
    long count = inst.w.ball(cfg.n_max, cfg.omega_cap).size();
    os << "dim F_" << cfg.n_max << " H = " << torus * count << " (omega capped at "
       << cfg.omega_cap << ")\n";
  }
  return os.str();
}

}  // namespace heckeforge::suites
