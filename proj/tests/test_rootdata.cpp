#include <algorithm>
#include <set>

#include "doctest.h"
#include "heckeforge/rootdata.hpp"
#include "heckeforge/smith.hpp"

using namespace heckeforge;
using namespace heckeforge::rootdata;

namespace {

// quotient X_* / coroot-lattice via Smith normal form (independent oracle)
IntVec coroot_quotient(const RootDatum& rd) {
  IntMat cols;
  for (int i = 0; i < rd.rank(); ++i) cols.push_back(rd.coroot(rd.simple_root(i)));
  return lattice_quotient(cols, rd.lattice_rank());
}

}  // namespace

TEST_CASE("root datum construction and invariants") {
  for (auto type : {CartanType::A1, CartanType::A2, CartanType::B2, CartanType::G2})
    for (auto iso : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      RootDatum rd(type, iso, 0);
      // <coroot, root> = 2 and root negation
      for (int r = 0; r < rd.num_roots(); ++r) {
        CHECK(dot(rd.coroot(r), rd.root_functional(r)) == 2);
        CHECK(rd.negate_root(rd.negate_root(r)) == r);
        CHECK(rd.is_positive_root(r) != rd.is_positive_root(rd.negate_root(r)));
      }
      // closure under all reflections
      for (int r = 0; r < rd.num_roots(); ++r)
        for (int s = 0; s < rd.num_roots(); ++s)
          CHECK(rd.w0_apply_root(rd.w0_reflection(r), s) >= 0);
      // simple roots are a basis: positives have nonnegative simple coords
      for (int r : rd.positive_roots())
        for (long c : rd.root_simple_coords(r)) CHECK(c >= 0);
      CHECK(2 * static_cast<int>(rd.positive_roots().size()) == rd.num_roots());
    }
}

TEST_CASE("root counts per type") {
  CHECK(RootDatum(CartanType::A1, Isogeny::SimplyConnected, 0).num_roots() == 2);
  CHECK(RootDatum(CartanType::A2, Isogeny::SimplyConnected, 0).num_roots() == 6);
  CHECK(RootDatum(CartanType::B2, Isogeny::SimplyConnected, 0).num_roots() == 8);
  CHECK(RootDatum(CartanType::G2, Isogeny::SimplyConnected, 0).num_roots() == 12);
  // A2 example: |Phi| = 6, |Phi+| = 3
  RootDatum a2(CartanType::A2, Isogeny::SimplyConnected, 0);
  CHECK(a2.positive_roots().size() == 3);
}

TEST_CASE("isogeny lattices via Smith normal form oracle") {
  // simply connected: X_* is the coroot lattice
  CHECK(coroot_quotient(RootDatum(CartanType::A1, Isogeny::SimplyConnected, 0)).empty());
  CHECK(coroot_quotient(RootDatum(CartanType::A2, Isogeny::SimplyConnected, 0)).empty());
  // adjoint A1: X_*/Q-check = Z/2
  CHECK(coroot_quotient(RootDatum(CartanType::A1, Isogeny::Adjoint, 0)) == IntVec{2});
  CHECK(coroot_quotient(RootDatum(CartanType::A2, Isogeny::Adjoint, 0)) == IntVec{3});
  CHECK(coroot_quotient(RootDatum(CartanType::B2, Isogeny::Adjoint, 0)) == IntVec{2});
  CHECK(coroot_quotient(RootDatum(CartanType::G2, Isogeny::Adjoint, 0)).empty());
  // gl-style: free quotient of rank r
  CHECK(coroot_quotient(RootDatum(CartanType::A1, Isogeny::GlStyle, 1)) == IntVec{0});
  CHECK(coroot_quotient(RootDatum(CartanType::A2, Isogeny::GlStyle, 2)) == IntVec{0, 0});
}

TEST_CASE("unsupported configurations are rejected") {
  CHECK_THROWS_AS(cartan_type_from_string("E8"), Error);
  CHECK_THROWS_AS(RootDatum(CartanType::A1, Isogeny::GlStyle, 0), Error);
  CHECK_THROWS_AS(RootDatum(CartanType::A1, Isogeny::Adjoint, 1), Error);
}

TEST_CASE("affine simple roots") {
  RootDatum a1(CartanType::A1, Isogeny::SimplyConnected, 0);
  REQUIRE(a1.num_affine_simples() == 2);
  // Pi_aff = {(alpha,0), (-alpha,1)}
  CHECK(a1.affine_simples()[0].level == 0);
  CHECK(a1.is_positive_root(a1.affine_simples()[0].root));
  CHECK(a1.affine_simples()[1].level == 1);
  CHECK(a1.affine_simples()[1].root == a1.negate_root(a1.affine_simples()[0].root));

  // A2: two finite simples plus (-highest, 1)
  RootDatum a2(CartanType::A2, Isogeny::SimplyConnected, 0);
  REQUIRE(a2.num_affine_simples() == 3);
  REQUIRE(a2.minimal_roots().size() == 1);
  int lowest = a2.minimal_roots()[0];
  // the unique minimal root is the negative of the highest root (1,1)
  CHECK(a2.root_simple_coords(lowest) == IntVec{-1, -1});

  // G2: |Pi_aff| = d + 1 = 3
  CHECK(RootDatum(CartanType::G2, Isogeny::SimplyConnected, 0).num_affine_simples() == 3);
  CHECK(RootDatum(CartanType::B2, Isogeny::SimplyConnected, 0).num_affine_simples() == 3);
}

TEST_CASE("affine reflection action") {
  RootDatum a1(CartanType::A1, Isogeny::SimplyConnected, 0);
  AffineRoot alpha0 = a1.affine_simples()[0];   // (alpha, 0)
  AffineRoot aff = a1.affine_simples()[1];      // (-alpha, 1)
  // a reflection negates its own root
  CHECK(reflect(a1, alpha0, alpha0) == AffineRoot{a1.negate_root(alpha0.root), 0});
  CHECK(reflect(a1, aff, aff) == AffineRoot{a1.negate_root(aff.root), -1});
  // composition of affine maps: s_{(-alpha,1)} sends (alpha,0) to (-alpha,2)
  CHECK(reflect(a1, aff, alpha0) == AffineRoot{a1.negate_root(alpha0.root), 2});
}

TEST_CASE("simple affine reflections permute the other positive affine roots") {
  // s_A(Phi_aff+ minus {A}) = Phi_aff+ minus {A}, checked on a level window
  for (auto type : {CartanType::A1, CartanType::A2, CartanType::B2, CartanType::G2}) {
    RootDatum rd(type, Isogeny::SimplyConnected, 0);
    for (const AffineRoot& a : rd.affine_simples())
      for (int r = 0; r < rd.num_roots(); ++r)
        for (long h = rd.is_positive_root(r) ? 0 : 1; h <= 4; ++h) {
          AffineRoot b{r, h};
          if (b == a) continue;
          CHECK(rd.affine_positive(reflect(rd, a, b)));
        }
  }
}

TEST_CASE("positive affine roots decompose over Pi_aff with nonnegative coefficients") {
  // bounded-level instance of the spanning property
  for (auto type : {CartanType::A1, CartanType::A2, CartanType::B2}) {
    RootDatum rd(type, Isogeny::SimplyConnected, 0);
    const auto& simples = rd.affine_simples();
    for (int r = 0; r < rd.num_roots(); ++r)
      for (long h = rd.is_positive_root(r) ? 0 : 1; h <= 3; ++h) {
        // brute-force search for nonnegative integer coefficients
        // A = sum m_B B over Pi_aff, in (root-coords, level) space
        bool found = false;
        int n = rd.num_affine_simples();
        for (long code = 0; code < 15 * 15 * 15 && !found; ++code) {
          long m0 = code % 15, m1 = (code / 15) % 15, m2 = (code / 225) % 15;
          if (n == 2 && m2 != 0) continue;
          IntVec coords(rd.rank(), 0);
          long lvl = 0;
          long ms[3] = {m0, m1, m2};
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < rd.rank(); ++j)
              coords[j] += ms[i] * rd.root_simple_coords(simples[i].root)[j];
            lvl += ms[i] * simples[i].level;
          }
          if (coords == rd.root_simple_coords(r) && lvl == h) found = true;
        }
        CHECK(found);
      }
  }
}

TEST_CASE("finite Weyl group sizes and longest element") {
  CHECK(RootDatum(CartanType::A1, Isogeny::SimplyConnected, 0).w0_size() == 2);
  CHECK(RootDatum(CartanType::A2, Isogeny::SimplyConnected, 0).w0_size() == 6);
  CHECK(RootDatum(CartanType::B2, Isogeny::SimplyConnected, 0).w0_size() == 8);
  CHECK(RootDatum(CartanType::G2, Isogeny::SimplyConnected, 0).w0_size() == 12);
  RootDatum b2(CartanType::B2, Isogeny::SimplyConnected, 0);
  CHECK(b2.w0_length(b2.w0_longest()) == 4);
}
