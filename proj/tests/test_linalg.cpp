#include <random>

#include "doctest.h"
#include "heckeforge/field.hpp"
#include "heckeforge/linalg.hpp"

using namespace heckeforge;
using namespace heckeforge::linalg;

namespace {

template <class F>
SparseMat<F> random_matrix(const F& k, int rows, int cols, double density, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<long> val(-4, 4);
  SparseMat<F> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (u(rng) < density) m.set(k, i, j, k.from_long(val(rng)));
  return m;
}

}  // namespace

TEST_CASE("rank agrees with the dense reference, serial and parallel") {
  PrimeField f3(3);
  RationalField q;
  for (unsigned seed : {1u, 2u, 3u, 4u}) {
    auto m3 = random_matrix(f3, 40, 55, 0.15, seed);
    int want = reference_rank_dense(f3, m3);
    CHECK(rank(f3, m3, true) == want);
    CHECK(rank(f3, m3, false) == want);
    auto mq = random_matrix(q, 25, 30, 0.2, seed + 100);
    int wantq = reference_rank_dense(q, mq);
    CHECK(rank(q, mq, true) == wantq);
    CHECK(rank(q, mq, false) == wantq);
  }
}

TEST_CASE("kernel basis annihilates and has the right dimension") {
  PrimeField f5(5);
  for (unsigned seed : {7u, 8u}) {
    auto m = random_matrix(f5, 30, 45, 0.2, seed);
    auto ker = kernel_basis(f5, m);
    CHECK(static_cast<int>(ker.size()) == m.cols - rank(f5, m));
    for (const auto& x : ker) {
      // m x = 0
      for (int r = 0; r < m.rows; ++r) {
        long acc = 0;
        for (const auto& [c, v] : m.row[r]) {
          const auto* xv = sparse_get<PrimeField>(x, c);
          if (xv) acc = f5.add(acc, f5.mul(v, *xv));
        }
        CHECK(acc == 0);
      }
    }
    // kernel vectors are independent
    auto e = echelon<PrimeField>(f5, ker, m.cols, false);
    CHECK(e.rank() == static_cast<int>(ker.size()));
  }
}

TEST_CASE("row span membership") {
  RationalField q;
  SparseMat<RationalField> m(2, 3);
  m.set(q, 0, 0, mpq_class(1));
  m.set(q, 0, 1, mpq_class(2));
  m.set(q, 1, 1, mpq_class(1));
  m.set(q, 1, 2, mpq_class(-1));
  auto e = echelon(q, m, true);
  SparseVec<RationalField> v{{0, mpq_class(2)}, {1, mpq_class(5)}, {2, mpq_class(-1)}};
  CHECK(e.in_rowspan(v));  // 2*r0 + r1
  SparseVec<RationalField> w{{0, mpq_class(1)}};
  CHECK(!e.in_rowspan(w));
}

TEST_CASE("dense solve") {
  PrimeField f7(7);
  std::vector<std::vector<long>> a{{1, 2}, {3, 4}, {4, 6}};
  std::vector<long> b{5, 6, 4};  // row3 = row1+row2 so consistent
  auto x = dense_solve(f7, a, b);
  REQUIRE(x.has_value());
  CHECK(f7.add(f7.mul(1, (*x)[0]), f7.mul(2, (*x)[1])) == 5);
  CHECK(f7.add(f7.mul(3, (*x)[0]), f7.mul(4, (*x)[1])) == 6);
  std::vector<long> bad{5, 6, 5};
  CHECK(!dense_solve(f7, a, bad).has_value());
}
