// Benchmark of the exact elimination kernels: the OpenMP sparse path against
// the serial reference, over F_3 and over Q, plus a resolution build.

#include <omp.h>

#include <chrono>
#include <iostream>
#include <random>

#include "heckeforge/homology.hpp"

using namespace heckeforge;

namespace {

template <class F>
linalg::SparseMat<F> random_matrix(const F& k, int rows, int cols, double density,
                                   unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<long> val(-3, 3);
  linalg::SparseMat<F> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (u(rng) < density) m.set(k, i, j, k.from_long(val(rng)));
  return m;
}

template <class Fn>
double time_ms(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
  std::cout << "threads: " << omp_get_max_threads() << "\n";
  {
    PrimeField f3(3);
    auto m = random_matrix(f3, 900, 1100, 0.02, 42);
    int r1 = 0, r2 = 0, r3 = 0;
    double t_par = time_ms([&] { r1 = linalg::rank(f3, m, true); });
    double t_ser = time_ms([&] { r2 = linalg::rank(f3, m, false); });
    double t_ref = time_ms([&] { r3 = linalg::reference_rank_dense(f3, m); });
    std::cout << "F3 rank 900x1100 (2% fill): parallel " << t_par << " ms, serial " << t_ser
              << " ms, dense reference " << t_ref << " ms, ranks " << r1 << "/" << r2 << "/"
              << r3 << "\n";
  }
  {
    RationalField q;
    auto m = random_matrix(q, 260, 320, 0.03, 7);
    int r1 = 0, r2 = 0, r3 = 0;
    double t_par = time_ms([&] { r1 = linalg::rank(q, m, true); });
    double t_ser = time_ms([&] { r2 = linalg::rank(q, m, false); });
    double t_ref = time_ms([&] { r3 = linalg::reference_rank_dense(q, m); });
    std::cout << "Q rank 260x320 (3% fill): parallel " << t_par << " ms, serial " << t_ser
              << " ms, dense reference " << t_ref << " ms, ranks " << r1 << "/" << r2 << "/"
              << r3 << "\n";
  }
  {
    rootdata::RootDatum rd(rootdata::CartanType::A2, rootdata::Isogeny::SimplyConnected, 0);
    weyl::Weyl w(rd);
    apartment::Apartment ap(w);
    PrimeField f3(3);
    hecke::Algebra<PrimeField> alg(w, 3, f3, hecke::AlgebraKind::ProP);
    homology::StrictComplex<PrimeField> cx;
    double t_build = time_ms([&] { cx = homology::build_strict_complex(alg, ap, 5); });
    std::cout << "A2 strict complex at n=5: dims";
    for (int d : cx.dim_at) std::cout << " " << d;
    std::cout << " -> " << cx.target.size() << " (" << t_build << " ms build)\n";
    int r1 = 0, r2 = 0;
    double t_par = time_ms([&] { r1 = linalg::rank(f3, cx.diff[1], true); });
    double t_ser = time_ms([&] { r2 = linalg::rank(f3, cx.diff[1], false); });
    std::cout << "boundary rank " << cx.diff[1].rows << "x" << cx.diff[1].cols
              << ": parallel " << t_par << " ms, serial " << t_ser << " ms, ranks " << r1
              << "/" << r2 << "\n";
    RationalField q;
    hecke::Algebra<RationalField> algq(w, 3, q, hecke::AlgebraKind::ProP);
    auto cq = homology::build_strict_complex(algq, ap, 5);
    double tq_par = time_ms([&] { r1 = linalg::rank(q, cq.diff[1], true); });
    double tq_ser = time_ms([&] { r2 = linalg::rank(q, cq.diff[1], false); });
    std::cout << "boundary rank over Q: parallel " << tq_par << " ms, serial " << tq_ser
              << " ms, ranks " << r1 << "/" << r2 << "\n";
  }
  return 0;
}
