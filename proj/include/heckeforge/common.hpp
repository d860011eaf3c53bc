#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace heckeforge {

// coordinate vectors have length <= 4 in every supported configuration
using IntVec = boost::container::small_vector<long, 4>;
using IntMat = std::vector<IntVec>;  // row-major, mat[i][j]

inline long dot(const IntVec& a, const IntVec& b) {
  long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec mat_apply(const IntMat& m, const IntVec& v) {
  IntVec out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, IntVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j)
      if (a[i][j] != 0)
        for (size_t l = 0; l < m; ++l) c[i][l] += a[i][j] * b[j][l];
  return c;
}

inline IntMat mat_identity(size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline void hash_combine(size_t& seed, size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline size_t hash_intvec(const IntVec& v) {
  size_t h = v.size();
  for (long x : v) hash_combine(h, std::hash<long>{}(static_cast<long>(x)));
  return h;
}

}  // namespace heckeforge
