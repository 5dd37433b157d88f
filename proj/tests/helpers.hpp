#pragma once

#include <functional>
#include <random>
#include <vector>

#include "cantube/core.hpp"
#include "cantube/tubes.hpp"

namespace testing_support {

using namespace cantube;

/// Builds d from (d0, dinf, arm blocks) with arm blocks listing d_{i,1..m_i-1}.
inline DimVector dv(const CanonicalType& t, std::int64_t d0, std::int64_t dinf,
                    const std::vector<std::vector<std::int64_t>>& arms) {
  DimVector d(t.vertex_count());
  d[CanonicalType::kZero] = d0;
  d[CanonicalType::kInfinity] = dinf;
  for (int i = 1; i <= t.arms(); ++i)
    for (int j = 1; j < t.arm_length(i); ++j) d[t.vertex_index(i, j)] = arms[i - 1][j - 1];
  return d;
}

inline TubeClass R(const CanonicalType& t, int i, int j1, int j2) { return TubeClass(t, i, j1, j2); }

/// Every vector with 0 <= d_x <= bound.
inline void for_each_box(const CanonicalType& t, int bound,
                         const std::function<void(const DimVector&)>& f) {
  DimVector d(t.vertex_count());
  const int n = t.vertex_count();
  while (true) {
    f(d);
    int k = 0;
    while (k < n && d[k] == bound) d[k++] = 0;
    if (k == n) return;
    ++d[k];
  }
}

/// All tube classes of arm lengths up to max_len (per arm, as a multiple of m_i when scaled).
inline std::vector<TubeClass> all_classes(const CanonicalType& t, int periods) {
  std::vector<TubeClass> out;
  for (int i = 1; i <= t.arms(); ++i) {
    const int m = t.arm_length(i);
    for (int s = 0; s < m; ++s)
      for (int len = 1; len <= periods * m; ++len) out.push_back(TubeClass::normalized(i, s, len));
  }
  return out;
}

}  // namespace testing_support
