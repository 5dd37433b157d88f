#include "cantube/type_a.hpp"

#include <algorithm>

namespace cantube {

int hom_type_a(int m, Interval x, Interval y) {
  auto ok = [m](Interval v) { return 1 <= v.first && v.first <= v.second && v.second <= m; };
  if (!ok(x) || !ok(y)) throw InvalidInput("type A interval outside [1, m]");
  const auto [a, b] = x;
  const auto [c, d] = y;
  return (a <= c && c <= b && b <= d) ? 1 : 0;
}

std::int64_t hom_type_a(const TypeAModule& x, const TypeAModule& y) {
  std::int64_t s = 0;
  for (auto u : x.intervals)
    for (auto v : y.intervals) s += hom_type_a(x.m, u, v);
  return s;
}

std::int64_t euler_type_a(int m, const std::vector<std::int64_t>& d,
                          const std::vector<std::int64_t>& e) {
  if (static_cast<int>(d.size()) != m || static_cast<int>(e.size()) != m)
    throw InvalidInput("type A vectors must have length m");
  std::int64_t s = 0;
  for (int j = 0; j < m; ++j) s += d[j] * e[j];
  for (int j = 0; j + 1 < m; ++j) s -= d[j + 1] * e[j];
  return s;
}

std::vector<TypeAModule> enumerate_type_a(int m, const std::vector<std::int64_t>& d) {
  if (static_cast<int>(d.size()) != m) throw InvalidInput("type A vector must have length m");
  for (auto x : d)
    if (x < 0) throw InvalidInput("type A vector has a negative coordinate");
  // A cycle of length m + 1 with the extra residue left uncovered is the path A_m.
  std::vector<std::int64_t> cov(m + 1, 0);
  for (int j = 0; j < m; ++j) cov[j + 1] = d[j];
  std::vector<TypeAModule> out;
  for (const auto& cover : enumerate_tube_covers(cov)) {
    TypeAModule mod{m, {}};
    for (auto [s, len] : cover) mod.intervals.emplace_back(s, s + len - 1);
    std::sort(mod.intervals.begin(), mod.intervals.end());
    out.push_back(std::move(mod));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Interval> admissible_type_a(const std::vector<std::int64_t>& d) {
  const int m = static_cast<int>(d.size());
  std::vector<Interval> out;
  for (int j1 = 1; j1 <= m; ++j1) {
    const auto base = d[j1 - 1];
    if (base <= 0) continue;
    for (int j2 = j1 + 1; j2 <= m; ++j2) {
      const auto v = d[j2 - 1];
      if (v < base) break;
      if (v == base) {
        out.emplace_back(j1, j2);
        break;
      }
    }
  }
  return out;
}

bool verify_cw_bound(int m, const std::vector<std::int64_t>& d,
                     const std::vector<Interval>& subset) {
  const auto adm = admissible_type_a(d);
  for (auto iv : subset)
    if (std::find(adm.begin(), adm.end(), iv) == adm.end())
      throw InvalidInput("interval [" + std::to_string(iv.first) + "," +
                         std::to_string(iv.second) + "] is not admissible");
  const auto dd = euler_type_a(m, d, d);
  for (const auto& mod : enumerate_type_a(m, d)) {
    bool hypothesis = true;
    for (auto [j1, j2] : subset) {
      TypeAModule probe{m, {{j1 + 1, j2}}};
      if (hom_type_a(probe, mod) == 0) {
        hypothesis = false;
        break;
      }
    }
    if (hypothesis && hom_type_a(mod, mod) < dd + static_cast<std::int64_t>(subset.size()))
      return false;
  }
  return true;
}

}  // namespace cantube
