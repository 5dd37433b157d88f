#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cantube/tubes.hpp"

namespace cantube {

using Interval = std::pair<int, int>;

/// 1 iff a <= c <= b <= d for X^{[a,b]} -> X^{[c,d]} over A_m (arrows j+1 -> j).
int hom_type_a(int m, Interval x, Interval y);
std::int64_t hom_type_a(const TypeAModule& x, const TypeAModule& y);

std::int64_t euler_type_a(int m, const std::vector<std::int64_t>& d,
                          const std::vector<std::int64_t>& e);

std::vector<TypeAModule> enumerate_type_a(int m, const std::vector<std::int64_t>& d);

/// [j1, j2] with 1 <= j1 < j2 <= m, d_{j1} = d_{j2} > 0, larger strictly inside.
std::vector<Interval> admissible_type_a(const std::vector<std::int64_t>& d);

/// Whether [M,M] >= <d,d> + #A' for every M of dimension d with
/// [X^{[j1+1,j2]}, M] != 0 for all [j1,j2] in A'.
bool verify_cw_bound(int m, const std::vector<std::int64_t>& d,
                     const std::vector<Interval>& subset);

}  // namespace cantube
