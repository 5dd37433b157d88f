#include "cantube/candecomp.hpp"

namespace cantube {

std::int64_t CanonicalDecomposition::at(int i, int j) const {
  const auto& row = table.at(i - 1);
  return row[mod_floor(j, static_cast<int>(row.size()))];
}

DimVector CanonicalDecomposition::reconstruct(const CanonicalType& t) const {
  DimVector v = p * h_vector(t);
  for (int i = 1; i <= t.arms(); ++i)
    for (int j = 0; j < t.arm_length(i); ++j) v += table[i - 1][j] * e_vector(t, i, j);
  return v;
}

CanonicalDecomposition canonical_decomposition(const CanonicalType& t, const DimVector& d,
                                               TieBreak tie, bool strict) {
  require_same_size(t, d);
  if (strict && defect(t, d) != 0)
    throw PreconditionError("canonical decomposition needs d_0 = d_inf");
  CanonicalDecomposition out;
  std::int64_t sum_min = 0;
  for (int i = 1; i <= t.arms(); ++i) {
    const int m = t.arm_length(i);
    int arg = 0;
    for (int j = 1; j < m; ++j) {
      const auto v = coord(t, d, i, j), best = coord(t, d, i, arg);
      if (v < best || (tie == TieBreak::Largest && v == best)) arg = j;
    }
    const auto mn = coord(t, d, i, arg);
    sum_min += mn;
    std::vector<std::int64_t> row(m);
    for (int j = 0; j < m; ++j) row[j] = coord(t, d, i, j) - mn;
    out.table.push_back(std::move(row));
  }
  out.p = sum_min - static_cast<std::int64_t>(t.arms() - 1) * d[CanonicalType::kZero];
  return out;
}

std::vector<IntervalClass> admissible_intervals_of_profile(int arm,
                                                           const std::vector<std::int64_t>& prof) {
  const int m = static_cast<int>(prof.size());
  std::vector<IntervalClass> out;
  for (int j1 = 0; j1 < m; ++j1) {
    const auto base = prof[j1];
    for (int j2 = j1 + 1; j2 <= j1 + m; ++j2) {
      const auto v = prof[j2 % m];
      if (v < base) break;
      if (v == base) {
        out.push_back({arm, j1, j2});
        break;
      }
    }
  }
  return out;
}

AdmissibleIntervals admissible_intervals(const CanonicalType& t, const DimVector& d) {
  const auto cd = canonical_decomposition(t, d);
  AdmissibleIntervals out;
  for (int i = 1; i <= t.arms(); ++i) {
    out.per_arm.push_back(admissible_intervals_of_profile(i, cd.table[i - 1]));
    out.ad += static_cast<int>(out.per_arm.back().size());
  }
  return out;
}

int inside_multiplicity(const CanonicalType& t, const DimVector& d, int i, int j) {
  const int m = t.arm_length(i);
  if (j < 0 || j >= m) throw InvalidInput("position must lie in [0, m_i - 1]");
  const auto adm = admissible_intervals(t, d);
  int count = 0;
  for (const auto& c : adm.per_arm[i - 1]) {
    // j + m covers the representatives that wrap past m.
    if ((c.j1 <= j && j < c.j2) || (c.j1 <= j + m && j + m < c.j2)) ++count;
  }
  return count;
}

}  // namespace cantube
