#pragma once

#include <vector>

#include "cantube/core.hpp"

namespace cantube {

enum class TieBreak { Smallest, Largest };

/// d = p h + sum_{i,j} table[i-1][j] e_{i,j}, j in [0, m_i - 1].
struct CanonicalDecomposition {
  std::int64_t p = 0;
  std::vector<std::vector<std::int64_t>> table;

  /// p_{i,j}, periodic in j.
  std::int64_t at(int i, int j) const;
  DimVector reconstruct(const CanonicalType& t) const;

  friend bool operator==(const CanonicalDecomposition&, const CanonicalDecomposition&) = default;
};

/// Requires d_0 = d_inf when `strict`; otherwise reports p even if negative.
CanonicalDecomposition canonical_decomposition(const CanonicalType& t, const DimVector& d,
                                               TieBreak tie = TieBreak::Smallest,
                                               bool strict = true);

/// An admissible interval [j1, j2] of arm i, stored with j1 in [0, m_i - 1].
struct IntervalClass {
  int arm = 1;
  int j1 = 0;
  int j2 = 1;

  int length() const { return j2 - j1; }
  friend auto operator<=>(const IntervalClass&, const IntervalClass&) = default;
};

struct AdmissibleIntervals {
  std::vector<std::vector<IntervalClass>> per_arm;  // index i - 1
  int ad = 0;
};

/// Admissible intervals of the periodic profile p_{i,*}: j2 is the first index after j1 whose
/// value does not exceed p_{i,j1}; the class is admissible when the two values are equal.
std::vector<IntervalClass> admissible_intervals_of_profile(int arm,
                                                           const std::vector<std::int64_t>& prof);

AdmissibleIntervals admissible_intervals(const CanonicalType& t, const DimVector& d);

/// Number of admissible classes of arm i having j inside (j1 + u m <= j < j2 + u m).
int inside_multiplicity(const CanonicalType& t, const DimVector& d, int i, int j);

}  // namespace cantube
