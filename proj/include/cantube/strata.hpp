#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantube/candecomp.hpp"
#include "cantube/tubes.hpp"

namespace cantube {

class StrataEngine;

enum class Level { C, CPrime, C2, C3 };

/// (dP, dQ, [X], q) with dP + dQ + dim X + q h = d. Triples are indices with q = 0.
struct StratumIndex {
  DimVector dP;
  DimVector dQ;
  RegularPart X;
  std::int64_t q = 0;

  friend auto operator<=>(const StratumIndex&, const StratumIndex&) = default;
};

struct StratumReport {
  StratumIndex index;
  std::int64_t dim = 0;
  std::int64_t quantity = 0;
  bool in_c = true;
  bool in_c_prime = false;
  bool in_c2 = false;
  bool in_c3 = false;
};

/// Throws InvalidInput unless dP in P, dQ in Q, q >= 0 and the parts add up to d.
void require_consistent(const CanonicalType& t, const DimVector& d, const StratumIndex& s);

/// [X,X] - <d - dP, d - dQ>.
std::int64_t quantity(const CanonicalType& t, const DimVector& d, const StratumIndex& s);
std::int64_t stratum_dim(const CanonicalType& t, const DimVector& d, const StratumIndex& s);
/// p^{dim X}.
std::int64_t regular_multiplicity(const CanonicalType& t, const RegularPart& x);

/// One admissible class of d and how the membership condition resolved for it.
struct ConditionTrace {
  IntervalClass interval;
  std::int64_t delta_p = 0;  // delta_i^{[j1+1,j2]}(dP)
  std::int64_t hom = 0;      // [X, R_i^{[j1,j2-1]}]
  bool satisfied() const { return delta_p > 0 || hom != 0; }
};

struct CPrimeCheck {
  bool member = false;
  bool dp_nonzero = false;
  std::vector<ConditionTrace> trace;
};

CPrimeCheck in_c_prime(const CanonicalType& t, const DimVector& d, const StratumIndex& s);

/// Exhaustive listing in canonical order. Levels past C need p^d > 0.
std::vector<StratumReport> enumerate_strata(const CanonicalType& t, const DimVector& d, Level level);

/// All nonzero members of P (resp. Q) below `bound` coordinatewise.
std::vector<DimVector> p_vectors_below(const CanonicalType& t, const DimVector& bound);
std::vector<DimVector> q_vectors_below(const CanonicalType& t, const DimVector& bound);

/// p^d + 1 + ad(d) - n. Wild types need assume_irreducible.
std::int64_t generator_count(const CanonicalType& t, const DimVector& d,
                             bool assume_irreducible = false);

struct ZDimension {
  bool empty = false;  // no C' strata
  std::int64_t dim = 0;
  std::int64_t codim = 0;
  std::optional<StratumIndex> witness;
};

ZDimension z_dimension(const CanonicalType& t, const DimVector& d);
/// Same, reusing the arm tables cached in `engine`.
ZDimension z_dimension(StrataEngine& engine, const DimVector& d);

struct CiVerdict {
  std::int64_t s = 0;
  std::optional<std::int64_t> codim;
  std::optional<std::int64_t> min_quantity;
  std::optional<StratumIndex> witness;
  bool verdict = false;
  bool anomaly = false;
  bool vacuous = false;  // zero set empty
};

CiVerdict ci_check(const CanonicalType& t, const DimVector& d, bool assume_irreducible = false);
CiVerdict ci_check(StrataEngine& engine, const DimVector& d, bool assume_irreducible = false);

StratumIndex reduce_q(const CanonicalType& t, const DimVector& d, const StratumIndex& s);

struct XReduction {
  StratumIndex result;
  bool swapped = false;
  std::optional<StratumIndex> after_swap;
  std::optional<IntervalClass> critical;  // representative with j2 = j0
  int arm = 0;
  int j0 = 0, l1 = 0, l2 = 0;
};

XReduction reduce_X(const CanonicalType& t, const DimVector& d, const StratumIndex& s);

struct ReductionStep {
  enum class Kind { Q, Swap, X } kind;
  StratumIndex result;
  std::int64_t quantity = 0;
};

struct ReductionTrace {
  StratumIndex start;
  std::int64_t start_quantity = 0;
  std::vector<ReductionStep> steps;
  const StratumIndex& final() const { return steps.empty() ? start : steps.back().result; }
};

ReductionTrace reduce_to_c3(const CanonicalType& t, const DimVector& d, const StratumIndex& s);

enum class Side { P, Q };

struct Staircase {
  std::int64_t t0 = 0;
  std::vector<std::vector<int>> levels;  // one sorted row per arm, s entries each
};

Staircase staircase_decomposition(const CanonicalType& t, const DimVector& v, Side side);
/// t0 h + sum_k e(l_{1,k}, ..., l_{n,k}) (side P) or the e' analogue (side Q).
DimVector staircase_vector(const CanonicalType& t, const Staircase& s, Side side);

struct AdSplit {
  int ad1 = 0, ad2 = 0, ad3 = 0;
  friend bool operator==(const AdSplit&, const AdSplit&) = default;
};

AdSplit ad_split(const CanonicalType& t, const DimVector& d, const StratumIndex& s);

struct Margins {
  AdSplit split;
  std::int64_t m1 = 0, m2 = 0, m3 = 0;
  std::int64_t corollary = 0;
};

Margins inequality_report(const CanonicalType& t, const DimVector& d, const StratumIndex& s);
/// (<dP,dP> - 1) + (p - n)(<dP,h> - 1).
std::int64_t corollary_margin(const CanonicalType& t, const DimVector& dP, std::int64_t p);

std::string level_name(Level level);

}  // namespace cantube
