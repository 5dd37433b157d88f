#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantube/engine.hpp"
#include "cantube/matrixrep.hpp"
#include "cantube/strata.hpp"

namespace cantube {

/// `requested` workers (hardware concurrency when 0), capped by CANTUBE_THREADS.
int worker_count(int requested = 0);

/// Runs body(index, worker) for index in [0, count); worker w gets a contiguous block.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t, int)>& body);

/// Regular dimension vectors with p^d in [pmin, pmax]. A negative bound means no bound;
/// at least one of the two bounds must be set.
struct Box {
  int coord_bound = -1;  // every coordinate of d
  int tube_bound = -1;   // every p_{i,j} of the canonical decomposition
  int pmin = 0;
  int pmax = 0;
};

/// Sorted lexicographically in vertex order.
std::vector<DimVector> regular_vectors(const CanonicalType& t, const Box& box);

/// Outcome of one exhaustive check.
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::vector<std::string> samples;  // first few violations

  bool passed() const { return violations == 0 && checked > 0; }
  void fail(const std::string& what);
  void merge(const CheckResult& other);
};

// --- sweeps ----------------------------------------------------------------

struct SweepConfig {
  CanonicalType type{{2, 2, 2}};
  Box box;
  Level level = Level::CPrime;
  int threads = 0;
  bool assume_irreducible = false;
};

struct SweepRow {
  DimVector d;
  std::int64_t p = 0;
  int ad = 0;
  std::int64_t s = 0;
  std::optional<std::int64_t> codim;      // empty when the zero set is empty
  std::optional<std::int64_t> level_min;  // minimum quantity over the requested level
  bool verdict = false;
  bool anomaly = false;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::int64_t not_ci = 0;           // rows with a false verdict
  std::int64_t counterexamples = 0;  // false verdicts with p^d >= N (every one for wild types)
};

/// One row per regular d of the box, in canonical order. Needs pmin >= n - 1.
SweepTable sweep(const SweepConfig& config);

// --- lemma campaigns ---------------------------------------------------------

/// Inside multiplicity of every (arm, j) is at most p_{i,j+1} + 1.
CheckResult check_inside_bound(const CanonicalType& t, const std::vector<DimVector>& vectors);

/// Duality of the two nonvanishing conditions on sums of up to `summands` built tube modules
/// of length at most m_i, plus one homogeneous module when `with_homogeneous`.
CheckResult check_duality(const CanonicalType& t, int summands, bool with_homogeneous);

/// z_membership of S_0^a + S_inf^a + X + R_mu^q against C' membership of (a e_0, a e_inf, X, q).
CheckResult check_membership(const CanonicalType& t, int summands);

/// Every C' stratum of every d: reduce_q and reduce_X claims, monotone reduce_to_c3 traces.
CheckResult check_reductions(const CanonicalType& t, const std::vector<DimVector>& vectors);

/// Margins of every C''' triple are nonnegative, via the separable engine.
CheckResult check_margins(const CanonicalType& t, const std::vector<DimVector>& vectors,
                          int threads = 0);

/// Exhaustive version of check_margins over listed strata; also checks the ad split.
CheckResult check_margins_exhaustive(const CanonicalType& t, const std::vector<DimVector>& vectors);

/// Min quantity over C' equals the minima over C'' and C''', and the reduction trace of the
/// C' minimizer is monotone.
CheckResult check_level_minima(const CanonicalType& t, const std::vector<DimVector>& vectors,
                               int threads = 0);

/// Type-A covariant bound for every module of A_m with coordinates <= bound and every subset of
/// admissible intervals satisfying the hypothesis.
CheckResult check_type_a_bound(int m, int bound);

/// hom_tube against matrix-level hom on all pairs of classes of length <= periods * m_i.
CheckResult check_oracle(const CanonicalType& t, int periods);

}  // namespace cantube
