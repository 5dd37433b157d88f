#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cantube/strata.hpp"

namespace cantube {

/// (socle, length) members of one tube on a cycle of length m.
using Cover = std::vector<std::pair<int, int>>;

struct SelfHomResult {
  std::int64_t value = 0;
  Cover cover;
};

/// Minimum of [X,X] over tube modules X with cyclic coverage `cov` such that [X, T] != 0 for
/// every target T = (socle, length). Empty when no such X exists.
std::optional<SelfHomResult> min_self_hom(int m, const std::vector<std::int64_t>& cov,
                                          const Cover& targets);

struct LevelMinima {
  std::optional<std::int64_t> c_prime, c2, c3;
  std::optional<StratumIndex> witness_prime, witness2, witness3;
};

struct MarginMinima {
  bool c3_empty = true;
  std::int64_t m1 = 0, m2 = 0, m3 = 0;
  std::optional<StratumIndex> witness1, witness2, witness3;
};

/// Minimizes stratum quantities and inequality margins without listing strata. For fixed
/// (dP_0, dP_inf, dQ_0) every term splits into per-arm contributions, which are tabulated by the
/// weight w_i = (coverage of residue 0 by X_i) and combined by min-plus convolution.
class StrataEngine {
 public:
  explicit StrataEngine(CanonicalType t);

  const CanonicalType& type() const noexcept { return t_; }

  /// Minimum quantity over C', C'' and C'''. Needs d regular with p^d > 0.
  LevelMinima quantity_minima(const DimVector& d, bool witnesses = true);
  /// Minimum of each margin over C'''.
  MarginMinima margin_minima(const DimVector& d, bool witnesses = true);

  std::size_t cached_arm_tables() const noexcept { return arm_cache_.size(); }

 private:
  struct ArmChoice {
    std::vector<std::int64_t> P, Q;
    Cover cover;
  };
  struct ArmTable {
    // Indexed by w in [0, r0]; kInf marks infeasible.
    std::vector<std::int64_t> q_any, q_zero, m1, m2, m3;
    // Argmin choices, filled only when tracking.
    std::vector<int> arg_any, arg_zero, arg1, arg2, arg3;
    std::vector<ArmChoice> choices;
  };
  struct Globals {
    std::int64_t D, a, b, c, e, r0;
  };

  ArmTable build_arm_table(int arm, const DimVector& d, const Globals& g, bool track);
  const std::vector<ArmTable>& arm_tables(int arm, const DimVector& d,
                                          const std::vector<Globals>& triples);
  std::vector<Globals> triples_of(const DimVector& d) const;
  StratumIndex assemble(const DimVector& d, const Globals& g,
                        const std::vector<const ArmChoice*>& picks) const;

  const std::optional<SelfHomResult>& self_hom(int m, const std::vector<std::int64_t>& cov,
                                                const Cover& targets);

  CanonicalType t_;
  std::map<std::vector<std::int64_t>, std::vector<ArmTable>> arm_cache_;
  std::unordered_map<std::string, std::optional<SelfHomResult>> hom_cache_;
};

}  // namespace cantube
