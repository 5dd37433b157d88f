#include "cantube/strata.hpp"

#include <algorithm>
#include <functional>

#include "cantube/engine.hpp"

namespace cantube {

namespace {

// Vectors with the given ends whose arms are monotone (non-increasing from d_0 to d_inf when
// `down`, non-decreasing otherwise) and which stay below `bound`.
void monotone_vectors(const CanonicalType& t, const DimVector& bound, std::int64_t v0,
                      std::int64_t vinf, bool down, std::vector<DimVector>& out) {
  DimVector v = zero_vector(t);
  v[CanonicalType::kZero] = v0;
  v[CanonicalType::kInfinity] = vinf;
  const int n = t.arms();
  std::function<void(int, int, std::int64_t)> go = [&](int i, int j, std::int64_t prev) {
    if (i > n) {
      out.push_back(v);
      return;
    }
    const int m = t.arm_length(i);
    if (j == m) {
      go(i + 1, 1, v0);
      return;
    }
    const std::int64_t lo = down ? vinf : prev, hi = down ? prev : vinf;
    const std::int64_t cap = bound[t.vertex_index(i, j)];
    for (std::int64_t x = lo; x <= std::min(hi, cap); ++x) {
      v[t.vertex_index(i, j)] = x;
      go(i, j + 1, x);
    }
  };
  go(1, 1, v0);
}

bool is_triple(const StratumIndex& s) { return s.q == 0; }

TubeClass rep_class(const CanonicalType& t, int arm, long long j1, long long j2) {
  return TubeClass(t, arm, static_cast<int>(j1), static_cast<int>(j2));
}

// Representatives [u1, u2] of the arm-i members of X, one entry per member and shift, restricted
// to representatives meeting the window [lo, hi].
struct Rep {
  long long u1, u2;
  TubeClass cls;
};

std::vector<Rep> representatives(const CanonicalType& t, const RegularPart& x, int arm,
                                 long long lo, long long hi) {
  const int m = t.arm_length(arm);
  std::vector<Rep> out;
  for (const auto& c : x.members()) {
    if (c.arm() != arm) continue;
    for (long long k = (lo - c.top()) / m - 2; k <= hi / m + 2; ++k) {
      const long long u1 = c.socle() + k * m, u2 = c.top() + k * m;
      if (u2 < lo || u1 > hi) continue;
      out.push_back({u1, u2, c});
    }
  }
  return out;
}

}  // namespace

std::string level_name(Level level) {
  switch (level) {
    case Level::C: return "C";
    case Level::CPrime: return "C'";
    case Level::C2: return "C''";
    case Level::C3: return "C'''";
  }
  return "?";
}

void require_consistent(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  require_same_size(t, d);
  require_same_size(t, s.dP);
  require_same_size(t, s.dQ);
  if (s.q < 0) throw InvalidInput("q must be nonnegative");
  if (!s.dP.is_nonnegative() || !in_P(t, s.dP)) throw InvalidInput("dP is not in P");
  if (!s.dQ.is_nonnegative() || !in_Q(t, s.dQ)) throw InvalidInput("dQ is not in Q");
  for (const auto& c : s.X.members())
    if (c.arm() < 1 || c.arm() > t.arms() || c.socle() >= t.arm_length(c.arm()))
      throw InvalidInput("tube class " + c.str() + " does not belong to the algebra");
  if (s.dP + s.dQ + tube_dim_vector(t, s.X) + s.q * h_vector(t) != d)
    throw InvalidInput("stratum parts do not add up to d");
}

std::int64_t quantity(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  require_consistent(t, d, s);
  return hom_regular(t, s.X, s.X) - euler_form(t, d - s.dP, d - s.dQ);
}

std::int64_t stratum_dim(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  return a_dim(t, d) - quantity(t, d, s);
}

std::int64_t regular_multiplicity(const CanonicalType& t, const RegularPart& x) {
  return canonical_decomposition(t, tube_dim_vector(t, x)).p;
}

CPrimeCheck in_c_prime(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  require_consistent(t, d, s);
  CPrimeCheck out;
  out.dp_nonzero = !s.dP.is_zero();
  out.member = out.dp_nonzero;
  for (const auto& arm : admissible_intervals(t, d).per_arm)
    for (const auto& c : arm) {
      ConditionTrace tr;
      tr.interval = c;
      tr.delta_p = delta_interval(t, s.dP, c.arm, c.j1 + 1, c.j2);
      tr.hom = hom_regular(t, s.X, RegularPart({rep_class(t, c.arm, c.j1, c.j2 - 1)}));
      out.member = out.member && tr.satisfied();
      out.trace.push_back(tr);
    }
  return out;
}

std::vector<DimVector> p_vectors_below(const CanonicalType& t, const DimVector& bound) {
  std::vector<DimVector> out;
  for (std::int64_t a = 1; a <= bound[CanonicalType::kZero]; ++a)
    for (std::int64_t b = 0; b < a && b <= bound[CanonicalType::kInfinity]; ++b)
      monotone_vectors(t, bound, a, b, true, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DimVector> q_vectors_below(const CanonicalType& t, const DimVector& bound) {
  std::vector<DimVector> out;
  for (std::int64_t e = 1; e <= bound[CanonicalType::kInfinity]; ++e)
    for (std::int64_t c = 0; c < e && c <= bound[CanonicalType::kZero]; ++c)
      monotone_vectors(t, bound, c, e, false, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StratumReport> enumerate_strata(const CanonicalType& t, const DimVector& d,
                                            Level level) {
  require_same_size(t, d);
  if (!in_R(t, d)) throw PreconditionError("d is not the dimension vector of a regular module");
  if (level != Level::C && homogeneous_multiplicity(t, d) <= 0)
    throw PreconditionError("the zero set description needs p^d > 0");

  auto ps = p_vectors_below(t, d);
  ps.insert(ps.begin(), zero_vector(t));
  const std::int64_t ad = a_dim(t, d);
  std::vector<StratumReport> out;
  for (const auto& dP : ps) {
    if (level != Level::C && dP.is_zero()) continue;
    auto qs = q_vectors_below(t, d - dP);
    qs.insert(qs.begin(), zero_vector(t));
    for (const auto& dQ : qs) {
      DimVector r = d - dP - dQ;
      if (r[CanonicalType::kZero] != r[CanonicalType::kInfinity]) continue;
      for (std::int64_t q = 0; (r - q * h_vector(t)).is_nonnegative(); ++q) {
        if (q > 0 && (level == Level::C2 || level == Level::C3)) break;
        for (auto& x : enumerate_regular(t, r - q * h_vector(t))) {
          StratumReport rep;
          rep.index = {dP, dQ, std::move(x), q};
          rep.quantity = quantity(t, d, rep.index);
          rep.dim = ad - rep.quantity;
          rep.in_c_prime = in_c_prime(t, d, rep.index).member;
          rep.in_c2 = rep.in_c_prime && q == 0;
          rep.in_c3 = rep.in_c2 && regular_multiplicity(t, rep.index.X) == 0;
          const bool keep = level == Level::C || (level == Level::CPrime && rep.in_c_prime) ||
                            (level == Level::C2 && rep.in_c2) || (level == Level::C3 && rep.in_c3);
          if (keep) out.push_back(std::move(rep));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const StratumReport& a, const StratumReport& b) { return a.index < b.index; });
  return out;
}

namespace {

void require_generator_preconditions(const CanonicalType& t, const DimVector& d,
                                     bool assume_irreducible) {
  require_same_size(t, d);
  if (!in_R(t, d)) throw PreconditionError("d is not the dimension vector of a regular module");
  const auto p = homogeneous_multiplicity(t, d);
  if (p < t.arms() - 1)
    throw PreconditionError("generator count needs p^d >= n - 1, got p^d = " + std::to_string(p));
  if (!is_tame(t) && !assume_irreducible)
    throw PreconditionError(
        "the module variety is only known to be irreducible for tame types; pass the "
        "assume-irreducible override for wild types");
}

}  // namespace

std::int64_t generator_count(const CanonicalType& t, const DimVector& d, bool assume_irreducible) {
  require_generator_preconditions(t, d, assume_irreducible);
  return homogeneous_multiplicity(t, d) + 1 + admissible_intervals(t, d).ad - t.arms();
}

ZDimension z_dimension(const CanonicalType& t, const DimVector& d) {
  StrataEngine engine(t);
  return z_dimension(engine, d);
}

ZDimension z_dimension(StrataEngine& engine, const DimVector& d) {
  const auto& t = engine.type();
  require_same_size(t, d);
  if (!in_R(t, d)) throw PreconditionError("d is not the dimension vector of a regular module");
  if (homogeneous_multiplicity(t, d) <= 0)
    throw PreconditionError("the zero set description needs p^d > 0");
  const auto mins = engine.quantity_minima(d);
  ZDimension z;
  if (!mins.c_prime) {
    z.empty = true;
    return z;
  }
  z.codim = *mins.c_prime;
  z.dim = a_dim(t, d) - z.codim;
  z.witness = mins.witness_prime;
  return z;
}

CiVerdict ci_check(const CanonicalType& t, const DimVector& d, bool assume_irreducible) {
  StrataEngine engine(t);
  return ci_check(engine, d, assume_irreducible);
}

CiVerdict ci_check(StrataEngine& engine, const DimVector& d, bool assume_irreducible) {
  CiVerdict v;
  v.s = generator_count(engine.type(), d, assume_irreducible);
  const auto z = z_dimension(engine, d);
  if (z.empty) {
    v.vacuous = true;
    v.verdict = true;
    return v;
  }
  v.min_quantity = z.codim;
  v.codim = z.codim;
  v.witness = z.witness;
  v.verdict = z.codim == v.s;
  v.anomaly = z.codim > v.s;
  return v;
}

StratumIndex reduce_q(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  require_consistent(t, d, s);
  if (s.q == 0) throw PreconditionError("reduce_q needs q > 0");
  if (s.dP.is_zero()) throw PreconditionError("reduce_q needs dP != 0");
  return {s.dP + s.q * h_vector(t), s.dQ, s.X, 0};
}

namespace {

struct Construction {
  int arm = 0, j0 = 0;
  long long l1 = 0, l2 = 0;
  TubeClass removed;
};

Construction locate(const CanonicalType& t, const StratumIndex& s) {
  Construction c;
  for (int i = 1; i <= t.arms() && c.arm == 0; ++i) {
    const auto cov = tube_coverage(t, s.X, i);
    if (*std::min_element(cov.begin(), cov.end()) > 0) c.arm = i;
  }
  if (c.arm == 0) throw PreconditionError("reduce_X needs p^{dim X} > 0");
  const int m = t.arm_length(c.arm);
  c.j0 = 0;
  for (int j = 1; j <= m && c.j0 == 0; ++j)
    if (delta(t, s.dP, c.arm, j) > 0) c.j0 = j;
  if (c.j0 == 0) throw PreconditionError("reduce_X needs dP != 0");

  const auto reps = representatives(t, s.X, c.arm, c.j0 - 2LL * m, c.j0 + 2LL * m);
  bool found = false;
  for (const auto& r : reps)
    if (r.u1 <= c.j0 && c.j0 <= r.u2 && (!found || r.u2 < c.l2)) {
      c.l2 = r.u2;
      found = true;
    }
  if (!found) throw std::logic_error("no member of X contains j0 although every residue is covered");
  found = false;
  for (const auto& r : reps)
    if (r.u2 == c.l2 && (!found || r.u1 < c.l1)) {
      c.l1 = r.u1;
      c.removed = r.cls;
      found = true;
    }
  return c;
}

StratumIndex apply_construction(const CanonicalType& t, const StratumIndex& s,
                                const Construction& c) {
  StratumIndex out = s;
  out.dP = s.dP + e_interval(t, c.arm, c.j0, static_cast<int>(c.l2));
  out.X.remove(c.removed);
  if (c.l1 < c.j0) out.X.add(rep_class(t, c.arm, c.l1, c.j0 - 1));
  return out;
}

std::optional<IntervalClass> critical_pair(const CanonicalType& t, const DimVector& d,
                                           const StratumIndex& s, const Construction& c) {
  const int m = t.arm_length(c.arm);
  const auto adm = admissible_intervals(t, d);
  for (const auto& cls : adm.per_arm[c.arm - 1]) {
    if (mod_floor(cls.j2 - c.j0, m) != 0) continue;
    const int shift = c.j0 - cls.j2;
    const int j1 = cls.j1 + shift, j2 = c.j0;
    if (!(j1 < c.l1)) continue;
    if (delta_interval(t, s.dP, c.arm, j1 + 1, j2) != 1) continue;
    if (delta_interval(t, s.dQ, c.arm, j1 + 1, j2) != 0) continue;
    if (hom_regular(t, s.X, RegularPart({rep_class(t, c.arm, j1, j2 - 1)})) != 0) continue;
    return IntervalClass{c.arm, j1, j2};
  }
  return std::nullopt;
}

}  // namespace

XReduction reduce_X(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  require_consistent(t, d, s);
  if (!is_triple(s)) throw PreconditionError("reduce_X needs a triple (q = 0)");
  if (!in_c_prime(t, d, s).member) throw PreconditionError("reduce_X needs a triple in C''");
  XReduction out;
  auto c = locate(t, s);
  StratumIndex cur = s;
  if (auto crit = critical_pair(t, d, s, c)) {
    out.critical = crit;
    const int m = t.arm_length(c.arm);
    const auto reps = representatives(t, s.X, c.arm, crit->j1 - 2LL * m, crit->j1 + 2LL * m);
    long long v1 = 0, v2 = 0;
    bool found = false;
    for (const auto& r : reps)
      if (r.u1 <= crit->j1 && crit->j1 <= r.u2 && (!found || r.u2 < v2)) {
        v2 = r.u2;
        found = true;
      }
    if (!found) throw std::logic_error("critical pair without a member containing j1");
    found = false;
    TubeClass vcls;
    for (const auto& r : reps)
      if (r.u2 == v2 && r.u1 <= crit->j1 && (!found || r.u1 > v1)) {
        v1 = r.u1;
        vcls = r.cls;
        found = true;
      }
    cur.X.remove(c.removed);
    cur.X.remove(vcls);
    cur.X.add(rep_class(t, c.arm, v1, c.l2));
    cur.X.add(rep_class(t, c.arm, c.l1, v2));
    out.swapped = true;
    out.after_swap = cur;
    c = locate(t, cur);
  }
  out.arm = c.arm;
  out.j0 = c.j0;
  out.l1 = static_cast<int>(c.l1);
  out.l2 = static_cast<int>(c.l2);
  out.result = apply_construction(t, cur, c);
  return out;
}

ReductionTrace reduce_to_c3(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  ReductionTrace tr;
  tr.start = s;
  tr.start_quantity = quantity(t, d, s);
  if (!in_c_prime(t, d, s).member) throw PreconditionError("reduce_to_c3 needs a stratum in C'");
  StratumIndex cur = s;
  if (cur.q > 0) {
    cur = reduce_q(t, d, cur);
    tr.steps.push_back({ReductionStep::Kind::Q, cur, quantity(t, d, cur)});
  }
  // Each step lowers dim X, so the loop ends.
  while (regular_multiplicity(t, cur.X) > 0) {
    const auto r = reduce_X(t, d, cur);
    if (r.swapped)
      tr.steps.push_back({ReductionStep::Kind::Swap, *r.after_swap, quantity(t, d, *r.after_swap)});
    cur = r.result;
    tr.steps.push_back({ReductionStep::Kind::X, cur, quantity(t, d, cur)});
  }
  return tr;
}

Staircase staircase_decomposition(const CanonicalType& t, const DimVector& v, Side side) {
  require_same_size(t, v);
  if (side == Side::P ? !in_P(t, v) : !in_Q(t, v))
    throw PreconditionError(std::string("vector is not in ") + (side == Side::P ? "P" : "Q"));
  Staircase s;
  const auto v0 = v[CanonicalType::kZero], vinf = v[CanonicalType::kInfinity];
  s.t0 = std::min(v0, vinf);
  for (int i = 1; i <= t.arms(); ++i) {
    std::vector<int> row;
    for (int j = 1; j <= t.arm_length(i); ++j) {
      const auto dl = delta(t, v, i, j);
      const auto mult = side == Side::P ? dl : -dl;
      for (std::int64_t k = 0; k < mult; ++k) row.push_back(side == Side::P ? j - 1 : j);
    }
    s.levels.push_back(std::move(row));
  }
  return s;
}

DimVector staircase_vector(const CanonicalType& t, const Staircase& s, Side side) {
  DimVector v = s.t0 * h_vector(t);
  const std::size_t steps = s.levels.empty() ? 0 : s.levels.front().size();
  for (std::size_t k = 0; k < steps; ++k) {
    v[side == Side::P ? CanonicalType::kZero : CanonicalType::kInfinity] += 1;
    for (int i = 1; i <= t.arms(); ++i) {
      const int l = s.levels[i - 1][k];
      if (side == Side::P)
        for (int j = 1; j <= l; ++j) v[t.vertex_index(i, j)] += 1;
      else
        for (int j = l; j < t.arm_length(i); ++j) v[t.vertex_index(i, j)] += 1;
    }
  }
  return v;
}

AdSplit ad_split(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  require_consistent(t, d, s);
  AdSplit out;
  for (const auto& arm : admissible_intervals(t, d).per_arm)
    for (const auto& c : arm) {
      const auto dp = delta_interval(t, s.dP, c.arm, c.j1 + 1, c.j2);
      const auto dq = delta_interval(t, s.dQ, c.arm, c.j1 + 1, c.j2);
      if (dp > 0)
        ++out.ad1;
      else if (dq < 0)
        ++out.ad2;
      else
        ++out.ad3;
    }
  return out;
}

std::int64_t corollary_margin(const CanonicalType& t, const DimVector& dP, std::int64_t p) {
  return (euler_form(t, dP, dP) - 1) + (p - t.arms()) * (euler_form(t, dP, h_vector(t)) - 1);
}

Margins inequality_report(const CanonicalType& t, const DimVector& d, const StratumIndex& s) {
  Margins out;
  out.split = ad_split(t, d, s);
  const auto p = homogeneous_multiplicity(t, d);
  const auto x = tube_dim_vector(t, s.X);
  const auto sdp = s.dP[CanonicalType::kZero] - s.dP[CanonicalType::kInfinity];
  out.m1 = -euler_form(t, d, s.dP) - (p - t.arms()) * sdp - out.split.ad1;
  out.m2 = -euler_form(t, s.dQ, x) - out.split.ad2;
  out.m3 = hom_regular(t, s.X, s.X) - euler_form(t, x, x) - out.split.ad3;
  out.corollary = corollary_margin(t, s.dP, p);
  return out;
}

}  // namespace cantube
