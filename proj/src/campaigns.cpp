#include "cantube/campaigns.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "cantube/io.hpp"
#include "cantube/type_a.hpp"

namespace cantube {

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("CANTUBE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t, int)>& body) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) body(k, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = count * w / workers, hi = count * (w + 1) / workers;
      try {
        for (std::size_t k = lo; k < hi; ++k) body(k, w);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// --- boxes ---------------------------------------------------------------------

namespace {

// Rows d_{i,1..m-1} with entries in [0, bound], grouped with their min over [0, m-1].
struct ArmRow {
  std::vector<std::int64_t> row;
  std::int64_t min = 0;
};

std::vector<ArmRow> arm_rows(int m, std::int64_t D, int bound) {
  std::vector<ArmRow> out;
  std::vector<std::int64_t> row(m - 1, 0);
  while (true) {
    std::int64_t mn = D;
    for (auto x : row) mn = std::min(mn, x);
    out.push_back({row, mn});
    int k = 0;
    while (k < m - 1 && row[k] == bound) row[k++] = 0;
    if (k == m - 1) break;
    ++row[k];
  }
  return out;
}

// Profiles (p_{i,0}, ..., p_{i,m-1}) with entries in [0, bound] and at least one zero.
std::vector<std::vector<std::int64_t>> profiles(int m, int bound) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> row(m, 0);
  while (true) {
    if (std::find(row.begin(), row.end(), 0) != row.end()) out.push_back(row);
    int k = 0;
    while (k < m && row[k] == bound) row[k++] = 0;
    if (k == m) break;
    ++row[k];
  }
  return out;
}

std::vector<DimVector> by_coordinates(const CanonicalType& t, const Box& box) {
  const int n = t.arms();
  std::vector<DimVector> out;
  for (std::int64_t D = 0; D <= box.coord_bound; ++D) {
    std::vector<std::vector<ArmRow>> rows;
    std::vector<std::int64_t> max_min(n + 1, 0);
    for (int i = 1; i <= n; ++i) rows.push_back(arm_rows(t.arm_length(i), D, box.coord_bound));
    // max_min[i] = sum over arms >= i of the largest attainable minimum.
    for (int i = n; i >= 1; --i) {
      std::int64_t best = 0;
      for (const auto& r : rows[i - 1]) best = std::max(best, r.min);
      max_min[i - 1] = max_min[i] + best;
    }
    DimVector d = zero_vector(t);
    d[CanonicalType::kZero] = d[CanonicalType::kInfinity] = D;
    const std::int64_t base = (n - 1) * D;
    std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t sum) {
      if (sum + max_min[i - 1] - base < box.pmin) return;
      if (i > n) {
        const auto p = sum - base;
        if (p <= box.pmax) out.push_back(d);
        return;
      }
      for (const auto& r : rows[i - 1]) {
        if (sum + r.min - base > box.pmax && i == n) continue;
        for (int j = 1; j < t.arm_length(i); ++j) d[t.vertex_index(i, j)] = r.row[j - 1];
        rec(i + 1, sum + r.min);
      }
    };
    rec(1, 0);
  }
  return out;
}

std::vector<DimVector> by_profiles(const CanonicalType& t, const Box& box) {
  const int n = t.arms();
  std::vector<std::vector<std::vector<std::int64_t>>> prof;
  for (int i = 1; i <= n; ++i) prof.push_back(profiles(t.arm_length(i), box.tube_bound));
  std::vector<DimVector> out;
  for (std::int64_t p = std::max(box.pmin, 0); p <= box.pmax; ++p) {
    CanonicalDecomposition c;
    c.p = p;
    c.table.resize(n);
    std::function<void(int)> rec = [&](int i) {
      if (i > n) {
        auto d = c.reconstruct(t);
        if (box.coord_bound < 0 ||
            std::all_of(d.entries().begin(), d.entries().end(),
                        [&](std::int64_t x) { return x <= box.coord_bound; }))
          out.push_back(std::move(d));
        return;
      }
      for (const auto& row : prof[i - 1]) {
        c.table[i - 1] = row;
        rec(i + 1);
      }
    };
    rec(1);
  }
  return out;
}

}  // namespace

std::vector<DimVector> regular_vectors(const CanonicalType& t, const Box& box) {
  if (box.coord_bound < 0 && box.tube_bound < 0)
    throw InvalidInput("a box needs a coordinate bound or a tube-part bound");
  if (box.pmin < 0 || box.pmax < box.pmin) return {};
  auto out = box.tube_bound >= 0 ? by_profiles(t, box) : by_coordinates(t, box);
  std::sort(out.begin(), out.end());
  return out;
}

void CheckResult::fail(const std::string& what) {
  ++violations;
  if (samples.size() < 5) samples.push_back(what);
}

void CheckResult::merge(const CheckResult& other) {
  checked += other.checked;
  violations += other.violations;
  for (const auto& s : other.samples)
    if (samples.size() < 5) samples.push_back(s);
}

// --- sweeps ----------------------------------------------------------------------

namespace {

// Visit order that keeps the arm tables of the longest arm hot in the engine cache.
std::vector<std::size_t> locality_order(const CanonicalType& t, const std::vector<DimVector>& v) {
  int longest = 1;
  for (int i = 2; i <= t.arms(); ++i)
    if (t.arm_length(i) > t.arm_length(longest)) longest = i;
  auto key = [&](const DimVector& d) {
    std::vector<std::int64_t> k{d[CanonicalType::kZero]};
    for (int j = 1; j < t.arm_length(longest); ++j) k.push_back(d[t.vertex_index(longest, j)]);
    return k;
  };
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(v[a]) < key(v[b]); });
  return order;
}

std::int64_t level_value(const LevelMinima& q, Level level, bool& present) {
  const std::optional<std::int64_t>* v = nullptr;
  switch (level) {
    case Level::CPrime: v = &q.c_prime; break;
    case Level::C2: v = &q.c2; break;
    case Level::C3: v = &q.c3; break;
    case Level::C: throw InvalidInput("sweeps report minima over cprime, c2 or c3");
  }
  present = v->has_value();
  return present ? **v : 0;
}

}  // namespace

SweepTable sweep(const SweepConfig& config) {
  const auto& t = config.type;
  if (config.level == Level::C) throw InvalidInput("sweeps report minima over cprime, c2 or c3");
  if (config.box.pmin < t.arms() - 1)
    throw PreconditionError("generator counts need p^d >= n - 1; raise pmin to " +
                            std::to_string(t.arms() - 1));
  if (!is_tame(t) && !config.assume_irreducible)
    throw PreconditionError(
        "the module variety is only known to be irreducible for tame types; pass the "
        "assume-irreducible override for wild types");
  const auto vectors = regular_vectors(t, config.box);
  const auto order = locality_order(t, vectors);
  const int workers = worker_count(config.threads);
  std::vector<StrataEngine> engines;
  for (int w = 0; w < workers; ++w) engines.emplace_back(t);

  SweepTable table;
  table.rows.resize(vectors.size());
  parallel_for(vectors.size(), workers, [&](std::size_t k, int w) {
    const auto& d = vectors[order[k]];
    auto& engine = engines[w];
    const auto v = ci_check(engine, d, config.assume_irreducible);
    SweepRow row;
    row.d = d;
    row.p = homogeneous_multiplicity(t, d);
    row.ad = admissible_intervals(t, d).ad;
    row.s = v.s;
    row.codim = v.codim;
    row.verdict = v.verdict;
    row.anomaly = v.anomaly;
    if (config.level == Level::CPrime) {
      row.level_min = v.min_quantity;
    } else {
      bool present = false;
      const auto value = level_value(engine.quantity_minima(d, false), config.level, present);
      if (present) row.level_min = value;
    }
    table.rows[order[k]] = std::move(row);
  });
  const auto N = threshold_n(t);
  for (const auto& r : table.rows) {
    if (r.verdict) continue;
    ++table.not_ci;
    if (!N || r.p >= *N) ++table.counterexamples;
  }
  return table;
}

// --- lemma campaigns -----------------------------------------------------------------

CheckResult check_inside_bound(const CanonicalType& t, const std::vector<DimVector>& vectors) {
  CheckResult res{"inside multiplicity bound"};
  for (const auto& d : vectors) {
    const auto c = canonical_decomposition(t, d);
    for (int i = 1; i <= t.arms(); ++i)
      for (int j = 0; j < t.arm_length(i); ++j) {
        ++res.checked;
        const int inside = inside_multiplicity(t, d, i, j);
        if (inside > c.at(i, j + 1) + 1)
          res.fail("d=" + format_dim_vector(t, d) + " arm " + std::to_string(i) + " j=" +
                   std::to_string(j) + ": " + std::to_string(inside) + " inside");
      }
  }
  return res;
}

namespace {

std::vector<TubeClass> short_classes(const CanonicalType& t) {
  std::vector<TubeClass> out;
  for (int i = 1; i <= t.arms(); ++i)
    for (int s = 0; s < t.arm_length(i); ++s)
      for (int len = 1; len <= t.arm_length(i); ++len) out.push_back(TubeClass::normalized(i, s, len));
  return out;
}

// Multisets of [0, n) of size 1..k, as sorted index lists.
std::vector<std::vector<int>> multisets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == k) return;
    for (int a = from; a < n; ++a) {
      cur.push_back(a);
      rec(a);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Rational generic_parameter(const CanonicalType& t, int offset) {
  Rational mu = 1;
  for (const auto& l : t.lambdas()) mu = std::max(mu, l);
  return mu + 1 + offset;
}

}  // namespace

CheckResult check_duality(const CanonicalType& t, int summands, bool with_homogeneous) {
  CheckResult res{"duality of the nonvanishing conditions"};
  const auto classes = short_classes(t);
  std::vector<MatrixModule> built;
  for (const auto& c : classes) built.push_back(build_tube_module(t, c));
  auto built_of = [&](int arm, int j1, int j2) -> const MatrixModule& {
    const TubeClass c(t, arm, j1, j2);
    const auto it = std::find(classes.begin(), classes.end(), c);
    return built[it - classes.begin()];
  };
  const auto mu = generic_parameter(t, 0), nu = generic_parameter(t, 1);
  const auto r_mu = build_homogeneous(t, mu), r_nu = build_homogeneous(t, nu);

  for (const auto& pick : multisets(static_cast<int>(classes.size()), summands)) {
    std::vector<MatrixModule> parts;
    for (int k : pick) parts.push_back(built[k]);
    if (with_homogeneous) parts.push_back(r_mu);
    const auto M = direct_sum(t, parts);
    auto name = [&] {
      RegularPart x;
      for (int k : pick) x.add(classes[k]);
      return x.str() + (with_homogeneous ? " + R_mu" : "");
    };
    for (int i = 1; i <= t.arms(); ++i) {
      const int m = t.arm_length(i);
      for (int j1 = 0; j1 < m; ++j1)
        for (int j2 = j1 + 1; j2 <= j1 + m; ++j2) {
          if (delta_interval(t, M.dims, i, j1 + 1, j2) != 0) continue;
          ++res.checked;
          const bool left = hom_space_dim(built_of(i, j1 + 1, j2), M) != 0;
          const bool right = hom_space_dim(M, built_of(i, j1, j2 - 1)) != 0;
          if (left != right)
            res.fail(name() + " at arm " + std::to_string(i) + " [" + std::to_string(j1) + "," +
                     std::to_string(j2) + "]");
        }
    }
    for (const auto* r : {&r_mu, &r_nu}) {
      ++res.checked;
      if ((hom_space_dim(*r, M) != 0) != (hom_space_dim(M, *r) != 0))
        res.fail(name() + " against a homogeneous module");
    }
  }
  return res;
}

CheckResult check_membership(const CanonicalType& t, int summands) {
  CheckResult res{"matrix-level membership against C'"};
  const auto classes = short_classes(t);
  std::vector<MatrixModule> built;
  for (const auto& c : classes) built.push_back(build_tube_module(t, c));
  const auto e0 = unit_vector(t, CanonicalType::kZero), einf = unit_vector(t, CanonicalType::kInfinity);
  const auto r_mu = build_homogeneous(t, generic_parameter(t, 0));
  for (const auto& pick : multisets(static_cast<int>(classes.size()), summands))
    for (int a = 0; a <= 1; ++a)
      for (int q = 0; q <= 1; ++q) {
        RegularPart x;
        std::vector<MatrixModule> parts;
        if (a) parts.push_back(zero_maps_module(t, e0 + einf));
        for (int k : pick) {
          x.add(classes[k]);
          parts.push_back(built[k]);
        }
        if (q) parts.push_back(r_mu);
        const auto M = direct_sum(t, parts);
        if (homogeneous_multiplicity(t, M.dims) <= 0) continue;
        const StratumIndex s{a * e0, a * einf, x, q};
        ++res.checked;
        const bool combinatorial = in_c_prime(t, M.dims, s).member;
        const bool matrix = z_membership(M).member;
        if (combinatorial != matrix)
          res.fail(format_index(t, s) + ": C' says " + (combinatorial ? "yes" : "no") +
                   ", matrices say " + (matrix ? "yes" : "no"));
      }
  return res;
}

namespace {

bool monotone(const ReductionTrace& tr) {
  auto prev = tr.start_quantity;
  for (const auto& s : tr.steps) {
    // A swap raises the quantity by one; the construction that follows it pays that back.
    if (s.kind == ReductionStep::Kind::Swap) continue;
    if (s.quantity > prev) return false;
    prev = s.quantity;
  }
  return true;
}

void check_trace(const CanonicalType& t, const DimVector& d, const ReductionTrace& tr,
                 CheckResult& res) {
  const auto& f = tr.final();
  const std::string where = "d=" + format_dim_vector(t, d) + " from " + format_index(t, tr.start);
  if (!monotone(tr)) res.fail(where + ": trace not monotone");
  if (f.q != 0 || regular_multiplicity(t, f.X) != 0 || !in_c_prime(t, d, f).member)
    res.fail(where + ": trace does not end in C'''");
}

}  // namespace

CheckResult check_reductions(const CanonicalType& t, const std::vector<DimVector>& vectors) {
  CheckResult res{"reduction claims"};
  for (const auto& d : vectors) {
    if (homogeneous_multiplicity(t, d) <= 0) continue;
    for (const auto& r : enumerate_strata(t, d, Level::CPrime)) {
      const auto& s = r.index;
      const std::string where = "d=" + format_dim_vector(t, d) + " " + format_index(t, s);
      ++res.checked;
      if (s.q > 0) {
        const auto out = reduce_q(t, d, s);
        if (out.q != 0 || !in_c_prime(t, d, out).member) res.fail(where + ": reduce_q leaves C''");
        if (quantity(t, d, out) >= r.quantity) res.fail(where + ": reduce_q does not decrease");
      } else if (regular_multiplicity(t, s.X) > 0) {
        const auto x = reduce_X(t, d, s);
        const auto q = quantity(t, d, x.result);
        if (x.result.q != 0 || !in_c_prime(t, d, x.result).member)
          res.fail(where + ": reduce_X leaves C''");
        if (tube_dim_vector(t, x.result.X).total() >= tube_dim_vector(t, s.X).total())
          res.fail(where + ": dim X does not drop");
        if (q > r.quantity) res.fail(where + ": reduce_X increases the quantity");
        if (regular_multiplicity(t, x.result.X) == 0 && q >= r.quantity)
          res.fail(where + ": reduce_X lands in C''' without decreasing");
        if (x.swapped && hom_regular(t, x.after_swap->X, x.after_swap->X) !=
                             hom_regular(t, s.X, s.X) + 1)
          res.fail(where + ": swap does not raise [X,X] by one");
      }
      check_trace(t, d, reduce_to_c3(t, d, s), res);
    }
  }
  return res;
}

CheckResult check_margins(const CanonicalType& t, const std::vector<DimVector>& vectors,
                          int threads) {
  CheckResult res{"margins on C'''"};
  const auto order = locality_order(t, vectors);
  const int workers = worker_count(threads);
  std::vector<StrataEngine> engines;
  for (int w = 0; w < workers; ++w) engines.emplace_back(t);
  std::vector<CheckResult> partial(workers);
  parallel_for(vectors.size(), workers, [&](std::size_t k, int w) {
    const auto& d = vectors[order[k]];
    auto& out = partial[w];
    ++out.checked;
    const auto g = engines[w].margin_minima(d, false);
    if (!g.c3_empty && std::min({g.m1, g.m2, g.m3}) < 0) {
      const auto full = engines[w].margin_minima(d, true);
      std::string msg = "d=" + format_dim_vector(t, d) + ": margins " + std::to_string(full.m1) +
                        "," + std::to_string(full.m2) + "," + std::to_string(full.m3);
      for (const auto* w3 : {&full.witness1, &full.witness2, &full.witness3})
        if (*w3) msg += " " + format_index(t, **w3);
      out.fail(msg);
    }
  });
  for (const auto& p : partial) res.merge(p);
  return res;
}

CheckResult check_margins_exhaustive(const CanonicalType& t,
                                     const std::vector<DimVector>& vectors) {
  CheckResult res{"margins on listed C''' triples"};
  for (const auto& d : vectors) {
    if (homogeneous_multiplicity(t, d) <= 0) continue;
    const int ad = admissible_intervals(t, d).ad;
    for (const auto& r : enumerate_strata(t, d, Level::C3)) {
      ++res.checked;
      const auto m = inequality_report(t, d, r.index);
      if (m.m1 < 0 || m.m2 < 0 || m.m3 < 0 || m.split.ad1 + m.split.ad2 + m.split.ad3 != ad)
        res.fail("d=" + format_dim_vector(t, d) + " " + format_index(t, r.index));
    }
  }
  return res;
}

CheckResult check_level_minima(const CanonicalType& t, const std::vector<DimVector>& vectors,
                               int threads) {
  CheckResult res{"level minima coincide"};
  const auto order = locality_order(t, vectors);
  const int workers = worker_count(threads);
  std::vector<StrataEngine> engines;
  for (int w = 0; w < workers; ++w) engines.emplace_back(t);
  std::vector<CheckResult> partial(workers);
  parallel_for(vectors.size(), workers, [&](std::size_t k, int w) {
    const auto& d = vectors[order[k]];
    auto& out = partial[w];
    ++out.checked;
    const auto q = engines[w].quantity_minima(d, true);
    if (q.c_prime != q.c2 || q.c_prime != q.c3) {
      auto show = [](const std::optional<std::int64_t>& v) {
        return v ? std::to_string(*v) : std::string("none");
      };
      out.fail("d=" + format_dim_vector(t, d) + ": " + show(q.c_prime) + " / " + show(q.c2) +
               " / " + show(q.c3));
    }
    if (q.witness_prime) check_trace(t, d, reduce_to_c3(t, d, *q.witness_prime), out);
  });
  for (const auto& p : partial) res.merge(p);
  return res;
}

CheckResult check_type_a_bound(int m, int bound) {
  CheckResult res{"type A covariant bound on A_" + std::to_string(m)};
  std::vector<std::int64_t> d(m, 0);
  while (true) {
    const auto adm = admissible_type_a(d);
    const auto dd = euler_type_a(m, d, d);
    for (const auto& mod : enumerate_type_a(m, d)) {
      const auto self = hom_type_a(mod, mod);
      unsigned ok_mask = 0;
      for (std::size_t k = 0; k < adm.size(); ++k) {
        const TypeAModule probe{m, {{adm[k].first + 1, adm[k].second}}};
        if (hom_type_a(probe, mod) != 0) ok_mask |= 1u << k;
      }
      // Every subset of the intervals meeting the hypothesis.
      for (unsigned sub = ok_mask;; sub = (sub - 1) & ok_mask) {
        ++res.checked;
        if (self < dd + std::popcount(sub)) {
          std::string ds;
          for (auto x : d) ds += std::to_string(x) + " ";
          res.fail("d=" + ds + "subset mask " + std::to_string(sub));
        }
        if (sub == 0) break;
      }
    }
    int k = 0;
    while (k < m && d[k] == bound) d[k++] = 0;
    if (k == m) break;
    ++d[k];
  }
  return res;
}

CheckResult check_oracle(const CanonicalType& t, int periods) {
  CheckResult res{"hom rule against matrix models on " + t.label()};
  std::vector<TubeClass> classes;
  for (int i = 1; i <= t.arms(); ++i)
    for (int s = 0; s < t.arm_length(i); ++s)
      for (int len = 1; len <= periods * t.arm_length(i); ++len)
        classes.push_back(TubeClass::normalized(i, s, len));
  std::vector<MatrixModule> built;
  for (const auto& c : classes) built.push_back(build_tube_module(t, c));
  for (std::size_t a = 0; a < classes.size(); ++a)
    for (std::size_t b = 0; b < classes.size(); ++b) {
      ++res.checked;
      const int rule = hom_tube(t, classes[a], classes[b]);
      const int matrix = hom_space_dim(built[a], built[b]);
      if (rule != matrix)
        res.fail(classes[a].str() + " -> " + classes[b].str() + ": rule " + std::to_string(rule) +
                 ", matrices " + std::to_string(matrix));
    }
  return res;
}

}  // namespace cantube
