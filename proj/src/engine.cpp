#include "cantube/engine.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace cantube {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
constexpr std::size_t kArmCacheLimit = 2000;

// Branch and bound over the covers produced in the same order as enumerate_tube_covers.
struct SelfHomSearch {
  int m = 0;
  std::vector<std::int64_t> res;
  Cover targets;
  Cover current;
  std::vector<int> hits;  // per target: members with a nonzero map into it
  int unmet = 0;
  std::int64_t cost = 0;
  std::int64_t best = kInf;
  Cover best_cover;
  int cut = 0;

  int hom(std::pair<int, int> x, std::pair<int, int> y) const {
    return hom_tube_raw(m, x.first, x.first + x.second - 1, y.first, y.first + y.second - 1);
  }

  // [B,B] >= <b,b> and >= 1 for every nonzero residual B.
  std::int64_t bound() const {
    std::int64_t q = 0;
    bool any = false;
    for (int j = 0; j < m; ++j) {
      q += res[j] * res[j] - res[j] * res[(j + m - 1) % m];
      any |= res[j] > 0;
    }
    return std::max<std::int64_t>(q, any ? 1 : 0);
  }

  std::int64_t hits_of(int s, int len, int x) const {
    const int off = mod_floor(x - s, m);
    return len / m + (off < len % m ? 1 : 0);
  }

  bool fits(int s, int len) const {
    for (int x = 0; x < m; ++x)
      if (hits_of(s, len, x) > res[x]) return false;
    return true;
  }

  std::int64_t push(int s, int len) {
    const std::pair<int, int> c{s, len};
    std::int64_t delta = hom(c, c);
    for (const auto& e : current) delta += hom(e, c) + hom(c, e);
    for (std::size_t k = 0; k < targets.size(); ++k)
      if (hom(c, targets[k]) != 0 && hits[k]++ == 0) --unmet;
    for (int x = 0; x < m; ++x) res[x] -= hits_of(s, len, x);
    current.push_back(c);
    cost += delta;
    return delta;
  }

  void pop(std::int64_t delta) {
    const auto c = current.back();
    current.pop_back();
    cost -= delta;
    for (int x = 0; x < m; ++x) res[x] += hits_of(c.first, c.second, x);
    for (std::size_t k = 0; k < targets.size(); ++k)
      if (hom(c, targets[k]) != 0 && --hits[k] == 0) ++unmet;
  }

  int residue(int pos) const { return (cut + 1 + pos) % m; }

  void linear(int pos, int maxlen) {
    if (cost + bound() >= best) return;
    if (pos < m - 1 && res[residue(pos)] == 0) {
      ++pos;
      while (pos < m - 1 && res[residue(pos)] == 0) ++pos;
      maxlen = std::numeric_limits<int>::max();
    }
    if (pos >= m - 1) {
      if (unmet == 0) {
        best = cost;
        best_cover = current;
        std::sort(best_cover.begin(), best_cover.end());
      }
      return;
    }
    int fit = 0;
    while (pos + fit < m - 1 && res[residue(pos + fit)] > 0) ++fit;
    for (int len = std::min(maxlen, fit); len >= 1; --len) {
      const auto delta = push(residue(pos), len);
      linear(pos, len);
      pop(delta);
    }
  }

  void cyclic(const Cover& cand, std::size_t from, int p) {
    if (cost + bound() >= best) return;
    if (res[p] == 0) {
      cut = p;
      linear(0, std::numeric_limits<int>::max());
      return;
    }
    for (std::size_t k = from; k < cand.size(); ++k) {
      const auto [s, len] = cand[k];
      if (!fits(s, len)) continue;
      const auto delta = push(s, len);
      cyclic(cand, k, p);
      pop(delta);
    }
  }
};

std::int64_t arm_pairing(const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& v,
                         int m) {
  // sum_{j=1}^{m-1} u_j v_j - sum_{j=1}^{m} u_j v_{j-1}
  std::int64_t s = 0;
  for (int j = 1; j < m; ++j) s += u[j] * v[j];
  for (int j = 1; j <= m; ++j) s -= u[j] * v[j - 1];
  return s;
}

// min over splits of sum_i tabs[i][w_i] with sum w_i = W (exact) or <= W; fills `split`.
std::int64_t combine(const std::vector<const std::vector<std::int64_t>*>& tabs, std::int64_t W,
                     bool exact, std::vector<std::int64_t>* split) {
  const std::size_t n = tabs.size();
  const std::size_t width = static_cast<std::size_t>(W) + 1;
  std::vector<std::vector<std::int64_t>> dp(n + 1, std::vector<std::int64_t>(width, kInf));
  std::vector<std::vector<std::int64_t>> arg(n + 1, std::vector<std::int64_t>(width, -1));
  dp[0][0] = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t acc = 0; acc < width; ++acc) {
      if (dp[i][acc] >= kInf) continue;
      const auto& tab = *tabs[i];
      for (std::size_t w = 0; w < tab.size() && acc + w < width; ++w) {
        if (tab[w] >= kInf) continue;
        const auto v = dp[i][acc] + tab[w];
        if (v < dp[i + 1][acc + w]) {
          dp[i + 1][acc + w] = v;
          arg[i + 1][acc + w] = static_cast<std::int64_t>(w);
        }
      }
    }
  std::int64_t best = kInf;
  std::size_t at = 0;
  for (std::size_t acc = exact ? width - 1 : 0; acc < width; ++acc)
    if (dp[n][acc] < best) {
      best = dp[n][acc];
      at = acc;
    }
  if (split && best < kInf) {
    split->assign(n, 0);
    for (std::size_t i = n; i > 0; --i) {
      (*split)[i - 1] = arg[i][at];
      at -= static_cast<std::size_t>(arg[i][at]);
    }
  }
  return best;
}

void update(std::vector<std::int64_t>& tab, std::vector<int>* arg, std::size_t w,
            std::int64_t value, int choice) {
  if (value < tab[w]) {
    tab[w] = value;
    if (arg) (*arg)[w] = choice;
  }
}

}  // namespace

std::optional<SelfHomResult> min_self_hom(int m, const std::vector<std::int64_t>& cov,
                                          const Cover& targets) {
  if (static_cast<int>(cov.size()) != m) throw InvalidInput("coverage length differs from m");
  for (auto c : cov)
    if (c < 0) return std::nullopt;
  SelfHomSearch e;
  e.m = m;
  e.res = cov;
  e.targets = targets;
  e.hits.assign(targets.size(), 0);
  e.unmet = static_cast<int>(targets.size());
  auto zero = std::find(cov.begin(), cov.end(), 0);
  if (zero != cov.end()) {
    e.cut = static_cast<int>(zero - cov.begin());
    e.linear(0, std::numeric_limits<int>::max());
  } else {
    const int p = static_cast<int>(std::min_element(cov.begin(), cov.end()) - cov.begin());
    std::int64_t total = 0;
    for (auto c : cov) total += c;
    Cover cand;
    for (int s = 0; s < m; ++s)
      for (int len = mod_floor(p - s, m) + 1; len <= total; ++len) cand.emplace_back(s, len);
    e.cyclic(cand, 0, p);
  }
  if (e.best >= kInf) return std::nullopt;
  return SelfHomResult{e.best, e.best_cover};
}

StrataEngine::StrataEngine(CanonicalType t) : t_(std::move(t)) {}

const std::optional<SelfHomResult>& StrataEngine::self_hom(int m,
                                                           const std::vector<std::int64_t>& cov,
                                                           const Cover& targets) {
  std::string key = std::to_string(m) + ":";
  for (auto c : cov) key += std::to_string(c) + ",";
  key += "|";
  for (auto [s, len] : targets) key += std::to_string(s) + "+" + std::to_string(len) + ",";
  auto it = hom_cache_.find(key);
  if (it == hom_cache_.end()) it = hom_cache_.emplace(key, min_self_hom(m, cov, targets)).first;
  return it->second;
}

std::vector<StrataEngine::Globals> StrataEngine::triples_of(const DimVector& d) const {
  std::vector<Globals> out;
  const auto D = d[CanonicalType::kZero];
  for (std::int64_t a = 1; a <= D; ++a)
    for (std::int64_t b = 0; b < a; ++b)
      for (std::int64_t c = 0; a + c <= D; ++c) out.push_back({D, a, b, c, c + a - b, D - a - c});
  return out;
}

StrataEngine::ArmTable StrataEngine::build_arm_table(int arm, const DimVector& d, const Globals& g,
                                                     bool track) {
  const int m = t_.arm_length(arm);
  std::vector<std::int64_t> dj(m + 1);
  for (int j = 0; j <= m; ++j) dj[j] = coord(t_, d, arm, j);
  std::vector<std::int64_t> prof_d(dj.begin(), dj.begin() + m);
  const auto mn = *std::min_element(prof_d.begin(), prof_d.end());
  for (auto& x : prof_d) x -= mn;
  const auto adm = admissible_intervals_of_profile(arm, prof_d);

  ArmTable tab;
  const std::size_t width = static_cast<std::size_t>(g.r0) + 1;
  for (auto* v : {&tab.q_any, &tab.q_zero, &tab.m1, &tab.m2, &tab.m3}) v->assign(width, kInf);
  if (track)
    for (auto* v : {&tab.arg_any, &tab.arg_zero, &tab.arg1, &tab.arg2, &tab.arg3})
      v->assign(width, -1);

  std::vector<std::int64_t> P(m + 1), Q(m + 1), rho(m + 1), u(m + 1), v(m + 1);
  P[0] = g.a;
  P[m] = g.b;
  Q[0] = g.c;
  Q[m] = g.e;

  auto evaluate = [&]() {
    for (int j = 1; j < m; ++j) rho[j] = dj[j] - P[j] - Q[j];
    rho[0] = rho[m] = g.r0;
    const auto min_rho = *std::min_element(rho.begin(), rho.begin() + m);
    std::vector<std::int64_t> prof(rho.begin(), rho.begin() + m);
    for (auto& x : prof) x -= min_rho;

    // Extended coordinates: delta^{[j1+1,j2]} = ext(j1) - ext(j2).
    auto pext = [&](int j) { return P[j % m] - (j / m) * (g.a - g.b); };
    auto qext = [&](int j) { return Q[j % m] + (j / m) * (g.e - g.c); };
    Cover targets;
    int ad1 = 0, ad2 = 0, ad3 = 0;
    for (const auto& c : adm) {
      const auto dp = pext(c.j1) - pext(c.j2);
      const auto dq = qext(c.j1) - qext(c.j2);
      if (dp > 0) {
        ++ad1;
        continue;
      }
      targets.emplace_back(c.j1, c.j2 - c.j1);
      if (dq < 0)
        ++ad2;
      else
        ++ad3;
    }

    for (int j = 0; j <= m; ++j) {
      u[j] = dj[j] - P[j];
      v[j] = dj[j] - Q[j];
    }
    const auto qa = -arm_pairing(u, v, m);
    const auto m1a = -arm_pairing(dj, P, m) - ad1;
    const auto m2a = -arm_pairing(Q, rho, m) - ad2;
    const auto m3a = -arm_pairing(rho, rho, m) - ad3;

    for (std::int64_t k = 0; k <= min_rho; ++k) {
      std::vector<std::int64_t> cov = prof;
      for (auto& x : cov) x += k;
      const auto& sh = self_hom(m, cov, targets);
      if (!sh) continue;
      const auto w = static_cast<std::size_t>(g.r0 - min_rho + k);
      int choice = -1;
      if (track) {
        choice = static_cast<int>(tab.choices.size());
        tab.choices.push_back({P, Q, sh->cover});
      }
      update(tab.q_any, track ? &tab.arg_any : nullptr, w, qa + sh->value, choice);
      if (k == 0) {
        update(tab.q_zero, track ? &tab.arg_zero : nullptr, w, qa + sh->value, choice);
        update(tab.m1, track ? &tab.arg1 : nullptr, w, m1a, choice);
        update(tab.m2, track ? &tab.arg2 : nullptr, w, m2a, choice);
        update(tab.m3, track ? &tab.arg3 : nullptr, w, m3a + sh->value, choice);
      }
    }
  };

  // P non-increasing from a to b, Q non-decreasing from c to e, P + Q <= d on the arm.
  std::function<void(int)> walk_q = [&](int j) {
    if (j == m) {
      evaluate();
      return;
    }
    const auto hi = std::min(g.e, dj[j] - P[j]);
    for (Q[j] = Q[j - 1]; Q[j] <= hi; ++Q[j]) walk_q(j + 1);
  };
  std::function<void(int)> walk_p = [&](int j) {
    if (j == m) {
      walk_q(1);
      return;
    }
    const auto hi = std::min(P[j - 1], dj[j]);
    for (P[j] = g.b; P[j] <= hi; ++P[j]) walk_p(j + 1);
  };
  walk_p(1);
  return tab;
}

const std::vector<StrataEngine::ArmTable>& StrataEngine::arm_tables(
    int arm, const DimVector& d, const std::vector<Globals>& triples) {
  const int m = t_.arm_length(arm);
  std::vector<std::int64_t> key{m, d[CanonicalType::kZero]};
  for (int j = 1; j < m; ++j) key.push_back(coord(t_, d, arm, j));
  auto it = arm_cache_.find(key);
  if (it != arm_cache_.end()) return it->second;
  std::vector<ArmTable> tabs;
  tabs.reserve(triples.size());
  for (const auto& g : triples) tabs.push_back(build_arm_table(arm, d, g, false));
  return arm_cache_.emplace(std::move(key), std::move(tabs)).first->second;
}

StratumIndex StrataEngine::assemble(const DimVector& d, const Globals& g,
                                    const std::vector<const ArmChoice*>& picks) const {
  StratumIndex s;
  s.dP = zero_vector(t_);
  s.dQ = zero_vector(t_);
  s.dP[CanonicalType::kZero] = g.a;
  s.dP[CanonicalType::kInfinity] = g.b;
  s.dQ[CanonicalType::kZero] = g.c;
  s.dQ[CanonicalType::kInfinity] = g.e;
  std::vector<TubeClass> members;
  for (int i = 1; i <= t_.arms(); ++i) {
    const auto& ch = *picks[i - 1];
    for (int j = 1; j < t_.arm_length(i); ++j) {
      s.dP[t_.vertex_index(i, j)] = ch.P[j];
      s.dQ[t_.vertex_index(i, j)] = ch.Q[j];
    }
    for (auto [soc, len] : ch.cover) members.push_back(TubeClass::normalized(i, soc, len));
  }
  s.X = RegularPart(std::move(members));
  const DimVector r = d - s.dP - s.dQ - tube_dim_vector(t_, s.X);
  s.q = r[CanonicalType::kZero];
  return s;
}

LevelMinima StrataEngine::quantity_minima(const DimVector& d, bool witnesses) {
  require_same_size(t_, d);
  if (!in_R(t_, d) || homogeneous_multiplicity(t_, d) <= 0)
    throw PreconditionError("quantity minima need d regular with p^d > 0");
  if (arm_cache_.size() > kArmCacheLimit) arm_cache_.clear();
  const int n = t_.arms();
  const auto triples = triples_of(d);
  std::vector<const std::vector<ArmTable>*> per_arm;
  for (int i = 1; i <= n; ++i) per_arm.push_back(&arm_tables(i, d, triples));

  struct Best {
    std::int64_t value = kInf;
    std::size_t triple = 0;
  } best_prime, best2, best3;
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& g = triples[k];
    const auto global =
        -((g.D - g.a) * (g.D - g.c) + (g.D - g.b) * (g.D - g.e) + (n - 2) * (g.D - g.b) * (g.D - g.c));
    std::vector<const std::vector<std::int64_t>*> any, zero;
    for (int i = 0; i < n; ++i) {
      any.push_back(&(*per_arm[i])[k].q_any);
      zero.push_back(&(*per_arm[i])[k].q_zero);
    }
    const auto vp = combine(any, g.r0, false, nullptr);
    const auto v2 = combine(any, g.r0, true, nullptr);
    const auto v3 = combine(zero, g.r0, true, nullptr);
    if (vp < kInf && vp + global < best_prime.value) best_prime = {vp + global, k};
    if (v2 < kInf && v2 + global < best2.value) best2 = {v2 + global, k};
    if (v3 < kInf && v3 + global < best3.value) best3 = {v3 + global, k};
  }

  LevelMinima out;
  auto witness = [&](const Best& b, bool exact, bool zero_only, Level level) {
    const auto& g = triples[b.triple];
    std::vector<ArmTable> tabs;
    std::vector<const std::vector<std::int64_t>*> cols;
    for (int i = 1; i <= n; ++i) tabs.push_back(build_arm_table(i, d, g, true));
    for (auto& tb : tabs) cols.push_back(zero_only ? &tb.q_zero : &tb.q_any);
    std::vector<std::int64_t> split;
    combine(cols, g.r0, exact, &split);
    std::vector<const ArmChoice*> picks;
    for (int i = 0; i < n; ++i) {
      const auto& arg = zero_only ? tabs[i].arg_zero : tabs[i].arg_any;
      picks.push_back(&tabs[i].choices[arg[split[i]]]);
    }
    auto s = assemble(d, g, picks);
    if (quantity(t_, d, s) != b.value || !in_c_prime(t_, d, s).member ||
        (level != Level::CPrime && s.q != 0) ||
        (level == Level::C3 && regular_multiplicity(t_, s.X) != 0))
      throw std::logic_error("engine witness does not reproduce its minimum");
    return s;
  };
  if (best_prime.value < kInf) {
    out.c_prime = best_prime.value;
    if (witnesses) out.witness_prime = witness(best_prime, false, false, Level::CPrime);
  }
  if (best2.value < kInf) {
    out.c2 = best2.value;
    if (witnesses) out.witness2 = witness(best2, true, false, Level::C2);
  }
  if (best3.value < kInf) {
    out.c3 = best3.value;
    if (witnesses) out.witness3 = witness(best3, true, true, Level::C3);
  }
  return out;
}

MarginMinima StrataEngine::margin_minima(const DimVector& d, bool witnesses) {
  require_same_size(t_, d);
  if (!in_R(t_, d) || homogeneous_multiplicity(t_, d) <= 0)
    throw PreconditionError("margin minima need d regular with p^d > 0");
  if (arm_cache_.size() > kArmCacheLimit) arm_cache_.clear();
  const int n = t_.arms();
  const auto p = homogeneous_multiplicity(t_, d);
  const auto triples = triples_of(d);
  std::vector<const std::vector<ArmTable>*> per_arm;
  for (int i = 1; i <= n; ++i) per_arm.push_back(&arm_tables(i, d, triples));

  std::int64_t best[3] = {kInf, kInf, kInf};
  std::size_t at[3] = {0, 0, 0};
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& g = triples[k];
    const std::int64_t global[3] = {
        -(g.D * g.a + g.D * g.b + (n - 2) * g.D * g.a) - (p - n) * (g.a - g.b),
        -(g.c * g.r0 + g.e * g.r0 + (n - 2) * g.e * g.r0),
        -static_cast<std::int64_t>(n) * g.r0 * g.r0};
    for (int which = 0; which < 3; ++which) {
      std::vector<const std::vector<std::int64_t>*> cols;
      for (int i = 0; i < n; ++i) {
        const auto& tb = (*per_arm[i])[k];
        cols.push_back(which == 0 ? &tb.m1 : which == 1 ? &tb.m2 : &tb.m3);
      }
      const auto v = combine(cols, g.r0, true, nullptr);
      if (v < kInf && v + global[which] < best[which]) {
        best[which] = v + global[which];
        at[which] = k;
      }
    }
  }

  MarginMinima out;
  if (best[0] >= kInf) return out;
  out.c3_empty = false;
  out.m1 = best[0];
  out.m2 = best[1];
  out.m3 = best[2];
  if (!witnesses) return out;
  for (int which = 0; which < 3; ++which) {
    const auto& g = triples[at[which]];
    std::vector<ArmTable> tabs;
    std::vector<const std::vector<std::int64_t>*> cols;
    for (int i = 1; i <= n; ++i) tabs.push_back(build_arm_table(i, d, g, true));
    for (auto& tb : tabs) cols.push_back(which == 0 ? &tb.m1 : which == 1 ? &tb.m2 : &tb.m3);
    std::vector<std::int64_t> split;
    combine(cols, g.r0, true, &split);
    std::vector<const ArmChoice*> picks;
    for (int i = 0; i < n; ++i) {
      const auto& arg = which == 0 ? tabs[i].arg1 : which == 1 ? tabs[i].arg2 : tabs[i].arg3;
      picks.push_back(&tabs[i].choices[arg[split[i]]]);
    }
    auto s = assemble(d, g, picks);
    const auto rep = inequality_report(t_, d, s);
    const std::int64_t got = which == 0 ? rep.m1 : which == 1 ? rep.m2 : rep.m3;
    if (got != best[which] || s.q != 0 || !in_c_prime(t_, d, s).member ||
        regular_multiplicity(t_, s.X) != 0)
      throw std::logic_error("engine margin witness does not reproduce its minimum");
    (which == 0 ? out.witness1 : which == 1 ? out.witness2 : out.witness3) = s;
  }
  return out;
}

}  // namespace cantube
