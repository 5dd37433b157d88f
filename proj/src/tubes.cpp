#include "cantube/tubes.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "cantube/candecomp.hpp"

namespace cantube {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

}  // namespace

TubeClass::TubeClass(const CanonicalType& t, int arm, int j1, int j2) {
  const int m = t.arm_length(arm);
  if (j1 > j2) throw InvalidInput("tube interval needs j1 <= j2");
  arm_ = arm;
  socle_ = mod_floor(j1, m);
  length_ = j2 - j1 + 1;
}

std::string TubeClass::str() const {
  return "R" + std::to_string(arm_) + "[" + std::to_string(socle_) + "," + std::to_string(top()) +
         "]";
}

RegularPart::RegularPart(std::vector<TubeClass> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
}

void RegularPart::add(const TubeClass& c) {
  members_.insert(std::upper_bound(members_.begin(), members_.end(), c), c);
}

void RegularPart::remove(const TubeClass& c) {
  auto it = std::lower_bound(members_.begin(), members_.end(), c);
  if (it == members_.end() || *it != c) throw InvalidInput("class " + c.str() + " is not a member");
  members_.erase(it);
}

RegularPart RegularPart::restricted_to_arm(int arm) const {
  std::vector<TubeClass> out;
  for (const auto& c : members_)
    if (c.arm() == arm) out.push_back(c);
  return RegularPart(std::move(out));
}

std::string RegularPart::str() const {
  if (members_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < members_.size(); ++k) s += (k ? " + " : "") + members_[k].str();
  return s;
}

DimVector tube_dim_vector(const CanonicalType& t, const TubeClass& c) {
  return e_interval(t, c.arm(), c.socle(), c.top());
}

DimVector tube_dim_vector(const CanonicalType& t, const RegularPart& x) {
  DimVector v = zero_vector(t);
  for (const auto& c : x.members()) v += tube_dim_vector(t, c);
  return v;
}

std::vector<std::int64_t> tube_coverage(const CanonicalType& t, const RegularPart& x, int arm) {
  const int m = t.arm_length(arm);
  std::vector<std::int64_t> cov(m, 0);
  for (const auto& c : x.members()) {
    if (c.arm() != arm) continue;
    for (int k = 0; k < c.length(); ++k) ++cov[(c.socle() + k) % m];
  }
  return cov;
}

TubeClass tau(const CanonicalType& t, const TubeClass& c, int power) {
  const int m = t.arm_length(c.arm());
  return TubeClass::normalized(c.arm(), mod_floor(static_cast<long long>(c.socle()) - power, m),
                               c.length());
}

int hom_tube_raw(int m, int j1, int j2, int l1, int l2) {
  const long long lo = std::max(ceil_div(j1 - l1, m), ceil_div(j2 - l2, m));
  const long long hi = floor_div(j2 - l1, m);
  return hi >= lo ? static_cast<int>(hi - lo + 1) : 0;
}

int hom_tube(const CanonicalType& t, const TubeClass& s, const TubeClass& u) {
  if (s.arm() != u.arm()) return 0;
  return hom_tube_raw(t.arm_length(s.arm()), s.socle(), s.top(), u.socle(), u.top());
}

int ext1_tube(const CanonicalType& t, const TubeClass& s, const TubeClass& u) {
  return hom_tube(t, s, u) -
         static_cast<int>(euler_form(t, tube_dim_vector(t, s), tube_dim_vector(t, u)));
}

std::int64_t hom_regular(const CanonicalType& t, const RegularPart& x, const RegularPart& y) {
  std::int64_t s = 0;
  for (const auto& a : x.members())
    for (const auto& b : y.members()) s += hom_tube(t, a, b);
  return s;
}

namespace {

using Cover = std::vector<std::pair<int, int>>;

struct CoverEnumerator {
  int m;
  std::vector<std::int64_t> res;
  Cover current;
  std::vector<Cover> out;
  int cut = 0;  // residue with zero residual; linear positions are cut+1 .. cut+m-1

  int residue(int pos) const { return (cut + 1 + pos) % m; }

  int fit(int pos) const {
    int l = 0;
    while (pos + l < m - 1 && res[residue(pos + l)] > 0) ++l;
    return l;
  }

  void linear(int pos, int maxlen) {
    if (pos < m - 1 && res[residue(pos)] == 0) {
      ++pos;
      while (pos < m - 1 && res[residue(pos)] == 0) ++pos;
      maxlen = std::numeric_limits<int>::max();
    }
    if (pos >= m - 1) {
      Cover c = current;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    const int top = std::min(maxlen, fit(pos));
    for (int len = top; len >= 1; --len) {
      for (int k = 0; k < len; ++k) --res[residue(pos + k)];
      current.emplace_back(residue(pos), len);
      linear(pos, len);
      current.pop_back();
      for (int k = 0; k < len; ++k) ++res[residue(pos + k)];
    }
  }

  // Coverage count of residue x by the interval (s, len).
  std::int64_t hits(int s, int len, int x) const {
    const int off = mod_floor(x - s, m);
    return len / m + (off < len % m ? 1 : 0);
  }

  bool fits(int s, int len) const {
    for (int x = 0; x < m; ++x)
      if (hits(s, len, x) > res[x]) return false;
    return true;
  }

  void apply(int s, int len, int sign) {
    for (int x = 0; x < m; ++x) res[x] -= sign * hits(s, len, x);
  }

  // Choose the members covering residue p (with multiplicity) before cutting the cycle at p.
  void cyclic(const std::vector<std::pair<int, int>>& cand, std::size_t from, int p) {
    if (res[p] == 0) {
      cut = p;
      linear(0, std::numeric_limits<int>::max());
      return;
    }
    for (std::size_t k = from; k < cand.size(); ++k) {
      const auto [s, len] = cand[k];
      if (!fits(s, len)) continue;
      apply(s, len, +1);
      current.emplace_back(s, len);
      cyclic(cand, k, p);
      current.pop_back();
      apply(s, len, -1);
    }
  }
};

}  // namespace

std::vector<std::vector<std::pair<int, int>>> enumerate_tube_covers(
    const std::vector<std::int64_t>& cov) {
  CoverEnumerator e{static_cast<int>(cov.size()), cov, {}, {}, 0};
  const int m = e.m;
  for (auto c : cov)
    if (c < 0) return {};
  auto zero = std::find(cov.begin(), cov.end(), 0);
  if (zero != cov.end()) {
    e.cut = static_cast<int>(zero - cov.begin());
    e.linear(0, std::numeric_limits<int>::max());
  } else {
    const int p = static_cast<int>(std::min_element(cov.begin(), cov.end()) - cov.begin());
    std::int64_t total = 0;
    for (auto c : cov) total += c;
    std::vector<std::pair<int, int>> cand;
    for (int s = 0; s < m; ++s)
      for (int len = mod_floor(p - s, m) + 1; len <= total; ++len) cand.emplace_back(s, len);
    e.cyclic(cand, 0, p);
  }
  std::sort(e.out.begin(), e.out.end());
  return e.out;
}

std::vector<RegularPart> enumerate_regular(const CanonicalType& t, const DimVector& r) {
  require_same_size(t, r);
  if (!r.is_nonnegative() || defect(t, r) != 0) return {};
  const auto cd = canonical_decomposition(t, r);
  if (cd.p < 0) return {};
  const int n = t.arms();

  // Tube i gets coverage p_{i,*} + k_i with sum k_i = p.
  std::vector<RegularPart> out;
  std::vector<std::int64_t> k(n, 0);
  std::function<void(int, std::int64_t)> split = [&](int i, std::int64_t left) {
    if (i == n - 1) {
      k[i] = left;
      std::vector<std::vector<RegularPart>> per_arm(n);
      for (int a = 0; a < n; ++a) {
        std::vector<std::int64_t> cov = cd.table[a];
        for (auto& c : cov) c += k[a];
        for (auto& cover : enumerate_tube_covers(cov)) {
          std::vector<TubeClass> mem;
          for (auto [s, len] : cover) mem.push_back(TubeClass::normalized(a + 1, s, len));
          per_arm[a].emplace_back(std::move(mem));
        }
        if (per_arm[a].empty()) return;
      }
      std::vector<std::size_t> idx(n, 0);
      while (true) {
        std::vector<TubeClass> mem;
        for (int a = 0; a < n; ++a) {
          const auto& part = per_arm[a][idx[a]].members();
          mem.insert(mem.end(), part.begin(), part.end());
        }
        out.emplace_back(std::move(mem));
        int a = n - 1;
        while (a >= 0 && ++idx[a] == per_arm[a].size()) idx[a--] = 0;
        if (a < 0) break;
      }
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      k[i] = v;
      split(i + 1, left - v);
    }
  };
  split(0, cd.p);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> TypeAModule::dim_vector() const {
  std::vector<std::int64_t> d(m, 0);
  for (auto [a, b] : intervals)
    for (int j = a; j <= b; ++j) ++d[j - 1];
  return d;
}

TypeAModule to_type_a_at(const CanonicalType& t, const RegularPart& x, int arm, int l) {
  const int m = t.arm_length(arm);
  const auto cov = tube_coverage(t, x, arm);
  if (l < 0 || l >= m || cov[l] != 0)
    throw PreconditionError("residue " + std::to_string(l) + " is covered on arm " +
                            std::to_string(arm));
  TypeAModule out;
  out.m = m - 1;
  for (const auto& c : x.members()) {
    if (c.arm() != arm) continue;
    int j1 = c.socle();
    if (j1 <= l) j1 += m;
    out.intervals.emplace_back(j1 - l, j1 + c.length() - 1 - l);
  }
  std::sort(out.intervals.begin(), out.intervals.end());
  return out;
}

std::pair<int, TypeAModule> to_type_a(const CanonicalType& t, const RegularPart& x, int arm) {
  const auto cov = tube_coverage(t, x, arm);
  auto it = std::find(cov.begin(), cov.end(), 0);
  if (it == cov.end())
    throw PreconditionError("arm " + std::to_string(arm) +
                            " part covers every residue; no type A restriction exists");
  const int l = static_cast<int>(it - cov.begin());
  return {l, to_type_a_at(t, x, arm, l)};
}

}  // namespace cantube
