#include <climits>

#include "cantube/engine.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cantube;

namespace {

std::int64_t cover_self_hom(int m, const Cover& c) {
  std::int64_t s = 0;
  for (auto [a, la] : c)
    for (auto [b, lb] : c) s += hom_tube_raw(m, a, a + la - 1, b, b + lb - 1);
  return s;
}

void regular_box(const CanonicalType& t, int bound, int pmax,
                 const std::function<void(const DimVector&)>& f) {
  testing_support::for_each_box(t, bound, [&](const DimVector& d) {
    if (d[0] != d[1] || !in_R(t, d)) return;
    const auto p = homogeneous_multiplicity(t, d);
    if (p >= 1 && p <= pmax) f(d);
  });
}

}  // namespace

TEST_CASE("minimal self hom against plain enumeration") {
  for (int m = 2; m <= 4; ++m) {
    std::vector<std::int64_t> cov(m, 0);
    while (true) {
      const auto covers = enumerate_tube_covers(cov);
      // Every single target class of length <= m, and no target.
      std::vector<Cover> target_sets{{}};
      for (int s = 0; s < m; ++s)
        for (int len = 1; len <= m; ++len) target_sets.push_back({{s, len}});
      target_sets.push_back({{0, 1}, {1, m}});
      for (const auto& ts : target_sets) {
        std::int64_t best = LLONG_MAX;
        for (const auto& c : covers) {
          bool ok = true;
          for (auto [s, len] : ts) {
            int h = 0;
            for (auto [a, la] : c) h += hom_tube_raw(m, a, a + la - 1, s, s + len - 1);
            ok = ok && h != 0;
          }
          if (ok) best = std::min(best, cover_self_hom(m, c));
        }
        const auto got = min_self_hom(m, cov, ts);
        if (best == LLONG_MAX) {
          CHECK_FALSE(got.has_value());
        } else {
          REQUIRE(got.has_value());
          CHECK(got->value == best);
          CHECK(cover_self_hom(m, got->cover) == best);
        }
      }
      int k = 0;
      while (k < m && cov[k] == 2) cov[k++] = 0;
      if (k == m) break;
      ++cov[k];
    }
  }
}

TEST_CASE("engine minima agree with exhaustive strata") {
  struct Case {
    std::vector<int> m;
    int bound, pmax;
  };
  for (const auto& cs : {Case{{2, 2, 2}, 3, 3}, Case{{2, 3, 3}, 2, 2}, Case{{2, 2, 3}, 2, 3},
                         Case{{2, 2, 2, 2}, 3, 2}}) {
    CanonicalType t(cs.m);
    StrataEngine engine(t);
    int checked = 0;
    regular_box(t, cs.bound, cs.pmax, [&](const DimVector& d) {
      const auto all = enumerate_strata(t, d, Level::CPrime);
      std::optional<std::int64_t> mp, m2, m3, g1, g2, g3;
      auto lower = [](std::optional<std::int64_t>& x, std::int64_t v) {
        if (!x || v < *x) x = v;
      };
      for (const auto& r : all) {
        lower(mp, r.quantity);
        if (r.in_c2) lower(m2, r.quantity);
        if (r.in_c3) {
          lower(m3, r.quantity);
          const auto mg = inequality_report(t, d, r.index);
          lower(g1, mg.m1);
          lower(g2, mg.m2);
          lower(g3, mg.m3);
        }
      }
      const auto q = engine.quantity_minima(d);
      CHECK(q.c_prime == mp);
      CHECK(q.c2 == m2);
      CHECK(q.c3 == m3);
      const auto g = engine.margin_minima(d);
      CHECK(g.c3_empty == !m3.has_value());
      if (m3) {
        CHECK(g.m1 == *g1);
        CHECK(g.m2 == *g2);
        CHECK(g.m3 == *g3);
      }
      ++checked;
    });
    CHECK(checked > 0);
  }
}
