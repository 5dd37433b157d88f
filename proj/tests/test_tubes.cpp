#include <functional>
#include <set>

#include "cantube/candecomp.hpp"
#include "cantube/type_a.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cantube;
using testing_support::dv;
using testing_support::R;

TEST_CASE("tube dimension vectors") {
  CanonicalType t({2, 2, 2});
  CHECK(tube_dim_vector(t, R(t, 1, 0, 1)) == h_vector(t));
  CHECK(tube_dim_vector(t, R(t, 1, 1, 1)) == e_vector(t, 1, 1));
  RegularPart x({R(t, 1, 1, 1), R(t, 2, 1, 1), R(t, 3, 1, 1)});
  CHECK(tube_dim_vector(t, x) == dv(t, 0, 0, {{1}, {1}, {1}}));
}

TEST_CASE("tau") {
  CanonicalType t({2, 3, 4});
  CHECK(tau(t, R(t, 1, 0, 1)) == R(t, 1, 1, 2));
  CHECK(tau(t, R(t, 1, 1, 1), -1) == R(t, 1, 0, 0));
  const auto all = testing_support::all_classes(t, 2);
  std::set<TubeClass> image;
  for (const auto& c : all) {
    CHECK(tau(t, c, t.arm_length(c.arm())) == c);
    CHECK(tau(t, tau(t, c), -1) == c);
    image.insert(tau(t, c));
  }
  CHECK(image.size() == all.size());
}

TEST_CASE("hom and ext in tubes") {
  CanonicalType t({2, 2, 2});
  CHECK(hom_tube(t, R(t, 1, 1, 1), R(t, 1, 1, 1)) == 1);
  CHECK(hom_tube(t, R(t, 1, 1, 1), R(t, 1, 0, 0)) == 0);
  CHECK(hom_tube(t, R(t, 1, 0, 2), R(t, 1, 1, 2)) == 1);
  CHECK(hom_tube(t, R(t, 1, 0, 0), R(t, 2, 0, 0)) == 0);
  CHECK(ext1_tube(t, R(t, 1, 1, 1), R(t, 1, 0, 0)) == 1);
  CHECK(ext1_tube(t, R(t, 1, 0, 1), R(t, 1, 0, 1)) == 1);
  CHECK(ext1_tube(t, R(t, 1, 1, 1), R(t, 2, 1, 1)) == 0);

  // The closed form agrees with a direct scan over u.
  for (int m = 2; m <= 5; ++m)
    for (int j1 = 0; j1 < m; ++j1)
      for (int j2 = j1; j2 < j1 + 3 * m; ++j2)
        for (int l1 = -m; l1 < 2 * m; ++l1)
          for (int l2 = l1; l2 < l1 + 3 * m; ++l2) {
            int count = 0;
            for (int u = -20; u <= 20; ++u)
              if (j1 <= l1 + u * m && l1 + u * m <= j2 && j2 <= l2 + u * m) ++count;
            CHECK(hom_tube_raw(m, j1, j2, l1, l2) == count);
          }

  for (auto m : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 4}}) {
    CanonicalType u(m);
    const auto all = testing_support::all_classes(u, 2);
    for (const auto& a : all)
      for (const auto& b : all) CHECK(ext1_tube(u, a, b) == hom_tube(u, b, tau(u, a)));
  }
}

TEST_CASE("hom between regular parts") {
  CanonicalType t({2, 2, 2});
  RegularPart x({R(t, 1, 1, 1), R(t, 2, 1, 1), R(t, 3, 1, 1)});
  CHECK(hom_regular(t, x, x) == 3);
  CHECK(hom_regular(t, x, RegularPart{}) == 0);
  RegularPart y({R(t, 1, 0, 1), R(t, 1, 1, 1), R(t, 2, 1, 1), R(t, 3, 1, 1)});
  CHECK(hom_regular(t, y, y) == 5);
}

namespace {

// Independent route: multisets drawn from an explicit class list, subtracting dimension vectors.
std::set<RegularPart> brute_regular(const CanonicalType& t, const DimVector& r) {
  std::vector<TubeClass> classes;
  const auto total = r.total();
  for (const auto& c : testing_support::all_classes(t, static_cast<int>(total) + 1))
    if (tube_dim_vector(t, c).fits_in(r)) classes.push_back(c);
  std::set<RegularPart> out;
  std::vector<TubeClass> cur;
  std::function<void(std::size_t, DimVector)> go = [&](std::size_t from, DimVector left) {
    if (left.is_zero()) {
      out.insert(RegularPart(cur));
      return;
    }
    for (std::size_t k = from; k < classes.size(); ++k) {
      DimVector next = left - tube_dim_vector(t, classes[k]);
      if (!next.is_nonnegative()) continue;
      cur.push_back(classes[k]);
      go(k, next);
      cur.pop_back();
    }
  };
  go(0, r);
  return out;
}

}  // namespace

TEST_CASE("enumerate regular parts") {
  CanonicalType t({2, 2, 2});
  CHECK(enumerate_regular(t, h_vector(t)).size() == 9);
  auto single = enumerate_regular(t, e_vector(t, 1, 1));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == RegularPart({R(t, 1, 1, 1)}));
  CHECK(enumerate_regular(t, unit_vector(t, 0)).empty());

  for (auto m : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 3}}) {
    CanonicalType u(m);
    testing_support::for_each_box(u, 2, [&](const DimVector& r) {
      if (r[0] != r[1] || r.total() > 9) return;
      const auto list = enumerate_regular(u, r);
      CHECK(std::is_sorted(list.begin(), list.end()));
      CHECK(std::adjacent_find(list.begin(), list.end()) == list.end());
      for (const auto& x : list) CHECK(tube_dim_vector(u, x) == r);
      const auto brute = brute_regular(u, r);
      CHECK(std::set<RegularPart>(list.begin(), list.end()) == brute);
    });
  }
}

TEST_CASE("tube covers on a cycle") {
  // (1,1) on a 2-cycle: R[0,1], R[1,2], R[0,0] + R[1,1].
  CHECK(enumerate_tube_covers({1, 1}).size() == 3);
  CHECK(enumerate_tube_covers({0, 0}).size() == 1);
  // Full-period lengths are allowed.
  auto covers = enumerate_tube_covers({2, 2});
  bool has_long = false;
  for (const auto& c : covers)
    for (auto [s, len] : c) has_long |= len == 4;
  CHECK(has_long);
}

TEST_CASE("transport to type A") {
  CanonicalType t({2, 2, 2});
  auto [l, a] = to_type_a(t, RegularPart({R(t, 1, 1, 1)}), 1);
  CHECK(l == 0);
  CHECK(a.m == 1);
  CHECK(a.intervals == std::vector<std::pair<int, int>>{{1, 1}});
  CHECK_THROWS_AS(to_type_a(t, RegularPart({R(t, 1, 0, 1)}), 1), PreconditionError);
  auto [l2, b] = to_type_a(t, RegularPart({R(t, 2, 1, 1), R(t, 2, 1, 1)}), 2);
  CHECK(l2 == 0);
  CHECK(b.intervals == std::vector<std::pair<int, int>>{{1, 1}, {1, 1}});

  // Hom and Euler form are preserved for every admissible cut l.
  CanonicalType u({2, 3, 5});
  for (int i = 1; i <= 3; ++i) {
    const int m = u.arm_length(i);
    for (int l = 0; l < m; ++l) {
      std::vector<TubeClass> inside;
      for (int j1 = l + 1; j1 < l + m; ++j1)
        for (int j2 = j1; j2 < l + m; ++j2) inside.push_back(R(u, i, j1, j2));
      for (const auto& s : inside)
        for (const auto& v : inside) {
          const auto fs = to_type_a_at(u, RegularPart({s}), i, l);
          const auto fv = to_type_a_at(u, RegularPart({v}), i, l);
          CHECK(hom_tube(u, s, v) == hom_type_a(fs, fv));
          CHECK(euler_form(u, tube_dim_vector(u, s), tube_dim_vector(u, v)) ==
                euler_type_a(m - 1, fs.dim_vector(), fv.dim_vector()));
        }
    }
  }
}
