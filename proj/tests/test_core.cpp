#include "doctest.h"
#include "helpers.hpp"

using namespace cantube;
using testing_support::dv;

TEST_CASE("type validation") {
  CHECK_THROWS_AS(CanonicalType({2, 2}), InvalidInput);
  CHECK_THROWS_AS(CanonicalType({2, 1, 2}), InvalidInput);
  CHECK_THROWS_AS(CanonicalType({2, 2, 2}, {Rational(2)}), InvalidInput);
  CHECK_THROWS_AS(CanonicalType({2, 2, 2, 2}, {Rational(1), Rational(1)}), InvalidInput);
  CHECK_THROWS_AS(CanonicalType({2, 2, 2, 2}, {Rational(1), Rational(0)}), InvalidInput);

  CanonicalType t({2, 3, 4});
  CHECK(t.vertex_count() == 2 + 1 + 2 + 3);
  CHECK(t.arrows().size() == 9);
  CHECK(t.relation_count() == 1);
  CanonicalType u({2, 2, 2, 2, 3});
  CHECK(u.lambda(3) == 1);
  CHECK(u.lambda(5) == 3);
  CHECK(u.vertex_label(u.vertex_index(5, 2)) == "5,2");
  CHECK(u.vertex_label(1) == "inf");
}

TEST_CASE("delta invariant and threshold") {
  CHECK(delta_invariant(CanonicalType({2, 2, 2})) == Rational(-1, 4));
  CHECK(is_tame(CanonicalType({2, 2, 2})));
  CHECK(delta_invariant(CanonicalType({3, 3, 3})) == 0);
  CHECK(is_tame(CanonicalType({3, 3, 3})));
  CHECK(delta_invariant(CanonicalType({2, 3, 7})) == Rational(1, 84));
  CHECK_FALSE(is_tame(CanonicalType({2, 3, 7})));

  CHECK(threshold_n(CanonicalType({2, 2, 2})) == 3);
  CHECK(threshold_n(CanonicalType({2, 2, 2, 2})) == 5);
  CHECK_FALSE(threshold_n(CanonicalType({2, 3, 7})).has_value());
}

TEST_CASE("basis vectors") {
  CanonicalType t({2, 2, 2});
  CHECK(e_vector(t, 1, 0) == dv(t, 1, 1, {{0}, {1}, {1}}));
  CHECK(e_interval(t, 1, 0, 1) == h_vector(t));
  CanonicalType u({2, 3, 4});
  for (int i = 1; i <= 3; ++i)
    for (int j = -9; j < 9; ++j) CHECK(e_vector(u, i, j + u.arm_length(i)) == e_vector(u, i, j));
  // e_interval agrees with the termwise sum, also across several periods.
  for (int i = 1; i <= 3; ++i)
    for (int j1 = -4; j1 < 4; ++j1)
      for (int j2 = j1; j2 < j1 + 10; ++j2) {
        DimVector s = zero_vector(u);
        for (int j = j1; j <= j2; ++j) s += e_vector(u, i, j);
        CHECK(e_interval(u, i, j1, j2) == s);
      }
}

TEST_CASE("euler form values") {
  CanonicalType t({2, 2, 2});
  const DimVector h = h_vector(t);
  const DimVector e0 = unit_vector(t, CanonicalType::kZero);
  const DimVector einf = unit_vector(t, CanonicalType::kInfinity);
  CHECK(euler_form(t, h - e0, h - einf) == -2);
  for (auto m : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 7}, {3, 3, 3}, {2, 2, 2, 2, 5}}) {
    CanonicalType u(m);
    CHECK(euler_form(u, h_vector(u), h_vector(u)) == 0);
  }
}

TEST_CASE("euler form identities on random vectors") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (auto m : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 4}, {3, 3, 3, 2}}) {
    CanonicalType t(m);
    auto rnd = [&] {
      DimVector d(t.vertex_count());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = coord(rng);
      return d;
    };
    for (int trial = 0; trial < 60; ++trial) {
      const DimVector a = rnd(), b = rnd(), c = rnd();
      const int s = coord(rng);
      CHECK(euler_form(t, a + s * b, c) == euler_form(t, a, c) + s * euler_form(t, b, c));
      CHECK(euler_form(t, c, a + s * b) == euler_form(t, c, a) + s * euler_form(t, c, b));
      CHECK(euler_form(t, a, h_vector(t)) == a[0] - a[1]);
      CHECK(euler_form(t, h_vector(t), a) == -(a[0] - a[1]));
      for (int i = 1; i <= t.arms(); ++i)
        for (int j = -3; j < 2 * t.arm_length(i); ++j) {
          CHECK(euler_form(t, e_vector(t, i, j), a) == -delta(t, a, i, j));
          CHECK(euler_form(t, a, e_vector(t, i, j)) == delta(t, a, i, j + 1));
        }
    }
  }
}

TEST_CASE("delta calculus") {
  CanonicalType t({2, 2, 2});
  const DimVector d = 2 * h_vector(t) + e_vector(t, 1, 1);
  CHECK(delta(t, d, 1, 1) == -1);
  CHECK(delta_interval(t, d, 1, 1, 1) == -1);
  CHECK(delta(t, unit_vector(t, 0), 1, 2) == 0);
  CHECK_THROWS_AS(delta_interval(t, d, 1, 2, 1), InvalidInput);
  CanonicalType u({2, 3, 5});
  testing_support::for_each_box(u, 1, [&](const DimVector& v) {
    for (int i = 1; i <= 3; ++i) {
      CHECK(delta_interval(u, v, i, 1, u.arm_length(i)) == v[0] - v[1]);
      // Interval sums agree with termwise sums.
      for (int j1 = -2; j1 < 3; ++j1) {
        std::int64_t s = 0;
        for (int j2 = j1; j2 < j1 + 8; ++j2) {
          s += delta(u, v, i, j2);
          CHECK(delta_interval(u, v, i, j1, j2) == s);
        }
      }
    }
  });
}

TEST_CASE("classification") {
  CanonicalType t({2, 2, 2});
  auto e0 = classify(t, unit_vector(t, 0));
  CHECK(e0.in_P);
  CHECK_FALSE(e0.in_R);
  CHECK_FALSE(e0.in_Q);
  auto h = classify(t, h_vector(t));
  CHECK_FALSE(h.in_P);
  CHECK(h.in_R);
  CHECK_FALSE(h.in_Q);
  auto z = classify(t, zero_vector(t));
  CHECK((z.in_P && z.in_R && z.in_Q));
  CHECK_THROWS_AS(classify(t, -1 * h_vector(t)), InvalidInput);

  CanonicalType u({2, 3, 3});
  testing_support::for_each_box(u, 2, [&](const DimVector& d) {
    const auto c = classify(u, d);
    if (c.in_P && c.in_Q) CHECK(d.is_zero());
    if (c.in_P && !d.is_zero()) CHECK(euler_form(u, d, h_vector(u)) > 0);
    if (c.in_Q && !d.is_zero()) CHECK(euler_form(u, d, h_vector(u)) < 0);
  });
}

TEST_CASE("module variety dimension") {
  CanonicalType t({2, 2, 2});
  CHECK(a_dim(t, h_vector(t)) == 5);
  CHECK(a_dim(t, zero_vector(t)) == 0);
  CHECK(a_dim(t, 2 * h_vector(t)) == 20);
  CanonicalType u({2, 3, 3});
  CHECK(a_dim(u, h_vector(u)) == 7);
  // Both formulas are evaluated inside a_dim; it throws if they differ.
  testing_support::for_each_box(u, 2, [&](const DimVector& d) { CHECK_NOTHROW(a_dim(u, d)); });
}
