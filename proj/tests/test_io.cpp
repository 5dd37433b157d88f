#include "cantube/io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cantube;
using testing_support::dv;
using testing_support::R;

TEST_CASE("dimension vector text") {
  CanonicalType t({2, 2, 2});
  const auto d = parse_dim_vector(t, "2,2;3;2;2");
  CHECK(d == 2 * h_vector(t) + e_vector(t, 1, 1));
  CHECK(format_dim_vector(t, d) == "2,2;3;2;2");
  CanonicalType u({2, 3, 3});
  CHECK(parse_dim_vector(u, "1,1;1;1,1;1,1") == h_vector(u));
  CHECK(parse_dim_vector(u, " 1, 1 ;1; 1,1 ;1,1") == h_vector(u));

  for (const char* bad : {"1,1;1;1", "1;1;1;1", "1,1;1;1;1,2", "1,1;x;1;1", "1,1;-1;1;1", ""})
    CHECK_THROWS_AS(parse_dim_vector(t, bad), InvalidInput);
}

TEST_CASE("types, rationals and tube parts") {
  const auto t = parse_type("2,2,2,2", "1,3/2");
  CHECK(t.lambda(4) == Rational(3, 2));
  CHECK_THROWS_AS(parse_type("2,2,2,2", "2,3"), InvalidInput);
  CHECK_THROWS_AS(parse_type("2,2", ""), InvalidInput);
  CHECK_THROWS_AS(parse_type("2,a,2", ""), InvalidInput);

  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(format_rational(Rational(-3, 9)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("1.5"), InvalidInput);

  CanonicalType u({2, 2, 2});
  const auto x = parse_regular_part(u, "R1[0,1] + R1[1,1]+R3[2,2]");
  CHECK(x == RegularPart({R(u, 1, 0, 1), R(u, 1, 1, 1), R(u, 3, 0, 0)}));
  CHECK(parse_regular_part(u, x.str()) == x);
  CHECK(parse_regular_part(u, "0").empty());
  for (const char* bad : {"R4[0,0]", "R1[1,0]", "S1[0,0]", "R1[0]", "R1(0,1)"})
    CHECK_THROWS_AS(parse_regular_part(u, bad), InvalidInput);
}

TEST_CASE("reports round-trip through JSON") {
  CanonicalType t({2, 2, 2});
  const auto d = 2 * h_vector(t);
  for (const auto& r : enumerate_strata(t, d, Level::CPrime)) {
    const auto back = report_from_json(t, Json::parse(to_json(t, r).dump()));
    CHECK(back.index == r.index);
    CHECK(back.dim == r.dim);
    CHECK(back.quantity == r.quantity);
    CHECK(back.in_c3 == r.in_c3);
  }
  const auto z = z_dimension(t, d);
  const auto zb = zdim_from_json(t, Json::parse(to_json(t, z).dump()));
  CHECK(zb.dim == z.dim);
  CHECK(zb.codim == z.codim);
  CHECK(zb.witness == z.witness);

  const auto v = ci_check(t, 3 * h_vector(t));
  const auto vb = verdict_from_json(t, Json::parse(to_json(t, v).dump()));
  CHECK(vb.s == v.s);
  CHECK(vb.codim == v.codim);
  CHECK(vb.min_quantity == v.min_quantity);
  CHECK(vb.witness == v.witness);
  CHECK(vb.verdict == v.verdict);

  const StratumIndex s{unit_vector(t, 0), unit_vector(t, 1),
                       RegularPart({R(t, 1, 0, 1), R(t, 1, 1, 1), R(t, 2, 1, 1), R(t, 3, 1, 1)}), 0};
  const auto tr = reduce_to_c3(t, d, s);
  const auto tb = trace_from_json(t, Json::parse(to_json(t, tr).dump()));
  CHECK(tb.start == tr.start);
  REQUIRE(tb.steps.size() == tr.steps.size());
  for (std::size_t k = 0; k < tr.steps.size(); ++k) {
    CHECK(tb.steps[k].kind == tr.steps[k].kind);
    CHECK(tb.steps[k].result == tr.steps[k].result);
    CHECK(tb.steps[k].quantity == tr.steps[k].quantity);
  }

  CheckResult c("demo");
  c.checked = 4;
  c.fail("one");
  const auto cb = check_from_json(Json::parse(to_json(c).dump()));
  CHECK(cb.name == c.name);
  CHECK(cb.checked == 4);
  CHECK(cb.violations == 1);
  CHECK(cb.samples == c.samples);

  CHECK_THROWS_AS(index_from_json(t, Json::parse(R"({"dP": "1,0;0;0;0"})")), InvalidInput);
  CHECK_THROWS_AS(index_from_json(t, Json::parse(R"({"dP": 3, "dQ": "", "X": "0", "q": 0})")),
                  InvalidInput);
}

TEST_CASE("sweep rows round-trip through JSON and CSV") {
  SweepConfig cfg;
  cfg.box.tube_bound = 1;
  cfg.box.pmin = 2;
  cfg.box.pmax = 3;
  for (const auto& r : sweep(cfg).rows) {
    CHECK(row_from_json(cfg.type, Json::parse(to_json(cfg.type, r).dump())) == r);
    CHECK(row_from_csv(cfg.type, to_csv(cfg.type, r)) == r);
  }
  SweepRow empty;
  empty.d = h_vector(cfg.type);
  CHECK(row_from_csv(cfg.type, to_csv(cfg.type, empty)) == empty);
  CHECK_THROWS_AS(row_from_csv(cfg.type, "1,1;1;1;1,1,0,0,,,true,false"), InvalidInput);
  CHECK_THROWS_AS(row_from_csv(cfg.type, "\"1,1;1;1;1\",1,0,0,,,yes,false"), InvalidInput);
}

TEST_CASE("module files round-trip") {
  CanonicalType t({2, 2, 3}, {Rational(1)});
  const auto m = direct_sum(t, {build_homogeneous(t, Rational(5, 3)),
                                build_tube_module(t, TubeClass(t, 3, 0, 2))});
  const auto j = module_to_json(m);
  CHECK(j["dims"]["inf"] == m.dims[1]);
  const auto back = module_from_json(Json::parse(j.dump()));
  CHECK(back.type == m.type);
  CHECK(back.dims == m.dims);
  CHECK(back.maps == m.maps);
  CHECK(hom_space_dim(back, back) == hom_space_dim(m, m));

  auto broken = j;
  broken["matrices"]["a_1_1"] = Json::array({Json::array({1})});
  CHECK_THROWS_AS(module_from_json(broken), InvalidInput);
  auto missing = j;
  missing.erase("dims");
  CHECK_THROWS_AS(module_from_json(missing), InvalidInput);
}
