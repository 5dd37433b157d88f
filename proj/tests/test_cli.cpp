#include <cstdio>
#include <fstream>
#include <sstream>

#include "cantube/cli.hpp"
#include "cantube/io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cantube;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("documented command lines") {
  auto r = call({"strata", "--type", "2,2,2", "--d", "1,1;1;1;1", "--level", "cprime", "--format",
                 "json"});
  REQUIRE(r.code == kOk);
  auto j = Json::parse(r.out);
  CHECK(j["count"] == 1);
  CHECK(j["strata"][0]["dim"] == 0);

  r = call({"ci-check", "--type", "2,2,2", "--d", "3,3;3;3;3", "--format", "json"});
  REQUIRE(r.code == kOk);
  j = Json::parse(r.out);
  CHECK(j["result"]["verdict"] == true);
  CHECK(j["result"]["s"] == 7);
  CHECK(j["result"]["codim"] == 7);

  r = call({"ci-check", "--type", "2,2,2", "--d", "1,1;1;1;1"});
  CHECK(r.code == kPrecondition);
  CHECK(r.err.find("p^d >= n - 1") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == kUsage);
  CHECK(call({"frobnicate"}).code == kUsage);
  CHECK(call({"zdim", "--type", "2,2,2"}).code == kUsage);
  CHECK(call({"zdim", "--type", "2,2,2", "--d", "1,1;1;1;1", "--format", "xml"}).code == kUsage);
  CHECK(call({"zdim", "--type", "2,2,2", "--d", "1,1;1;1;1", "--format", "csv"}).code == kUsage);
  CHECK(call({"zdim", "--type", "2,2,2", "--d", "1,1;1;1"}).code == kMalformed);
  CHECK(call({"zdim", "--type", "2,2,2", "--lambda", "2", "--d", "1,1;1;1;1"}).code == kMalformed);
  CHECK(call({"zdim", "--type", "2,2,2", "--d", "1,0;1;1;1"}).code == kPrecondition);
  CHECK(call({"candecomp", "--type", "2,2,2", "--d", "1,0;1;1;1"}).code == kPrecondition);
  CHECK(call({"ci-check", "--type", "2,3,7", "--d", "3,3;3;3,3;3,3,3,3,3,3"}).code == kPrecondition);
  CHECK(call({"ci-check", "--type", "2,3,7", "--d", "3,3;3;3,3;3,3,3,3,3,3",
              "--assume-irreducible"})
            .code == kOk);
  CHECK(call({"--help"}).code == kOk);
}

TEST_CASE("text reports") {
  auto r = call({"classify", "--type", "2,3,3", "--d", "1,1;1;1,1;1,1"});
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("p^d = 1") != std::string::npos);
  CHECK(r.out.find("(tame)") != std::string::npos);

  r = call({"candecomp", "--type", "2,2,2", "--d", "2,2;3;2;2", "--format", "json"});
  REQUIRE(r.code == kOk);
  auto j = Json::parse(r.out);
  CHECK(j["p"] == 2);
  CHECK(j["table"][0] == Json::array({0, 1}));

  r = call({"intervals", "--type", "2,2,2", "--d", "1,1;1;1;1", "--format", "json"});
  REQUIRE(r.code == kOk);
  CHECK(Json::parse(r.out)["ad"] == 6);

  r = call({"zdim", "--type", "2,2,2", "--d", "1,1;1;1;1"});
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("dim Z = 0, codim = 5") != std::string::npos);

  r = call({"reduce", "--type", "2,2,2", "--d", "2,2;2;2;2", "--dp", "1,0;0;0;0", "--dq",
            "0,1;0;0;0", "--x", "R1[0,1] + R1[1,1] + R2[1,1] + R3[1,1]", "--format", "json"});
  REQUIRE(r.code == kOk);
  j = Json::parse(r.out);
  CHECK(j["trace"]["start_quantity"] == 9);
  CHECK(j["trace"]["steps"][0]["quantity"] == 8);
  CHECK(j["trace"]["steps"].back()["quantity"] == 6);

  r = call({"reduce", "--type", "2,2,2", "--d", "2,2;2;2;2", "--dp", "1,0;0;0;0", "--dq",
            "0,1;0;0;0", "--x", "R1[0,1]"});
  CHECK(r.code == kMalformed);

  r = call({"hom", "--type", "2,2,2", "--x", "R1[0,1]", "--y", "R1[1,2]", "--format", "json"});
  REQUIRE(r.code == kOk);
  j = Json::parse(r.out);
  CHECK(j["hom"] == j["hom_matrix"]);
  CHECK(j["hom"] == 1);
}

TEST_CASE("sweep output formats agree") {
  const std::vector<std::string> base{"sweep", "--type", "2,2,2", "--tube-bound", "1",
                                      "--pmin", "2", "--pmax", "3"};
  auto args = base;
  args.insert(args.end(), {"--format", "csv"});
  const auto csv = call(args);
  REQUIRE(csv.code == kOk);
  args = base;
  args.insert(args.end(), {"--format", "json"});
  const auto json = call(args);
  REQUIRE(json.code == kOk);
  const auto j = Json::parse(json.out);
  // 2h has p^d = 2 < N = 3 and is not a complete intersection.
  CHECK(j["counterexamples"] == 0);
  CHECK(j["not_ci"] == 1);

  const CanonicalType t({2, 2, 2});
  std::istringstream in(csv.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == sweep_csv_header());
  std::size_t k = 0;
  while (std::getline(in, line) && line[0] != '#') {
    REQUIRE(k < j["rows"].size());
    CHECK(row_from_csv(t, line) == row_from_json(t, j["rows"][k]));
    ++k;
  }
  CHECK(k == j["rows"].size());
  CHECK(line.find(", 0 counterexamples") != std::string::npos);

  args = base;
  args[6] = "1";
  CHECK(call(args).code == kPrecondition);
}

TEST_CASE("module files on the command line") {
  const CanonicalType t({2, 2, 2});
  const auto m = direct_sum(t, {build_tube_module(t, TubeClass(t, 1, 1, 1)),
                                build_tube_module(t, TubeClass(t, 2, 1, 1)),
                                build_tube_module(t, TubeClass(t, 3, 1, 1)),
                                zero_maps_module(t, unit_vector(t, 0) + unit_vector(t, 1))});
  const std::string path = "cli_test_module.json";
  {
    std::ofstream f(path);
    f << module_to_json(m).dump();
  }
  auto r = call({"hom", "--type", "2,2,2", "--module", path, "--format", "json"});
  REQUIRE(r.code == kOk);
  auto j = Json::parse(r.out);
  CHECK(j["z_member"] == true);
  CHECK(j["orbit_dim"] == orbit_dim(m));
  CHECK(j["hom"] == hom_space_dim(m, m));

  CHECK(call({"hom", "--type", "2,2,3", "--module", path}).code == kMalformed);
  CHECK(call({"hom", "--type", "2,2,2", "--module", "no_such_file.json"}).code == kMalformed);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK(call({"hom", "--type", "2,2,2", "--module", path}).code == kMalformed);
  std::remove(path.c_str());
}

TEST_CASE("verification verbs") {
  auto r = call({"verify-oracle", "--type", "2,2,2", "--periods", "1", "--format", "json"});
  REQUIRE(r.code == kOk);
  CHECK(Json::parse(r.out)["violations"] == 0);

  r = call({"verify-lemmas", "--type", "2,2,2", "--bound", "2", "--pmax", "2", "--summands", "1",
            "--type-a-max", "3", "--type-a-bound", "2", "--format", "json"});
  REQUIRE(r.code == kOk);
  const auto j = Json::parse(r.out);
  CHECK(j["violations"] == 0);
  for (const auto& c : j["checks"]) CHECK(c["passed"] == true);
}
