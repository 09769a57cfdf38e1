#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "grl/error.hpp"
#include "grl/instance.hpp"
#include "grl/solutions.hpp"
#include "run_cli.hpp"

using namespace grl;
using grl::testing::run_cli;
using grl::testing::write_spec;
using nlohmann::json;

namespace {

const char* kBowtie =
    R"({"vertices":5,"arcs":[{"tail":0,"head":1,"color":0},{"tail":1,"head":2,"color":1},)"
    R"({"tail":2,"head":0,"color":2},{"tail":0,"head":3,"color":3},{"tail":3,"head":4,"color":4},)"
    R"({"tail":4,"head":0,"color":5}]})";

}  // namespace

TEST(Instance, DensitySetsAreSeeded) {
  const auto j = json::parse(
      R"({"group":{"type":"cyclic","n":30},"system":"x1 + x2 - x3 = 0",
          "sets":[{"density":0.4},{"density":0.4},"full"],"seed":3})");
  const auto a = instance_from_json(j), b = instance_from_json(j);
  EXPECT_EQ(a.sets, b.sets);
  EXPECT_EQ(a.sets[2], ElementSet::full(30));
  SplitMix64 rng(3);
  EXPECT_EQ(a.sets[0], random_element_set(rng, 30, 0.4));
  EXPECT_EQ(a.sets[1], random_element_set(rng, 30, 0.4));
  EXPECT_NE(instance_from_json(j, 4).sets, a.sets);
}

TEST(Instance, CrossValidation) {
  EXPECT_THROW(instance_from_json(json::parse(
                   R"({"group":{"type":"cyclic","n":5},"system":"x1 x2 = g0","sets":[[1]]})")),
               ConfigError);
  EXPECT_THROW(instance_from_json(json::parse(
                   R"({"group":{"type":"cyclic","n":5},"system":"x1 x2 = g7","sets":[[1],[2]]})")),
               ConfigError);
  EXPECT_THROW(instance_from_json(json::parse(
                   R"({"group":{"type":"symmetric","n":3},"system":"x1 + x2 = 0","sets":[[1],[2]]})")),
               ConfigError);
  EXPECT_THROW(instance_from_json(json::parse(
                   R"({"group":{"type":"cyclic","n":5},"system":"x1 x2 = g0","sets":[[1],[9]]})")),
               InvalidParameter);
  EXPECT_THROW(instance_from_json(json::parse(
                   R"({"group":{"type":"cyclic","n":5},"system":"x1 + x2 - x3 = 0","sets":[[1],[2],[3]],
                       "graph":{"vertices":2,"arcs":[{"tail":0,"head":1,"color":0},{"tail":1,"head":0,"color":1}]}})")),
               ConfigError);
  EXPECT_THROW(instance_from_json(json::parse(R"({"system":"x1 x2 = g0"})")), ConfigError);
}

TEST(Instance, RepresentationResolution) {
  auto inst = instance_from_json(json::parse(
      R"({"group":{"type":"cyclic","n":5},"system":"x1 + x2 - x3 = 0; x3 + x4 - x5 = 0",
          "sets":["full","full","full","full","full"]})"));
  const auto rep = resolve_representation(inst);
  EXPECT_EQ(rep.graph.vertex_count(), 4u);
  inst.graph = bowtie_graph();
  inst.system = make_abelian_system({{1, 1, 1, 1, 1, 1}, {1, 1, 1, -1, -1, -1}});
  EXPECT_THROW(resolve_representation(inst), ContractViolation);
  inst.graph.reset();
  EXPECT_THROW(resolve_representation(inst), NotFound);
}

TEST(Cli, CountFullSetsNormalizeToOne) {
  const auto spec = write_spec("count_full.json",
                               R"({"group":{"type":"cyclic","n":7},"system":"x1 x2 x3 = g2",
                                   "sets":["full","full","full"]})");
  const auto run = run_cli("count " + spec);
  ASSERT_EQ(run.exit_code, 0);
  const auto j = json::parse(run.out);
  EXPECT_EQ(j.at("solutions"), 49);
  EXPECT_EQ(j.at("normalized"), 1.0);
  EXPECT_EQ(j.at("N"), 7);
  EXPECT_EQ(j.at("m"), 3);
  EXPECT_EQ(j.at("k"), 1);
}

TEST(Cli, CountEmptySet) {
  const auto spec = write_spec("count_empty.json",
                               R"({"group":{"type":"cyclic","n":7},"system":"x1 x2 x3 = g2",
                                   "sets":["full",[],"full"]})");
  EXPECT_EQ(json::parse(run_cli("count " + spec).out).at("solutions"), 0);
}

TEST(Cli, CountIsReproducible) {
  const auto spec = write_spec("count_seeded.json",
                               R"({"group":{"type":"cyclic","n":7},
                                   "system":"x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1",
                                   "sets":[{"density":0.4},{"density":0.4},{"density":0.4},
                                           {"density":0.4},{"density":0.4}]})");
  const auto first = run_cli("--seed 1 count " + spec);
  ASSERT_EQ(first.exit_code, 0);
  EXPECT_EQ(run_cli("--seed 1 count " + spec).out, first.out);
  const auto inst = instance_from_json(
      json::parse(R"({"group":{"type":"cyclic","n":7},
                      "system":"x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1",
                      "sets":[{"density":0.4},{"density":0.4},{"density":0.4},
                              {"density":0.4},{"density":0.4}]})"),
      1);
  EXPECT_EQ(json::parse(first.out).at("solutions"),
            count_solutions(inst.group, inst.sets, inst.system));
}

TEST(Cli, RepresentBowtiePair) {
  const auto spec = write_spec(
      "represent_bowtie.json",
      std::string(R"({"system":{"abelian":[[1,1,1,1,1,1],[1,1,1,-1,-1,-1]]},"graph":)") + kBowtie + "}");
  const auto run = run_cli("represent " + spec);
  ASSERT_EQ(run.exit_code, 0);
  const auto j = json::parse(run.out);
  EXPECT_EQ(j.at("representable-by-given-vectors"), false);
  EXPECT_EQ(j.at("reason"), "bad-determinant");
}

TEST(Cli, RepresentTwoProducts) {
  const auto spec = write_spec("represent_two.json",
                               R"({"system":"x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1"})");
  const auto j = json::parse(run_cli("represent " + spec).out);
  EXPECT_EQ(j.at("strong"), true);
  EXPECT_EQ(j.at("graph").at("vertices"), 4);
  EXPECT_EQ(j.at("tree").size(), 3u);
}

TEST(Cli, RepresentTriangle) {
  const auto spec = write_spec("represent_tri.json", R"({"system":{"abelian":[[1,1,1]]}})");
  const auto j = json::parse(run_cli("represent " + spec).out);
  EXPECT_EQ(j.at("representable"), true);
  EXPECT_EQ(j.at("graph").at("vertices"), 3);
  EXPECT_EQ(j.at("graph").at("arcs").size(), 3u);
}

TEST(Cli, RepresentNotFound) {
  const auto spec = write_spec("represent_none.json",
                               R"({"system":{"abelian":[[1,1,1,1,1,1],[1,1,1,-1,-1,-1]]}})");
  const auto run = run_cli("represent " + spec);
  EXPECT_EQ(run.exit_code, 3);
  EXPECT_TRUE(run.out.empty());
}

TEST(Cli, VerifyExamples) {
  const auto z3 = write_spec("verify_z3.json",
                             R"({"group":{"type":"cyclic","n":3},"system":"x1 x2 = g0",
                                 "sets":["full","full"]})");
  auto j = json::parse(run_cli("verify " + z3).out);
  EXPECT_EQ(j.at("copies"), 9);
  EXPECT_EQ(j.at("N_times_solutions"), 9);
  EXPECT_EQ(j.at("match"), true);

  const auto two = write_spec("verify_two.json",
                              R"({"group":{"type":"symmetric","n":3},
                                  "system":"x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1",
                                  "sets":[[0,1,2],[1,3,5],"full",[2,4],[0,5]]})");
  j = json::parse(run_cli("verify " + two).out);
  EXPECT_EQ(j.at("match"), true);

  const auto klein = write_spec(
      "verify_klein.json",
      std::string(R"({"group":{"type":"product","factors":[{"type":"cyclic","n":2},{"type":"cyclic","n":2}]},
                      "system":{"abelian":[[1,1,1,1,1,1],[1,1,1,-1,-1,-1]]},
                      "sets":["full","full","full","full","full","full"],"graph":)") + kBowtie + "}");
  j = json::parse(run_cli("verify " + klein).out);
  EXPECT_EQ(j.at("graph_represents_system"), false);
  EXPECT_EQ(j.at("copies"), 1024);
  EXPECT_EQ(j.at("N_times_solutions"), 4096);
}

TEST(Cli, RemovalModes) {
  const auto spec = write_spec("removal.json",
                               R"({"group":{"type":"cyclic","n":5},"system":"x1 x2 x3 = g0",
                                   "sets":[[0,1,2],[1,2,3],[0,2,4]]})");
  auto j = json::parse(run_cli("removal --pipeline " + spec).out);
  EXPECT_EQ(j.at("residual_solutions"), 0);
  EXPECT_EQ(j.at("removal").at("method"), "exact hitting set (non-regularity)");
  const auto pipeline_total = j.at("total_removed").get<int>();
  j = json::parse(run_cli("removal --exact " + spec).out);
  EXPECT_EQ(j.at("residual_solutions"), 0);
  EXPECT_LE(j.at("total_removed").get<int>(), pipeline_total);
  EXPECT_EQ(run_cli("removal --exact --pipeline " + spec).exit_code, 2);
}

TEST(Cli, SweepCsvAndJobs) {
  const auto config = write_spec("sweep.json",
                                 R"({"group_family":"cyclic","sizes":[5,6,7],"density":0.4,
                                     "system":"x1 x2 x3 = g0","trials":2,"seed":11})");
  const auto one = run_cli("--format csv removal --sweep " + config);
  ASSERT_EQ(one.exit_code, 0);
  EXPECT_EQ(run_cli("--format csv --jobs 3 removal --sweep " + config).out, one.out);
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 7);
  const auto as_json = json::parse(run_cli("removal --sweep " + config).out);
  EXPECT_EQ(as_json.at("records").size(), 6u);
}

TEST(Cli, Applications) {
  const auto pf = write_spec("app_pf.json",
                             R"({"group":{"type":"cyclic","n":9},"a":[1,2],"e":[7]})");
  auto j = json::parse(run_cli("app product-free " + pf).out);
  EXPECT_EQ(j.at("statistic"), 0);
  EXPECT_EQ(j.at("holds"), true);
  const auto sd = write_spec("app_sd.json", R"({"group":{"type":"cyclic","n":12},"a":[0,3,6,9]})");
  j = json::parse(run_cli("app doubling " + sd).out);
  EXPECT_EQ(j.at("certificate").at("counts").at("(A')^2"), 4);
  const auto cp = write_spec("app_cp.json",
                             R"({"group":{"type":"symmetric","n":3},"a":[2],"b":[5]})");
  j = json::parse(run_cli("app commuting " + cp).out);
  EXPECT_EQ(j.at("statistic"), 0);
  EXPECT_EQ(run_cli("app commuting " + pf).exit_code, 2);  // no 'b'
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("count /nonexistent/spec.json").exit_code, 2);
  const auto bad = write_spec("bad_syntax.json",
                              R"({"group":{"type":"cyclic","n":5},"system":"x1 + = 0","sets":[[1],[2]]})");
  EXPECT_EQ(run_cli("count " + bad).exit_code, 2);
  const auto big = write_spec("too_big.json",
                              R"({"group":{"type":"cyclic","n":200},"system":"x1 x2 x3 = g0",
                                  "sets":["full","full","full"]})");
  EXPECT_EQ(run_cli("--max-arcs 1000 verify " + big).exit_code, 4);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
}
