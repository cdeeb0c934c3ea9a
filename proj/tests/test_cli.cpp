#include "doctest.h"
#include "relmonad/cli/commands.hpp"

using namespace relmonad;
using cli::Report;
using cli::RunManifest;

namespace {

RunManifest manifest(std::string target,
                     std::map<std::string, std::string> params = {}) {
  RunManifest m;
  m.target = std::move(target);
  m.params = std::move(params);
  return m;
}

bool has_leaf(const Report& r, const std::string& needle) {
  for (const auto& l : r.leaves)
    if (l.label.find(needle) != std::string::npos) return true;
  return false;
}

std::string strip_wall(std::string json) {
  auto pos = json.find("\"wall_ms\"");
  if (pos == std::string::npos) return json;
  auto end = json.find('\n', pos);
  json.erase(pos, end - pos);
  return json;
}

}  // namespace

TEST_CASE("run hailstone x=6 lists the single outcome 1") {
  Report r = cli::cmd_run(manifest("hailstone", {{"x", "6"}}));
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.exit_code() == 0);
  CHECK(has_leaf(r, "(1, tt)"));
}

TEST_CASE("run compute_abs z=0 yields 0") {
  Report r = cli::cmd_run(manifest("compute_abs", {{"z", "0"}}));
  CHECK(has_leaf(r, "(0, tt)"));
}

TEST_CASE("run dfs on the 3-vertex path reports full visited sets") {
  Report r = cli::cmd_run(
      manifest("dfs", {{"n", "3"}, {"edges", "0-1,1-2"}, {"start", "0"}}));
  CHECK(r.verdict == Verdict::Holds);
  CHECK(has_leaf(r, "[0, 1, 2]"));
}

TEST_CASE("run kmp_match reports the break index") {
  Report r = cli::cmd_run(
      manifest("kmp_match", {{"patn", "ab"}, {"text", "cab"}}));
  CHECK(has_leaf(r, "by_break(1)"));
}

TEST_CASE("check: holds, counterexample and inconclusive exit codes") {
  CHECK(cli::cmd_check(manifest("hailstone-positivity")).exit_code() == 0);
  CHECK(cli::cmd_check(manifest("compute_abs-correct")).exit_code() == 0);
  CHECK(cli::cmd_check(manifest("any_prime-sound")).exit_code() == 0);
  CHECK(cli::cmd_check(manifest("fibonacci-spec")).exit_code() == 0);
  Report cex = cli::cmd_check(manifest("any-pair-eq1"));
  CHECK(cex.exit_code() == 1);
  REQUIRE(!cex.leaves.empty());
  CHECK(cex.leaves[0].witness.has_value());

  // fuel too low: inconclusive, never holds
  RunManifest low = manifest("hailstone-terminates", {{"x_hi", "27"}});
  low.fuel = 3;
  Report r = cli::cmd_check(low);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.exit_code() == 2);
  CHECK(cli::cmd_check(manifest("hailstone-terminates")).exit_code() == 0);
}

TEST_CASE("unknown targets and bad parameters raise usage errors") {
  CHECK_THROWS_AS(cli::cmd_run(manifest("nope")), UnknownTargetError);
  CHECK_THROWS_AS(cli::cmd_run(manifest("hailstone", {{"x", "seven"}})),
                  InvalidParameterError);
  CHECK_THROWS_AS(cli::cmd_run(manifest("hailstone")), InvalidParameterError);
  CHECK_THROWS_AS(cli::cmd_run(manifest("dfs", {{"edges", "0>1"}})),
                  InvalidParameterError);
}

TEST_CASE("vcgen targets: single goal and the zero-goal match") {
  Report one = cli::cmd_vcgen(manifest("ret-const"));
  CHECK(has_leaf(one, "P ==> 5 = 5"));
  CHECK(one.exit_code() == 2);  // printed but not discharged

  Report zero = cli::cmd_vcgen(manifest("assume-sp"));
  CHECK(has_leaf(zero, "no goals"));
  CHECK(zero.exit_code() == 0);
}

TEST_CASE("reports are deterministic and schema-stable") {
  RunManifest m = manifest("kmp", {{"patn_max", "1"}, {"text_max", "2"}});
  Report a = cli::cmd_prove(m);
  Report b = cli::cmd_prove(m);
  CHECK(strip_wall(a.to_json()) == strip_wall(b.to_json()));

  // the serial reference path produces the identical report
  RunManifest ms = m;
  ms.serial = true;
  Report c = cli::cmd_prove(ms);
  CHECK(strip_wall(a.to_json()) == strip_wall(c.to_json()));

  // pinned schema for a simple run
  Report r = cli::cmd_run(manifest("compute_abs", {{"z", "-3"}}));
  CHECK(strip_wall(r.to_json()) ==
        "{\n"
        "  \"target\": \"compute_abs\",\n"
        "  \"verdict\": \"holds\",\n"
        "  \"leaves\": [\n"
        "    {\n"
        "      \"label\": \"(3, tt)\",\n"
        "      \"group\": \"outcomes\",\n"
        "      \"verdict\": \"holds\"\n"
        "    }\n"
        "  ],\n"
        "  \"stats\": {\n"
        "    \"states\": 0,\n"
        "    \"iterations\": 0\n"
        "  },\n"
        "  \n"
        "}");
}

TEST_CASE("prove dfs at reduced scale holds") {
  Report r = cli::cmd_prove(
      manifest("dfs", {{"n_max", "2"}, {"random", "5"}, {"seed", "3"}}));
  CHECK(r.exit_code() == 0);
  CHECK(has_leaf(r, "exhaustive n=2"));
  CHECK(has_leaf(r, "random n=4..5"));
}

TEST_CASE("prove rules at reduced scale holds") {
  Report r = cli::cmd_prove(manifest("rules", {{"instances", "10"}}));
  CHECK(r.exit_code() == 0);
  CHECK(r.leaves.size() == 12);
}

TEST_CASE("list covers every registered target") {
  Report r = cli::cmd_list({});
  CHECK(r.exit_code() == 0);
  for (const auto& t : cli::targets()) CHECK(has_leaf(r, t.name));
}
