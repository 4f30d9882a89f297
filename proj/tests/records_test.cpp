#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>

#include "doctest.h"
#include "json.hpp"
#include "pexeq/records.hpp"

using namespace pexeq;

TEST_CASE("record schema") {
  SolutionTuple s{mpz_class("123456789012345678901234567890"), 3, 2, 1, 3, 5, 3, 1, 7};
  std::string line = solution_record(s);
  CHECK(validate_record(line));
  auto j = nlohmann::json::parse(line);
  CHECK(j["a"] == "123456789012345678901234567890");  // arbitrary precision safe
  CHECK(j["type"] == "solution");

  Candidate c;
  c.a = 5;
  c.b = 3;
  c.c = 2;
  c.z = 5;
  c.dprime = 8;
  CHECK(validate_record(candidate_record(c)));

  PipelineResult r;
  r.step1_rows = 25;
  CHECK(validate_record(summary_record("sieve", r)));
  CHECK(validate_record(report_record("orders", "line", true)));
  CHECK_FALSE(validate_record("not json"));
  CHECK_FALSE(validate_record("{\"type\":\"solution\"}"));  // missing schema
}

TEST_CASE("key order is stable") {
  SolutionTuple s{5, 3, 2, 1, 3, 5, 3, 1, 7};
  CHECK(solution_record(s) ==
        "{\"schema\":1,\"type\":\"solution\",\"a\":\"5\",\"b\":\"3\",\"c\":\"2\",\"x\":\"1\","
        "\"y\":\"3\",\"z\":\"5\",\"X\":\"3\",\"Y\":\"1\",\"Z\":\"7\"}");
}

TEST_CASE("checkpoint log round trip") {
  std::string path = "/tmp/pexeq_records_test.jsonl";
  std::remove(path.c_str());
  {
    CheckpointLog log(path, "cfg-a", false);
    CHECK(log.enabled());
    CHECK_FALSE(log.done("u1"));
    log.record("u1", 42, {{5, 3, 2, 1, 3, 5, 3, 1, 7}});
  }
  {
    CheckpointLog log(path, "cfg-a", true);
    REQUIRE(log.done("u1"));
    CHECK(log.recovered_candidates("u1") == 42);
    REQUIRE(log.recovered_solutions("u1").size() == 1);
    CHECK(log.recovered_solutions("u1")[0].Z == 7);
  }
  // wrong fingerprint refuses to resume
  CHECK_THROWS_AS(CheckpointLog(path, "cfg-b", true), resume_error);
  // fresh run over an existing log refuses without resume
  CHECK_THROWS_AS(CheckpointLog(path, "cfg-a", false), resume_error);
  std::remove(path.c_str());
}
