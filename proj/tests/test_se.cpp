#include "doctest.h"
#include "gm/driver.hpp"
#include "helpers.hpp"

using namespace gm;
using Status = RunOutcome::Status;

TEST_CASE("both machines agree on the whole corpus") {
  for (const auto& name : gmtest::corpus_names()) {
    CAPTURE(name);
    RunOpts naive_opts, se_opts;
    se_opts.space_efficient = true;
    std::string src = gmtest::read_program(name);
    RunOutcome naive = run_source(src, naive_opts);
    RunOutcome se = run_source(src, se_opts);
    REQUIRE(naive.status == se.status);
    if (naive.status == Status::Value) {
      CHECK(naive.value == se.value);
    } else {
      REQUIRE(naive.status == Status::Blame);
      CHECK(naive.blame_label == se.blame_label);
    }
  }
}

TEST_CASE("pending tail casts stay bounded in the space-efficient machine") {
  std::string src = gmtest::chain_program(300);
  RunOpts naive_opts, se_opts;
  se_opts.space_efficient = true;
  RunOutcome naive = run_source(src, naive_opts);
  RunOutcome se = run_source(src, se_opts);
  REQUIRE(naive.status == Status::Value);
  REQUIRE(se.status == Status::Value);
  CHECK(naive.value == "0");
  CHECK(se.value == "0");
  CHECK(naive.max_adjacent_casts >= 300);
  CHECK(se.max_adjacent_casts <= 2);
  CHECK(se.max_hyper_height <= 3);
}
