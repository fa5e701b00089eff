#include "doctest.h"
#include "gm/driver.hpp"
#include "gm/elaborate.hpp"
#include "gm/machine.hpp"
#include "gm/parser.hpp"
#include "gm/se_machine.hpp"
#include "gm/static_lang.hpp"
#include "helpers.hpp"

using namespace gm;
using Status = RunOutcome::Status;

namespace {

RunOutcome run_file(const std::string& name, bool se = false,
                    bool check = false) {
  RunOpts opts;
  opts.space_efficient = se;
  opts.check_steps = check;
  return run_source(gmtest::read_program(name), opts);
}

}  // namespace

TEST_CASE("gradual goldens agree across both machines") {
  struct Golden {
    const char* name;
    const char* value;
  };
  for (Golden g : {Golden{"quote_add.gm", "code{ 4 + 3 }@eps"},
                   Golden{"app_star.gm", "42"},
                   Golden{"subtyping_fun.gm", "code{ 41 + 1 }@eps"},
                   Golden{"deref_code.gm", "code{ 2 + 3 }@eps"},
                   Golden{"adversarial_chain.gm", "0"}}) {
    CAPTURE(g.name);
    for (bool se : {false, true}) {
      RunOutcome out = run_file(g.name, se);
      REQUIRE(out.status == Status::Value);
      CHECK(out.value == g.value);
    }
  }
}

TEST_CASE("extrusion through a cell is blamed at the write") {
  RunOutcome naive = run_file("extrusion_gradual.gm");
  RunOutcome se = run_file("extrusion_gradual.gm", true);
  REQUIRE(naive.status == Status::Blame);
  REQUIRE(se.status == Status::Blame);
  CHECK(naive.blame_label == se.blame_label);
  // the label belongs to the cast that made the cell imprecise
  CHECK(naive.blame_span.line == 4);
}

TEST_CASE("extrusion through a star-typed parameter is blamed") {
  RunOutcome naive = run_file("splice_star_param.gm");
  RunOutcome se = run_file("splice_star_param.gm", true);
  REQUIRE(naive.status == Status::Blame);
  REQUIRE(se.status == Status::Blame);
  CHECK(naive.blame_label == se.blame_label);
}

TEST_CASE("gradual evaluation of wrap/body matches the static value") {
  Program p = parse_program(gmtest::read_program("wrap_body.gm"));
  static_type(p.term);
  StaticResult st = static_eval(p.term, 100000);
  REQUIRE(st.status == StaticResult::Status::Value);

  Elab e = elaborate(p.term);
  MachineResult naive = cc_eval(e.term);
  REQUIRE(naive.status == MachineResult::Status::Value);
  CHECK(gmtest::value_alpha_eq(naive.value, st.value));

  MachineResult se = se_eval(to_hyper_casts(e.term));
  REQUIRE(se.status == MachineResult::Status::Value);
  CHECK(gmtest::value_alpha_eq(se.value, st.value));
}

TEST_CASE("every machine step preserves the state's type") {
  for (const auto& name : gmtest::corpus_names()) {
    for (bool se : {false, true}) {
      CAPTURE(name);
      CAPTURE(se);
      RunOutcome out = run_file(name, se, true);
      CHECK(out.status != Status::Stuck);
      CHECK((out.status == Status::Value || out.status == Status::Blame));
    }
  }
}

TEST_CASE("the step limit stops runaway evaluation") {
  RunOpts opts;
  opts.step_limit = 10;
  RunOutcome out = run_source(gmtest::read_program("adversarial_chain.gm"), opts);
  CHECK(out.status == Status::Limit);
  CHECK(out.steps == 10);
}
