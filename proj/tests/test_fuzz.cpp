#include "doctest.h"
#include "fuzzgen.hpp"
#include "gm/cc_check.hpp"
#include "gm/elaborate.hpp"
#include "gm/machine.hpp"
#include "gm/se_machine.hpp"
#include "helpers.hpp"

using namespace gm;

TEST_CASE("fuzzed staging programs produce closed code in both machines") {
  MachineOpts opts;
  opts.step_limit = 200000;
  for (unsigned seed = 1; seed <= 100; ++seed) {
    CAPTURE(seed);
    gmtest::Fuzz fz(seed);
    TermPtr t = fz.program();
    Elab e = elaborate(t);

    MachineResult naive = cc_eval(e.term, opts);
    REQUIRE(naive.status == MachineResult::Status::Value);
    CHECK(code_value_closed(naive.value, naive.final_ctx));

    MachineResult se = se_eval(to_hyper_casts(e.term), opts);
    REQUIRE(se.status == MachineResult::Status::Value);
    CHECK(code_value_closed(se.value, se.final_ctx));

    CHECK(gmtest::value_alpha_eq(naive.value, se.value));
  }
}

TEST_CASE("fuzzed programs survive step-by-step re-typechecking") {
  MachineOpts opts;
  opts.step_limit = 200000;
  opts.check_steps = true;
  for (unsigned seed = 200; seed <= 220; ++seed) {
    CAPTURE(seed);
    gmtest::Fuzz fz(seed);
    Elab e = elaborate(fz.program());
    MachineResult naive = cc_eval(e.term, opts);
    CHECK(naive.status == MachineResult::Status::Value);
    MachineResult se = se_eval(to_hyper_casts(e.term), opts);
    CHECK(se.status == MachineResult::Status::Value);
  }
}
