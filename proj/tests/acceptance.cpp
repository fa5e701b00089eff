#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include "cogen.hpp"
#include "fuzzgen.hpp"
#include "gm/cc_check.hpp"
#include "gm/driver.hpp"
#include "gm/elaborate.hpp"
#include "gm/hyper.hpp"
#include "gm/machine.hpp"
#include "gm/parser.hpp"
#include "gm/se_machine.hpp"
#include "gm/static_lang.hpp"
#include "helpers.hpp"
#include "nfscan.hpp"

using namespace gm;
using Status = RunOutcome::Status;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, const char* what, bool ok) {
  std::printf("criterion %2d: %s - %s\n", n, ok ? "pass" : "FAIL", what);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RunOutcome run_file(const std::string& name, bool se, bool check_steps = false) {
  RunOpts opts;
  opts.space_efficient = se;
  opts.check_steps = check_steps;
  return run_source(gmtest::read_program(name), opts);
}

// 1. The static checker rejects the extrusion program at the write site.
void criterion1() {
  auto t0 = Clock::now();
  RunOutcome out =
      check_source(gmtest::read_program("extrusion_static.gm"), true);
  bool ok = out.status == Status::TypeError &&
            out.message.find("not a subtype of the reference's element type") !=
                std::string::npos &&
            out.error_span.line == 5 && seconds_since(t0) < 1.0;
  report(1, "static rejection of scope extrusion", ok);
}

// 2. The imprecise variant typechecks and is blamed at the write, with the
// same label in both machines.
void criterion2() {
  auto t0 = Clock::now();
  std::string src = gmtest::read_program("extrusion_gradual.gm");
  RunOutcome chk = check_source(src, false);
  RunOpts se;
  se.space_efficient = true;
  RunOutcome naive = run_source(src, RunOpts{});
  RunOutcome fast = run_source(src, se);
  bool ok = chk.status == Status::Value && naive.status == Status::Blame &&
            fast.status == Status::Blame &&
            naive.blame_label == fast.blame_label && seconds_since(t0) < 1.0;
  report(2, "gradual acceptance with dynamic blame at the write", ok);
}

// 3. Extrusion through a star-typed parameter is blamed.
void criterion3() {
  RunOutcome naive = run_file("splice_star_param.gm", false);
  RunOutcome fast = run_file("splice_star_param.gm", true);
  bool ok = naive.status == Status::Blame && fast.status == Status::Blame &&
            naive.blame_label == fast.blame_label;
  report(3, "blame for a splice through a star-typed parameter", ok);
}

// 4. Positive goldens, including the polymorphic wrap/body program.
void criterion4() {
  bool ok = true;
  RunOutcome add = run_file("quote_add.gm", false);
  ok = ok && add.status == Status::Value && add.value == "code{ 4 + 3 }@eps";

  Program lam = parse_program(gmtest::read_program("quote_lambda.gm"));
  static_type(lam.term);
  StaticResult lam_want = static_eval(lam.term, 10000);
  Elab lam_e = elaborate(lam.term);
  MachineResult lam_got = cc_eval(lam_e.term);
  ok = ok && lam_got.status == MachineResult::Status::Value &&
       gmtest::value_alpha_eq(lam_got.value, lam_want.value);

  Program wb = parse_program(gmtest::read_program("wrap_body.gm"));
  static_type(wb.term);
  Program want_p = parse_program(
      "`eps{ clam (u : Int) @ p . clam (x : Int) @ q . u + x }");
  StaticResult want = static_eval(want_p.term, 10000);
  StaticResult wb_static = static_eval(wb.term, 100000);
  ok = ok && wb_static.status == StaticResult::Status::Value &&
       gmtest::value_alpha_eq(wb_static.value, want.value);
  Elab wb_e = elaborate(wb.term);
  MachineResult wb_got = cc_eval(wb_e.term);
  ok = ok && wb_got.status == MachineResult::Status::Value &&
       gmtest::value_alpha_eq(wb_got.value, want.value);
  report(4, "golden code values, wrap/body up to alpha-renaming", ok);
}

// 5. Scope safety: fuzzed programs of quote type at eps only ever produce
// closed code values.
void criterion5() {
  auto t0 = Clock::now();
  MachineOpts opts;
  opts.step_limit = 200000;
  int violations = 0;
  for (unsigned seed = 1; seed <= 500; ++seed) {
    gmtest::Fuzz fz(seed);
    Elab e = elaborate(fz.program());
    MachineResult r = cc_eval(e.term, opts);
    if (r.status != MachineResult::Status::Value ||
        !code_value_closed(r.value, r.final_ctx))
      ++violations;
  }
  bool ok = violations == 0 && seconds_since(t0) < 300.0;
  report(5, "scope safety over 500 fuzzed staging programs", ok);
}

// 6. Preservation and progress: every machine step of every corpus program
// re-typechecks, contexts grow monotonically, and nothing gets stuck.
void criterion6() {
  bool ok = true;
  for (const auto& name : gmtest::corpus_names())
    for (bool se : {false, true}) {
      RunOutcome out = run_file(name, se, true);
      ok = ok && out.status != Status::Stuck &&
           (out.status == Status::Value || out.status == Status::Blame);
    }
  report(6, "type preservation along every machine step", ok);
}

// 7. Between fully static meta types every coercion normal form is an
// identity or a failure.
void criterion7() {
  gmtest::NFScan scan = gmtest::scan_static_normal_forms(6);
  bool ok = scan.checked > 1000 && scan.violations == 0;
  report(7, "static normal forms are identity or failure", ok);
  std::printf("              (%ld static-to-static sequences checked)\n",
              scan.checked);
}

// 8. Composition never exceeds the max of the operands' heights, for all
// three kinds of hypercoercion.
void criterion8() {
  auto t0 = Clock::now();
  int violations = 0;

  gmtest::CoGen gen(101);
  for (int i = 0; i < 10000; ++i) {
    auto v = gen.chain(5);
    gmtest::CoGen::Hop a = gen.hop(v, 0, 10);
    gmtest::CoGen::Hop b = gen.hop(v, a.end, 20);
    MetaHyperPtr h1 = meta_to_hyper(gen.env, a.co);
    MetaHyperPtr h2 = meta_to_hyper(gen.env, b.co);
    int bound = std::max(meta_hyper_height(h1), meta_hyper_height(h2));
    if (meta_hyper_height(meta_compose(gen.env, h1, h2)) > bound) ++violations;
  }

  gmtest::CoGen cg(103);
  for (int i = 0; i < 10000; ++i) {
    CodeTypePtr s = cg.code_shape(3);
    CodeTypePtr a = cg.degrade_code(s), b = cg.degrade_code(s),
                c = cg.degrade_code(s);
    CodeHyperPtr h1 = code_to_hyper(coerce_code(a, b, 30));
    CodeHyperPtr h2 = code_to_hyper(coerce_code(b, c, 40));
    int bound = std::max(code_hyper_height(h1), code_hyper_height(h2));
    if (code_hyper_height(code_compose(h1, h2)) > bound) ++violations;
  }

  gmtest::CoGen eg(107);
  std::vector<GClassifier> gcls;
  for (const Classifier& c : eg.cls) gcls.push_back(GClassifier::known(c));
  gcls.push_back(GClassifier::unknown());
  int rounds = 0;
  while (rounds < 10000)
    for (const GClassifier& a : gcls)
      for (const GClassifier& b : gcls)
        for (const GClassifier& c : gcls) {
          ++rounds;
          ECHyper h1 = ec_to_hyper(eg.env, coerce_ec(a, b, 50));
          ECHyper h2 = ec_to_hyper(eg.env, coerce_ec(b, c, 60));
          if (ec_hyper_height(ec_compose(eg.env, h1, h2)) >
              std::max(ec_hyper_height(h1), ec_hyper_height(h2)))
            ++violations;
        }

  bool ok = violations == 0 && seconds_since(t0) < 60.0;
  report(8, "composition height bounded by the max of the operands", ok);
}

// 9. The two cast representations are one and the same oracle: translating
// then composing equals normalizing the sequence then translating.
void criterion9() {
  gmtest::CoGen gen(109);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    auto v = gen.chain(5);
    gmtest::CoGen::Hop h1 = gen.hop(v, 0, 70);
    gmtest::CoGen::Hop h2 = gen.hop(v, h1.end, 80);
    MetaHyperPtr composed =
        meta_compose(gen.env, meta_to_hyper(gen.env, h1.co),
                     meta_to_hyper(gen.env, h2.co));
    if (!meta_hyper_equal(composed,
                          meta_to_hyper(gen.env, mc_seq(h1.co, h2.co))))
      ++violations;
  }
  report(9, "hypercoercion composition agrees with sequence normalization",
         violations == 0);
}

// 10. The space-efficiency witness: a chain of n dynamic tail calls leaves n
// adjacent pending casts in the naive machine but at most 2 in the
// space-efficient one, with identical results.
void criterion10() {
  RunOpts naive_opts, se_opts;
  se_opts.space_efficient = true;
  RunOutcome half = run_source(gmtest::chain_program(500), naive_opts);
  RunOutcome naive = run_source(gmtest::chain_program(1000), naive_opts);
  RunOutcome fast = run_source(gmtest::chain_program(1000), se_opts);
  bool ok = naive.status == Status::Value && fast.status == Status::Value &&
            naive.value == fast.value && naive.max_adjacent_casts >= 1000 &&
            half.max_adjacent_casts >= 500 &&
            naive.max_adjacent_casts > half.max_adjacent_casts &&
            fast.max_adjacent_casts <= 2;
  report(10, "bounded pending casts in the space-efficient machine", ok);
  std::printf(
      "              (naive peak %ld casts at n=1000, %ld at n=500; "
      "space-efficient peak %ld)\n",
      naive.max_adjacent_casts, half.max_adjacent_casts,
      fast.max_adjacent_casts);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
