#ifndef GM_MACHINE_HPP
#define GM_MACHINE_HPP

#include "gm/cc_check.hpp"
#include "gm/term.hpp"

namespace gm {

struct MachineOpts {
  long step_limit = 1000000;
  bool trace = false;        // print each state to stderr
  bool check_steps = false;  // re-typecheck after every step
};

struct MachineResult {
  enum class Status { Value, Blame, Limit };
  Status status = Status::Value;
  TermPtr value;
  int blame_label = -1;
  long steps = 0;
  // Peak number of syntactically adjacent cast nodes anywhere in the term,
  // the witness for (in)efficient cast accumulation.
  long max_adjacent_casts = 0;
  long max_hyper_height = 0;  // space-efficient mode only
  RuntimeCtx final_ctx;  // global forest + heap typing at the end of the run
};

// Evaluate an elaborated term with the naive (sequence-coercion) machine.
// Throws logic_error on a stuck state or, with check_steps, on a type
// preservation failure.
MachineResult cc_eval(const TermPtr& t, const MachineOpts& opts = {});

// Longest chain of directly nested casts in t (instrumentation helper).
long max_cast_chain(const TermPtr& t);

}  // namespace gm

#endif
