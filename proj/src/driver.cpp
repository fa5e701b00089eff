#include "gm/driver.hpp"

#include "gm/elaborate.hpp"
#include "gm/machine.hpp"
#include "gm/parser.hpp"
#include "gm/se_machine.hpp"
#include "gm/static_lang.hpp"

namespace gm {

namespace {

void fill_blame(RunOutcome& out, const Program& p, int label) {
  out.status = RunOutcome::Status::Blame;
  out.blame_label = label;
  if (label >= 0 && label < (int)p.label_spans.size())
    out.blame_span = p.label_spans[label];
}

}  // namespace

RunOutcome run_source(const std::string& src, const RunOpts& opts) {
  RunOutcome out;
  Program p;
  try {
    p = parse_program(src);
  } catch (const ParseError& e) {
    out.status = RunOutcome::Status::ParseError;
    out.message = e.what();
    out.error_span = e.span;
    return out;
  }
  try {
    if (opts.static_mode) {
      out.type = type_str(static_type(p.term));
      StaticResult r = static_eval(p.term, opts.step_limit, opts.check_steps);
      out.steps = r.steps;
      if (r.status == StaticResult::Status::Limit) {
        out.status = RunOutcome::Status::Limit;
      } else {
        out.status = RunOutcome::Status::Value;
        out.value = value_str(r.value);
      }
      return out;
    }
    Elab e = elaborate(p.term);
    out.type = type_str(e.type);
    out.elaborated = term_str(e.term);
    MachineOpts mo;
    mo.step_limit = opts.step_limit;
    mo.trace = opts.trace;
    mo.check_steps = opts.check_steps;
    MachineResult r =
        opts.space_efficient ? se_eval(e.term, mo) : cc_eval(e.term, mo);
    out.steps = r.steps;
    out.max_adjacent_casts = r.max_adjacent_casts;
    out.max_hyper_height = r.max_hyper_height;
    switch (r.status) {
      case MachineResult::Status::Value:
        out.status = RunOutcome::Status::Value;
        out.value = value_str(r.value);
        break;
      case MachineResult::Status::Blame:
        fill_blame(out, p, r.blame_label);
        break;
      case MachineResult::Status::Limit:
        out.status = RunOutcome::Status::Limit;
        break;
    }
  } catch (const TypeError& e) {
    out.status = RunOutcome::Status::TypeError;
    out.message = e.what();
    out.error_span = e.span;
  } catch (const std::logic_error& e) {
    out.status = RunOutcome::Status::Stuck;
    out.message = e.what();
  }
  return out;
}

RunOutcome check_source(const std::string& src, bool static_mode) {
  RunOutcome out;
  try {
    Program p = parse_program(src);
    out.type = static_mode ? type_str(static_type(p.term))
                           : type_str(elaborate(p.term).type);
    out.status = RunOutcome::Status::Value;
  } catch (const ParseError& e) {
    out.status = RunOutcome::Status::ParseError;
    out.message = e.what();
    out.error_span = e.span;
  } catch (const TypeError& e) {
    out.status = RunOutcome::Status::TypeError;
    out.message = e.what();
    out.error_span = e.span;
  }
  return out;
}

RunOutcome elab_source(const std::string& src) {
  RunOutcome out;
  try {
    Program p = parse_program(src);
    Elab e = elaborate(p.term);
    out.type = type_str(e.type);
    out.elaborated = term_str(e.term);
    out.status = RunOutcome::Status::Value;
  } catch (const ParseError& e) {
    out.status = RunOutcome::Status::ParseError;
    out.message = e.what();
    out.error_span = e.span;
  } catch (const TypeError& e) {
    out.status = RunOutcome::Status::TypeError;
    out.message = e.what();
    out.error_span = e.span;
  }
  return out;
}

}  // namespace gm
