#ifndef GM_DRIVER_HPP
#define GM_DRIVER_HPP

#include <string>

#include "gm/term.hpp"

namespace gm {

struct RunOpts {
  bool static_mode = false;
  bool space_efficient = false;
  bool trace = false;
  bool check_steps = false;
  long step_limit = 1000000;
};

struct RunOutcome {
  enum class Status { Value, Blame, TypeError, Limit, ParseError, Stuck };
  Status status = Status::Value;
  std::string message;  // errors
  Span error_span;
  std::string type;
  std::string value;
  std::string elaborated;  // cast-calculus term (empty in static mode)
  int blame_label = -1;
  Span blame_span;
  long steps = 0;
  long max_adjacent_casts = 0;
  long max_hyper_height = 0;
};

// The whole pipeline: parse, typecheck (static or gradual), elaborate
// (gradual only) and evaluate.  Never throws; all failures are reported in
// the outcome.
RunOutcome run_source(const std::string& src, const RunOpts& opts);

// Parse and typecheck only.
RunOutcome check_source(const std::string& src, bool static_mode);

// Parse, typecheck and elaborate (gradual pipeline), without running.
RunOutcome elab_source(const std::string& src);

}  // namespace gm

#endif
