#ifndef GM_STATIC_LANG_HPP
#define GM_STATIC_LANG_HPP

#include <vector>

#include "gm/errors.hpp"
#include "gm/parser.hpp"
#include "gm/term.hpp"

namespace gm {

// Typecheck a term of the static sister language.  The unknown type is
// rejected everywhere.  heap_types assigns a type to each address (used when
// re-typechecking intermediate machine states).  Throws TypeError.
TypePtr static_type(const TermPtr& t,
                    const std::vector<TypePtr>& heap_types = {});

struct StaticResult {
  enum class Status { Value, Limit };
  Status status = Status::Value;
  TermPtr value;
  long steps = 0;
};

// Run a static term with the direct reduction semantics.  Code inside a
// quote is reduced by rewriting its leftmost-innermost splice; everything
// else is left-to-right call-by-value.  check_steps re-typechecks after
// every step and verifies the type only shrinks (subtyping).  Throws
// logic_error on a stuck state, which signals a bug, not a user error.
StaticResult static_eval(const TermPtr& t, long step_limit,
                         bool check_steps = false);

}  // namespace gm

#endif
