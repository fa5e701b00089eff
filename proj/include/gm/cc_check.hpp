#ifndef GM_CC_CHECK_HPP
#define GM_CC_CHECK_HPP

#include <map>
#include <vector>

#include "gm/errors.hpp"
#include "gm/subtyping.hpp"
#include "gm/term.hpp"

namespace gm {

// Runtime typing context for cast-calculus terms: the generated classifiers
// with their parent edges and variable labels, plus the heap typing.
struct RuntimeCtx {
  SubtypeEnv theta;
  struct Label {
    std::string var;
    CodeTypePtr ty;
  };
  std::map<long, Label> labels;  // generated classifier id -> its binder
  std::vector<TypePtr> heap_types;
};

// Typecheck a cast-calculus term (the elaborator's output or any later
// machine state).  Returns nullptr for terms that type at every type: blame,
// and casts whose coercion is a failure.  Throws TypeError when ill-typed.
TypePtr cc_type(const TermPtr& t, const RuntimeCtx& rt = {});

// Does this code value typecheck as closed code at classifier e using only
// the global forest?  Used to state scope safety for final program values.
bool code_value_closed(const TermPtr& quote_value, const RuntimeCtx& rt);

}  // namespace gm

#endif
