#ifndef GM_ELABORATE_HPP
#define GM_ELABORATE_HPP

#include "gm/errors.hpp"
#include "gm/parser.hpp"
#include "gm/term.hpp"

namespace gm {

struct Elab {
  TermPtr term;  // cast-calculus term; identical shape plus inserted casts
  TypePtr type;
};

// Gradually typecheck a source term and insert a cast at every implicit
// conversion.  Casts whose coercion normalizes to the identity are omitted.
// Throws TypeError.
Elab elaborate(const TermPtr& t);

}  // namespace gm

#endif
