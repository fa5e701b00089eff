#ifndef GM_PARSER_HPP
#define GM_PARSER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "gm/term.hpp"

namespace gm {

struct ParseError : std::runtime_error {
  Span span;
  ParseError(const std::string& msg, Span s)
      : std::runtime_error(msg), span(s) {}
};

struct Program {
  TermPtr term;
  // span of the source site behind each blame label (indexed by label)
  std::vector<Span> label_spans;
};

// Parse a whole .gm source (one expression; '#' starts a line comment).
// Throws ParseError.  Classifier binders must be pairwise distinct.
Program parse_program(const std::string& src);

// Parse just a type (used by tests).
TypePtr parse_type_string(const std::string& src);

}  // namespace gm

#endif
