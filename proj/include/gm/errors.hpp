#ifndef GM_ERRORS_HPP
#define GM_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "gm/types.hpp"

namespace gm {

struct TypeError : std::runtime_error {
  Span span;
  TypeError(const std::string& msg, Span s)
      : std::runtime_error(msg), span(s) {}
};

}  // namespace gm

#endif
