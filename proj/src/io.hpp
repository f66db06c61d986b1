// Text format for vector fields, diff-friendly and exact:
//
//     # comment
//     hznf 1
//     params 3
//     rotation 1
//     E 1 1 [0,0,0] 1/2
//
// Header line first; `params` (default 0) must precede any rotation/term
// line; term lines are `E <l> <k> [m1,...,mq] <p/q>` and duplicate keys are
// summed.  serialize() emits the canonical order (l asc, k asc, mu lex asc).
#pragma once

#include "algebra.hpp"

#include <stdexcept>
#include <string>

namespace hznf::io {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

Field parse_field(const std::string& text);
std::string serialize_field(const Field& f);

}  // namespace hznf::io
