#pragma once

#include <string>

#include "sgprelax/problem.hpp"

namespace sgprelax {

struct SyntaxError : std::runtime_error {
    int line;
    int col;
    SyntaxError(int ln, int cl, const std::string& what)
        : std::runtime_error("line " + std::to_string(ln) + ", col " + std::to_string(cl) +
                             ": " + what),
          line(ln),
          col(cl) {}
};

/// Parses the line-oriented .sgp format:
///   problem <name>
///   var <ident> [in [<lo>, <hi>]]
///   minimize <expr>
///   subject to
///     <label>: <expr> <= <expr>
/// '#' starts a comment; whitespace within lines is insignificant.
SgpProblem parse_problem(const std::string& text);

}  // namespace sgprelax
