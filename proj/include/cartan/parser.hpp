#pragma once

#include <stdexcept>
#include <string>

#include "cartan/context.hpp"
#include "cartan/dform.hpp"

namespace cartan {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& what_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + what_),
          line(line_),
          col(col_) {}
};

// Parses a differential-form expression in the canonical text grammar.
// Scalars are 0-forms; `^` is a power when the right operand is a bare
// integer literal applied to a 0-form, a wedge otherwise.
DForm parseForm(const std::string& text, const Context& ctx);

// Parses a scalar expression; rejects covector tokens.
Expr parseExpr(const std::string& text, const Context& ctx);

std::string toString(const Rational& c);
std::string toString(const Expr& e, const Context& ctx);
std::string toString(const DForm& f, const Context& ctx);
std::string toString(const JetVar& v, const Context& ctx);
std::string toString(const Covector& c, const Context& ctx);

}  // namespace cartan
