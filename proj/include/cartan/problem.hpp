#pragma once

#include <optional>
#include <string>

#include "cartan/equation.hpp"

namespace cartan {

// Parsed sectioned problem file ([vars], [equations], [lagrangian],
// [form NAME], [options]).
struct ProblemFile {
    Context ctx;
    std::vector<Relation> equations;
    std::optional<Expr> lagrangian;                   // density (volume coefficient)
    std::vector<std::pair<std::string, DForm>> forms;  // declaration order
    int maxOrder = 12;
    bool jsonOutput = false;

    bool hasEquations() const { return !equations.empty(); }
    EqSystem system() const;  // throws if no [equations] section
    const DForm* form(const std::string& name) const;
};

// Throws ParseError (with position) or std::invalid_argument on bad input.
ProblemFile parseProblemFile(const std::string& text);

}  // namespace cartan
