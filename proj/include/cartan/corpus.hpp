#pragma once

#include "cartan/problem.hpp"
#include "cartan/report.hpp"

namespace cartan {

// Built-in example systems with their Lagrangians, stored as problem files.
std::vector<std::string> corpusNames();
std::string corpusProblemText(const std::string& name);  // throws on unknown name
ProblemFile corpusProblem(const std::string& name, int maxOrder = 0);

// Full pipeline + invariant suite for one corpus entry.
struct CorpusRun {
    std::string name;
    bool helmholtz = false;          // linearized Euler output self-adjoint
    bool noetherIdentity = false;    // zero residual
    bool lemma1Map = false;          // zero residual
    bool eulerOnShell = false;       // reduce(euler(L)) = 0
    bool confluence = false;         // order-independent normal forms (sampled)
    bool witnesses = false;          // ideal witnesses expand exactly (sampled)
    bool membership = false;         // is_internal_lagrangian(l)
    bool certIdentity = false;       // euler(L') = A(F)
    bool certEuler = false;          // reduce(euler(L')) = 0
    bool certGauge = false;          // reduce_form(L' + omega) = l
    bool cocycle = false;            // d Omega in C^3 on the equation
    bool representativeNonzero = false;  // Omega != 0 (hidden-Lagrangian probe)

    bool allPass() const;
};
CorpusRun runCorpusEntry(const std::string& name, int maxOrder = 0);

// Command dispatch shared by the C API and the CLI.
Report runCommand(const std::string& command, const ProblemFile& pf);
Report corpusReport(const std::string& nameOrAll, int maxOrder = 0);

}  // namespace cartan
