#pragma once

#include <string>
#include <vector>

#include "cartan/expr.hpp"

namespace cartan {

// Names of the adapted coordinates of a problem. Expressions are bound to
// a context only at the text boundary; the kernel works with indices.
struct Context {
    std::vector<std::string> indep;  // x^1..x^n
    std::vector<std::string> dep;    // u^1..u^m

    int n() const { return static_cast<int>(indep.size()); }
    int m() const { return static_cast<int>(dep.size()); }

    int indepIndex(const std::string& name) const;  // -1 if absent
    int depIndex(const std::string& name) const;

    // Rejects duplicate or reserved names (th, ph, g, thp, thg, d-prefixed
    // collisions with dx tokens).
    void validate() const;

    MultiIndex zero() const { return MultiIndex(n()); }
    JetVar u(int i) const { return JetVar::fiber(i, zero()); }
    JetVar u(int i, const MultiIndex& a) const { return JetVar::fiber(i, a); }
};

}  // namespace cartan
